#ifndef ROYDEN_COVER_HPP
#define ROYDEN_COVER_HPP

#include "royden/quaddiff.hpp"

#include <vector>

namespace royden {

/// Hyperelliptic double cover w^2 = p(x) carrying the square root of the
/// pullback of q. The factorization kept here is
///
///     g*h = scale * p * square_factor^2
///
/// with p monic squarefree (the odd-multiplicity part of g*h) and
/// square_factor monic. On the cover, z = sqrt(scale) * square_factor(x) * w,
/// so the one-form g dx / z equals omega_numerator dx / (sqrt(scale) * w) with
/// omega_numerator = g / square_factor, a polynomial of degree <= genus - 1.
struct DoubleCover {
    Poly p;                        // monic squarefree defining polynomial
    cplx scale = 1.0;              // constant c with g*h = c * p * square_factor^2
    Poly square_factor;            // monic; 1 in the generic squarefree case
    Poly numerator_g;              // g as given (after reduction)
    Poly omega_numerator;          // g / square_factor
    std::vector<cplx> finite_branch; // roots of p, sorted
    bool branched_at_infinity = false; // deg p odd
    int genus = 0;
};

/// Number of branch points including infinity; always 2*genus + 2.
int branch_count(const DoubleCover& c);

struct CoverOptions {
    double root_tol = 1e-12;
    double cluster_tol = 1e-8;
};

/// Build the cover for a validated, reduced differential.
/// Throws DegenerateCover if the defining polynomial would have degree < 3.
DoubleCover build_double_cover(const QuadDiff& q, const CoverOptions& opt = {});

/// Dimension of the holomorphic one-form basis {x^k dx/w : 0 <= k <= genus-1}.
int holomorphic_basis_degree(const DoubleCover& c);

} // namespace royden

#endif
