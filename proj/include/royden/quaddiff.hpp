#ifndef ROYDEN_QUADDIFF_HPP
#define ROYDEN_QUADDIFF_HPP

#include "royden/poly.hpp"

#include <optional>
#include <vector>

namespace royden {

/// Integrable quadratic differential q = g/h dx^2 on the sphere punctured at
/// the roots of h. Valid instances satisfy: h squarefree, deg h >= 4,
/// deg g <= deg h - 4, and (once reduced) g and h share no roots.
struct QuadDiff {
    Poly g;
    Poly h;
    bool reduced = false;

    // Root sets cached by validate(); every later stage consumes them.
    RootSet g_roots; // empty when deg g == 0
    RootSet h_roots;
};

/// One divisor entry; infinite order entries only appear when nonzero.
struct DivisorEntry {
    cplx point;            // ignored when at_infinity
    bool at_infinity = false;
    int order = 0;         // -1 at simple poles, >0 at zeros
};

struct Divisor {
    std::vector<DivisorEntry> entries;
    int order_at_infinity = 0;
    int total_order() const;
};

struct ValidateOptions {
    double root_tol = 1e-12;
    double cluster_tol = 1e-8;
    // A root of g within cancel_tol (relative) of a root of h is treated as
    // exactly shared and cancelled from both.
    double cancel_tol = 1e-7;
};

/// Check all invariants, cancel common root clusters of g and h, and recheck
/// the degree bound afterwards. Throws ZeroNumerator, NotSquarefree or
/// DegreeBoundViolated.
QuadDiff validate(const Poly& g, const Poly& h, const ValidateOptions& opt = {});

/// Zeros and poles of q with orders, including the point at infinity when its
/// order is nonzero. Orders always sum to -4.
Divisor divisor(const QuadDiff& q);

/// Pullback of q under x -> a*x + b (a != 0), renormalized so that the
/// denominator is monic, revalidated.
QuadDiff affine_pullback(const QuadDiff& q, cplx a, cplx b, const ValidateOptions& opt = {});

/// dim Q(X) = deg h - 3 for squarefree h with deg h >= 4.
int dimension_of_q(const Poly& h, const ValidateOptions& opt = {});

} // namespace royden

#endif
