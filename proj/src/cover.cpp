#include "royden/cover.hpp"
#include "royden/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace royden {

int branch_count(const DoubleCover& c) {
    return static_cast<int>(c.finite_branch.size()) + (c.branched_at_infinity ? 1 : 0);
}

DoubleCover build_double_cover(const QuadDiff& q, const CoverOptions&) {
    if (!q.reduced) throw ValidationError("build_double_cover: differential not reduced");

    // g and h are coprime and h is squarefree, so the multiplicity of a root
    // of g*h is its multiplicity in g (h roots stay simple). Branch points are
    // the odd-multiplicity roots.
    std::vector<cplx> branch;
    std::vector<cplx> square_roots; // roots of the square factor, with multiplicity
    for (const auto& c : q.h_roots.roots) branch.push_back(c.location);
    for (const auto& c : q.g_roots.roots) {
        if (c.multiplicity % 2 == 1) branch.push_back(c.location);
        for (int k = 0; k < c.multiplicity / 2; ++k) square_roots.push_back(c.location);
    }
    std::sort(branch.begin(), branch.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    DoubleCover cov;
    cov.p = Poly::from_roots(cplx(1.0), branch);
    if (cov.p.degree() < 3)
        throw DegenerateCover("defining polynomial has degree " + std::to_string(cov.p.degree()));
    cov.square_factor = Poly::from_roots(cplx(1.0), square_roots);
    cov.scale = q.g.leading() * q.h.leading();
    cov.numerator_g = q.g;
    cov.finite_branch = std::move(branch);
    cov.branched_at_infinity = (cov.p.degree() % 2 == 1);
    int npts = static_cast<int>(cov.finite_branch.size()) + (cov.branched_at_infinity ? 1 : 0);
    cov.genus = npts / 2 - 1;

    if (square_roots.empty()) {
        cov.omega_numerator = q.g;
    } else {
        // g / square_factor, exact by construction: square_factor takes
        // floor(mult/2) of each g cluster, so ceil(mult/2) survives.
        std::vector<cplx> rem;
        for (const auto& c : q.g_roots.roots) {
            int keep = c.multiplicity - c.multiplicity / 2;
            for (int k = 0; k < keep; ++k) rem.push_back(c.location);
        }
        cov.omega_numerator = Poly::from_roots(q.g.leading(), rem);
    }

    if (cov.omega_numerator.degree() > cov.genus - 1)
        throw ValidationError("build_double_cover: numerator degree exceeds genus - 1");
    return cov;
}

int holomorphic_basis_degree(const DoubleCover& c) { return c.genus; }

} // namespace royden
