#include "royden/quaddiff.hpp"
#include "royden/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace royden {

int Divisor::total_order() const {
    int s = 0;
    for (const auto& e : entries) s += e.order;
    return s;
}

QuadDiff validate(const Poly& g_in, const Poly& h_in, const ValidateOptions& opt) {
    Poly g = trim_leading(g_in, 1e-13);
    Poly h = trim_leading(h_in, 1e-13);
    if (g.is_zero()) throw ZeroNumerator();
    if (h.is_zero()) throw ValidationError("denominator polynomial is zero");
    if (h.degree() < 1) throw DegreeBoundViolated("deg h = 0: no punctures");

    RootOptions ropt{opt.root_tol, opt.cluster_tol, 400};
    RootSet hr = find_roots(h, ropt);
    for (const auto& c : hr.roots)
        if (c.multiplicity > 1)
            throw NotSquarefree("h has a repeated root near (" + std::to_string(c.location.real()) +
                                "," + std::to_string(c.location.imag()) + ")");

    RootSet gr;
    if (g.degree() >= 1) gr = find_roots(g, ropt);

    // Cancel root clusters of g that coincide with roots of h (one h root each,
    // one multiplicity off the g cluster). Both polynomials are rebuilt from
    // their surviving roots, keeping their leading coefficients.
    std::vector<bool> h_cancelled(hr.roots.size(), false);
    bool any_cancel = false;
    for (auto& gc : gr.roots) {
        if (gc.multiplicity == 0) continue;
        for (size_t j = 0; j < hr.roots.size(); ++j) {
            if (h_cancelled[j]) continue;
            double tol = opt.cancel_tol *
                         std::max({1.0, std::abs(gc.location), std::abs(hr.roots[j].location)});
            if (std::abs(gc.location - hr.roots[j].location) <= tol) {
                h_cancelled[j] = true;
                gc.multiplicity -= 1;
                any_cancel = true;
                break;
            }
        }
    }

    if (any_cancel) {
        std::vector<cplx> grem, hrem;
        RootSet gr2, hr2;
        for (const auto& gc : gr.roots) {
            if (gc.multiplicity > 0) gr2.roots.push_back(gc);
            for (int k = 0; k < gc.multiplicity; ++k) grem.push_back(gc.location);
        }
        for (size_t j = 0; j < hr.roots.size(); ++j) {
            if (h_cancelled[j]) continue;
            hr2.roots.push_back(hr.roots[j]);
            hrem.push_back(hr.roots[j].location);
        }
        gr2.cluster_tolerance = gr.cluster_tolerance;
        hr2.cluster_tolerance = hr.cluster_tolerance;
        g = Poly::from_roots(g.leading(), grem);
        h = Poly::from_roots(h.leading(), hrem);
        gr = std::move(gr2);
        hr = std::move(hr2);
    }

    if (h.degree() < 4)
        throw DegreeBoundViolated("deg h = " + std::to_string(h.degree()) +
                                  " < 4 (after cancellation): Q(X) is trivial");
    if (g.degree() > h.degree() - 4)
        throw DegreeBoundViolated("deg g = " + std::to_string(g.degree()) + " exceeds deg h - 4 = " +
                                  std::to_string(h.degree() - 4));

    QuadDiff q;
    q.g = std::move(g);
    q.h = std::move(h);
    q.reduced = true;
    q.g_roots = std::move(gr);
    q.h_roots = std::move(hr);
    return q;
}

Divisor divisor(const QuadDiff& q) {
    if (!q.reduced) throw ValidationError("divisor: differential not reduced");
    Divisor d;
    for (const auto& c : q.h_roots.roots) d.entries.push_back({c.location, false, -1});
    for (const auto& c : q.g_roots.roots) d.entries.push_back({c.location, false, c.multiplicity});
    d.order_at_infinity = q.h.degree() - q.g.degree() - 4;
    if (d.order_at_infinity != 0) d.entries.push_back({cplx(0.0), true, d.order_at_infinity});
    return d;
}

QuadDiff affine_pullback(const QuadDiff& q, cplx a, cplx b, const ValidateOptions& opt) {
    if (a == cplx(0.0)) throw ValidationError("affine_pullback: map is not invertible (a = 0)");
    Poly g2 = (a * a) * compose_affine(q.g, a, b);
    Poly h2 = compose_affine(q.h, a, b);
    cplx lead = h2.leading();
    g2 = (cplx(1.0) / lead) * g2;
    h2 = (cplx(1.0) / lead) * h2;
    return validate(g2, h2, opt);
}

int dimension_of_q(const Poly& h_in, const ValidateOptions& opt) {
    Poly h = trim_leading(h_in, 1e-13);
    if (h.is_zero() || h.degree() < 4)
        throw DegreeBoundViolated("dimension_of_q: deg h < 4");
    RootOptions ropt{opt.root_tol, opt.cluster_tol, 400};
    RootSet hr = find_roots(h, ropt);
    for (const auto& c : hr.roots)
        if (c.multiplicity > 1) throw NotSquarefree("dimension_of_q: h not squarefree");
    return h.degree() - 3;
}

} // namespace royden
