#include "royden/poly.hpp"
#include "royden/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace royden {

namespace {

void strip_exact_zeros(std::vector<cplx>& c) {
    while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
}

bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

Poly::Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) { strip_exact_zeros(c); }
Poly::Poly(std::initializer_list<cplx> coeffs) : c(coeffs) { strip_exact_zeros(c); }

Poly Poly::from_roots(cplx leading, const std::vector<cplx>& roots) {
    Poly p = Poly::constant(leading);
    for (const cplx& r : roots) p = p * Poly({-r, cplx(1.0)});
    return p;
}

double Poly::coeff_scale() const {
    double m = 0.0;
    for (const cplx& v : c) m = std::max(m, std::abs(v));
    return m;
}

cplx Poly::operator()(cplx x) const {
    cplx acc(0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double Poly::magnitude_at(double absx) const {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * absx + std::abs(c[i]);
    return acc;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly::zero();
    std::vector<cplx> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return (cplx(1.0) / leading()) * (*this);
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    std::vector<cplx> r(a.c.size() + b.c.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
}

Poly operator*(cplx s, const Poly& p) {
    std::vector<cplx> r = p.c;
    for (cplx& v : r) v *= s;
    return Poly(std::move(r));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<cplx> r(std::max(a.c.size(), b.c.size()), cplx(0.0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (cplx(-1.0) * b); }

bool approx_equal(const Poly& a, const Poly& b, double tol) {
    size_t n = std::max(a.c.size(), b.c.size());
    double scale = std::max({a.coeff_scale(), b.coeff_scale(), 1e-300});
    for (size_t i = 0; i < n; ++i)
        if (std::abs(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i))) > tol * scale)
            return false;
    return true;
}

Poly trim_leading(const Poly& p, double rel_tol) {
    if (p.is_zero()) return p;
    double scale = p.coeff_scale();
    std::vector<cplx> c = p.c;
    while (!c.empty() && std::abs(c.back()) < rel_tol * scale) c.pop_back();
    return Poly(std::move(c));
}

Poly compose_affine(const Poly& p, cplx a, cplx b) {
    Poly lin({b, a});
    Poly acc = Poly::zero();
    for (size_t i = p.c.size(); i-- > 0;) acc = acc * lin + Poly::constant(p.c[i]);
    return acc;
}

int RootSet::total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
}

std::vector<cplx> RootSet::distinct() const {
    std::vector<cplx> v;
    v.reserve(roots.size());
    for (const auto& r : roots) v.push_back(r.location);
    return v;
}

std::vector<cplx> RootSet::expanded() const {
    std::vector<cplx> v;
    for (const auto& r : roots)
        for (int i = 0; i < r.multiplicity; ++i) v.push_back(r.location);
    return v;
}

namespace {

// Fujiwara bound: every root has |z| <= 2 max_k |c_{n-k}/c_n|^{1/k}
// (the k = n term halved).
double fujiwara_bound(const Poly& p) {
    int n = p.degree();
    double an = std::abs(p.c.back());
    double bound = 0.0;
    for (int k = 1; k <= n; ++k) {
        double num = std::abs(p.coeff(n - k));
        if (k == n) num *= 0.5;
        if (num == 0.0) continue;
        bound = std::max(bound, std::pow(num / an, 1.0 / k));
    }
    return 2.0 * bound;
}

void merge_within(std::vector<RootCluster>& clusters, double rel_tol) {
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i < clusters.size() && !merged; ++i) {
            for (size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                double tol = rel_tol * std::max({1.0, std::abs(clusters[i].location),
                                                 std::abs(clusters[j].location)});
                if (std::abs(clusters[i].location - clusters[j].location) <= tol) {
                    int mi = clusters[i].multiplicity, mj = clusters[j].multiplicity;
                    clusters[i].location = (static_cast<double>(mi) * clusters[i].location +
                                            static_cast<double>(mj) * clusters[j].location) /
                                           static_cast<double>(mi + mj);
                    clusters[i].multiplicity = mi + mj;
                    clusters.erase(clusters.begin() + static_cast<long>(j));
                    merged = true;
                }
            }
        }
    }
}

// An m-fold root must annihilate p, p', ..., p^(m-1). For a candidate merged
// center this is checkable with backward-error tolerances scaled by
// eps^((m-j)/m), the attainable accuracy around an m-fold root in doubles.
bool verify_multiplicity(const Poly& p, cplx center, int m) {
    constexpr double eps = 2.22e-16;
    Poly d = p;
    for (int j = 0; j < m; ++j) {
        double bound = 100.0 * std::pow(eps, static_cast<double>(m - j) / m) *
                           d.magnitude_at(std::abs(center)) +
                       1e-300;
        if (std::abs(d(center)) > bound) return false;
        d = d.derivative();
    }
    return true;
}

// Newton on p^(m-1), where an m-fold root of p is simple.
cplx polish_center(const Poly& p, cplx center, int m) {
    Poly d = p;
    for (int j = 0; j + 1 < m; ++j) d = d.derivative();
    Poly dd = d.derivative();
    cplx z = center;
    for (int it = 0; it < 8; ++it) {
        cplx dv = dd(z);
        if (dv == cplx(0.0)) break;
        cplx step = d(z) / dv;
        z -= step;
        if (std::abs(step) <= 4e-16 * (1.0 + std::abs(z))) break;
    }
    // keep the polish only if it stayed in the cluster's neighborhood
    if (std::abs(z - center) > 1e-3 * (1.0 + std::abs(center))) return center;
    return z;
}

std::vector<RootCluster> cluster_points(std::vector<cplx> pts, const Poly& p, double cluster_tol) {
    constexpr double eps = 2.22e-16;
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<RootCluster> clusters;
    for (const cplx& z : pts) clusters.push_back({z, 1});
    merge_within(clusters, cluster_tol);

    // Escalating tolerance pass: approximations of an m-fold root settle at
    // radius ~ eps^(1/m), wider than cluster_tol for m >= 2. Tentative merges
    // at each level are kept only when the merged center really annihilates
    // the first m-1 derivatives.
    int n = static_cast<int>(pts.size());
    for (int level = 2; level <= n; ++level) {
        double tol = std::max(cluster_tol, 10.0 * std::pow(eps, 1.0 / level));
        bool merged = true;
        while (merged) {
            merged = false;
            for (size_t i = 0; i < clusters.size() && !merged; ++i) {
                for (size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                    int m = clusters[i].multiplicity + clusters[j].multiplicity;
                    if (m > level) continue;
                    double t = tol * std::max({1.0, std::abs(clusters[i].location),
                                               std::abs(clusters[j].location)});
                    if (std::abs(clusters[i].location - clusters[j].location) > t) continue;
                    int mi = clusters[i].multiplicity, mj = clusters[j].multiplicity;
                    cplx center = (static_cast<double>(mi) * clusters[i].location +
                                   static_cast<double>(mj) * clusters[j].location) /
                                  static_cast<double>(m);
                    if (!verify_multiplicity(p, center, m)) continue;
                    clusters[i] = {center, m};
                    clusters.erase(clusters.begin() + static_cast<long>(j));
                    merged = true;
                }
            }
        }
    }

    for (auto& c : clusters)
        if (c.multiplicity > 1) c.location = polish_center(p, c.location, c.multiplicity);
    merge_within(clusters, cluster_tol); // restore pairwise separation

    std::sort(clusters.begin(), clusters.end(),
              [](const RootCluster& a, const RootCluster& b) { return lex_less(a.location, b.location); });
    return clusters;
}

} // namespace

RootSet find_roots(const Poly& p_in, const RootOptions& opt) {
    if (p_in.is_zero()) throw ValidationError("find_roots: zero polynomial");
    Poly p = trim_leading(p_in, 1e-13);
    if (p.degree() < 1) throw ValidationError("find_roots: polynomial has degree 0");

    // Exact zero roots deflate exactly.
    int zero_mult = 0;
    std::vector<cplx> coeffs = p.c;
    while (!coeffs.empty() && coeffs.front() == cplx(0.0)) {
        coeffs.erase(coeffs.begin());
        ++zero_mult;
    }
    Poly q(std::move(coeffs));

    std::vector<cplx> approx;
    int n = q.degree();
    if (n == 1) {
        approx.push_back(-q.c[0] / q.c[1]);
    } else if (n >= 2) {
        Poly dq = q.derivative();
        double radius = fujiwara_bound(q);
        if (radius == 0.0) radius = 1.0;

        std::vector<cplx> z(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            double ang = 2.0 * std::numbers::pi * (j + 0.354) / n;
            z[static_cast<size_t>(j)] = radius * cplx(std::cos(ang), std::sin(ang));
        }

        // Iterate past the residual target: approximations around a multiple
        // root keep contracting linearly after the residual test first
        // passes, and the cluster stage needs them settled.
        bool converged = false;
        int settle = 0;
        double worst = 0.0;
        for (int it = 0; it < opt.max_iterations + 30 && settle < 30; ++it) {
            if (it >= opt.max_iterations && !converged) break;
            for (int j = 0; j < n; ++j) {
                cplx zj = z[static_cast<size_t>(j)];
                cplx pv = q(zj);
                cplx dv = dq(zj);
                if (dv == cplx(0.0)) {
                    z[static_cast<size_t>(j)] += 1e-8 * (1.0 + std::abs(zj)) * cplx(1.0, 1.0);
                    continue;
                }
                cplx newton = pv / dv;
                cplx s(0.0);
                for (int k = 0; k < n; ++k) {
                    if (k == j) continue;
                    cplx d = zj - z[static_cast<size_t>(k)];
                    if (d == cplx(0.0)) d = 1e-14 * (1.0 + std::abs(zj));
                    s += cplx(1.0) / d;
                }
                cplx denom = cplx(1.0) - newton * s;
                cplx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
                z[static_cast<size_t>(j)] = zj - step;
            }
            bool ok = true;
            worst = 0.0;
            for (int j = 0; j < n; ++j) {
                cplx zj = z[static_cast<size_t>(j)];
                double resid = std::abs(q(zj));
                double scale = q.magnitude_at(std::abs(zj));
                double rel = (scale > 0.0) ? resid / scale : resid;
                worst = std::max(worst, rel);
                if (rel > opt.residual_tol) ok = false;
            }
            if (ok) {
                converged = true;
                ++settle;
            }
        }
        if (!converged)
            throw RootConvergenceError("find_roots: residual target not met after iteration budget", worst);
        approx = z;
    }

    RootSet rs;
    rs.cluster_tolerance = opt.cluster_tol;
    rs.roots = cluster_points(approx, q, opt.cluster_tol);
    if (zero_mult > 0) {
        // Merge an exact zero root with a cluster already at the origin if any.
        bool placed = false;
        for (auto& c : rs.roots) {
            if (std::abs(c.location) <= opt.cluster_tol) {
                c.multiplicity += zero_mult;
                c.location *= static_cast<double>(c.multiplicity - zero_mult) /
                              static_cast<double>(c.multiplicity);
                placed = true;
                break;
            }
        }
        if (!placed) rs.roots.push_back({cplx(0.0), zero_mult});
        std::sort(rs.roots.begin(), rs.roots.end(),
                  [](const RootCluster& a, const RootCluster& b) { return lex_less(a.location, b.location); });
    }
    return rs;
}

Poly gcd_by_roots(const Poly& p, const Poly& q, double match_tol, const RootOptions& opt) {
    if (p.is_zero() || q.is_zero()) throw ValidationError("gcd_by_roots: zero polynomial");
    if (trim_leading(p).degree() < 1 || trim_leading(q).degree() < 1) return Poly::one();
    RootSet rp = find_roots(p, opt);
    RootSet rq = find_roots(q, opt);

    // Greedy closest-pair matching; fine at these sizes.
    struct Pair { double dist; size_t i, j; };
    std::vector<Pair> pairs;
    for (size_t i = 0; i < rp.roots.size(); ++i)
        for (size_t j = 0; j < rq.roots.size(); ++j) {
            double d = std::abs(rp.roots[i].location - rq.roots[j].location);
            double tol = match_tol * std::max({1.0, std::abs(rp.roots[i].location),
                                               std::abs(rq.roots[j].location)});
            if (d <= tol) pairs.push_back({d, i, j});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<bool> usedp(rp.roots.size(), false), usedq(rq.roots.size(), false);
    std::vector<cplx> roots;
    for (const auto& pr : pairs) {
        if (usedp[pr.i] || usedq[pr.j]) continue;
        usedp[pr.i] = usedq[pr.j] = true;
        cplx mid = 0.5 * (rp.roots[pr.i].location + rq.roots[pr.j].location);
        int m = std::min(rp.roots[pr.i].multiplicity, rq.roots[pr.j].multiplicity);
        for (int k = 0; k < m; ++k) roots.push_back(mid);
    }
    if (roots.empty()) return Poly::one();
    return Poly::from_roots(cplx(1.0), roots);
}

Poly squarefree_part(const Poly& p, const RootOptions& opt) {
    if (p.is_zero()) throw ValidationError("squarefree_part: zero polynomial");
    if (trim_leading(p).degree() < 1) return Poly::one();
    RootSet rs = find_roots(p, opt);
    return Poly::from_roots(cplx(1.0), rs.distinct());
}

} // namespace royden
