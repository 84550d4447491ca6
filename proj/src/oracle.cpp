#include "royden/oracle.hpp"
#include "royden/errors.hpp"
#include "royden/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace royden {

double disk_rect_area(double R, double x0, double x1, double y0, double y1) {
    x0 = std::max(x0, -R);
    x1 = std::min(x1, R);
    if (x0 >= x1 || y0 >= y1) return 0.0;

    auto cof = [&](double x) { return std::sqrt(std::max(R * R - x * x, 0.0)); };
    // antiderivative of sqrt(R^2 - x^2)
    auto F = [&](double x) {
        double t = std::clamp(x / R, -1.0, 1.0);
        return 0.5 * (x * cof(x) + R * R * std::asin(t));
    };

    std::vector<double> cuts{x0, x1};
    for (double y : {y0, y1}) {
        if (std::abs(y) < R) {
            double xb = std::sqrt(R * R - y * y);
            for (double c : {-xb, xb})
                if (c > x0 && c < x1) cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    double area = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b - a <= 0.0) continue;
        double mid = 0.5 * (a + b);
        double c = cof(mid);
        double top = std::min(y1, c), bot = std::max(y0, -c);
        if (top <= bot) continue;
        // Which bounds are active is constant on this subinterval.
        double val = 0.0;
        val += (y1 < c) ? y1 * (b - a) : F(b) - F(a);
        val -= (y0 > -c) ? y0 * (b - a) : -(F(b) - F(a));
        area += val;
    }
    return area;
}

namespace {

struct PoleInfo {
    cplx p;
    double radius;
    Poly numerator;
    Poly h_deflated; // h / (x - p), by synthetic division
};

struct Chart {
    std::function<double(cplx)> f; // nonnegative integrand
    double R = 1.0;                // disk radius
    std::vector<PoleInfo> poles;
    double y_lo = -std::numeric_limits<double>::infinity();
    double y_hi = std::numeric_limits<double>::infinity();
};

struct Rect {
    double x0, x1, y0, y1;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double diam() const { return std::hypot(width(), height()); }
};

// Integral of |numerator / h_deflated| over the rectangle in polar
// coordinates around the pole p (the 1/|x-p| factor cancels against the area
// element). p may sit anywhere in the closed rectangle. Sector decomposition:
// for each rectangle edge, the directions whose ray from p hits that edge
// first form an angular interval on which rho_max is smooth.
double pole_cell_polar(const PoleInfo& pole, const Rect& r, bool fine) {
    struct EdgeSpec {
        double off;      // perpendicular distance from p to the edge line
        double phi_n;    // outward normal angle
        double alo, ahi; // interval of direction angles relative to the normal
    };
    double px = pole.p.real(), py = pole.p.imag();
    std::vector<EdgeSpec> edges;
    auto add_edge = [&](double off, double phi_n, double o0, double o1) {
        // o0, o1: signed offsets of the edge's corners along its direction
        if (off <= 0.0) return;
        double a0 = std::atan2(o0, off), a1 = std::atan2(o1, off);
        edges.push_back({off, phi_n, std::min(a0, a1), std::max(a0, a1)});
    };
    add_edge(r.x1 - px, 0.0, r.y0 - py, r.y1 - py);                   // right
    add_edge(py - r.y0, -std::numbers::pi / 2, r.x0 - px, r.x1 - px); // bottom
    add_edge(px - r.x0, std::numbers::pi, py - r.y1, py - r.y0);      // left
    add_edge(r.y1 - py, std::numbers::pi / 2, px - r.x1, px - r.x0);  // top

    const double* an = fine ? kGauss12.node.data() : kGauss8.node.data();
    const double* aw = fine ? kGauss12.weight.data() : kGauss8.weight.data();
    size_t n = fine ? 12 : 8;

    double total = 0.0;
    for (const auto& e : edges) {
        double mid_a = 0.5 * (e.alo + e.ahi), half_a = 0.5 * (e.ahi - e.alo);
        if (half_a <= 0.0) continue;
        for (size_t ia = 0; ia < n; ++ia) {
            double rel = mid_a + half_a * an[ia];
            double rho_max = e.off / std::cos(rel);
            double phi = e.phi_n + rel;
            cplx dir(std::cos(phi), std::sin(phi));
            double inner = 0.0;
            for (size_t ir = 0; ir < n; ++ir) {
                double rho = 0.5 * rho_max * (1.0 + an[ir]);
                cplx x = pole.p + rho * dir;
                inner += aw[ir] * std::abs(pole.numerator(x) / pole.h_deflated(x));
            }
            total += aw[ia] * half_a * inner * 0.5 * rho_max;
        }
    }
    return total;
}

// Tensor Gauss over the part of the rectangle inside the disk: the y range
// is clamped under the circle at each x node.
double gauss_clamped(const Chart& ch, const Rect& r, bool fine) {
    const double* nd = fine ? kGauss8.node.data() : kGauss4.node.data();
    const double* wt = fine ? kGauss8.weight.data() : kGauss4.weight.data();
    size_t n = fine ? 8 : 4;
    double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * (r.x1 - r.x0);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double x = cx + hx * nd[i];
        double c2 = ch.R * ch.R - x * x;
        if (c2 <= 0.0) continue;
        double c = std::sqrt(c2);
        double ylo = std::max(r.y0, -c), yhi = std::min(r.y1, c);
        if (yhi <= ylo) continue;
        double cy = 0.5 * (ylo + yhi), hy = 0.5 * (yhi - ylo);
        double inner = 0.0;
        for (size_t j = 0; j < n; ++j) inner += wt[j] * ch.f(cplx(x, cy + hy * nd[j]));
        total += wt[i] * inner * hy;
    }
    return total * hx;
}

struct Cell {
    Rect rect;
    int depth;
    double value;
    double err;
    long seq; // deterministic tie-break
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.seq > b.seq;
    }
};

struct ChartResult {
    double value_at_tol = 0.0; // checkpoint when the plain tolerance is met
    double value = 0.0;        // refined value, at tol/4
    long cells = 0;
    bool exceeded = false;
};

// Worst-cell-first global refinement: the queue holds per-cell error
// estimates and cells are split until the summed estimate drops below the
// relative budget, then further to a quarter of it for the reported value.
ChartResult run_chart(const Chart& ch, double rel_tol, long max_cells) {
    // bounding square with a deterministic irrational-ish offset so branch
    // points never sit exactly on cell gridlines
    double cx = ch.R * 1.2345678e-2, cy = ch.R * 5.4321098e-3;
    double L = ch.R * 1.03 + std::hypot(cx, cy);

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> queue;
    double total = 0.0, total_err = 0.0;
    long cells = 0;
    long seq = 0;
    constexpr int kMaxDepth = 48;

    auto evaluate = [&](Rect cell, int depth) {
        Cell c{cell, depth, 0.0, 0.0, seq++};
        Rect r = cell;
        r.y0 = std::max(r.y0, ch.y_lo);
        r.y1 = std::min(r.y1, ch.y_hi);
        if (r.y0 >= r.y1 || r.x0 >= r.x1) return c;

        double dx = std::max({r.x0, -r.x1, 0.0});
        double dy = std::max({r.y0, -r.y1, 0.0});
        if (std::hypot(dx, dy) >= ch.R) return c; // fully outside the disk

        for (const auto& pl : ch.poles) {
            if (pl.p.real() >= r.x0 && pl.p.real() <= r.x1 && pl.p.imag() >= r.y0 &&
                pl.p.imag() <= r.y1) {
                if (r.diam() > pl.radius) {
                    // keep splitting before the polar treatment applies
                    c.err = std::numeric_limits<double>::infinity();
                    return c;
                }
                double coarse = pole_cell_polar(pl, r, false);
                c.value = pole_cell_polar(pl, r, true);
                c.err = std::abs(c.value - coarse);
                return c;
            }
        }

        double coarse = gauss_clamped(ch, r, false);
        c.value = gauss_clamped(ch, r, true);
        c.err = std::abs(c.value - coarse);
        return c;
    };

    auto push = [&](Rect r, int depth) {
        Cell c = evaluate(r, depth);
        ++cells;
        total += c.value;
        if (c.err > 0.0) {
            // forced splits carry an infinite sentinel; they sort first but
            // must stay out of the error sum
            if (std::isfinite(c.err)) total_err += c.err;
            queue.push(c);
        }
    };
    push({cx - L, cx + L, cy - L, cy + L}, 0);

    ChartResult res;
    bool checkpointed = false;
    while (!queue.empty()) {
        bool pending_forced = std::isinf(queue.top().err);
        double target = rel_tol * std::max(std::abs(total), 1e-300);
        if (!pending_forced && !checkpointed && total_err <= target) {
            res.value_at_tol = total;
            checkpointed = true;
        }
        if (!pending_forced && total_err <= 0.25 * target) break;
        if (cells >= max_cells || queue.top().depth >= kMaxDepth) {
            res.exceeded = true;
            break;
        }
        Cell worst = queue.top();
        queue.pop();
        total -= worst.value;
        if (std::isfinite(worst.err)) total_err -= worst.err;
        const Rect& r = worst.rect;
        double mx = 0.5 * (r.x0 + r.x1), my = 0.5 * (r.y0 + r.y1);
        push({r.x0, mx, r.y0, my}, worst.depth + 1);
        push({mx, r.x1, r.y0, my}, worst.depth + 1);
        push({r.x0, mx, my, r.y1}, worst.depth + 1);
        push({mx, r.x1, my, r.y1}, worst.depth + 1);
    }
    if (!checkpointed) res.value_at_tol = total;
    res.value = total;
    res.cells = cells;
    return res;
}

Poly reversed(const Poly& p, int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1, cplx(0.0));
    for (int k = 0; k <= deg; ++k) c[static_cast<size_t>(deg - k)] = p.coeff(k);
    return Poly(std::move(c));
}

} // namespace

AreaEstimate direct_norm(const QuadDiff& q, const OracleOptions& opt) {
    if (!q.reduced) throw ValidationError("direct_norm: differential not reduced");

    double maxr = 0.0;
    for (const auto& c : q.h_roots.roots) maxr = std::max(maxr, std::abs(c.location));
    for (const auto& c : q.g_roots.roots) maxr = std::max(maxr, std::abs(c.location));
    double R = std::max(opt.cut_radius_factor * maxr, 1e-3);

    std::vector<cplx> singular_points;
    for (const auto& c : q.h_roots.roots) singular_points.push_back(c.location);
    for (const auto& c : q.g_roots.roots) singular_points.push_back(c.location);

    // inner chart: |g/h| over the disk
    Chart inner;
    inner.R = R;
    const Poly& g = q.g;
    const Poly& h = q.h;
    inner.f = [&g, &h](cplx x) { return std::abs(g(x)) / std::abs(h(x)); };
    if (opt.upper_half_only) inner.y_lo = 0.0;
    for (const auto& c : q.h_roots.roots) {
        double spacing = std::numeric_limits<double>::infinity();
        for (const auto& s : singular_points)
            if (std::abs(s - c.location) > 0.0) spacing = std::min(spacing, std::abs(s - c.location));
        if (!std::isfinite(spacing)) spacing = R;
        // deflate h at the pole by synthetic division
        std::vector<cplx> defl(static_cast<size_t>(h.degree()), cplx(0.0));
        cplx carry(0.0);
        for (int k = h.degree(); k >= 1; --k) {
            carry = h.coeff(k) + carry * c.location;
            defl[static_cast<size_t>(k - 1)] = carry;
        }
        inner.poles.push_back({c.location, opt.pole_exclusion * spacing, g, Poly(std::move(defl))});
    }

    // outer chart: u = 1/x, integrand |u|^(dh-dg-4) |g_rev(u)| / |h_rev(u)|
    int dh = h.degree(), dg = g.degree();
    Poly grev = reversed(g, dg), hrev = reversed(h, dh);
    int upow = dh - dg - 4;
    Chart outer;
    outer.R = 1.0 / R;
    outer.f = [grev, hrev, upow](cplx u) {
        double base = std::abs(grev(u)) / std::abs(hrev(u));
        return base * std::pow(std::abs(u), upow);
    };
    if (opt.upper_half_only) outer.y_hi = 0.0; // Im x >= 0 maps to Im u <= 0

    long max_cells = 1L << std::min(opt.max_depth, 24); // refinement budget
    ChartResult ri = run_chart(inner, opt.tol, max_cells);
    ChartResult ro = run_chart(outer, opt.tol, max_cells);

    AreaEstimate ae;
    ae.value = ri.value + ro.value;
    double a1 = ri.value_at_tol + ro.value_at_tol;
    ae.tolerance = std::max(std::abs(ae.value - a1), 1e-14 * std::abs(ae.value));
    ae.cells_used = ri.cells + ro.cells;
    ae.certified = !ri.exceeded && !ro.exceeded;
    return ae;
}

} // namespace royden
