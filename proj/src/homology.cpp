#include "royden/homology.hpp"
#include "royden/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace royden {

namespace {

std::vector<double> local_spacing(const std::vector<cplx>& pts) {
    std::vector<double> sp(pts.size(), std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            if (i != j) sp[i] = std::min(sp[i], std::abs(pts[i] - pts[j]));
    return sp;
}

std::vector<int> greedy_chain(const std::vector<cplx>& pts) {
    size_t n = pts.size();
    size_t start = 0;
    for (size_t i = 1; i < n; ++i) {
        if (pts[i].real() < pts[start].real() ||
            (pts[i].real() == pts[start].real() && pts[i].imag() < pts[start].imag()))
            start = i;
    }
    std::vector<int> order;
    std::vector<bool> used(n, false);
    order.push_back(static_cast<int>(start));
    used[start] = true;
    while (order.size() < n) {
        cplx cur = pts[static_cast<size_t>(order.back())];
        int best = -1;
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            double d = std::abs(pts[i] - cur);
            if (d < bestd) {
                bestd = d;
                best = static_cast<int>(i);
            }
        }
        order.push_back(best);
        used[static_cast<size_t>(best)] = true;
    }
    return order;
}

// Reverse chain sections until no two straight edges cross. A proper crossing
// always admits a length-decreasing reversal, so this terminates.
void uncross(std::vector<int>& order, const std::vector<cplx>& pts, double scale) {
    size_t n = order.size();
    double slack = 1e-11 * scale;
    int budget = static_cast<int>(40 * n * n) + 200;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < n && !changed; ++i) {
            for (size_t j = i + 1; j + 1 < n && !changed; ++j) {
                cplx a0 = pts[static_cast<size_t>(order[i])], a1 = pts[static_cast<size_t>(order[i + 1])];
                cplx b0 = pts[static_cast<size_t>(order[j])], b1 = pts[static_cast<size_t>(order[j + 1])];
                bool cross;
                if (j == i + 1) {
                    // Adjacent edges share a1 == b0; any other contact
                    // (collinear overlap) must be removed too.
                    cross = segments_cross(a0, a1, b0, b1, slack) ||
                            distance_to_piece(Segment{a0, a1}, b1) <= slack;
                } else {
                    cross = segments_cross(a0, a1, b0, b1, slack);
                }
                if (cross) {
                    // adjacent edges conflict only through collinearity; the
                    // plain 2-opt range would be empty there, swap instead
                    long hi = static_cast<long>(j) + (j == i + 1 ? 2 : 1);
                    std::reverse(order.begin() + static_cast<long>(i) + 1, order.begin() + hi);
                    changed = true;
                    if (--budget < 0)
                        throw PathConstructionFailed("2-opt budget exhausted while removing crossings");
                }
            }
        }
    }
}

struct Offender {
    double t0, t1; // chord parameter range on the segment
    cplx point;
    double radius;
};

PiecePath build_edge(cplx a, cplx b, const std::vector<cplx>& pts,
                     const std::vector<double>& spacing, double clearance,
                     const std::vector<bool>& flip_side) {
    cplx d = b - a;
    double len2 = std::norm(d);
    std::vector<Offender> offs;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i] - a) == 0.0 || std::abs(pts[i] - b) == 0.0) continue;
        double r = clearance * spacing[i];
        double dist = distance_to_piece(Segment{a, b}, pts[i]);
        if (dist >= r) continue;
        // chord of the circle |x - p| = r on the segment
        cplx f = a - pts[i];
        double B = 2.0 * (f * std::conj(d)).real();
        double C = std::norm(f) - r * r;
        double disc = B * B - 4.0 * len2 * C;
        if (disc <= 0.0) continue; // grazing within rounding: leave alone
        double sq = std::sqrt(disc);
        double t0 = (-B - sq) / (2.0 * len2), t1 = (-B + sq) / (2.0 * len2);
        if (t1 <= 0.0 || t0 >= 1.0) continue;
        offs.push_back({std::max(t0, 0.0), std::min(t1, 1.0), pts[i], r});
    }
    std::sort(offs.begin(), offs.end(), [](const Offender& x, const Offender& y) { return x.t0 < y.t0; });
    for (size_t i = 0; i + 1 < offs.size(); ++i)
        if (offs[i].t1 > offs[i + 1].t0)
            throw PathConstructionFailed("overlapping detour intervals on one edge");

    PiecePath path;
    cplx cursor = a;
    for (size_t i = 0; i < offs.size(); ++i) {
        cplx P = a + offs[i].t0 * d;
        cplx Q = a + offs[i].t1 * d;
        if (std::abs(P - cursor) > 0.0) path.pieces.push_back(Segment{cursor, P});
        double phiP = arg_canon(P - offs[i].point);
        double phiQ = arg_canon(Q - offs[i].point);
        double dphi = phiQ - phiP;
        while (dphi <= -std::numbers::pi) dphi += 2.0 * std::numbers::pi;
        while (dphi > std::numbers::pi) dphi -= 2.0 * std::numbers::pi;
        bool flip = i < flip_side.size() && flip_side[i];
        if (flip) dphi += (dphi > 0 ? -2.0 : 2.0) * std::numbers::pi;
        path.pieces.push_back(Arc{offs[i].point, offs[i].radius, phiP, phiP + dphi});
        cursor = Q;
    }
    path.pieces.push_back(Segment{cursor, b});
    return path;
}

void validate_path_system(const PathSystem& ps, double scale) {
    size_t n = ps.points.size();
    double slack = 1e-9 * scale;

    for (size_t e = 0; e < ps.edges.size(); ++e) {
        for (size_t i = 0; i < n; ++i) {
            const cplx& pt = ps.points[i];
            if (i == e || i == e + 1) continue;
            double thr = ps.clearance * ps.spacing[i];
            for (const auto& piece : ps.edges[e].pieces) {
                if (distance_to_piece(piece, pt) < thr * (1.0 - 1e-9))
                    throw PathConstructionFailed("clearance violated at edge " + std::to_string(e) +
                                                 " near branch point " + std::to_string(i));
            }
        }
    }

    for (size_t e1 = 0; e1 < ps.edges.size(); ++e1) {
        for (size_t e2 = e1 + 1; e2 < ps.edges.size(); ++e2) {
            cplx shared(std::numeric_limits<double>::quiet_NaN(), 0.0);
            if (e2 == e1 + 1) shared = ps.points[e1 + 1];
            for (const auto& p1 : ps.edges[e1].pieces)
                for (const auto& p2 : ps.edges[e2].pieces)
                    if (pieces_intersect(p1, p2, shared, slack))
                        throw PathConstructionFailed("edges " + std::to_string(e1) + " and " +
                                                     std::to_string(e2) + " intersect");
        }
    }
}

} // namespace

PathSystem build_path_system(const DoubleCover& c, double clearance) {
    const auto& pts = c.finite_branch;
    if (pts.size() < 3) throw PathConstructionFailed("need at least 3 finite branch points");

    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, std::abs(p));
    scale = std::max(scale, 1e-12);

    std::vector<int> order = greedy_chain(pts);
    uncross(order, pts, scale);

    PathSystem ps;
    ps.order = order;
    ps.clearance = clearance;
    for (int idx : order) ps.points.push_back(pts[static_cast<size_t>(idx)]);
    ps.spacing = local_spacing(ps.points);

    // Detour side flips are retried a few times if an arc collides with
    // another edge; the homology class is independent of the side.
    std::vector<std::vector<bool>> flips(ps.points.size() - 1);
    for (int attempt = 0;; ++attempt) {
        ps.edges.clear();
        for (size_t i = 0; i + 1 < ps.points.size(); ++i)
            ps.edges.push_back(build_edge(ps.points[i], ps.points[i + 1], ps.points, ps.spacing,
                                          clearance, flips[i]));
        try {
            validate_path_system(ps, scale);
            return ps;
        } catch (const PathConstructionFailed&) {
            if (attempt >= 8) throw;
            // flip the side of one more arc each round, edge by edge
            bool flipped = false;
            for (size_t i = 0; i < ps.edges.size() && !flipped; ++i) {
                size_t arcs = 0;
                for (const auto& piece : ps.edges[i].pieces)
                    if (std::holds_alternative<Arc>(piece)) ++arcs;
                if (flips[i].size() < arcs) {
                    flips[i].resize(arcs, false);
                    for (size_t k = 0; k < arcs; ++k) {
                        if (!flips[i][k]) {
                            flips[i][k] = true;
                            flipped = true;
                            break;
                        }
                    }
                }
            }
            if (!flipped) throw;
        }
    }
}

IntMat int_identity(int n) {
    IntMat m(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    IntMat r(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            long long av = a[i][l];
            if (av == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += av * b[l][j];
        }
    return r;
}

IntMat int_transpose(const IntMat& a) {
    size_t n = a.size(), m = a[0].size();
    IntMat r(m, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

long long int_det(IntMat a) {
    // Bareiss fraction-free elimination; exact for the small sizes used here.
    size_t n = a.size();
    long long prev = 1;
    long long sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

namespace {

void congruence_swap(IntMat& A, IntMat& S, size_t a, size_t b) {
    if (a == b) return;
    for (auto& row : A) std::swap(row[a], row[b]);
    std::swap(A[a], A[b]);
    for (auto& row : S) std::swap(row[a], row[b]);
}

void congruence_negate(IntMat& A, IntMat& S, size_t a) {
    for (auto& row : A) row[a] = -row[a];
    for (auto& v : A[a]) v = -v;
    for (auto& row : S) row[a] = -row[a];
}

// col_dst += lambda * col_src together with the mirrored row operation.
void congruence_addmul(IntMat& A, IntMat& S, size_t dst, size_t src, long long lambda) {
    if (lambda == 0) return;
    size_t n = A.size();
    for (size_t r = 0; r < n; ++r) A[r][dst] += lambda * A[r][src];
    for (size_t c = 0; c < n; ++c) A[dst][c] += lambda * A[src][c];
    for (size_t r = 0; r < S.size(); ++r) S[r][dst] += lambda * S[r][src];
}

long long nearest_div(long long a, long long d) {
    // round(a / d) with ties toward zero; exact integer arithmetic
    long long q = a / d;
    long long r = a - q * d;
    if (2 * std::abs(r) > std::abs(d)) q += (a < 0) == (d < 0) ? 1 : -1;
    return q;
}

} // namespace

IntMat symplectic_reduce(const IntMat& M) {
    size_t n = M.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (M[i][j] != -M[j][i])
                throw ValidationError("symplectic_reduce: matrix is not skew-symmetric");

    IntMat A = M;
    IntMat S = int_identity(static_cast<int>(n));
    size_t p = 0;
    while (p + 1 < n) {
        // smallest nonzero |entry| in the trailing block
        size_t bi = 0, bj = 0;
        long long best = 0;
        for (size_t i = p; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (A[i][j] != 0 && (best == 0 || std::abs(A[i][j]) < best)) {
                    best = std::abs(A[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best == 0) break;

        congruence_swap(A, S, bi, p);
        if (bj == p) bj = bi; // the swap moved it
        congruence_swap(A, S, bj, p + 1);
        if (A[p][p + 1] < 0) congruence_negate(A, S, p + 1);

        long long d = A[p][p + 1];
        bool clear = true;
        for (size_t k = p + 2; k < n; ++k) {
            long long q1 = nearest_div(A[p][k], d);
            congruence_addmul(A, S, k, p + 1, -q1);
            long long q2 = nearest_div(A[p + 1][k], d);
            congruence_addmul(A, S, k, p, q2);
            if (A[p][k] != 0 || A[p + 1][k] != 0) clear = false;
        }
        if (clear) {
            if (d != 1)
                throw NumericalError("symplectic_reduce: nontrivial elementary divisor " +
                                     std::to_string(d));
            p += 2;
        }
        // otherwise a smaller residual entry exists; re-pivot on it
    }

    // Reorder pair-adjacent columns (a1 b1 a2 b2 ...) into (a.. | b..).
    size_t pairs = p / 2;
    std::vector<size_t> perm;
    for (size_t i = 0; i < pairs; ++i) perm.push_back(2 * i);
    for (size_t i = 0; i < pairs; ++i) perm.push_back(2 * i + 1);
    for (size_t i = p; i < n; ++i) perm.push_back(i);
    IntMat S2(n, std::vector<long long>(n, 0));
    for (size_t r = 0; r < n; ++r)
        for (size_t cidx = 0; cidx < n; ++cidx) S2[r][cidx] = S[r][perm[cidx]];

    // Exact verification of the normal form.
    IntMat check = int_mul(int_mul(int_transpose(S2), M), S2);
    size_t g = pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            long long want = 0;
            if (i < g && j == i + g) want = 1;
            if (j < g && i == j + g) want = -1;
            if (check[i][j] != want)
                throw NumericalError("symplectic_reduce: normal form verification failed");
        }
    return S2;
}

CycleBasis chain_cycles(const PathSystem& ps, const DoubleCover& c) {
    size_t n_pts = ps.points.size();
    if (n_pts < 2) throw ValidationError("chain_cycles: degenerate path system");
    size_t n = n_pts - 1;

    CycleBasis cb;
    cb.intersection.assign(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i + 1 < n; ++i) {
        cb.intersection[i][i + 1] = 1;
        cb.intersection[i + 1][i] = -1;
    }
    cb.change_of_basis = symplectic_reduce(cb.intersection);

    // rank = 2 * number of hyperbolic pairs found by the reduction
    IntMat form = int_mul(int_mul(int_transpose(cb.change_of_basis), cb.intersection),
                          cb.change_of_basis);
    int rank = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (form[i][j] != 0) rank = std::max(rank, static_cast<int>(std::max(i, j)) + 1);
    cb.rank = rank;

    if (cb.rank != 2 * c.genus)
        throw RankMismatch("chain cycle rank " + std::to_string(cb.rank) + " != 2*genus = " +
                           std::to_string(2 * c.genus));
    return cb;
}

} // namespace royden
