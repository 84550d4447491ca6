#include "royden/periods.hpp"
#include "royden/errors.hpp"
#include "royden/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace royden {

TrackedSqrt::TrackedSqrt(const DoubleCover& cover, const PiecePath& path, int vanish_start,
                         int vanish_end)
    : cover_(&cover), path_(&path), vstart_(vanish_start), vend_(vanish_end) {
    sqrt_scale_ = sqrt_canon(cover.scale);
    size_t nf = cover.finite_branch.size();
    size_t np = path.pieces.size();
    events_.assign(nf, {});
    prefix_.assign(nf, std::vector<int>(np + 1, 0));
    for (size_t j = 0; j < nf; ++j) {
        events_[j].resize(np);
        for (size_t m = 0; m < np; ++m) {
            events_[j][m] = cut_crossings(path.pieces[m], cover.finite_branch[j]);
            prefix_[j][m + 1] = prefix_[j][m] + static_cast<int>(events_[j][m].size());
        }
    }
}

int TrackedSqrt::sign(size_t piece, double u, size_t factor) const {
    int count = prefix_[factor][piece];
    for (double e : events_[factor][piece]) {
        if (e <= u) ++count;
        else break;
    }
    return (count % 2 == 0) ? 1 : -1;
}

cplx TrackedSqrt::value(size_t piece, double u) const { return value(piece, u, 1.0 - u); }

cplx TrackedSqrt::value(size_t piece, double u, double one_minus_u) const {
    const Piece& pc = path_->pieces[piece];
    cplx x = piece_point(pc, u);
    bool first = piece == 0, last = piece + 1 == path_->pieces.size();
    cplx w = sqrt_scale_;
    for (size_t j = 0; j < cover_->finite_branch.size(); ++j) {
        cplx delta;
        if (first && static_cast<int>(j) == vstart_) {
            const auto& seg = std::get<Segment>(pc);
            delta = u * (seg.b - seg.a);
        } else if (last && static_cast<int>(j) == vend_) {
            const auto& seg = std::get<Segment>(pc);
            delta = -one_minus_u * (seg.b - seg.a);
        } else {
            delta = x - cover_->finite_branch[j];
        }
        w *= static_cast<double>(sign(piece, u, j)) * sqrt_canon(delta);
    }
    return w;
}

cplx TrackedSqrt::start_factor() const {
    cplx b = path_->start();
    cplx dir = piece_velocity(path_->pieces.front(), 0.0);
    dir /= std::abs(dir);
    cplx f = sqrt_scale_ * std::exp(cplx(0.0, 0.5 * arg_canon(dir)));
    for (size_t j = 0; j < cover_->finite_branch.size(); ++j) {
        if (static_cast<int>(j) == vstart_) continue;
        f *= sqrt_canon(b - cover_->finite_branch[j]);
    }
    return f;
}

cplx TrackedSqrt::end_factor() const {
    size_t lastp = path_->pieces.size() - 1;
    cplx b = path_->end();
    cplx dir = -piece_velocity(path_->pieces[lastp], 1.0);
    dir /= std::abs(dir);
    cplx f = sqrt_scale_ * std::exp(cplx(0.0, 0.5 * arg_canon(dir)));
    for (size_t j = 0; j < cover_->finite_branch.size(); ++j) {
        double s = static_cast<double>(sign(lastp, 1.0, j));
        if (static_cast<int>(j) == vend_) {
            f *= s;
        } else {
            f *= s * sqrt_canon(b - cover_->finite_branch[j]);
        }
    }
    return f;
}

namespace {

// Integral of x^k dx / w over one piece, all powers at once.
QuadResult integrate_piece(const TrackedSqrt& ts, const PiecePath& path, size_t piece,
                           int num_powers, double tol, int max_level) {
    const Piece& pc = path.pieces[piece];
    auto f = [&](double u, double omu, cplx* out) {
        cplx x = piece_point(pc, u);
        cplx w = ts.value(piece, u, omu);
        cplx pref = piece_velocity(pc, u) / w;
        cplx xc(1.0);
        for (int k = 0; k < num_powers; ++k) {
            out[k] = pref * xc;
            xc *= x;
        }
    };
    return tanh_sinh(f, static_cast<size_t>(num_powers), tol, max_level);
}

} // namespace

EdgeIntegrals integrate_edges(const DoubleCover& c, const PathSystem& ps, int num_powers,
                              const PeriodOptions& opt) {
    size_t ne = ps.edges.size();
    EdgeIntegrals ei;
    ei.value.assign(ne, std::vector<cplx>(static_cast<size_t>(num_powers), cplx(0.0)));
    ei.error.assign(ne, std::vector<double>(static_cast<size_t>(num_powers), 0.0));
    ei.start_factor.resize(ne);
    ei.end_factor.resize(ne);

    for (size_t e = 0; e < ne; ++e) {
        TrackedSqrt ts(c, ps.edges[e], ps.order[e], ps.order[e + 1]);
        size_t np = ps.edges[e].pieces.size();
        double tol = opt.quad_tol / static_cast<double>(np);
        for (size_t m = 0; m < np; ++m) {
            QuadResult qr = integrate_piece(ts, ps.edges[e], m, num_powers, tol, opt.max_level);
            if (!qr.converged) {
                double worst = 0.0;
                for (double err : qr.error) worst = std::max(worst, err);
                throw QuadratureStalled("edge " + std::to_string(e) + " piece " + std::to_string(m) +
                                            ": tolerance not reached at max level",
                                        worst);
            }
            for (int k = 0; k < num_powers; ++k) {
                ei.value[e][static_cast<size_t>(k)] += qr.value[static_cast<size_t>(k)];
                ei.error[e][static_cast<size_t>(k)] += qr.error[static_cast<size_t>(k)];
            }
        }
        ei.start_factor[e] = ts.start_factor();
        ei.end_factor[e] = ts.end_factor();
    }
    return ei;
}

cplx edge_integral(const DoubleCover& c, const PiecePath& path, int vanish_start, int vanish_end,
                   int k, double tol, double* error_out) {
    TrackedSqrt ts(c, path, vanish_start, vanish_end);
    cplx total(0.0);
    double err = 0.0;
    size_t np = path.pieces.size();
    for (size_t m = 0; m < np; ++m) {
        QuadResult qr = integrate_piece(ts, path, m, k + 1, tol / static_cast<double>(np), 11);
        if (!qr.converged)
            throw QuadratureStalled("edge_integral: tolerance not reached", qr.error.back());
        total += qr.value[static_cast<size_t>(k)];
        err += qr.error[static_cast<size_t>(k)];
    }
    if (error_out) *error_out = err;
    return total;
}

std::vector<cplx> solve_complex(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) throw NumericalError("solve_complex: singular matrix");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < n; ++r) {
            cplx f = a[r][col] / a[col][col];
            for (size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

double min_symmetric_eigenvalue(std::vector<std::vector<double>> a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-28) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                double cs = std::cos(theta), sn = std::sin(theta);
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    double mn = a[0][0];
    for (size_t i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

namespace {

struct TauCheck {
    std::vector<std::vector<cplx>> tau;
    double sym_rel = 0.0;
    double min_eig = 0.0;
};

TauCheck check_riemann(const std::vector<std::vector<cplx>>& mat, int g) {
    // tau = Pi_a^{-1} Pi_b, solved column by column
    std::vector<std::vector<cplx>> pa(static_cast<size_t>(g), std::vector<cplx>(static_cast<size_t>(g)));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) pa[static_cast<size_t>(i)][static_cast<size_t>(j)] = mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
    TauCheck tc;
    tc.tau.assign(static_cast<size_t>(g), std::vector<cplx>(static_cast<size_t>(g)));
    for (int col = 0; col < g; ++col) {
        std::vector<cplx> rhs(static_cast<size_t>(g));
        for (int i = 0; i < g; ++i) rhs[static_cast<size_t>(i)] = mat[static_cast<size_t>(i)][static_cast<size_t>(g + col)];
        std::vector<cplx> x = solve_complex(pa, rhs);
        for (int i = 0; i < g; ++i) tc.tau[static_cast<size_t>(i)][static_cast<size_t>(col)] = x[static_cast<size_t>(i)];
    }
    double mx = 0.0, defect = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            mx = std::max(mx, std::abs(tc.tau[static_cast<size_t>(i)][static_cast<size_t>(j)]));
            defect = std::max(defect, std::abs(tc.tau[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                               tc.tau[static_cast<size_t>(j)][static_cast<size_t>(i)]));
        }
    tc.sym_rel = (mx > 0) ? defect / mx : 0.0;
    std::vector<std::vector<double>> im(static_cast<size_t>(g), std::vector<double>(static_cast<size_t>(g)));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) im[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            0.5 * (tc.tau[static_cast<size_t>(i)][static_cast<size_t>(j)].imag() +
                   tc.tau[static_cast<size_t>(j)][static_cast<size_t>(i)].imag());
    tc.min_eig = min_symmetric_eigenvalue(im);
    return tc;
}

} // namespace

BigPeriodMatrix big_period_matrix(const DoubleCover& c, const PathSystem& ps, const CycleBasis& cb,
                                  const PeriodOptions& opt) {
    int g = c.genus;
    size_t ne = ps.edges.size();
    EdgeIntegrals ei = integrate_edges(c, ps, g, opt);

    // Orientation signs via the tracked half-phases at the shared branch
    // points: consecutive chain cycles intersect once there, and the sign of
    // the crossing is the sign of the tangent determinant on the cover.
    std::vector<double> sigma(ne, 1.0);
    for (size_t e = 0; e + 1 < ne; ++e) {
        cplx u = ei.end_factor[e];
        cplx v = ei.start_factor[e + 1];
        double s = (std::conj(u) * v).imag();
        if (s == 0.0)
            throw NumericalError("big_period_matrix: degenerate cycle tangents at chain point " +
                                 std::to_string(e + 1));
        double eps = (s < 0.0) ? 1.0 : -1.0;
        sigma[e + 1] = sigma[e] * eps;
    }

    // Chain cycle periods: a pair loop integrates the edge twice.
    std::vector<std::vector<cplx>> chain(static_cast<size_t>(g), std::vector<cplx>(ne));
    std::vector<std::vector<double>> chain_err(static_cast<size_t>(g), std::vector<double>(ne));
    for (int k = 0; k < g; ++k)
        for (size_t e = 0; e < ne; ++e) {
            chain[static_cast<size_t>(k)][e] = 2.0 * sigma[e] * ei.value[e][static_cast<size_t>(k)];
            chain_err[static_cast<size_t>(k)][e] = 2.0 * ei.error[e][static_cast<size_t>(k)];
        }

    const IntMat& S = cb.change_of_basis;
    BigPeriodMatrix bpm;
    bpm.genus = g;
    bpm.mat.assign(static_cast<size_t>(g), std::vector<cplx>(static_cast<size_t>(2 * g), cplx(0.0)));
    bpm.err.assign(static_cast<size_t>(g), std::vector<double>(static_cast<size_t>(2 * g), 0.0));
    for (int k = 0; k < g; ++k) {
        for (size_t j = 0; j < ne; ++j) {
            cplx acc(0.0);
            double err = 0.0;
            for (size_t e = 0; e < ne; ++e) {
                double s = static_cast<double>(S[e][j]);
                if (s == 0.0) continue;
                acc += s * chain[static_cast<size_t>(k)][e];
                err += std::abs(s) * chain_err[static_cast<size_t>(k)][e];
            }
            if (j < static_cast<size_t>(2 * g)) {
                bpm.mat[static_cast<size_t>(k)][j] = acc;
                bpm.err[static_cast<size_t>(k)][j] = err;
            } else {
                // null combination on the cover: its period is a consistency check
                bpm.kernel_period_max = std::max(bpm.kernel_period_max, std::abs(acc));
            }
        }
    }

    TauCheck tc = check_riemann(bpm.mat, g);
    if (tc.sym_rel <= opt.riemann_tol && tc.min_eig < 0.0) {
        // Negative definite imaginary part: the a/b labeling is mirrored,
        // which is an allowed relabeling; swap the halves.
        std::vector<std::vector<double>> im(static_cast<size_t>(g), std::vector<double>(static_cast<size_t>(g)));
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) im[static_cast<size_t>(i)][static_cast<size_t>(j)] = -tc.tau[static_cast<size_t>(i)][static_cast<size_t>(j)].imag();
        if (min_symmetric_eigenvalue(im) > 0.0) {
            for (int k = 0; k < g; ++k)
                for (int j = 0; j < g; ++j) {
                    std::swap(bpm.mat[static_cast<size_t>(k)][static_cast<size_t>(j)],
                              bpm.mat[static_cast<size_t>(k)][static_cast<size_t>(g + j)]);
                    std::swap(bpm.err[static_cast<size_t>(k)][static_cast<size_t>(j)],
                              bpm.err[static_cast<size_t>(k)][static_cast<size_t>(g + j)]);
                }
            bpm.ab_swapped = true;
            tc = check_riemann(bpm.mat, g);
        }
    }
    bpm.tau = tc.tau;
    bpm.tau_symmetry_rel = tc.sym_rel;
    bpm.tau_min_imag_eig = tc.min_eig;

    if (tc.sym_rel > opt.riemann_tol)
        throw RiemannRelationViolation("period matrix fails tau symmetry", tc.sym_rel);
    if (tc.min_eig <= 0.0)
        throw RiemannRelationViolation("Im(tau) is not positive definite", tc.min_eig);
    return bpm;
}

} // namespace royden
