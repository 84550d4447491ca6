#ifndef ROYDEN_PERIODS_HPP
#define ROYDEN_PERIODS_HPP

#include "royden/cover.hpp"
#include "royden/geometry.hpp"
#include "royden/homology.hpp"

#include <vector>

namespace royden {

struct PeriodOptions {
    double quad_tol = 1e-10; // absolute, per edge integral
    int max_level = 11;
    double riemann_tol = 1e-6;
};

/// Continuous branch of w = sqrt(scale * p(x)) along a piecewise path, kept
/// in factored form sqrt(scale) * prod_j sqrt(x - b_j). Each factor's branch
/// flips exactly where the path crosses that factor's cut; the flip set is
/// precomputed analytically per piece, so values at arbitrary parameters are
/// consistent without sequential stepping.
class TrackedSqrt {
public:
    /// vanish_start/vanish_end: indices into cover.finite_branch of branch
    /// points sitting at the path endpoints (-1 if none). Their vanishing
    /// factors are evaluated from exact parametric displacements.
    TrackedSqrt(const DoubleCover& cover, const PiecePath& path, int vanish_start = -1,
                int vanish_end = -1);

    cplx value(size_t piece, double u) const;
    /// Same, with 1-u supplied exactly (tanh-sinh nodes near u = 1).
    cplx value(size_t piece, double u, double one_minus_u) const;
    cplx start_value() const { return value(0, 0.0); }
    cplx end_value() const { return value(path_->pieces.size() - 1, 1.0); }

    /// lim w(x)/sqrt|x - b| at the path start/end over the vanishing branch
    /// point there; encodes the tracked half-phase used to orient cycles.
    cplx start_factor() const;
    cplx end_factor() const;

    int sign(size_t piece, double u, size_t factor) const; // +-1

private:
    const DoubleCover* cover_;
    const PiecePath* path_;
    int vstart_, vend_;
    cplx sqrt_scale_;
    // events_[factor][piece]: flip parameters, sorted; prefix_[factor][piece]:
    // flip count in earlier pieces
    std::vector<std::vector<std::vector<double>>> events_;
    std::vector<std::vector<int>> prefix_;
};

struct EdgeIntegrals {
    // value[e][k] = integral of x^k dx / w over edge e on the tracked branch
    std::vector<std::vector<cplx>> value;
    std::vector<std::vector<double>> error;
    std::vector<cplx> start_factor, end_factor;
};

EdgeIntegrals integrate_edges(const DoubleCover& c, const PathSystem& ps, int num_powers,
                              const PeriodOptions& opt = {});

/// Single edge integral of x^k dx / w; convenience wrapper used by tests.
cplx edge_integral(const DoubleCover& c, const PiecePath& path, int vanish_start, int vanish_end,
                   int k, double tol, double* error_out = nullptr);

struct BigPeriodMatrix {
    int genus = 0;
    std::vector<std::vector<cplx>> mat;  // genus rows x 2*genus columns (a | b)
    std::vector<std::vector<double>> err;
    std::vector<std::vector<cplx>> tau;  // genus x genus
    double tau_symmetry_rel = 0.0;       // max |tau - tau^T| / max |tau|
    double tau_min_imag_eig = 0.0;
    double kernel_period_max = 0.0;      // |period| over null chain combinations
    bool ab_swapped = false;
};

/// Periods of the holomorphic basis x^k dx/w over the symplectic cycle basis,
/// assembled from tracked edge integrals. Validates the Riemann bilinear
/// relations and throws RiemannRelationViolation on failure.
BigPeriodMatrix big_period_matrix(const DoubleCover& c, const PathSystem& ps, const CycleBasis& cb,
                                  const PeriodOptions& opt = {});

/// Solve A x = b for small complex systems (partial pivoting).
std::vector<cplx> solve_complex(std::vector<std::vector<cplx>> a, std::vector<cplx> b);

/// Smallest eigenvalue of a symmetric real matrix (Jacobi sweeps).
double min_symmetric_eigenvalue(std::vector<std::vector<double>> a);

} // namespace royden

#endif
