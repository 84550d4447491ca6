#ifndef ROYDEN_POLY_HPP
#define ROYDEN_POLY_HPP

#include <complex>
#include <initializer_list>
#include <vector>

namespace royden {

using cplx = std::complex<double>;

/// Univariate complex polynomial, coefficients stored low-to-high degree.
/// The coefficient list never ends in an exact zero; the zero polynomial is
/// the empty list. No other normalization is applied: evaluation is exact
/// for the stored coefficients.
struct Poly {
    std::vector<cplx> c;

    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs);
    Poly(std::initializer_list<cplx> coeffs);

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly({cplx(1.0)}); }
    static Poly constant(cplx v) { return Poly({v}); }
    /// leading * prod (x - r_i), expanded.
    static Poly from_roots(cplx leading, const std::vector<cplx>& roots);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    cplx leading() const { return c.empty() ? cplx(0.0) : c.back(); }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<size_t>(k)] : cplx(0.0);
    }
    double coeff_scale() const; // max_k |c_k|

    cplx operator()(cplx x) const; // Horner
    /// sum_k |c_k| |x|^k, the natural residual scale at x.
    double magnitude_at(double absx) const;

    Poly derivative() const;
    Poly monic() const;
};

Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx s, const Poly& p);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
bool approx_equal(const Poly& a, const Poly& b, double tol);

/// Drop leading coefficients with |c_n| < rel_tol * max|c_k|; near-degenerate
/// leading terms otherwise produce spurious huge roots.
Poly trim_leading(const Poly& p, double rel_tol = 1e-13);

/// p(a*x + b), expanded.
Poly compose_affine(const Poly& p, cplx a, cplx b);

struct RootCluster {
    cplx location;
    int multiplicity = 1;
};

/// Roots merged into clusters: numerically coincident roots are reported once
/// with summed multiplicity. Sum of multiplicities equals the degree.
struct RootSet {
    std::vector<RootCluster> roots;
    double cluster_tolerance = 0.0;

    int total_multiplicity() const;
    std::vector<cplx> distinct() const;
    /// All roots with multiplicity expanded.
    std::vector<cplx> expanded() const;
};

struct RootOptions {
    double residual_tol = 1e-12; // |p(r)| <= residual_tol * sum|c_k||r|^k
    double cluster_tol = 1e-8;   // relative to max(1, |root|)
    int max_iterations = 400;
};

/// Simultaneous (Aberth-Ehrlich) root finding with deterministic initial
/// guesses on the Fujiwara bound circle. Throws RootConvergenceError with the
/// worst residual if the iteration budget runs out.
RootSet find_roots(const Poly& p, const RootOptions& opt = {});

/// Monic polynomial whose roots are the root clusters shared by p and q
/// within match_tol (relative), with the minimum of the two multiplicities.
/// Returns 1 when no clusters match.
Poly gcd_by_roots(const Poly& p, const Poly& q, double match_tol,
                  const RootOptions& opt = {});

/// Monic polynomial with the same distinct root locations, all simple.
Poly squarefree_part(const Poly& p, const RootOptions& opt = {});

} // namespace royden

#endif
