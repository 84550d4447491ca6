#ifndef ROYDEN_QUADRATURE_HPP
#define ROYDEN_QUADRATURE_HPP

#include "royden/poly.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace royden {

/// Result of a vector-valued integration over (0,1).
struct QuadResult {
    std::vector<cplx> value;
    std::vector<double> error; // last-level change per component
    int levels = 0;
    bool converged = false;
};

/// Progressive tanh-sinh (double exponential) quadrature for integrands with
/// integrable endpoint singularities. The callback receives u and 1-u, both
/// computed to full relative precision near the endpoints, and must fill m
/// values. Convergence when every component moves less than tol between
/// trapezoid levels.
QuadResult tanh_sinh(const std::function<void(double u, double one_minus_u, cplx* out)>& f,
                     size_t m, double tol, int max_level = 11);

/// Nodes/weights for Gauss-Legendre on [-1, 1].
template <size_t N>
struct GaussRule {
    std::array<double, N> node;
    std::array<double, N> weight;
};

extern const GaussRule<4> kGauss4;
extern const GaussRule<8> kGauss8;
extern const GaussRule<12> kGauss12;

} // namespace royden

#endif
