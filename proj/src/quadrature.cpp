#include "royden/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace royden {

namespace {

constexpr double kTMax = 5.0;
constexpr double kPiHalf = std::numbers::pi / 2.0;

// u(t) = sigmoid(pi*sinh(t)); du/dt = pi*cosh(t)*u*(1-u)
struct Node {
    double u, one_minus_u, weight;
    bool usable;
};

Node make_node(double t) {
    double s = 2.0 * kPiHalf * std::sinh(t);
    double u, omu;
    if (s >= 0) {
        double e = std::exp(-s);
        u = 1.0 / (1.0 + e);
        omu = e / (1.0 + e);
    } else {
        double e = std::exp(s);
        u = e / (1.0 + e);
        omu = 1.0 / (1.0 + e);
    }
    double w = 2.0 * kPiHalf * std::cosh(t) * u * omu;
    return {u, omu, w, u > 0.0 && omu > 0.0 && w > 0.0};
}

} // namespace

QuadResult tanh_sinh(const std::function<void(double, double, cplx*)>& f, size_t m, double tol,
                     int max_level) {
    QuadResult res;
    res.value.assign(m, cplx(0.0));
    res.error.assign(m, 0.0);
    std::vector<cplx> buf(m);
    std::vector<cplx> prev(m, cplx(0.0));

    double h = 1.0;
    std::vector<cplx> sum(m, cplx(0.0)); // sum of w*f over all nodes so far, unscaled by h

    for (int level = 0; level <= max_level; ++level) {
        // level 0: all integer nodes; level > 0: odd multiples of h only
        long kmax = static_cast<long>(std::floor(kTMax / h));
        for (long k = -kmax; k <= kmax; ++k) {
            if (level > 0 && (k % 2 == 0)) continue;
            Node nd = make_node(static_cast<double>(k) * h);
            if (!nd.usable) continue;
            f(nd.u, nd.one_minus_u, buf.data());
            for (size_t i = 0; i < m; ++i) sum[i] += nd.weight * buf[i];
        }
        for (size_t i = 0; i < m; ++i) res.value[i] = h * sum[i];
        res.levels = level;

        if (level >= 2) {
            bool ok = true;
            for (size_t i = 0; i < m; ++i) {
                res.error[i] = std::abs(res.value[i] - prev[i]);
                if (res.error[i] > tol) ok = false;
            }
            if (ok) {
                res.converged = true;
                return res;
            }
        }
        prev = res.value;
        h *= 0.5;
    }
    for (size_t i = 0; i < m; ++i) res.error[i] = std::abs(res.value[i] - prev[i]);
    res.converged = false;
    return res;
}

const GaussRule<4> kGauss4 = {
    {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
    {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}};

const GaussRule<8> kGauss8 = {
    {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
     0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
    {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
     0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763}};

const GaussRule<12> kGauss12 = {
    {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
     -0.3678314989981802, -0.1252334085114689, 0.1252334085114689, 0.3678314989981802,
     0.5873179542866175, 0.7699026741943047, 0.9041172563704749, 0.9815606342467192},
    {0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
     0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
     0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118}};

} // namespace royden
