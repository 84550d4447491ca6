#ifndef ROYDEN_TESTS_AGM_ORACLE_HPP
#define ROYDEN_TESTS_AGM_ORACLE_HPP

// Independent period values for genus-1 hyperelliptic covers with real
// branch points, through complete elliptic integrals evaluated by the
// arithmetic-geometric mean. Test-only: shares nothing with the tracked
// quadrature path it certifies.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace agm_oracle {

inline double agm(double a, double b) {
    for (int i = 0; i < 200; ++i) {
        double a2 = 0.5 * (a + b), b2 = std::sqrt(a * b);
        a = a2;
        b = b2;
        if (std::abs(a - b) <= 1e-17 * a) break;
    }
    return a;
}

// K(k) with modulus squared m = k^2
inline double K_m(double m) {
    if (m < 0.0 || m >= 1.0) throw std::invalid_argument("K_m: modulus out of range");
    return std::asin(1.0) / agm(1.0, std::sqrt(1.0 - m)); // pi/2 / agm(1, k')
}

// |int_{e_i}^{e_j} dx / sqrt|p|| over the cuts of a monic real cubic
// p = (x-e1)(x-e2)(x-e3), e1 < e2 < e3.
struct CubicPeriods {
    double low;  // over [e1, e2]
    double mid;  // over [e2, e3]
};

inline CubicPeriods cubic_periods(double e1, double e2, double e3) {
    double s = std::sqrt(e3 - e1);
    CubicPeriods c;
    c.mid = 2.0 * K_m((e3 - e2) / (e3 - e1)) / s;
    c.low = 2.0 * K_m((e2 - e1) / (e3 - e1)) / s;
    return c;
}

// Same for a monic real quartic, e1 < e2 < e3 < e4; the two outer cuts give
// equal integrals (homologous cycles), the middle one the complementary
// modulus.
struct QuarticPeriods {
    double outer; // over [e1, e2] and [e3, e4]
    double mid;   // over [e2, e3]
};

inline QuarticPeriods quartic_periods(double e1, double e2, double e3, double e4) {
    double s = std::sqrt((e4 - e2) * (e3 - e1));
    double m = ((e4 - e3) * (e2 - e1)) / ((e4 - e2) * (e3 - e1));
    QuarticPeriods q;
    q.outer = 2.0 * K_m(m) / s;
    q.mid = 2.0 * K_m(1.0 - m) / s;
    return q;
}

} // namespace agm_oracle

#endif
