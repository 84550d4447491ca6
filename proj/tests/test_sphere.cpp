#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "royden/errors.hpp"
#include "royden/sphere.hpp"

#include <cmath>
#include <numbers>

using namespace royden;

namespace {

constexpr double kPi = std::numbers::pi;
const Poly kQuintic({24.0, 52.0, -8.0, -12.0, -2.0, 1.0});

double dist_mod_pi(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

} // namespace

TEST_CASE("zero-free angles of the example quintic") {
    std::vector<double> zf = zero_free_angles(kQuintic);
    REQUIRE(zf.size() == 3); // real roots 2, 2 +- sqrt(6)
    double s6 = std::sqrt(6.0);
    for (double x0 : {2.0, 2.0 + s6, 2.0 - s6}) {
        double want = std::fmod(std::atan2(1.0, -x0) + kPi, kPi);
        bool found = false;
        for (double a : zf)
            if (dist_mod_pi(a, want) < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("zero-free angle solves a + b x0 = 0") {
    std::vector<double> zf = zero_free_angles(kQuintic);
    for (double a : zf) {
        double ca = std::cos(a), sa = std::sin(a);
        bool kills_a_root = false;
        for (double x0 : {2.0, 2.0 + std::sqrt(6.0), 2.0 - std::sqrt(6.0)})
            if (std::abs(ca + sa * x0) < 1e-10) kills_a_root = true;
        CHECK(kills_a_root);
    }
}

TEST_CASE("no real roots, no zero-free directions") {
    Poly h({1.0, 0.0, 0.0, 0.0, 1.0}); // x^4 + 1
    CHECK(zero_free_angles(h).empty());
}

TEST_CASE("sweep basics on a coarse grid") {
    SweepOptions opt;
    opt.threads = 2;
    SweepResult res = sweep(kQuintic, 32, opt);
    REQUIRE(res.samples.size() == 32);
    CHECK(res.failures.empty());
    for (const auto& s : res.samples) CHECK(s.r > 0.0);
    // pi-periodicity
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(res.samples[i].r - res.samples[i + 16].r) <= 1e-7 * res.samples[i].r);
    // unit-norm defining property, re-evaluated through the pipeline
    for (int i = 0; i < 32; i += 7) {
        double theta = res.samples[i].theta;
        cplx a(std::cos(theta)), b(std::sin(theta));
        NormResult nr = royden_norm(res.samples[i].r * Poly({a, b}), kQuintic);
        CHECK(std::abs(nr.value - 1.0) <= 1e-6);
    }
    CHECK(res.max_tau_symmetry_rel <= 1e-6);
    CHECK(res.min_tau_imag_eig > 0.0);
}

TEST_CASE("sweep needs a two-dimensional family") {
    Poly quartic({-1.0, 0.0, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(sweep(quartic, 16), ValidationError);
    CHECK_THROWS_AS(sweep(kQuintic, 4), ValidationError);
}

TEST_CASE("a sample exactly at a zero-free direction drops genus and stays finite") {
    // h with a root at 0: theta = pi/2 is a zero-free direction and lies on
    // the 8-sample grid
    Poly h = Poly::from_roots(1.0, {cplx(0.0), cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0)});
    std::vector<double> zf = zero_free_angles(h);
    bool has_half_pi = false;
    for (double a : zf)
        if (dist_mod_pi(a, kPi / 2) < 1e-12) has_half_pi = true;
    REQUIRE(has_half_pi);

    SweepOptions opt;
    opt.threads = 1;
    SweepResult res = sweep(h, 8, opt);
    REQUIRE(res.failures.empty());
    const SphereSample& s = res.samples[2]; // theta = pi/2
    CHECK(std::abs(s.theta - kPi / 2) < 1e-15);
    CHECK(s.near_singular);
    CHECK(s.r > 0.0);

    // continuity across the cancellation window
    NormResult off = royden_norm(Poly({cplx(std::cos(kPi / 2 + 2e-5)), cplx(std::sin(kPi / 2 + 2e-5))}), h);
    CHECK(std::abs(1.0 / off.value - s.r) < 1e-2 * s.r);

    // the cancelled sample really used the genus-1 cover
    QuadDiff qc = validate(Poly({cplx(std::cos(kPi / 2)), cplx(std::sin(kPi / 2))}), h);
    DoubleCover cc = build_double_cover(qc);
    CHECK(cc.genus == 1); // cos(pi/2) is 6e-17, cancellation fires in validate
}

TEST_CASE("finite difference derivatives") {
    SUBCASE("constant radius has vanishing derivatives") {
        std::vector<SphereSample> s(64);
        for (size_t i = 0; i < s.size(); ++i) {
            s[i].theta = 2.0 * kPi * static_cast<double>(i) / 64.0;
            s[i].r = 2.5;
        }
        finite_difference_derivatives(s, 3);
        for (const auto& x : s) {
            CHECK(std::abs(x.d1) < 1e-12);
            CHECK(std::abs(x.d2) < 1e-12);
            CHECK(std::abs(x.d3) < 1e-12);
        }
    }
    SUBCASE("cos(2 theta) second derivative") {
        size_t n = 256;
        std::vector<SphereSample> s(n);
        for (size_t i = 0; i < n; ++i) {
            s[i].theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
            s[i].r = std::cos(2.0 * s[i].theta);
        }
        finite_difference_derivatives(s, 3);
        double dtheta = 2.0 * kPi / static_cast<double>(n);
        for (size_t i = 0; i < n; i += 13) {
            double want = -4.0 * std::cos(2.0 * s[i].theta);
            CHECK(std::abs(s[i].d2 - want) < 50.0 * dtheta * dtheta);
        }
    }
    SUBCASE("grid too small") {
        std::vector<SphereSample> s(5);
        CHECK_THROWS_AS(finite_difference_derivatives(s, 1), ValidationError);
    }
}

TEST_CASE("third derivative spikes at the zero-free directions") {
    SweepOptions opt;
    SweepResult res = sweep(kQuintic, 250, opt);
    REQUIRE(res.failures.empty());
    finite_difference_derivatives(res.samples, 3);

    std::vector<double> zf = zero_free_angles(kQuintic);
    double dtheta = 2.0 * kPi / 250.0;
    // the largest |d3| values must sit within a couple of grid steps of a
    // zero-free direction (mod pi)
    std::vector<size_t> order(res.samples.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::abs(res.samples[a].d3) > std::abs(res.samples[b].d3);
    });
    for (size_t k = 0; k < 6; ++k) {
        double theta = res.samples[order[k]].theta;
        double best = 1e9;
        for (double a : zf) best = std::min(best, dist_mod_pi(theta, a));
        CHECK(best <= 2.5 * dtheta);
    }
}
