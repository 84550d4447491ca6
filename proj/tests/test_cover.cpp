#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "royden/cover.hpp"
#include "royden/errors.hpp"

#include <cmath>
#include <random>

using namespace royden;

namespace {

const Poly kQuintic({24.0, 52.0, -8.0, -12.0, -2.0, 1.0});

} // namespace

TEST_CASE("cover of dx^2/h with quintic h: branch at infinity") {
    QuadDiff q = validate(Poly::one(), kQuintic);
    DoubleCover c = build_double_cover(q);
    CHECK(c.p.degree() == 5);
    CHECK(c.branched_at_infinity);
    CHECK(branch_count(c) == 6);
    CHECK(c.genus == 2);
    CHECK(c.square_factor.degree() == 0);
    CHECK(holomorphic_basis_degree(c) == 2);
}

TEST_CASE("cover of the generic linear family: six finite branch points") {
    QuadDiff q = validate(Poly({1.0, 1.0}), kQuintic);
    DoubleCover c = build_double_cover(q);
    CHECK(c.p.degree() == 6);
    CHECK_FALSE(c.branched_at_infinity);
    CHECK(branch_count(c) == 6);
    CHECK(c.genus == 2);
    CHECK(c.omega_numerator.degree() == 1);
}

TEST_CASE("cancelled zero-free direction: genus drops to 1") {
    QuadDiff q = validate(Poly({-2.0, 1.0}), kQuintic); // cancels the root at 2
    DoubleCover c = build_double_cover(q);
    CHECK(c.p.degree() == 4);
    CHECK(branch_count(c) == 4);
    CHECK(c.genus == 1);
    CHECK(holomorphic_basis_degree(c) == 1);
}

TEST_CASE("genus 3 cover from a degree-7 h") {
    Poly h7 = Poly::from_roots(1.0, {cplx(0.0), cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0),
                                     cplx(0.0, 1.0), cplx(0.0, -1.0)});
    QuadDiff q = validate(Poly::one(), h7);
    DoubleCover c = build_double_cover(q);
    CHECK(c.genus == 3);
    CHECK(holomorphic_basis_degree(c) == 3);
}

TEST_CASE("square root squares back to q at random points") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::vector<QuadDiff> cases;
    cases.push_back(validate(Poly::one(), kQuintic));
    cases.push_back(validate(Poly({1.0, 1.0}), kQuintic));
    // double zero of g: square factor becomes nontrivial
    Poly h6 = Poly::from_roots(1.0, {cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0), cplx(0.0, 2.0),
                                     cplx(0.0, -2.0)});
    cases.push_back(validate(Poly::from_roots(1.0, {cplx(0.3, 0.1), cplx(0.3, 0.1)}), h6));

    for (const auto& q : cases) {
        DoubleCover c = build_double_cover(q);
        // g*h == scale * p * square_factor^2 as polynomials
        Poly lhs = q.g * q.h;
        Poly rhs = c.scale * (c.p * (c.square_factor * c.square_factor));
        CHECK(approx_equal(lhs, rhs, 1e-8));

        for (int trial = 0; trial < 20; ++trial) {
            cplx x(uni(rng), uni(rng));
            bool near_branch = false;
            for (const auto& b : c.finite_branch)
                if (std::abs(x - b) < 0.05) near_branch = true;
            if (near_branch || std::abs(q.h(x)) < 1e-6) continue;
            // omega = omega_numerator dx / (sqrt(scale) w), w^2 = p(x):
            // omega^2 must equal q = g/h dx^2.
            cplx w2 = c.p(x);
            cplx omega2 = c.omega_numerator(x) * c.omega_numerator(x) / (c.scale * w2);
            cplx qval = q.g(x) / q.h(x);
            CHECK(std::abs(omega2 - qval) <= 1e-10 * std::abs(qval));
        }
    }
}

TEST_CASE("branch set equals the odd-order divisor points") {
    Poly h6 = Poly::from_roots(1.0, {cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0), cplx(0.0, 2.0),
                                     cplx(0.0, -2.0)});
    QuadDiff q = validate(Poly::from_roots(2.0, {cplx(0.3, 0.1), cplx(0.3, 0.1)}), h6);
    DoubleCover c = build_double_cover(q);
    Divisor d = divisor(q);
    // even-order zero of g is not a branch point
    CHECK(c.p.degree() == 6);
    for (const auto& e : d.entries) {
        if (e.at_infinity) continue;
        bool in_branch = false;
        for (const auto& b : c.finite_branch)
            if (std::abs(b - e.point) < 1e-7) in_branch = true;
        CHECK(in_branch == (e.order % 2 != 0));
    }
    // defining polynomial keeps at least the punctures, so the cover stays
    // connected for every valid reduced differential
    CHECK(c.p.degree() >= 4);
}

TEST_CASE("odd numerator multiplicity contributes a branch point") {
    Poly h7 = Poly::from_roots(1.0, {cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0), cplx(0.0, 2.0),
                                     cplx(0.0, -2.0), cplx(3.0)});
    cplx z0(0.5, 0.5);
    QuadDiff q = validate(Poly::from_roots(1.0, {z0, z0, z0}), h7);
    DoubleCover c = build_double_cover(q);
    // triple zero: one factor goes into the square part, one branch point stays
    CHECK(c.p.degree() == 8);
    CHECK(c.square_factor.degree() == 1);
    CHECK(c.omega_numerator.degree() == 2);
    CHECK(c.genus == 3);
    bool found = false;
    for (const auto& b : c.finite_branch)
        if (std::abs(b - z0) < 1e-6) found = true;
    CHECK(found);
}

TEST_CASE("degenerate cover guard") {
    QuadDiff q = validate(Poly::one(), Poly::from_roots(1.0, {cplx(0.0), cplx(1.0), cplx(2.0),
                                                              cplx(3.0)}));
    q.h_roots.roots.resize(2); // corrupt the cached roots to force the guard
    q.g_roots.roots.clear();
    CHECK_THROWS_AS(build_double_cover(q), DegenerateCover);
}
