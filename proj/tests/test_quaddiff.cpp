#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "royden/errors.hpp"
#include "royden/jsonio.hpp"
#include "royden/quaddiff.hpp"

#include <cmath>
#include <random>

using namespace royden;

namespace {

const Poly kQuintic({24.0, 52.0, -8.0, -12.0, -2.0, 1.0});
const Poly kQuartic({-1.0, 0.0, 0.0, 0.0, 1.0}); // x^4 - 1

int order_at(const Divisor& d, cplx pt, double tol = 1e-7) {
    for (const auto& e : d.entries)
        if (!e.at_infinity && std::abs(e.point - pt) < tol) return e.order;
    return 0;
}

} // namespace

TEST_CASE("validate at the degree boundary") {
    QuadDiff q = validate(Poly::one(), kQuartic);
    CHECK(q.reduced);
    CHECK(q.g.degree() == 0);
    CHECK(q.h.degree() == 4);
}

TEST_CASE("validate the linear family over the example quintic") {
    QuadDiff q = validate(Poly({1.0, 0.7}), kQuintic);
    CHECK(q.g.degree() == 1);
    CHECK(q.h.degree() == 5);
    CHECK(q.h_roots.roots.size() == 5);
}

TEST_CASE("cancellation fires when g shares a root of h") {
    // x - 2 divides the quintic
    QuadDiff q = validate(Poly({-2.0, 1.0}), kQuintic);
    CHECK(q.g.degree() == 0);
    CHECK(q.h.degree() == 4);
    CHECK(q.h_roots.roots.size() == 4);
    // the shared root is gone from h
    for (const auto& c : q.h_roots.roots) CHECK(std::abs(c.location - cplx(2.0)) > 0.1);
}

TEST_CASE("validate rejects bad inputs") {
    CHECK_THROWS_AS(validate(Poly::zero(), kQuartic), ZeroNumerator);
    CHECK_THROWS_AS(validate(Poly::one(), Poly({1.0, 1.0})), DegreeBoundViolated);
    CHECK_THROWS_AS(validate(Poly({0.0, 0.0, 1.0}), kQuintic), DegreeBoundViolated); // deg g = 2 > 1
    Poly repeated = Poly::from_roots(1.0, {cplx(1.0), cplx(1.0), cplx(-1.0), cplx(2.0), cplx(3.0)});
    CHECK_THROWS_AS(validate(Poly::one(), repeated), NotSquarefree);
}

TEST_CASE("divisor of dx^2/(x^4-1)") {
    QuadDiff q = validate(Poly::one(), kQuartic);
    Divisor d = divisor(q);
    CHECK(d.total_order() == -4);
    CHECK(d.order_at_infinity == 0);
    CHECK(d.entries.size() == 4);
    for (double ang : {0.0, 1.0, 2.0, 3.0}) {
        cplx root = std::polar(1.0, ang * std::acos(-1.0) / 2.0);
        CHECK(order_at(d, root) == -1);
    }
}

TEST_CASE("divisor of the generic linear family") {
    QuadDiff q = validate(Poly({1.0, 2.0}), kQuintic);
    Divisor d = divisor(q);
    CHECK(d.total_order() == -4);
    CHECK(d.order_at_infinity == 0);
    CHECK(order_at(d, cplx(-0.5)) == 1); // zero at -a/b
    int poles = 0;
    for (const auto& e : d.entries)
        if (e.order == -1) ++poles;
    CHECK(poles == 5);
}

TEST_CASE("divisor with a zero at infinity") {
    QuadDiff q = validate(Poly::one(), kQuintic);
    Divisor d = divisor(q);
    CHECK(d.total_order() == -4);
    CHECK(d.order_at_infinity == 1);
}

TEST_CASE("affine pullback by x -> 2x") {
    QuadDiff q = validate(Poly::one(), kQuartic);
    QuadDiff p = affine_pullback(q, cplx(2.0), cplx(0.0));
    // q = dx^2/(x^4-1) pulled back: 4 dx^2 / (16 x^4 - 1), monic h
    CHECK(p.h.degree() == 4);
    CHECK(std::abs(p.h.leading() - cplx(1.0)) < 1e-12);
    // q'(0) = 4 * g(0)/h(0) = 4/(0 - 1) = -4
    CHECK(std::abs(p.g(cplx(0.0)) / p.h(cplx(0.0)) + 4.0) < 1e-9);
    // poles move to the preimages +-1/2, +-i/2
    Divisor d = divisor(p);
    CHECK(order_at(d, cplx(0.5)) == -1);
    CHECK(order_at(d, cplx(0.0, 0.5)) == -1);
}

TEST_CASE("affine pullback identity and translation") {
    QuadDiff q = validate(Poly({1.0, 0.3}), kQuintic);
    QuadDiff id = affine_pullback(q, cplx(1.0), cplx(0.0));
    CHECK(approx_equal(id.g, q.g, 1e-9));
    CHECK(approx_equal(id.h, q.h, 1e-9));

    cplx b(0.7, -0.2);
    QuadDiff tr = affine_pullback(q, cplx(1.0), b);
    Divisor d0 = divisor(q), d1 = divisor(tr);
    // poles translate by -b
    for (const auto& e : d0.entries) {
        if (e.at_infinity) continue;
        CHECK(order_at(d1, e.point - b) == e.order);
    }
}

TEST_CASE("pullback of a valid differential always validates") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    QuadDiff q = validate(Poly({1.0, 0.5}), kQuintic);
    for (int i = 0; i < 10; ++i) {
        cplx a(uni(rng), uni(rng));
        if (std::abs(a) < 0.2) a += cplx(1.0);
        cplx b(uni(rng), uni(rng));
        QuadDiff p = affine_pullback(q, a, b);
        CHECK(p.reduced);
        Divisor d = divisor(p);
        CHECK(d.total_order() == -4);
        for (const auto& e : d.entries)
            if (e.order < 0) CHECK(e.order == -1);
    }
}

TEST_CASE("dimension of Q(X)") {
    CHECK(dimension_of_q(kQuintic) == 2);
    CHECK(dimension_of_q(kQuartic) == 1);
    Poly deg7 = Poly::from_roots(1.0, {cplx(0.0), cplx(1.0), cplx(-1.0), cplx(2.0), cplx(-2.0),
                                       cplx(0.0, 1.0), cplx(0.0, -1.0)});
    CHECK(dimension_of_q(deg7) == 4);
    CHECK_THROWS_AS(dimension_of_q(Poly({1.0, 1.0, 1.0})), DegreeBoundViolated);
}

TEST_CASE("json round trip") {
    QuadDiff q = validate(Poly({1.0, cplx(0.5, 0.25)}), kQuintic);
    nlohmann::json j = quaddiff_to_json(q);
    QuadDiff q2 = quaddiff_from_json(j);
    CHECK(approx_equal(q.g, q2.g, 1e-15));
    CHECK(approx_equal(q.h, q2.h, 1e-15));
}
