#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "royden/errors.hpp"
#include "royden/homology.hpp"
#include "royden/jsonio.hpp"

#include <cmath>
#include <random>

using namespace royden;

namespace {

const Poly kQuintic({24.0, 52.0, -8.0, -12.0, -2.0, 1.0});

DoubleCover cover_from_points(const std::vector<cplx>& pts) {
    DoubleCover c;
    c.p = Poly::from_roots(1.0, pts);
    c.scale = 1.0;
    c.square_factor = Poly::one();
    c.numerator_g = Poly::one();
    c.omega_numerator = Poly::one();
    c.finite_branch = pts;
    c.branched_at_infinity = (pts.size() % 2 == 1);
    c.genus = static_cast<int>(pts.size() + (c.branched_at_infinity ? 1 : 0)) / 2 - 1;
    return c;
}

bool is_J_plus_zero(const IntMat& m, int rank) {
    int n = static_cast<int>(m.size());
    int g = rank / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long want = 0;
            if (i < g && j == i + g) want = 1;
            if (j < g && i == j + g) want = -1;
            if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] != want) return false;
        }
    return true;
}

} // namespace

TEST_CASE("path system for branch points at the 4th roots of unity") {
    std::vector<cplx> pts{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    DoubleCover c = cover_from_points(pts);
    PathSystem ps = build_path_system(c);
    CHECK(ps.points.size() == 4);
    CHECK(ps.edges.size() == 3);
    for (const auto& e : ps.edges) CHECK(e.pieces.size() == 1); // no detours in convex position
    // leftmost start
    CHECK(std::abs(ps.points[0] - cplx(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("detour arc inserted for a point on a chain segment") {
    // 3 collinear points; a 4th sits on the middle of the long segment's line
    std::vector<cplx> pts{{0.0, 0.0}, {4.0, 0.0}, {2.0, 0.0}, {8.0, 0.0}};
    DoubleCover c = cover_from_points(pts);
    // sorted chain is 0,2,4,8; no point lies strictly inside those edges, so
    // force a harder case: a point just off the segment [0,4]
    std::vector<cplx> pts2{{0.0, 0.0}, {4.0, 0.0}, {2.0, 0.02}, {8.0, 0.0}};
    DoubleCover c2 = cover_from_points(pts2);
    PathSystem ps2 = build_path_system(c2);
    size_t arcs = 0;
    for (const auto& e : ps2.edges)
        for (const auto& piece : e.pieces)
            if (std::holds_alternative<Arc>(piece)) ++arcs;
    // the chain visits 0, 2+0.02i, 4, 8; edge (2+0.02i, 4) passes close to
    // nothing, but edge (0, 2+0.02i)... construction detail; what must hold:
    // every non-endpoint point keeps clearance from every edge.
    for (size_t e = 0; e < ps2.edges.size(); ++e)
        for (size_t i = 0; i < ps2.points.size(); ++i) {
            if (i == e || i == e + 1) continue;
            for (const auto& piece : ps2.edges[e].pieces)
                CHECK(distance_to_piece(piece, ps2.points[i]) >=
                      ps2.clearance * ps2.spacing[i] * (1.0 - 1e-9));
        }
    (void)c;
    (void)arcs;
}

TEST_CASE("a branch point too close to a chain edge forces a detour arc") {
    // a pinned configuration where the chain edge passes within clearance of
    // an already-visited branch point
    std::vector<cplx> pts{{-1.198510, 2.942831},
                          {2.407851, -2.141965},
                          {2.848442, 0.249356},
                          {2.963478, 0.819626},
                          {0.158556, 0.276425}};
    DoubleCover c = cover_from_points(pts);
    PathSystem ps = build_path_system(c);
    size_t arcs = 0;
    for (const auto& e : ps.edges)
        for (const auto& piece : e.pieces)
            if (std::holds_alternative<Arc>(piece)) ++arcs;
    CHECK(arcs >= 1);
    // clearance invariant holds with the detour in place
    for (size_t e = 0; e < ps.edges.size(); ++e)
        for (size_t i = 0; i < ps.points.size(); ++i) {
            if (i == e || i == e + 1) continue;
            for (const auto& piece : ps.edges[e].pieces)
                CHECK(distance_to_piece(piece, ps.points[i]) >=
                      ps.clearance * ps.spacing[i] * (1.0 - 1e-9));
        }
}

TEST_CASE("random configurations build valid path systems") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 5 + static_cast<int>(rng() % 3);
        std::vector<cplx> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(uni(rng), uni(rng));
        DoubleCover c = cover_from_points(pts);
        PathSystem ps = build_path_system(c); // invariants validated internally
        CHECK(ps.edges.size() == pts.size() - 1);
    }
}

TEST_CASE("example quintic cover with a linear numerator: valid 5-edge chain") {
    QuadDiff q = validate(Poly({1.0, 1.0}), kQuintic);
    DoubleCover c = build_double_cover(q);
    PathSystem ps = build_path_system(c);
    CHECK(ps.points.size() == 6);
    CHECK(ps.edges.size() == 5);
    // chain visits every branch point exactly once
    std::vector<bool> seen(6, false);
    for (int idx : ps.order) {
        CHECK(!seen[static_cast<size_t>(idx)]);
        seen[static_cast<size_t>(idx)] = true;
    }
    // json debug dump works
    nlohmann::json j = path_system_to_json(ps);
    CHECK(j["points"].size() == 6);
    CHECK(j["edges"].size() == 5);
}

TEST_CASE("chain cycle matrices") {
    SUBCASE("genus 1, four finite branch points") {
        std::vector<cplx> pts{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
        DoubleCover c = cover_from_points(pts);
        PathSystem ps = build_path_system(c);
        CycleBasis cb = chain_cycles(ps, c);
        CHECK(cb.intersection.size() == 3);
        CHECK(cb.rank == 2);
        CHECK(cb.intersection[0][1] == 1);
        CHECK(cb.intersection[1][0] == -1);
        CHECK(cb.intersection[0][2] == 0);
    }
    SUBCASE("genus 2, six finite branch points") {
        std::vector<cplx> pts{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}, {5.0, 0.0}};
        DoubleCover c = cover_from_points(pts);
        PathSystem ps = build_path_system(c);
        CycleBasis cb = chain_cycles(ps, c);
        CHECK(cb.intersection.size() == 5);
        CHECK(cb.rank == 4);
    }
    SUBCASE("genus 2, five finite branch points plus infinity") {
        std::vector<cplx> pts{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}};
        DoubleCover c = cover_from_points(pts);
        PathSystem ps = build_path_system(c);
        CycleBasis cb = chain_cycles(ps, c);
        CHECK(cb.intersection.size() == 4);
        CHECK(cb.rank == 4);
        // nondegenerate: S^T M S = J with no kernel block
        IntMat f = int_mul(int_mul(int_transpose(cb.change_of_basis), cb.intersection),
                           cb.change_of_basis);
        CHECK(is_J_plus_zero(f, 4));
    }
}

TEST_CASE("symplectic reduce on the standard forms") {
    IntMat m{{0, 1}, {-1, 0}};
    IntMat s = symplectic_reduce(m);
    IntMat f = int_mul(int_mul(int_transpose(s), m), s);
    CHECK(is_J_plus_zero(f, 2));

    IntMat m2{{0, -1}, {1, 0}};
    IntMat s2 = symplectic_reduce(m2);
    IntMat f2 = int_mul(int_mul(int_transpose(s2), m2), s2);
    CHECK(is_J_plus_zero(f2, 2));
    CHECK(std::abs(int_det(s2)) == 1);
}

TEST_CASE("symplectic reduce of the 3x3 tridiagonal form") {
    IntMat m{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
    IntMat s = symplectic_reduce(m);
    IntMat f = int_mul(int_mul(int_transpose(s), m), s);
    CHECK(is_J_plus_zero(f, 2));
    CHECK(std::abs(int_det(s)) == 1);
}

TEST_CASE("symplectic reduce on random tridiagonal skew matrices") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8); // sizes 2..9
        IntMat m(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
        for (int i = 0; i + 1 < n; ++i) {
            int pick = static_cast<int>(rng() % 5);
            long long v = (pick == 0) ? 0 : ((pick % 2) ? 1 : -1);
            m[static_cast<size_t>(i)][static_cast<size_t>(i) + 1] = v;
            m[static_cast<size_t>(i) + 1][static_cast<size_t>(i)] = -v;
        }
        IntMat s = symplectic_reduce(m);
        IntMat f = int_mul(int_mul(int_transpose(s), m), s);
        int rank = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (f[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
                    rank = std::max(rank, std::max(i, j) + 1);
        CHECK(is_J_plus_zero(f, rank));
        CHECK(std::abs(int_det(s)) == 1);
    }
}

TEST_CASE("path construction failure reports geometry") {
    std::vector<cplx> pts{{0.0, 0.0}, {1.0, 0.0}};
    DoubleCover c = cover_from_points(pts);
    CHECK_THROWS_AS(build_path_system(c), PathConstructionFailed);
}
