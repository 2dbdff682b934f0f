#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolog/arrangement.hpp"
#include "geolog/cone.hpp"
#include "geolog/polyhedron.hpp"
#include "oracle_geom.hpp"

#include <random>

using namespace geolog;

namespace {

QVec qv(std::vector<long> v) { return qvec_from_ints(v); }

QMat qm(std::vector<std::vector<long>> rows) {
    QMat m;
    for (auto& r : rows) m.push_back(qvec_from_ints(r));
    return m;
}

}  // namespace

TEST_CASE("rational vector basics") {
    CHECK(rat_from_string("3/4") == Rat(3, 4));
    CHECK(rat_to_string(Rat(-5, 10)) == "-1/2");
    CHECK(rat_from_string(rat_to_string(Rat(22, 7))) == Rat(22, 7));
    CHECK(primitive(QVec{Rat(1, 2), Rat(1, 3)}) == qv({3, 2}));
    CHECK(primitive_signless(qv({-2, 4})) == qv({1, -2}));
    CHECK(is_zero(primitive(qv({0, 0}))));
}

TEST_CASE("exact linear algebra") {
    CHECK(rank(qm({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(qm({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}})) == 3);
    QVec x = solve_square(qm({{2, 1}, {1, 3}}), qv({5, 10}));
    CHECK(x == QVec{Rat(1), Rat(3)});
    CHECK_THROWS_AS(solve_square(qm({{1, 1}, {2, 2}}), qv({1, 2})),
                    std::domain_error);
    QMat ker = kernel_basis(qm({{1, 1, 1}}));
    CHECK(ker.size() == 2);
    for (const auto& k : ker) CHECK(dot(qv({1, 1, 1}), k) == 0);
}

TEST_CASE("positive quadrant is self-dual") {
    ConeRep c = cone_from_rays(2, qm({{1, 0}, {0, 1}}));
    CHECK(c.rays == qm({{0, 1}, {1, 0}}));
    CHECK(c.facet_normals == qm({{0, 1}, {1, 0}}));
    CHECK(c.span_normals.empty());
    CHECK(c.lineality_dim() == 0);
}

TEST_CASE("degenerate cone x>=0, y>=0, x+y<=0 is the origin") {
    ConeRep c = cone_from_inequalities(2, qm({{1, 0}, {0, 1}, {-1, -1}}));
    CHECK(c.rays.empty());
    CHECK(c.lineality_dim() == 0);
    CHECK(c.dim() == 0);
}

TEST_CASE("halfplane has lineality") {
    ConeRep c = cone_from_inequalities(2, qm({{1, 0}}));
    CHECK(c.lineality_dim() == 1);
    CHECK(c.rays.size() == 1);
    CHECK(c.contains(qv({3, -7})));
    CHECK_FALSE(c.contains(qv({-1, 0})));
}

TEST_CASE("non-full-dimensional cone gets span equations") {
    // the ray through (1,1,0) inside R^3
    ConeRep c = cone_from_rays(3, qm({{1, 1, 0}, {2, 2, 0}}));
    CHECK(c.rays == qm({{1, 1, 0}}));
    CHECK(c.span_normals.size() == 2);
    CHECK(c.dim() == 1);
    CHECK(c.contains(qv({5, 5, 0})));
    CHECK_FALSE(c.contains(qv({1, 1, 1})));
    CHECK_FALSE(c.contains(qv({-1, -1, 0})));
}

TEST_CASE("dual_rep roundtrip on random cones up to dim 6") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = 2 + trial % 5;
        std::size_t nrays = d + trial % 4;
        QMat rays;
        for (std::size_t i = 0; i < nrays; ++i) {
            QVec r(d);
            bool zero = true;
            for (auto& x : r) {
                x = coef(rng);
                if (x != 0) zero = false;
            }
            if (!zero) rays.push_back(r);
        }
        ConeRep c = cone_from_rays(d, rays);
        // every original generator must lie inside
        for (const auto& r : rays) CHECK(c.contains(r));
        // H -> V -> H roundtrip is the identity on canonical forms
        ConeRep c2 = cone_from_inequalities(d, c.facet_normals, c.span_normals);
        CHECK(c == c2);
        ConeRep dd = dual_cone(dual_cone(c));
        CHECK(c == dd);
        // rays satisfy facets, facets hold on rays
        for (const auto& r : c.rays)
            for (const auto& f : c.facet_normals) CHECK(dot(f, r) >= 0);
    }
}

TEST_CASE("full-dimensional pointed cones match brute-force oracles") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t d = 2 + trial % 3;
        // positive combinations + unit rays: pointed and full-dimensional
        QMat rays;
        for (std::size_t i = 0; i < d; ++i) {
            QVec e(d, Rat(0));
            e[i] = 1;
            rays.push_back(e);
        }
        for (std::size_t i = 0; i < 3; ++i) {
            QVec r(d);
            bool zero = true;
            for (auto& x : r) {
                x = coef(rng);
                if (x != 0) zero = false;
            }
            if (!zero) rays.push_back(r);
        }
        ConeRep c = cone_from_rays(d, rays);
        CHECK(c.facet_normals == oracle::cone_facets(d, rays));
        CHECK(c.rays == oracle::cone_extreme_rays(d, c.facet_normals));
    }
}

TEST_CASE("dual_rep representation mismatch is detected") {
    CHECK_THROWS_AS(dual_rep(qm({{1, 0}, {0, 1}}), qm({{1, 0}}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(dual_rep(std::nullopt, std::nullopt, 2),
                    std::invalid_argument);
    ConeRep ok = dual_rep(qm({{1, 0}, {0, 1}}), qm({{1, 0}, {0, 1}}), 2);
    CHECK(ok.rays.size() == 2);
}

TEST_CASE("unit square intersected with x=1 is a segment with two 0-faces") {
    Polyhedron sq = Polyhedron::box01(2);
    Polyhedron seg = sq.intersect({qv({1, 0}), Rat(1), false}, true);
    CHECK_FALSE(seg.empty());
    CHECK(seg.dim() == 1);
    CHECK(seg.vertices() == qm({{1, 0}, {1, 1}}));
    CHECK(seg.faces_of_codim(1).size() == 2);
}

TEST_CASE("unit square beyond x=2 is empty") {
    Polyhedron sq = Polyhedron::box01(2);
    Polyhedron cut = sq.intersect({qv({1, 0}), Rat(2), false});
    CHECK(cut.empty());
}

TEST_CASE("square cut by 4x+4y<=3 is the expected triangle") {
    Polyhedron sq = Polyhedron::box01(2);
    Polyhedron tri = sq.intersect({qv({-4, -4}), Rat(-3), false});
    CHECK(tri.dim() == 2);
    QMat expect = {qv({0, 0}), {Rat(0), Rat(3, 4)}, {Rat(3, 4), Rat(0)}};
    std::sort(expect.begin(), expect.end(), lex_less);
    CHECK(tri.vertices() == expect);
    // cross-check against the subset-enumeration vertex oracle
    QMat a;
    QVec b;
    for (const auto& h : tri.halfspaces()) {
        a.push_back(h.normal);
        b.push_back(h.offset);
    }
    CHECK(tri.vertices() == oracle::polytope_vertices(a, b));
}

TEST_CASE("face decomposition of the square has 9 open cells") {
    ChamberComplex cc = arrangement_chambers(Polyhedron::box01(2), {});
    CHECK(cc.cells.size() == 9);
    int by_dim[3] = {0, 0, 0};
    for (const auto& c : cc.cells) by_dim[c.dim]++;
    CHECK(by_dim[0] == 4);
    CHECK(by_dim[1] == 4);
    CHECK(by_dim[2] == 1);
}

TEST_CASE("interval split by x=1/2") {
    AffineWall w{qv({1}), Rat(1, 2)};
    ChamberComplex cc = arrangement_chambers(Polyhedron::box01(1), {w});
    // fine cells: {0}, (0,1/2), {1/2}, (1/2,1), {1}
    CHECK(cc.cells.size() == 5);
    std::size_t at_zero = cc.locate(QVec{Rat(0)});
    std::size_t low = cc.locate(QVec{Rat(1, 4)});
    std::size_t mid = cc.locate(QVec{Rat(1, 2)});
    std::size_t high = cc.locate(QVec{Rat(3, 4)});
    CHECK(cc.cells[mid].dim == 0);
    CHECK(cc.cells[low].dim == 1);
    CHECK(low != high);
    CHECK(cc.is_face(at_zero, low));
    CHECK_FALSE(cc.is_face(at_zero, high));
    CHECK_FALSE(cc.is_face(mid, at_zero));
    // countries on both sides of the wall are neighbors through it
    CHECK(cc.is_face(mid, mid));
    bool low_high_adjacent = false;
    for (auto j : cc.adjacent[low]) low_high_adjacent |= (j == high);
    CHECK(low_high_adjacent);
}

TEST_CASE("chamber cover: cells partition the region") {
    AffineWall w1{qv({1, 0}), Rat(3, 4)};
    AffineWall w2{qv({0, 1}), Rat(3, 4)};
    ChamberComplex cc = arrangement_chambers(Polyhedron::box01(2), {w1, w2});
    // sample rational points and verify each lies in exactly one cell
    for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
            QVec p{Rat(i, 8), Rat(j, 8)};
            int hits = 0;
            for (std::size_t k = 0; k < cc.cells.size(); ++k) {
                std::vector<int> rs, ws;
                for (const auto& h : cc.region.halfspaces())
                    rs.push_back(h.eval(p) == 0 ? 0 : 1);
                for (const auto& w : cc.walls) ws.push_back(sgn(w.eval(p)));
                if (cc.cells[k].region_signs == rs && cc.cells[k].wall_signs == ws)
                    ++hits;
            }
            CHECK(hits == 1);
        }
    }
    // face criterion both ways on all pairs
    for (std::size_t a = 0; a < cc.cells.size(); ++a) {
        for (std::size_t b = 0; b < cc.cells.size(); ++b) {
            if (a == b) continue;
            bool face = cc.is_face(a, b) && cc.cells[a].dim < cc.cells[b].dim;
            bool geom = cc.cells[a].closure.subset_of(cc.cells[b].closure) &&
                        cc.cells[a].dim < cc.cells[b].dim;
            CHECK(face == geom);
        }
    }
}

TEST_CASE("convex hull reconstructs a polytope from vertex data") {
    Polyhedron sq = Polyhedron::box01(2);
    Polyhedron back = Polyhedron::convex_hull(2, sq.vertices());
    CHECK(back == sq);
    Polyhedron point = Polyhedron::convex_hull(2, qm({{1, 1}}));
    CHECK(point.dim() == 0);
    CHECK(point.contains(qv({1, 1})));
}
