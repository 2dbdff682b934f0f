#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geolog/cones.hpp"
#include "geolog/mmp.hpp"

#include "fixtures.hpp"

#include <random>

using namespace geolog;
using namespace geolog::fixtures;

namespace {

bool cone_subset(const ConeRep& a, const ConeRep& b) {
    for (const auto& r : a.rays)
        if (!b.contains(r)) return false;
    for (const auto& l : a.lineality) {
        if (!b.contains(l)) return false;
        if (!b.contains(scale(Rat(-1), l))) return false;
    }
    return true;
}

QVec support_of(const QVec& v) {
    QVec idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) idx.push_back(Rat(long(i)));
    return idx;
}

}  // namespace

TEST_CASE("the plane has a single positive ray in every cone") {
    auto rep = positive_cones(projective_plane());
    // every invariant line has class (1,1,1) against the three walls
    QVec line{Rat(1), Rat(1), Rat(1)};
    for (const ConeRep* c : {&rep.samp, &rep.nef, &rep.mob, &rep.eff}) {
        REQUIRE(c->rays.size() == 1);
        CHECK(c->lineality.empty());
        CHECK(primitive(c->rays[0]) == primitive(line));
    }
    // in coefficient space all four preimages are the same halfspace
    CHECK(rep.nef_div == rep.eff_div);
    CHECK(rep.mob_div == rep.eff_div);
    CHECK(rep.eff_div.contains(QVec{Rat(1), Rat(0), Rat(0)}));
    CHECK(!rep.eff_div.contains(QVec{Rat(-1), Rat(0), Rat(0)}));
}

TEST_CASE("nef preimage agrees with the direct nef test") {
    std::mt19937 rng(4650);
    std::uniform_int_distribution<long> num(-4, 4);
    for (const auto& x : {hirzebruch(0), hirzebruch(1), hirzebruch(2), del_pezzo6()}) {
        auto rep = positive_cones(x);
        const std::size_t n = x.fan.rays.size();
        for (int it = 0; it < 80; ++it) {
            QVec d(n);
            for (auto& c : d) c = rat(num(rng), 2);
            CHECK(rep.nef_div.contains(d) == is_nef(x, d));
        }
        CHECK(cone_subset(rep.nef, rep.mob));
        CHECK(cone_subset(rep.mob, rep.eff));
        CHECK(rep.samp == rep.nef);
    }
}

TEST_CASE("effective preimage agrees with the run outcome") {
    // a class is pseudo-effective exactly when its directed run avoids a
    // fibration; check both routes on random integer classes
    std::mt19937 rng(911);
    std::uniform_int_distribution<long> num(-3, 5);
    for (const auto& x : {hirzebruch(1), del_pezzo6(), blowup_point_p3()}) {
        auto rep = positive_cones(x);
        const std::size_t n = x.fan.rays.size();
        int psef = 0, not_psef = 0;
        for (int it = 0; it < 60; ++it) {
            QVec d(n);
            for (auto& c : d) c = Rat(num(rng));
            bool in_eff = rep.eff_div.contains(d);
            auto run = run_dmmp(x, d);
            CHECK(in_eff == !run.fibration);
            (in_eff ? psef : not_psef)++;
        }
        CHECK(psef >= 5);
        CHECK(not_psef >= 5);
    }
}

TEST_CASE("hexagon cones of the sixth del Pezzo surface") {
    auto rep = positive_cones(del_pezzo6());
    CHECK(rep.eff.rays.size() == 6);
    CHECK(rep.nef.facet_normals.size() == 6);
    CHECK(rep.mob == rep.nef);  // a surface: nothing flips
    // the six effective generators are the (-1)-curve classes: each has a
    // single -1 entry against its own wall
    for (const auto& r : rep.eff.rays) {
        long negs = 0;
        for (const auto& c : r)
            if (c < 0) ++negs;
        CHECK(negs == 1);
    }
}

TEST_CASE("relative germ: nef a half-line, effective the whole line") {
    for (long n : {2L, 3L}) {
        auto x = resolved_cone_surface(n);
        auto rep = positive_cones(x);
        // one vertical wall, so numerical classes live on a line
        CHECK(rep.nef.rays.size() == 1);
        CHECK(rep.nef.lineality.empty());
        CHECK(rep.nef.rays[0] == QVec{Rat(1)});
        CHECK(rep.eff.lineality.size() == 1);  // both signs effective
    }
}

TEST_CASE("surface lattice cones match the toric ones for the hexagon") {
    // del Pezzo of degree 6 as an abstract lattice: h, e1, e2, e3 basis,
    // negative curves = the exceptional classes and the lines through pairs
    QMat gram(4, QVec(4, Rat(0)));
    gram[0][0] = 1;
    for (int i = 1; i < 4; ++i) gram[i][i] = -1;
    QVec k{Rat(-3), Rat(1), Rat(1), Rat(1)};
    QMat curves{ {Rat(0), Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1), Rat(0)},
                 {Rat(0), Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(-1), Rat(-1), Rat(0)},
                 {Rat(1), Rat(-1), Rat(0), Rat(-1)}, {Rat(1), Rat(0), Rat(-1), Rat(-1)},
                 {Rat(1), Rat(0), Rat(0), Rat(0)} };
    auto s = make_surface(4, gram, k, curves, {});
    auto rep = positive_cones(s);
    CHECK(rep.eff.rays.size() == 6);  // h is not extremal among the curves
    CHECK(rep.samp == rep.nef);
    CHECK(rep.mob == rep.nef);
    CHECK(cone_subset(rep.nef, rep.eff));
    // anticanonical class is ample, hence interior to the nef cone
    CHECK(rep.nef.contains_interior(scale(Rat(-1), k)));
}

TEST_CASE("mob+exc splits: nef classes keep everything mobile") {
    auto x = del_pezzo6();
    QVec anti(6, Rat(1));  // -K, ample
    auto me = mob_exc(x, anti);
    CHECK(me.mobile == anti);
    CHECK(is_zero(me.exceptional));
    CHECK(me.target_key == model_key(x));
}

TEST_CASE("mob+exc on the first Hirzebruch surface drops the section") {
    // rays (-1,1),(0,-1),(0,1),(1,0); D_(0,-1) ~ h, D_(0,1) = e, and
    // h + 2e decomposes as h mobile plus 2e exceptional
    auto f1 = hirzebruch(1);
    QVec d{Rat(0), Rat(1), Rat(2), Rat(0)};
    auto me = mob_exc(f1, d);
    CHECK(me.mobile == QVec{Rat(0), Rat(1), Rat(0), Rat(0)});
    CHECK(me.exceptional == QVec{Rat(0), Rat(0), Rat(2), Rat(0)});
    CHECK(me.target.fan.rays.size() == 3);  // the blowdown plane
}

TEST_CASE("mob+exc of a single negative curve is purely exceptional") {
    auto x = del_pezzo6();
    for (std::size_t i = 0; i < 6; ++i) {
        QVec d(6, Rat(0));
        d[i] = 1;
        auto me = mob_exc(x, d);
        CHECK(is_zero(me.mobile));
        CHECK(me.exceptional == d);
        CHECK(me.target.fan.rays.size() == 5);
    }
}

TEST_CASE("mob+exc rejects classes outside the effective cone") {
    auto p2 = projective_plane();
    CHECK_THROWS_AS((void)mob_exc(p2, QVec{Rat(-1), Rat(0), Rat(0)}),
                    std::domain_error);
}

TEST_CASE("model enumeration finds both small resolutions") {
    auto models = enumerate_models(small_resolution_a());
    REQUIRE(models.size() == 2);
    CHECK(same_model(models[0], small_resolution_a()));
    CHECK(same_model(models[1], small_resolution_b()));
    // starting from the other side gives the same pair
    auto back = enumerate_models(small_resolution_b());
    REQUIRE(back.size() == 2);
    CHECK(same_model(back[1], small_resolution_a()));
}

TEST_CASE("surfaces admit no flips: enumeration is a singleton") {
    CHECK(enumerate_models(del_pezzo6()).size() == 1);
    CHECK(enumerate_models(hirzebruch(2)).size() == 1);
    CHECK(enumerate_models(blowup_point_p3()).size() == 1);
}

TEST_CASE("chamber structure of the plane and the first Hirzebruch surface") {
    auto p2_chambers = mori_chambers(projective_plane());
    REQUIRE(p2_chambers.size() == 1);
    CHECK(p2_chambers[0].exc_rays.empty());

    auto f1_chambers = mori_chambers(hirzebruch(1));
    REQUIRE(f1_chambers.size() == 2);
    CHECK(f1_chambers[0].exc_rays.empty());
    REQUIRE(f1_chambers[1].exc_rays.size() == 1);
    CHECK(f1_chambers[1].exc_rays[0] == 2);  // the ray (0,1), the -1 section
}

TEST_CASE("chamber interiors are pairwise disjoint") {
    for (const auto& x : {hirzebruch(1), del_pezzo6(), blowup_point_p3()}) {
        auto chambers = mori_chambers(x);
        for (std::size_t i = 0; i < chambers.size(); ++i) {
            QVec p = chambers[i].chamber.interior_point();
            std::size_t hits = 0;
            for (const auto& ch : chambers)
                if (ch.chamber.contains_interior(p)) ++hits;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("random effective classes land on their chamber's model") {
    std::mt19937 rng(3131);
    std::uniform_int_distribution<long> num(0, 6);
    for (const auto& x : {del_pezzo6(), blowup_point_p3()}) {
        auto chambers = mori_chambers(x);
        const std::size_t n = x.fan.rays.size();
        for (int it = 0; it < 100; ++it) {
            QVec d(n);
            for (auto& c : d) c = rat(num(rng), 3);
            auto me = mob_exc(x, d);
            bool matched = false;
            for (const auto& ch : chambers) {
                if (!ch.chamber.contains(d)) continue;
                if (ch.model_id != me.target_key) continue;
                matched = true;
                // in the interior the dropped rays carry the whole
                // exceptional part
                if (ch.chamber.contains_interior(d)) {
                    QVec exc_idx;
                    for (auto i : ch.exc_rays) exc_idx.push_back(Rat(long(i)));
                    CHECK(support_of(me.exceptional) == exc_idx);
                }
            }
            CHECK(matched);
        }
    }
}

TEST_CASE("the mobile cone is covered by the flip-equivalent nef chambers") {
    // every mobile class is nef on one of the small modifications: check on
    // the threefold with an actual flop
    auto x = small_resolution_a();
    auto rep = positive_cones(x);
    auto chambers = mori_chambers(x);
    std::mt19937 rng(515);
    std::uniform_int_distribution<long> num(0, 5);
    int hits = 0;
    for (int it = 0; it < 60; ++it) {
        // random combination of the mobile generators, in coefficient space
        QVec d(x.fan.rays.size(), Rat(0));
        for (const auto& r : rep.mob_div.rays) d = axpy(d, Rat(num(rng)), r);
        for (const auto& l : rep.mob_div.lineality) d = axpy(d, Rat(num(rng) - 2), l);
        bool on_small = false;
        for (const auto& ch : chambers)
            if (ch.exc_rays.empty() && ch.chamber.contains(d)) on_small = true;
        CHECK(on_small);
        ++hits;
    }
    CHECK(hits == 60);
}
