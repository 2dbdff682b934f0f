#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geolog/geography.hpp"

#include "geolog/surface.hpp"

#include "fixtures.hpp"

#include <random>
#include <set>

using namespace geolog;
using namespace geolog::fixtures;

namespace {

QVec rv(std::initializer_list<long> xs) {
    QVec out;
    for (auto x : xs) out.push_back(Rat(x));
    return out;
}

// geography of the relative germ: one component, the exceptional ray
Geography germ_geography(long n) {
    auto x = resolved_cone_surface(n);
    // rays sorted lex: (-1,n), (0,1), (1,0); the inserted ray is index 1
    QMat comps{rv({0, 1, 0})};
    return compute_geography(x, comps);
}

SurfaceLattice cremona_lattice() {
    // plane blown up in three points; curve list = the six (-1)-curves
    QMat gram{rv({1, 0, 0, 0}), rv({0, -1, 0, 0}), rv({0, 0, -1, 0}), rv({0, 0, 0, -1})};
    QMat curves{rv({0, 1, 0, 0}),  rv({0, 0, 1, 0}),  rv({0, 0, 0, 1}),
                rv({1, -1, -1, 0}), rv({1, -1, 0, -1}), rv({1, 0, -1, -1})};
    return make_surface(4, gram, rv({-3, 1, 1, 1}), curves,
                        {"e1", "e2", "e3", "l12", "l13", "l23"});
}

// quartic, and the octic with three multiplicity-4 points
Geography cremona_geography() {
    auto s = cremona_lattice();
    QMat classes{rv({4, 0, 0, 0}), rv({8, -4, -4, -4})};
    QMat mults{QVec(6, Rat(0)), QVec(6, Rat(0))};
    return compute_geography(s, classes, mults);
}

QVec b2(const Rat& a, const Rat& b) { return {a, b}; }

}  // namespace

TEST_CASE("relative germ: three classes split at the adjoint threshold") {
    for (long n : {3L, 4L, 5L}) {
        Geography g = germ_geography(n);
        Rat t = rat(n - 2, n);

        // every boundary has a model, so the wlc region is the whole cube
        CHECK(g.ns.dim() == 1);
        CHECK(g.ns.contains({Rat(0)}));
        CHECK(g.ns.contains({Rat(1)}));

        std::set<long> cls;
        for (const auto& c : g.complex.cells) cls.insert(c.payload);
        CHECK(g.classes.size() == 3);

        // the interior wall sits exactly at the threshold
        std::size_t at = g.complex.locate({t});
        CHECK(g.complex.cells[at].dim == 0);
        std::size_t below = g.complex.locate({t - rat(1, 16)});
        std::size_t above = g.complex.locate({t + rat(1, 16)});
        CHECK(g.complex.cells[below].payload != g.complex.cells[at].payload);
        CHECK(g.complex.cells[above].payload != g.complex.cells[at].payload);
        CHECK(g.complex.cells[below].payload != g.complex.cells[above].payload);

        // below and at the threshold nothing is contracted; above, one ray is
        CHECK(g.payloads[below].model_id == g.payloads[at].model_id);
        CHECK(g.payloads[below].dropped == 0);
        CHECK(g.payloads[above].dropped == 1);
    }
}

TEST_CASE("relative germ: mobility and immobility values are the known lines") {
    Geography g = germ_geography(4);
    // high model keeps the start fan; the exceptional ray is index 1,
    // the single vertical wall is curve 0
    CHECK(g.tracked_curve_count() == 1);
    CHECK(g.high_model.fan.rays[1] == rv({0, 1}));

    CHECK(p_value(g, 0, {rat(1, 4)}) == 1);          // 2 - 4a
    CHECK(p_value(g, 0, {rat(1, 2)}) == 0);
    CHECK(p_value(g, 0, {rat(3, 4)}) == 0);          // contracted beyond
    CHECK(e_value(g, 1, {rat(1, 4)}) == 0);
    CHECK(e_value(g, 1, {rat(3, 4)}) == rat(1, 4));  // a - 1/2
    CHECK(ild_value(g, 1, {rat(3, 4)}) == rat(1, 4));

    // p convex from below, e convex from below, on threshold-crossing segments
    std::mt19937 rng(2026);
    std::uniform_int_distribution<long> num(0, 32);
    for (int it = 0; it < 40; ++it) {
        QVec a{rat(num(rng), 32)}, b{rat(num(rng), 32)};
        QVec mid{(a[0] + b[0]) / 2};
        CHECK(2 * p_value(g, 0, mid) <= p_value(g, 0, a) + p_value(g, 0, b));
        CHECK(2 * e_value(g, 1, mid) <= e_value(g, 1, a) + e_value(g, 1, b));
    }
}

TEST_CASE("plane with three invariant lines: only the full boundary has a model") {
    auto p2 = projective_plane();
    QMat comps{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})};
    Geography g = compute_geography(p2, comps);
    CHECK(g.generality);  // three lines span the (rank one) class space
    CHECK(g.ns.dim() == 0);
    CHECK(g.ns.contains({Rat(1), Rat(1), Rat(1)}));
    CHECK(!g.ns.contains({Rat(0), Rat(0), Rat(0)}));
    CHECK(!in_ns(g, {Rat(1), Rat(1), rat(15, 16)}));
    CHECK(evaluate_boundary(g, {Rat(1), Rat(1), Rat(1)}).in_ns);
    CHECK(!evaluate_boundary(g, {rat(1, 2), Rat(1), Rat(1)}).in_ns);
}

TEST_CASE("cremona pair: three countries with corners at three quarters") {
    Geography g = cremona_geography();
    CHECK(g.m == 2);
    CHECK(!g.generality);  // two classes cannot span a rank-four lattice

    // corner boundaries on the cube edges sit exactly at 3/4
    CHECK(in_ns(g, b2(rat(3, 4), 0)));
    CHECK(in_ns(g, b2(0, rat(3, 4))));
    CHECK(!in_ns(g, b2(rat(3, 4) - rat(1, 64), 0)));
    CHECK(!in_ns(g, b2(0, rat(3, 4) - rat(1, 64))));

    // count the full-dimensional wlc classes: the three countries
    std::set<long> country_classes;
    for (std::size_t i = 0; i < g.complex.cells.size(); ++i)
        if (g.complex.cells[i].dim == 2 && g.payloads[i].in_ns)
            country_classes.insert(g.complex.cells[i].payload);
    CHECK(country_classes.size() == 3);

    // representative interior points of the three countries
    CellPayload ce = evaluate_boundary(g, b2(rat(5, 8), rat(1, 8)));
    CellPayload cm = evaluate_boundary(g, b2(rat(5, 8), rat(5, 8)));
    CellPayload cl = evaluate_boundary(g, b2(rat(1, 8), rat(5, 8)));
    CHECK(ce.in_ns);
    CHECK(cm.in_ns);
    CHECK(cl.in_ns);
    CHECK(ce.dropped == 3);  // the three point blow-ups
    CHECK(cm.dropped == 0);  // the pair is already its own model
    CHECK(cl.dropped == 3);  // the three lines
    CHECK(ce.model_id != cl.model_id);
    CHECK(ce.model_id != cm.model_id);
}

TEST_CASE("cremona pair: the equivalences at and around the corners") {
    Geography g = cremona_geography();
    QVec c1 = b2(rat(3, 4), 0);
    QVec c2 = b2(0, rat(3, 4));

    // both corner pairs contract everything: equal semiample contraction,
    // different weak log canonical models
    CHECK(equivalent(g, c1, c2, EqRel::Lcm));
    CHECK(!equivalent(g, c1, c2, EqRel::Wlc));
    CHECK(evaluate_boundary(g, c1).lcm_id == "pt");

    // outcome sets distinguish the two birational countries
    QVec p1 = b2(rat(5, 8), rat(1, 8));
    QVec p3 = b2(rat(1, 8), rat(5, 8));
    CHECK(!equivalent(g, p1, p3, EqRel::Md));
    CHECK(equivalent(g, p1, b2(rat(11, 16), rat(1, 16)), EqRel::Md));
    CHECK(equivalent(g, p1, b2(rat(11, 16), rat(1, 16)), EqRel::Wlc));

    // the middle country keeps every immobility at zero
    CellPayload cm = evaluate_boundary(g, b2(rat(5, 8), rat(5, 8)));
    for (int s : cm.e_signs) CHECK(s == 0);
}

TEST_CASE("cremona pair: facet taxonomy around the middle country") {
    Geography g = cremona_geography();

    // internal walls between countries are divisorial
    std::size_t f1 = g.complex.locate(b2(rat(1, 2), rat(1, 4)));
    std::size_t f2 = g.complex.locate(b2(rat(1, 4), rat(1, 2)));
    CHECK(g.complex.cells[f1].dim == 1);
    CHECK(classify_facet(g, f1).type == FacetType::Divisorial);
    CHECK(classify_facet(g, f2).type == FacetType::Divisorial);

    // the wlc region boundary inside the cube is fibering
    std::size_t fb = g.complex.locate(b2(rat(5, 8), rat(1, 16)));
    CHECK(g.complex.cells[fb].dim == 1);
    CHECK(classify_facet(g, fb).type == FacetType::Fibering);

    // cells on the cube boundary are bordering
    std::size_t edge = g.complex.locate(b2(rat(7, 8), 0));
    CHECK(classify_facet(g, edge).type == FacetType::CubeBordering);

    // every facet of the complex classifies without an inconsistency
    for (std::size_t i = 0; i < g.complex.cells.size(); ++i)
        if (g.complex.cells[i].dim == 1) CHECK_NOTHROW(classify_facet(g, i));
}

TEST_CASE("cremona pair: the central ridge carries a two-ended fibration chain") {
    Geography g = cremona_geography();
    std::size_t r = g.complex.locate(b2(rat(1, 4), rat(1, 4)));
    CHECK(g.complex.cells[r].dim == 0);
    RidgeTag tag = classify_ridge(g, r);
    CHECK(tag.type == RidgeType::Fib2C);
    CHECK(tag.countries.size() == 3);
    CHECK(tag.central == "pt");

    std::size_t corner = g.complex.locate(b2(rat(3, 4), 0));
    CHECK(classify_ridge(g, corner).type == RidgeType::CubeBordering);
}

TEST_CASE("quadric lattice: a ridge with two foreign fibrations on its ends") {
    QMat gram{rv({0, 1}), rv({1, 0})};
    QMat curves{rv({1, 0}), rv({0, 1})};
    auto s = make_surface(2, gram, rv({-2, -2}), curves, {"f1", "f2"});
    QMat classes{rv({3, 1}), rv({1, 3})};
    QMat mults{QVec(2, Rat(0)), QVec(2, Rat(0))};
    Geography g = compute_geography(s, classes, mults);
    CHECK(g.generality);

    std::size_t r = g.complex.locate(b2(rat(1, 2), rat(1, 2)));
    CHECK(g.complex.cells[r].dim == 0);
    RidgeTag tag = classify_ridge(g, r);
    CHECK(tag.type == RidgeType::Fib2A);
    CHECK(tag.countries.size() == 1);
    CHECK(tag.central == "pt");
    CHECK(tag.facets.size() == 2);
}

TEST_CASE("blown-up plane lattice: one end of the chain lands on the base") {
    QMat gram{rv({1, 0}), rv({0, -1})};
    QMat curves{rv({0, 1}), rv({1, -1})};  // the (-1)-curve and the ruling
    auto s = make_surface(2, gram, rv({-3, 1}), curves, {"e", "f"});
    QMat classes{rv({4, -2}), rv({2, 0})};
    QMat mults{QVec(2, Rat(0)), QVec(2, Rat(0))};
    Geography g = compute_geography(s, classes, mults);
    CHECK(g.generality);

    std::size_t r = g.complex.locate(b2(rat(1, 2), rat(1, 2)));
    CHECK(g.complex.cells[r].dim == 0);
    RidgeTag tag = classify_ridge(g, r);
    CHECK(tag.type == RidgeType::Fib2B);
    CHECK(tag.countries.size() == 2);
    CHECK(tag.central == "pt");
}

TEST_CASE("once-blown-up quadric lattice: a fiber modification ridge") {
    QMat gram{rv({0, 1, 0}), rv({1, 0, 0}), rv({0, 0, -1})};
    QMat curves{rv({0, 0, 1}), rv({1, 0, -1}), rv({0, 1, -1}), rv({1, 0, 0}),
                rv({0, 1, 0})};
    auto s = make_surface(3, gram, rv({-2, -2, 1}), curves,
                          {"e", "f1-e", "f2-e", "f1", "f2"});
    QMat classes{rv({2, 2, -2}), rv({3, 2, 0})};
    QMat mults{QVec(5, Rat(0)), QVec(5, Rat(0))};
    Geography g = compute_geography(s, classes, mults);

    std::size_t r = g.complex.locate(b2(rat(1, 2), rat(1, 2)));
    CHECK(g.complex.cells[r].dim == 0);
    const CellPayload& rp = g.payloads[r];
    CHECK(rp.in_ns);
    CHECK(rp.nu == 1);  // the adjoint class is a multiple of a ruling

    RidgeTag tag = classify_ridge(g, r);
    CHECK(tag.type == RidgeType::Fib2C);
    // blow-down, the blown-up model itself, and the other blow-down
    CHECK(tag.countries.size() == 3);
    CHECK(tag.central.rfind("curve:", 0) == 0);
    CellPayload middle = evaluate_boundary(g, b2(rat(9, 16), rat(9, 16)));
    CHECK(middle.in_ns);
    CHECK(middle.dropped == 0);

    // the two outer countries contract the two different components of the
    // reducible fiber
    CellPayload a = evaluate_boundary(g, b2(rat(3, 8), rat(11, 16)));
    CellPayload b = evaluate_boundary(g, b2(rat(5, 8), rat(7, 16)));
    CHECK(a.in_ns);
    CHECK(b.in_ns);
    CHECK(a.dropped == 1);
    CHECK(b.dropped == 1);
    CHECK(a.model_id != b.model_id);
}

TEST_CASE("flop wall: the small-resolution germ has an internal flopping facet") {
    auto x = small_resolution_a();
    QMat comps;
    for (std::size_t i = 0; i < 4; ++i) {
        QVec e(4, Rat(0));
        e[i] = 1;
        comps.push_back(e);
    }
    Geography g = compute_geography(x, comps);

    bool found = false;
    for (std::size_t i = 0; i < g.complex.cells.size(); ++i) {
        if (g.complex.cells[i].dim != 3) continue;
        FacetTag tag = classify_facet(g, i);
        if (tag.type == FacetType::Flopping) {
            found = true;
            CHECK(g.payloads[i].in_ns);
        }
    }
    CHECK(found);
}

TEST_CASE("wlc region is monotone and convex") {
    Geography g = cremona_geography();
    std::mt19937 rng(77);
    std::uniform_int_distribution<long> num(0, 16);
    int inside = 0;
    for (int it = 0; it < 200; ++it) {
        QVec a = b2(rat(num(rng), 16), rat(num(rng), 16));
        QVec b = b2(rat(num(rng), 16), rat(num(rng), 16));
        bool ia = in_ns(g, a), ib = in_ns(g, b);
        CHECK(ia == evaluate_boundary(g, a).in_ns);
        if (ia && ib) {
            ++inside;
            QVec mid = b2((a[0] + b[0]) / 2, (a[1] + b[1]) / 2);
            CHECK(in_ns(g, mid));
        }
        if (ia) {
            QVec up = b2(a[0] + (1 - a[0]) / 2, a[1] + (1 - a[1]) / 2);
            CHECK(in_ns(g, up));
        }
    }
    CHECK(inside > 10);
}

TEST_CASE("grid oracle agrees with the located cells") {
    Geography g = cremona_geography();
    auto grid = oracle_grid_geography(g, 8);
    CHECK(grid.size() == 81);
    for (const auto& sample : grid) {
        std::size_t cell = g.complex.locate(sample.b);
        CHECK(g.payloads[cell] == sample.payload);
        CHECK(in_ns(g, sample.b) == sample.payload.in_ns);
    }

    Geography h = germ_geography(3);
    for (const auto& sample : oracle_grid_geography(h, 9)) {
        std::size_t cell = h.complex.locate(sample.b);
        CHECK(h.payloads[cell] == sample.payload);
    }
}

TEST_CASE("separatrix: interior boundary pieces project injectively") {
    Geography g = cremona_geography();
    Separatrix sep = separatrix_and_projection(g);
    CHECK(!sep.empty());
    for (const auto& f : sep.pieces) {
        CHECK(f.dim() == 1);
        QVec p = f.rel_interior_point();
        CHECK(in_ns(g, p));
        CHECK(!evaluate_boundary(g, scale(rat(15, 16), p)).in_ns);
    }
    // distinct vertices keep distinct images under the projection
    for (std::size_t i = 0; i < sep.projected.size(); ++i)
        for (std::size_t j = i + 1; j < sep.projected.size(); ++j)
            CHECK(sep.projected[i] != sep.projected[j]);
    CHECK(sep.image.bounded());

    // the full-cube region of the germ has no interior boundary at all
    Separatrix none = separatrix_and_projection(germ_geography(4));
    CHECK(none.empty());
}

TEST_CASE("extension by unused components preserves the wlc slice") {
    Geography g = germ_geography(4);
    // add the two non-exceptional rays with zero coefficient
    QMat bigger{rv({0, 1, 0}), rv({1, 0, 0}), rv({0, 0, 1})};
    Geography h = extend(g, bigger);
    CHECK(h.m == 3);
    for (long k = 0; k <= 8; ++k) {
        QVec b{rat(k, 8)};
        QVec emb{rat(k, 8), Rat(0), Rat(0)};
        CHECK(in_ns(g, b) == in_ns(h, emb));
        CHECK(evaluate_boundary(g, b).dropped == evaluate_boundary(h, emb).dropped);
    }
    CHECK_THROWS_AS(extend(g, QMat{rv({1, 0, 0})}), std::invalid_argument);
}

TEST_CASE("class payloads are constant on each class") {
    Geography g = cremona_geography();
    for (std::size_t c = 0; c < g.classes.size(); ++c)
        for (std::size_t k = 1; k < g.classes[c].size(); ++k)
            CHECK(g.payloads[g.classes[c][k]] == g.payloads[g.classes[c][0]]);

    // and two random points of one country are equivalent in every relation
    QVec a = b2(rat(9, 16), rat(9, 16));
    QVec b = b2(rat(11, 16), rat(5, 8));
    for (EqRel rel : {EqRel::Wlc, EqRel::Lcm, EqRel::Mob, EqRel::Fix, EqRel::Md})
        CHECK(equivalent(g, a, b, rel));
}
