#ifndef GEOLOG_TESTS_FIXTURES_HPP
#define GEOLOG_TESTS_FIXTURES_HPP

// Shared toric fixtures for the test suites.

#include "geolog/toric.hpp"

namespace geolog::fixtures {

inline QVec v(std::initializer_list<long> xs) {
    QVec out;
    for (auto x : xs) out.push_back(Rat(x));
    return out;
}

inline ToricModel projective_plane() {
    Fan f = make_fan(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
    return make_model(std::move(f));
}

// Hirzebruch surface: P(O + O(n)) over P^1
inline ToricModel hirzebruch(long n) {
    Fan f = make_fan(2, {v({1, 0}), v({0, 1}), v({-1, n}), v({0, -1})},
                     {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    return make_model(std::move(f));
}

inline ToricModel quadric_surface() { return hirzebruch(0); }

// del Pezzo of degree 6: P^2 blown up in the three invariant points
inline ToricModel del_pezzo6() {
    Fan f = make_fan(2,
                     {v({1, 0}), v({1, 1}), v({0, 1}), v({-1, 0}), v({-1, -1}), v({0, -1})},
                     {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    return make_model(std::move(f));
}

inline ToricModel projective_space3() {
    Fan f = make_fan(3,
                     {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})},
                     {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    return make_model(std::move(f));
}

inline ToricModel blowup_point_p3() {
    // blow up the point of P^3 at the cone <e1,e2,e3>; new ray e1+e2+e3
    Fan f = make_fan(3,
                     {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1}),
                      v({1, 1, 1})},
                     {{0, 1, 4}, {0, 2, 4}, {1, 2, 4}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    return make_model(std::move(f));
}

// Affine threefold cone over a quadric: one cone on rays
// (1,0,0),(0,1,0),(0,0,1),(1,1,-1); its two small resolutions differ by a flip.
inline Fan quadric_cone_fan() {
    return make_fan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, -1})},
                    {{0, 1, 2, 3}});
}

inline ToricModel small_resolution_a() {
    Fan base = quadric_cone_fan();
    QMat id = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
    Fan f = make_fan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, -1})},
                     {{0, 1, 2}, {0, 1, 3}});
    return make_model(std::move(f), std::move(base), id);
}

inline ToricModel small_resolution_b() {
    Fan base = quadric_cone_fan();
    QMat id = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
    Fan f = make_fan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, -1})},
                     {{0, 2, 3}, {1, 2, 3}});
    return make_model(std::move(f), std::move(base), id);
}

// Relative surface: germ of the F_n fibration over the affine surface cone
// Z = <(1,0),(-1,n)>; X resolves the cone point by inserting the ray (0,1).
inline ToricModel resolved_cone_surface(long n) {
    Fan base = make_fan(2, {v({1, 0}), v({-1, n})}, {{0, 1}});
    QMat id = {v({1, 0}), v({0, 1})};
    Fan f = make_fan(2, {v({1, 0}), v({0, 1}), v({-1, n})}, {{0, 1}, {1, 2}});
    return make_model(std::move(f), std::move(base), id);
}

inline ToricModel cone_surface_base(long n) {
    Fan base = make_fan(2, {v({1, 0}), v({-1, n})}, {{0, 1}});
    QMat id = {v({1, 0}), v({0, 1})};
    Fan f = base;
    return make_model(std::move(f), std::move(base), id);
}

}  // namespace geolog::fixtures

#endif
