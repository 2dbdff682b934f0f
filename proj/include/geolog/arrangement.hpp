#ifndef GEOLOG_ARRANGEMENT_HPP
#define GEOLOG_ARRANGEMENT_HPP

// Hyperplane-arrangement cells inside a region.  Every cell is relatively
// open and carries a sign vector: one entry per region constraint
// (0 = on that face, +1 = strictly inside) followed by one entry per wall
// (-1/0/+1).  The face relation is sign-vector compatibility, which makes
// the "interior meets closure iff face" criterion a direct test.

#include "geolog/polyhedron.hpp"

#include <cstddef>
#include <vector>

namespace geolog {

// affine functional  f(x) = normal . x - offset; its zero set is a wall
struct AffineWall {
    QVec normal;
    Rat offset;

    Rat eval(const QVec& x) const { return dot(normal, x) - offset; }
};

struct Cell {
    Polyhedron closure;
    std::vector<int> region_signs;  // 0 or +1 per region halfspace
    std::vector<int> wall_signs;    // -1, 0, +1 per wall
    std::size_t dim = 0;
    long payload = -1;  // caller-defined id; -1 = unset
};

struct ChamberComplex {
    Polyhedron region;
    std::vector<AffineWall> walls;
    std::vector<Cell> cells;
    // face_of[i] lists cells whose closure contains cell i as a face
    std::vector<std::vector<std::size_t>> face_of;
    // adjacent[i]: cells j != i with closure(i) n closure(j) a facet of one
    std::vector<std::vector<std::size_t>> adjacent;

    // is cell a a face of closure(cell b)?  (sign-vector compatibility)
    bool is_face(std::size_t a, std::size_t b) const;
    std::size_t locate(const QVec& x) const;  // cell containing x; throws if none
};

// Decompose `region` by the walls.  Cells of every dimension are produced
// (the zero-wall case is just the open-face decomposition of the region).
ChamberComplex arrangement_chambers(const Polyhedron& region,
                                    const std::vector<AffineWall>& walls);

}  // namespace geolog

#endif
