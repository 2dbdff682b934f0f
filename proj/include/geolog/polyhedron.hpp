#ifndef GEOLOG_POLYHEDRON_HPP
#define GEOLOG_POLYHEDRON_HPP

// Rational polyhedra given by closed halfspaces and equations, with
// vertex/ray data computed through homogenization.  Dimensions, interiors
// and faces are always taken relative to the affine span.

#include "geolog/cone.hpp"
#include "geolog/rational.hpp"

#include <cstddef>
#include <vector>

namespace geolog {

// normal . x >= offset (closed) or > offset (open).  Open halfspaces only
// appear inside arrangement cells, never in a Polyhedron.
struct Halfspace {
    QVec normal;
    Rat offset;
    bool strict = false;

    Rat eval(const QVec& x) const { return dot(normal, x) - offset; }
};

class Polyhedron {
public:
    Polyhedron() = default;
    // halfspaces n.x >= c, equations n.x = c
    Polyhedron(std::size_t ambient_dim, std::vector<Halfspace> halfspaces,
               std::vector<Halfspace> equations = {});

    static Polyhedron box01(std::size_t m);  // the unit cube [0,1]^m

    std::size_t ambient_dim() const { return ambient_dim_; }
    bool empty() const { return empty_; }
    // dimension of the relative interior; 0 for a point, -1 reported as
    // empty() rather than a sentinel value
    std::size_t dim() const { return dim_; }

    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Halfspace>& equations() const { return equations_; }
    const QMat& vertices() const { return vertices_; }
    const QMat& recession_rays() const { return rays_; }
    const QMat& lineality() const { return lineality_; }
    bool bounded() const { return rays_.empty() && lineality_.empty(); }

    bool contains(const QVec& x) const;
    bool contains_rel_interior(const QVec& x) const;
    QVec rel_interior_point() const;  // throws std::domain_error when empty

    // true when every point of this polyhedron lies in `other`
    bool subset_of(const Polyhedron& other) const;
    bool operator==(const Polyhedron& o) const;  // as point sets

    Polyhedron intersect(const Polyhedron& q) const;
    Polyhedron intersect(const Halfspace& extra, bool as_equation = false) const;

    // All nonempty faces (the polyhedron itself included), each as a
    // Polyhedron; bounded-or-pointed input required.
    std::vector<Polyhedron> all_faces() const;
    std::vector<Polyhedron> faces_of_codim(std::size_t k) const;

    static Polyhedron convex_hull(std::size_t ambient_dim, const QMat& points,
                                  const QMat& rays = {});

private:
    void rebuild();

    std::size_t ambient_dim_ = 0;
    std::vector<Halfspace> halfspaces_;
    std::vector<Halfspace> equations_;
    bool empty_ = true;
    std::size_t dim_ = 0;
    QMat vertices_;
    QMat rays_;
    QMat lineality_;
};

}  // namespace geolog

#endif
