#ifndef GEOLOG_CONE_HPP
#define GEOLOG_CONE_HPP

// Exact convex cones over Q with both generator (V) and inequality (H)
// descriptions.  Conversion runs the double description method with
// explicit lineality handling; there are no tolerances anywhere.

#include "geolog/rational.hpp"

#include <optional>
#include <string>

namespace geolog {

// Raw double-description result: the cone is  lineality-span + cone(rays),
// with rays orthogonal to the lineality space and minimal (extreme mod
// lineality).
struct DDResult {
    QMat rays;
    QMat lineality;
};

// Extreme rays / lineality basis of { x : n·x >= 0 for n in normals } in
// ambient dimension `dim`.  Rows of `equations` are forced to n·x = 0.
DDResult double_description(std::size_t dim, const QMat& normals,
                            const QMat& equations = {});

struct ConeRep {
    std::size_t ambient_dim = 0;
    // V-side: primitive rays, lex-sorted, orthogonal to lineality.
    QMat rays;
    // basis of the lineality space (rref rows, primitive, sorted)
    QMat lineality;
    // H-side: facet inequalities n·x >= 0, valid inside the linear span;
    // normals are projected into the span so they are canonical.
    QMat facet_normals;
    // equations cutting out the linear span of the cone
    QMat span_normals;

    std::size_t lineality_dim() const { return lineality.size(); }
    std::size_t dim() const;  // dimension of the cone itself
    bool is_trivial() const { return rays.empty() && lineality.empty(); }

    bool contains(const QVec& x) const;
    // strict containment: x in the relative interior
    bool contains_interior(const QVec& x) const;

    // a rational point in the relative interior (0 for the trivial cone)
    QVec interior_point() const;

    bool operator==(const ConeRep& o) const;
};

// Build from one side; the other side is regenerated and both are put in
// canonical form (so equal cones compare equal as values).
ConeRep cone_from_rays(std::size_t ambient_dim, const QMat& rays);
ConeRep cone_from_inequalities(std::size_t ambient_dim, const QMat& normals,
                               const QMat& equations = {});

// Completes a partial representation (exactly one side present) and
// verifies consistency when both sides are given.  Throws
// std::invalid_argument on a representation mismatch.
ConeRep dual_rep(std::optional<QMat> rays, std::optional<QMat> normals,
                 std::size_t ambient_dim);

// The polar dual { y : y·x >= 0 for all x in c }.
ConeRep dual_cone(const ConeRep& c);

ConeRep intersect(const ConeRep& a, const ConeRep& b);
// conic hull of the union
ConeRep join(const ConeRep& a, const ConeRep& b);

std::string cone_debug_string(const ConeRep& c);

}  // namespace geolog

#endif
