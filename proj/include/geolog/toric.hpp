#ifndef GEOLOG_TORIC_HPP
#define GEOLOG_TORIC_HPP

// Rational polyhedral fans and the toric birational toolkit built on them:
// walls, exact intersection numbers against torus-invariant curves, nef
// tests, log discrepancies of lattice points, and the elementary fan
// surgeries (contraction of an extremal face, flip, star subdivision,
// common refinement).  Everything is exact over Q; divisors are coefficient
// vectors indexed by the rays of the fan.

#include "geolog/cone.hpp"
#include "geolog/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace geolog {

struct Fan {
    std::size_t rank = 0;
    // primitive integer ray generators, lex-sorted, no duplicates
    QMat rays;
    // maximal cones as sorted ray-index lists, lex-sorted
    std::vector<std::vector<std::size_t>> cones;

    bool operator==(const Fan& o) const {
        return rank == o.rank && rays == o.rays && cones == o.cones;
    }
};

// Canonicalizes (primitive rays, sorted, indices remapped) and checks the
// fan axioms: listed rays are exactly the extreme rays of the maximal
// cones, maximal cones are full-dimensional and pointed, no cone contains
// another, and any two cones meet along a common face.  Throws
// std::invalid_argument with a specific message otherwise.
Fan make_fan(std::size_t rank, QMat rays,
             std::vector<std::vector<std::size_t>> cones);

// Deterministic serialization; equal fans produce equal keys.
std::string fan_key(const Fan& f);

struct Wall {
    std::vector<std::size_t> rays;  // ray indices spanning the codim-1 face
    std::size_t cone_a = 0, cone_b = 0;  // the two adjacent maximal cones
    // Primitive integer vector r over all fan rays with sum r_rho v_rho = 0,
    // supported on rays(cone_a) ∪ rays(cone_b) and positive on the rays
    // opposite the wall.  Only available when both adjacent cones are
    // simplicial.
    QVec relation;
    bool has_relation = false;
    bool vertical = true;  // maps into a single cone of the base
};

// A (possibly relative) toric model X -> Z.  An absent base means Z is a
// point if the fan is complete, or Spec of the semigroup algebra of the
// support otherwise; a present base carries the fan of Z together with the
// lattice map N -> N_Z (rows are functionals on N).
struct ToricModel {
    Fan fan;
    std::optional<Fan> base;
    QMat base_map;

    // derived, filled in by make_model
    std::vector<ConeRep> cone_reps;      // geometry of each maximal cone
    std::vector<Wall> walls;             // interior codim-1 faces
    std::vector<std::size_t> vertical_walls;  // indices into `walls`
    bool q_factorial = false;  // all maximal cones simplicial
    bool proper = false;       // proper over the base / complete
    bool projective = false;   // some divisor is positive on every vertical wall
};

ToricModel make_model(Fan fan);
ToricModel make_model(Fan fan, Fan base, QMat base_map);

// Equality of the underlying model: same fan, same base data.
bool same_model(const ToricModel& a, const ToricModel& b);
std::string model_key(const ToricModel& x);

// Degree of D = sum coeffs[rho] * D_rho on the invariant curve of wall w,
// computed from the difference of local support-function solutions across
// the wall, normalized by the lattice index of the opposite ray in N/N_w.
// Throws std::domain_error if D is not Q-Cartier near the wall.
Rat wall_degree(const ToricModel& x, const QVec& coeffs, std::size_t w);

// (D_rho . C_w) for all rays rho, for one wall.
QVec curve_class(const ToricModel& x, std::size_t w);

// (D . C_w) over the vertical walls, in wall order: the numerical class of
// D relative to the base.
QVec divisor_class(const ToricModel& x, const QVec& coeffs);

bool is_nef(const ToricModel& x, const QVec& coeffs);
bool is_ample(const ToricModel& x, const QVec& coeffs);

// Log discrepancy a(v; X, B) of the divisorial valuation of the primitive
// lattice point v with respect to the pair (X, B), B = sum b_rho D_rho:
// one plus the value at v of the support function of -(K_X + B).  Requires
// v in the support of the fan and K_X + B Q-Cartier there.
Rat log_discrepancy(const ToricModel& x, const QVec& b, const QVec& v);

// Value of -phi_D at each given lattice point, phi_D the support function
// of D on x.fan.  Evaluating at the rays of a refinement gives the
// coefficient vector of the pullback of D.
QVec pullback_values(const ToricModel& x, const QVec& coeffs, const QMat& points);

enum class RayKind { Fibering, Divisorial, Small };

struct ExtremalRay {
    QVec cls;                         // primitive class vector (D_rho . C)
    QVec relation;                    // primitive circuit over all rays
    std::vector<std::size_t> walls;   // vertical walls on this ray
    RayKind kind = RayKind::Small;
};

// Extreme rays of the cone of vertical invariant curves.  Requires a
// Q-factorial model.
std::vector<ExtremalRay> extremal_rays(const ToricModel& x);

struct Contraction {
    ToricModel target;
    // lattice map N -> N_target (identity for birational contractions,
    // the quotient map for a fibering ray)
    QMat map;
};

// Contract the given extremal ray: merge the maximal cones glued along its
// walls, dropping a ray (divisorial), keeping the rays (small, target not
// Q-factorial), or passing to the quotient lattice (fibering).
Contraction contract(const ToricModel& x, const ExtremalRay& r);

// Replace the cones around a small extremal ray by the opposite
// triangulation of its circuit.  The fan's rays are unchanged.
ToricModel flip(const ToricModel& x, const ExtremalRay& r);

// Star subdivision at the primitive lattice point v (added as a new ray).
Fan star_subdivide(const Fan& f, const QVec& v);

// Coarsest common refinement of two fans with the same support.
Fan common_refinement(const Fan& a, const Fan& b);

// Refine every non-simplicial cone by pulling triangulations (no new rays).
Fan triangulate(const Fan& f);

// True if v lies in the support of the fan.
bool in_support(const Fan& f, const QVec& v);

}  // namespace geolog

#endif
