#ifndef GEOLOG_CONES_HPP
#define GEOLOG_CONES_HPP

// Positive cones of divisor classes on relatively Fano-type models: the
// nef (= semiample), mobile, and effective cones, reported both in
// numerical-class coordinates and as preimages in the divisor-coefficient
// space; the mobile+exceptional decomposition of a pseudo-effective class;
// the chamber decomposition of the effective cone by the attached rational
// 1-contraction; and enumeration of all small Q-factorial modifications.

#include "geolog/cone.hpp"
#include "geolog/surface.hpp"
#include "geolog/toric.hpp"

#include <string>
#include <vector>

namespace geolog {

struct ConeReport {
    // numerical-class coordinates: one entry per vertical wall curve
    // (toric) or per lattice basis vector (surface)
    ConeRep samp, nef, mob, eff;
    // preimages under the class map, in divisor-coefficient space
    ConeRep samp_div, nef_div, mob_div, eff_div;
};

ConeReport positive_cones(const ToricModel& x);
ConeReport positive_cones(const SurfaceLattice& s);

// All Q-factorial models sharing the rays of x, reachable by flips of
// small extremal rays.  The input model comes first.
std::vector<ToricModel> enumerate_models(const ToricModel& x);

struct MobExcDecomposition {
    QVec mobile;       // pullback of the limit semiample class
    QVec exceptional;  // the effective remainder, supported on dropped rays
    ToricModel target;     // end model of the divisor-directed run
    std::string target_key;
};

// Splits a pseudo-effective divisor class into its mobile part and the
// effective part contracted by the associated rational 1-contraction.
// Throws std::domain_error when the class is not pseudo-effective.
MobExcDecomposition mob_exc(const ToricModel& x, const QVec& d);

struct MoriChamber {
    ConeRep chamber;   // closed cone in divisor-coefficient space
    ToricModel model;  // the 1-contraction attached to interior classes
    std::string model_id;
    std::vector<std::size_t> exc_rays;  // ray indices of x dropped by the map
};

// Decomposition of the effective cone: one chamber per reachable model,
// the chamber being the pullback of that model's nef cone joined with the
// rays it drops.  Chamber interiors partition the interior of Eff.
std::vector<MoriChamber> mori_chambers(const ToricModel& x);

}  // namespace geolog

#endif
