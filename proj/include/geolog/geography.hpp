#ifndef GEOLOG_GEOGRAPHY_HPP
#define GEOLOG_GEOGRAPHY_HPP

// The decomposition of the boundary cube of a pair into classes with a
// common adjoint-run behavior: the region with weak log canonical models,
// its chamber complex with per-cell model/signature payloads, the mobility
// and immobility functions p and e, facet/ridge taxonomy, the separatrix
// with its projection, boundary equivalences, and cube extensions.

#include "geolog/arrangement.hpp"
#include "geolog/surface.hpp"
#include "geolog/toric.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace geolog {

// classification witnesses failed to validate an assigned tag
struct classification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FacetType { CubeBordering, Fibering, Flopping, Divisorial };
enum class RidgeType { CubeBordering, Fib2A, Fib2B, Fib2C, Bir3A, Bir3B, Bir3C };

struct FacetTag {
    FacetType type = FacetType::CubeBordering;
    bool verified = false;  // generality conditions held when classifying
    std::string note;
    std::vector<std::string> models;  // wlc model ids on the two sides
};

struct RidgeTag {
    RidgeType type = RidgeType::CubeBordering;
    bool verified = false;
    std::string note;
    // the fan of cells around the ridge, in rotational order; countries
    // and facets alternate and only in-region cells are listed
    std::vector<std::size_t> countries;
    std::vector<std::size_t> facets;
    std::string central;  // id of the model attached to the ridge itself
};

struct CellPayload {
    bool in_ns = false;
    std::string model_id;          // canonical key of the run's end model
    std::size_t dropped = 0;       // divisors contracted by the run
    std::vector<int> p_signs;      // 0/+1 per tracked curve; empty outside
    std::vector<int> e_signs;      // 0/+1 per tracked divisor
    std::optional<long> nu;        // nullopt encodes minus infinity
    std::string lcm_id;            // id of the semiample (Iitaka) contraction

    bool operator==(const CellPayload& o) const {
        return in_ns == o.in_ns && model_id == o.model_id && p_signs == o.p_signs &&
               e_signs == o.e_signs && nu == o.nu && lcm_id == o.lcm_id;
    }
};

struct Geography {
    bool surface_category = false;
    std::size_t m = 0;        // number of cube coordinates
    Polyhedron cube;          // [0,1]^m cut by the coefficient caps
    Polyhedron ns;            // boundaries whose pair has a wlc model
    ChamberComplex complex;   // fine decomposition of the cube
    std::vector<CellPayload> payloads;              // parallel to cells
    std::vector<std::vector<std::size_t>> classes;  // cells with equal payload
    bool generality = false;  // component classes span the class space

    // toric data
    ToricModel model;
    QMat components;      // m coefficient vectors over the rays
    ToricModel high_model;  // refinement dominating every run outcome

    // surface data
    SurfaceLattice lattice;
    QMat component_classes;  // m rows in the lattice basis
    QMat component_mults;    // m rows of multiplicities along negative curves

    std::size_t tracked_curve_count() const;
    std::size_t tracked_divisor_count() const;
};

Geography compute_geography(const ToricModel& x, const QMat& components);
Geography compute_geography(const SurfaceLattice& s, const QMat& component_classes,
                            const QMat& component_mults);

// ray coefficients (toric) / lattice class and curve multiplicities
// (surface) of the boundary divisor at cube point b
QVec boundary_coefficients(const Geography& g, const QVec& b);

bool in_ns(const Geography& g, const QVec& b);

// full signature of a single cube point, without reference to the complex
CellPayload evaluate_boundary(const Geography& g, const QVec& b);

// initial log discrepancy of a tracked divisor at boundary b
Rat ild_value(const Geography& g, std::size_t divisor, const QVec& b);
// mobility of a tracked curve / immobility of a tracked divisor; both
// require b in the wlc region and throw std::domain_error outside
Rat p_value(const Geography& g, std::size_t curve, const QVec& b);
Rat e_value(const Geography& g, std::size_t divisor, const QVec& b);

// outcomes of every run order (not only the deterministic one)
std::set<std::string> resulting_model_set(const Geography& g, const QVec& b);

enum class EqRel { Md, Wlc, Lcm, Mob, Fix };
bool equivalent(const Geography& g, const QVec& b1, const QVec& b2, EqRel rel);

FacetTag classify_facet(const Geography& g, std::size_t cell);
RidgeTag classify_ridge(const Geography& g, std::size_t cell);

// the facets and countries around a ridge, in rotational order
std::vector<std::size_t> ridge_ring(const Geography& g, std::size_t cell);

struct Separatrix {
    std::vector<Polyhedron> pieces;  // closed facets of ns interior to the cube
    QVec origin;                     // the zero boundary
    QMat vertices;          // vertices of the pieces, deduplicated
    QMat projected;         // their images under the projection from 0
    Polyhedron image;       // hull of the projected vertex set
    bool empty() const { return pieces.empty(); }
};

Separatrix separatrix_and_projection(const Geography& g);
// central projection onto the hyperplane of coefficient sum one
QVec project_from_origin(const QVec& b);

// geography over a larger component list; the first rows of new_components
// must equal the old ones (new_mults is only read in the surface category)
Geography extend(const Geography& g, const QMat& new_components,
                 const QMat& new_mults = {});

struct GridSample {
    QVec b;
    CellPayload payload;
};

// evaluate every grid point of pitch 1/pitch_den inside the cube region
std::vector<GridSample> oracle_grid_geography(const Geography& g, long pitch_den);

}  // namespace geolog

#endif
