#ifndef GEOLOG_JSON_IO_HPP
#define GEOLOG_JSON_IO_HPP

// JSON serialization of the library's objects and reports.  Rationals are
// always exact "p/q" strings, keys come out in sorted order, and every
// reader round-trips what the matching writer produced.

#include "geolog/cones.hpp"
#include "geolog/geography.hpp"
#include "geolog/links.hpp"
#include "geolog/mmp.hpp"
#include "geolog/surface.hpp"
#include "geolog/toric.hpp"

#include "json.hpp"

#include <string>

namespace geolog {

using Json = nlohmann::json;

Json rat_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json vec_json(const QVec& v);
QVec vec_from_json(const Json& j);
Json mat_json(const QMat& m);
QMat mat_from_json(const Json& j);

// {"lattice_rank": d, "rays": [[...]], "cones": [[...]],
//  "relative_support": {fan + "map"} when the model is relative}
Json model_json(const ToricModel& x);
ToricModel model_from_json(const Json& j);

// {"rank": r, "gram": [[...]], "canonical": [...], "curves": [[...]],
//  "labels": [...]}
Json surface_json(const SurfaceLattice& s);
SurfaceLattice surface_from_json(const Json& j);

// input bundle for a geography: a model ("fan" or "surface") and the
// component list with ids and optional fixed multiplicities
struct GeographyInput {
    bool surface_category = false;
    ToricModel model;
    SurfaceLattice lattice;
    QMat components;  // ray coefficients / lattice classes
    QMat mults;       // surface category only
    std::vector<std::string> ids;
};

GeographyInput geography_input_from_json(const Json& j);
Geography build_geography(const GeographyInput& in);

Json cones_json(const ConeReport& r);
Json chambers_json(const std::vector<MoriChamber>& cs);
Json mmp_json(const MmpRun& run);
Json geography_json(const Geography& g);
Json separatrix_json(const Geography& g, const Separatrix& sep);
Json mob_exc_json(const MobExcDecomposition& z);
Json zariski_json(const ZariskiDecomposition& z);
Json chain_json(const LinkChain& chain);

// sorted keys, two-space indent, trailing newline
std::string dump_canonical(const Json& j);

}  // namespace geolog

#endif
