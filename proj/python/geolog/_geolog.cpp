// Python bindings.  Every entry point speaks JSON text on both sides, so
// the Python layer can stay a thin json.loads/json.dumps wrapper and the
// exact rational values survive the crossing as "p/q" strings.

#include "geolog/cones.hpp"
#include "geolog/geography.hpp"
#include "geolog/json_io.hpp"
#include "geolog/links.hpp"
#include "geolog/mmp.hpp"
#include "geolog/render_svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace geolog;

namespace {

Json parse(const std::string& text) { return Json::parse(text); }

QVec divisor_from(const std::vector<std::string>& entries) {
    QVec d;
    for (const auto& e : entries) d.push_back(rat_from_string(e));
    return d;
}

std::string validate_fan(const std::string& text) {
    ToricModel x = model_from_json(parse(text).at("fan"));
    Json j;
    j["ok"] = true;
    j["q_factorial"] = x.q_factorial;
    j["proper"] = x.proper;
    j["projective"] = x.projective;
    j["rays"] = x.fan.rays.size();
    j["maximal_cones"] = x.fan.cones.size();
    return dump_canonical(j);
}

std::string cones_report(const std::string& text) {
    Json in = parse(text);
    if (in.contains("surface"))
        return dump_canonical(cones_json(positive_cones(surface_from_json(in.at("surface")))));
    return dump_canonical(cones_json(positive_cones(model_from_json(in.at("fan")))));
}

std::string chambers_report(const std::string& text) {
    ToricModel x = model_from_json(parse(text).at("fan"));
    return dump_canonical(chambers_json(mori_chambers(x)));
}

std::string mmp_trace(const std::string& text, const std::vector<std::string>& divisor) {
    ToricModel x = model_from_json(parse(text).at("fan"));
    return dump_canonical(mmp_json(run_dmmp(x, divisor_from(divisor))));
}

std::string geography_report(const std::string& text) {
    Geography g = build_geography(geography_input_from_json(parse(text)));
    return dump_canonical(geography_json(g));
}

std::string separatrix_report(const std::string& text) {
    Geography g = build_geography(geography_input_from_json(parse(text)));
    return dump_canonical(separatrix_json(g, separatrix_and_projection(g)));
}

std::string zariski_split(const std::string& text, const std::vector<std::string>& divisor) {
    Json in = parse(text);
    QVec d = divisor_from(divisor);
    if (in.contains("surface"))
        return dump_canonical(zariski_json(zariski_decomposition(
            surface_from_json(in.at("surface")), d)));
    return dump_canonical(mob_exc_json(mob_exc(model_from_json(in.at("fan")), d)));
}

std::string factor_links(const std::string& text) {
    Json in = parse(text);
    ToricModel src = model_from_json(in.at("source"));
    ToricModel dst = model_from_json(in.at("target"));
    QMat mu = in.contains("map") ? mat_from_json(in.at("map")) : QMat();
    if (mu.empty())
        for (std::size_t i = 0; i < src.fan.rank; ++i) {
            QVec e = qvec_zero(src.fan.rank);
            e[i] = 1;
            mu.push_back(e);
        }
    MmpRun r1 = resulting_model(src, QVec(src.fan.rays.size(), Rat(0)));
    MmpRun r2 = resulting_model(dst, QVec(dst.fan.rays.size(), Rat(0)));
    if (!r1.fibration || !r2.fibration)
        throw std::invalid_argument("both models must carry Mori fibrations");
    return dump_canonical(chain_json(factor_mori_map(*r1.fibration_rec, *r2.fibration_rec, mu)));
}

std::string render_svg(const std::string& text,
                       const std::vector<std::pair<std::size_t, std::string>>& fixed) {
    Geography g = build_geography(geography_input_from_json(parse(text)));
    std::vector<std::pair<std::size_t, Rat>> pins;
    for (const auto& [idx, value] : fixed) pins.emplace_back(idx, rat_from_string(value));
    return render_geography_svg(g, pins);
}

}  // namespace

PYBIND11_MODULE(_geolog, m) {
    m.doc() = "log-model geography toolkit (exact rational core)";

    py::register_exception<classification_error>(m, "ClassificationError");

    m.def("validate_fan", &validate_fan, py::arg("input_json"),
          "check a fan description; returns a JSON report");
    m.def("cones", &cones_report, py::arg("input_json"),
          "semiample/nef/mobile/effective cones of a model");
    m.def("chambers", &chambers_report, py::arg("input_json"),
          "chamber decomposition of the effective cone");
    m.def("mmp", &mmp_trace, py::arg("input_json"), py::arg("divisor"),
          "divisor-directed run; divisor entries are rational strings");
    m.def("geography", &geography_report, py::arg("input_json"),
          "boundary-cube decomposition of a model with marked components");
    m.def("separatrix", &separatrix_report, py::arg("input_json"),
          "lower region boundary and its projection from the origin");
    m.def("zariski", &zariski_split, py::arg("input_json"), py::arg("divisor"),
          "mobile/exceptional (toric) or nef/negative (surface) split");
    m.def("factor_links", &factor_links, py::arg("input_json"),
          "factor a map of Mori fibrations into elementary links");
    m.def("render_svg", &render_svg, py::arg("input_json"),
          py::arg("fixed") = std::vector<std::pair<std::size_t, std::string>>{},
          "SVG picture of a geography; pin coordinates for more than two axes");
}
