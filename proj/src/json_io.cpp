#include "geolog/json_io.hpp"

#include <stdexcept>

namespace geolog {
namespace {

std::vector<std::vector<std::size_t>> index_lists(const Json& j) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& row : j) {
        std::vector<std::size_t> ids;
        for (const auto& x : row) ids.push_back(x.get<std::size_t>());
        out.push_back(ids);
    }
    return out;
}

Json fan_json(const Fan& f) {
    Json j;
    j["lattice_rank"] = f.rank;
    j["rays"] = mat_json(f.rays);
    j["cones"] = f.cones;
    return j;
}

Fan fan_from_json(const Json& j) {
    return make_fan(j.at("lattice_rank").get<std::size_t>(),
                    mat_from_json(j.at("rays")), index_lists(j.at("cones")));
}

const char* step_name(StepKind k) {
    switch (k) {
        case StepKind::Divisorial: return "divisorial";
        case StepKind::Flip: return "flip";
        case StepKind::FiberStop: return "fiber-stop";
        case StepKind::NefStop: return "nef-stop";
    }
    return "?";
}

const char* link_step_name(LinkStepKind k) {
    switch (k) {
        case LinkStepKind::DivisorialExtraction: return "divisorial-extraction";
        case LinkStepKind::Antiflip: return "antiflip";
        case LinkStepKind::Flop: return "flop";
        case LinkStepKind::Flip: return "flip";
        case LinkStepKind::DivisorialContraction: return "divisorial-contraction";
    }
    return "?";
}

const char* ridge_name(RidgeType t) {
    switch (t) {
        case RidgeType::CubeBordering: return "cube-bordering";
        case RidgeType::Fib2A: return "2A";
        case RidgeType::Fib2B: return "2B";
        case RidgeType::Fib2C: return "2C";
        case RidgeType::Bir3A: return "3A";
        case RidgeType::Bir3B: return "3B";
        case RidgeType::Bir3C: return "3C";
    }
    return "?";
}

Json cone_json(const ConeRep& c) {
    Json j;
    j["rays"] = mat_json(c.rays);
    j["lineality"] = mat_json(c.lineality);
    return j;
}

Json fibration_json(const FibrationRecord& r) {
    Json j;
    j["total"] = r.total_id;
    j["base_dim"] = r.base_dim;
    j["detail"] = r.detail;
    return j;
}

}  // namespace

Json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
    return rat_from_string(j.get<std::string>());
}

Json vec_json(const QVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rat_json(x));
    return j;
}

QVec vec_from_json(const Json& j) {
    QVec out;
    for (const auto& x : j) out.push_back(rat_from_json(x));
    return out;
}

Json mat_json(const QMat& m) {
    Json j = Json::array();
    for (const auto& row : m) j.push_back(vec_json(row));
    return j;
}

QMat mat_from_json(const Json& j) {
    QMat out;
    for (const auto& row : j) out.push_back(vec_from_json(row));
    return out;
}

Json model_json(const ToricModel& x) {
    Json j = fan_json(x.fan);
    if (x.base) {
        Json rel = fan_json(*x.base);
        rel["map"] = mat_json(x.base_map);
        j["relative_support"] = rel;
    }
    return j;
}

ToricModel model_from_json(const Json& j) {
    Fan fan = fan_from_json(j);
    if (!j.contains("relative_support")) return make_model(fan);
    const Json& rel = j.at("relative_support");
    return make_model(fan, fan_from_json(rel), mat_from_json(rel.at("map")));
}

Json surface_json(const SurfaceLattice& s) {
    Json j;
    j["rank"] = s.rank;
    j["gram"] = mat_json(s.gram);
    j["canonical"] = vec_json(s.canonical_class);
    j["curves"] = mat_json(s.curve_classes);
    j["labels"] = s.curve_labels;
    return j;
}

SurfaceLattice surface_from_json(const Json& j) {
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
    return make_surface(j.at("rank").get<std::size_t>(), mat_from_json(j.at("gram")),
                        vec_from_json(j.at("canonical")),
                        mat_from_json(j.at("curves")), labels);
}

GeographyInput geography_input_from_json(const Json& j) {
    GeographyInput in;
    if (j.contains("surface")) {
        in.surface_category = true;
        in.lattice = surface_from_json(j.at("surface"));
    } else if (j.contains("fan")) {
        in.model = model_from_json(j.at("fan"));
    } else {
        throw std::invalid_argument("input needs a \"fan\" or a \"surface\"");
    }
    if (!j.contains("components") || j.at("components").empty())
        throw std::invalid_argument("input needs a nonempty component list");
    for (const auto& c : j.at("components")) {
        in.ids.push_back(c.contains("id") ? c.at("id").get<std::string>()
                                          : "D" + std::to_string(in.ids.size() + 1));
        if (in.surface_category) {
            in.components.push_back(vec_from_json(c.at("class")));
            in.mults.push_back(
                c.contains("multiplicities")
                    ? vec_from_json(c.at("multiplicities"))
                    : QVec(in.lattice.curve_classes.size(), Rat(0)));
        } else {
            in.components.push_back(vec_from_json(c.at("coefficients")));
        }
    }
    return in;
}

Geography build_geography(const GeographyInput& in) {
    if (in.surface_category)
        return compute_geography(in.lattice, in.components, in.mults);
    return compute_geography(in.model, in.components);
}

Json cones_json(const ConeReport& r) {
    Json j;
    j["sample"] = cone_json(r.samp_div);
    j["nef"] = cone_json(r.nef_div);
    j["mobile"] = cone_json(r.mob_div);
    j["effective"] = cone_json(r.eff_div);
    return j;
}

Json chambers_json(const std::vector<MoriChamber>& cs) {
    Json j = Json::array();
    for (const auto& c : cs) {
        Json e;
        e["model"] = c.model_id;
        e["rays"] = mat_json(c.chamber.rays);
        e["dropped_rays"] = c.exc_rays;
        j.push_back(e);
    }
    Json out;
    out["chambers"] = j;
    out["count"] = cs.size();
    return out;
}

Json mmp_json(const MmpRun& run) {
    Json j;
    j["initial_model"] = model_key(run.initial);
    j["divisor"] = vec_json(run.initial_divisor);
    Json steps = Json::array();
    for (const auto& s : run.steps) {
        Json e;
        e["kind"] = step_name(s.kind);
        e["ray"] = s.ray_key;
        e["model_after"] = s.model_after;
        steps.push_back(e);
    }
    j["steps"] = steps;
    // stop markers close every trace; the surgery count excludes them
    std::size_t surgeries = 0;
    for (const auto& s : run.steps)
        if (s.kind == StepKind::Divisorial || s.kind == StepKind::Flip) ++surgeries;
    j["step_count"] = surgeries;
    j["fibration"] = run.fibration;
    j["final_model"] = model_key(run.final_model);
    j["final_divisor"] = vec_json(run.final_divisor);
    return j;
}

Json geography_json(const Geography& g) {
    Json j;
    j["category"] = g.surface_category ? "surface" : "toric";
    j["m"] = g.m;
    j["generality"] = g.generality;
    j["chambers"] = g.classes.size();

    Json classes = Json::array();
    for (std::size_t k = 0; k < g.classes.size(); ++k) {
        const CellPayload& p = g.payloads[g.classes[k][0]];
        Json e;
        e["model"] = p.model_id;
        e["in_region"] = p.in_ns;
        e["dropped"] = p.dropped;
        e["nu"] = p.nu ? Json(*p.nu) : Json(nullptr);
        e["lcm"] = p.lcm_id;
        e["cells"] = g.classes[k].size();
        classes.push_back(e);
    }
    j["classes"] = classes;

    Json walls = Json::array();
    for (const auto& w : g.complex.walls) {
        Json e;
        e["normal"] = vec_json(w.normal);
        e["offset"] = rat_json(w.offset);
        walls.push_back(e);
    }
    j["walls"] = walls;
    j["region_vertices"] = mat_json(g.ns.vertices());
    return j;
}

Json separatrix_json(const Geography& g, const Separatrix& sep) {
    Json j;
    j["m"] = g.m;
    Json pieces = Json::array();
    for (const auto& p : sep.pieces) pieces.push_back(mat_json(p.vertices()));
    j["pieces"] = pieces;
    j["vertices"] = mat_json(sep.vertices);
    j["projected"] = mat_json(sep.projected);
    j["image_vertices"] = mat_json(sep.image.vertices());
    return j;
}

Json mob_exc_json(const MobExcDecomposition& z) {
    Json j;
    j["mobile"] = vec_json(z.mobile);
    j["exceptional"] = vec_json(z.exceptional);
    j["target"] = z.target_key;
    return j;
}

Json zariski_json(const ZariskiDecomposition& z) {
    Json j;
    j["positive"] = vec_json(z.positive);
    j["negative"] = vec_json(z.negative);
    j["support"] = z.support;
    j["multiplicities"] = vec_json(z.multiplicities);
    return j;
}

Json chain_json(const LinkChain& chain) {
    Json j;
    j["source"] = fibration_json(chain.source);
    j["target"] = fibration_json(chain.target);
    j["composite"] = mat_json(chain.composite);
    j["generality_ok"] = chain.generality_ok;
    j["report"] = chain.report;
    Json links = Json::array();
    for (const auto& l : chain.links) {
        Json e;
        e["type"] = ridge_name(l.type);
        e["sarkisov"] = l.sarkisov;
        e["cte"] = l.cte;
        e["from"] = fibration_json(l.from);
        e["to"] = fibration_json(l.to);
        Json steps = Json::array();
        for (const auto& s : l.steps) {
            Json se;
            se["kind"] = link_step_name(s.kind);
            se["detail"] = s.detail;
            se["model_after"] = s.model_after;
            steps.push_back(se);
        }
        e["steps"] = steps;
        Json stages = Json::array();
        for (const auto& st : l.stages) {
            Json se;
            se["model"] = st.model_id;
            se["rho"] = st.rho;
            se["fano_type"] = st.ft;
            se["terminal"] = st.terminal;
            se["k_square"] = rat_json(st.k_square);
            stages.push_back(se);
        }
        e["stages"] = stages;
        Json c;
        c["model"] = l.central.model_id;
        c["base"] = l.central.base_id;
        c["relative_rank_two"] = l.central.relative_rank_two;
        c["weak_log_fano"] = l.central.weak_log_fano;
        c["mobile_antiadjoint"] = l.central.mobile_antiadjoint;
        c["flop_orbit"] = l.central.flop_orbit;
        e["central"] = c;
        links.push_back(e);
    }
    j["links"] = links;
    j["link_count"] = chain.links.size();
    return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace geolog
