#include "geolog/cones.hpp"

#include "geolog/mmp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace geolog {

namespace {

// f composed with the class map: (f . L a) as a functional on coefficients
QVec pull_functional(const QMat& l, const QVec& f) {
    if (l.empty()) return {};
    QVec out(l[0].size(), Rat(0));
    for (std::size_t w = 0; w < l.size(); ++w)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += f[w] * l[w][j];
    return out;
}

// preimage of a cone under the linear map with rows l
ConeRep preimage_cone(std::size_t source_dim, const QMat& l, const ConeRep& c) {
    QMat normals, equations;
    for (const auto& f : c.facet_normals) normals.push_back(pull_functional(l, f));
    for (const auto& s : c.span_normals) equations.push_back(pull_functional(l, s));
    return cone_from_inequalities(source_dim, normals, equations);
}

ConeReport report_from_class_matrix(std::size_t source_dim, const QMat& l,
                                    const QMat& extra_mob_classes) {
    const std::size_t nw = l.size();
    ConeReport rep;

    // columns of the class matrix: the classes of the coordinate divisors
    QMat classes(source_dim, QVec(nw, Rat(0)));
    for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t j = 0; j < source_dim; ++j) classes[j][w] = l[w][j];

    rep.eff = cone_from_rays(nw, classes);

    // the nef cone: nonnegative against every curve, inside the span of
    // the actual divisor classes
    QMat orthant(nw, QVec(nw, Rat(0)));
    for (std::size_t w = 0; w < nw; ++w) orthant[w][w] = 1;
    rep.nef = cone_from_inequalities(nw, orthant, kernel_basis(classes));
    rep.samp = rep.nef;

    QMat mob_gens = extra_mob_classes;
    for (const auto& r : rep.nef.rays) mob_gens.push_back(r);
    for (const auto& li : rep.nef.lineality) {
        mob_gens.push_back(li);
        mob_gens.push_back(scale(Rat(-1), li));
    }
    rep.mob = cone_from_rays(nw, mob_gens);

    rep.samp_div = preimage_cone(source_dim, l, rep.samp);
    rep.nef_div = rep.samp_div;
    rep.mob_div = preimage_cone(source_dim, l, rep.mob);
    rep.eff_div = preimage_cone(source_dim, l, rep.eff);
    return rep;
}

// class matrix of a toric model: rows = vertical wall curves
QMat class_matrix(const ToricModel& x) {
    QMat l;
    for (auto wi : x.vertical_walls) l.push_back(curve_class(x, wi));
    return l;
}

}  // namespace

std::vector<ToricModel> enumerate_models(const ToricModel& x) {
    if (!x.q_factorial)
        throw std::invalid_argument("enumerate_models requires a Q-factorial model");
    std::vector<ToricModel> out;
    std::map<std::string, std::size_t> seen;
    std::deque<std::size_t> frontier;
    out.push_back(x);
    seen.emplace(model_key(x), 0);
    frontier.push_back(0);
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& r : extremal_rays(out[cur])) {
            if (r.kind != RayKind::Small) continue;
            ToricModel next = flip(out[cur], r);
            std::string key = model_key(next);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), out.size());
            out.push_back(std::move(next));
            frontier.push_back(out.size() - 1);
        }
    }
    return out;
}

ConeReport positive_cones(const ToricModel& x) {
    QMat l = class_matrix(x);
    const std::size_t nw = l.size();

    // the mobile cone: classes of divisors that become nef on some small
    // Q-factorial modification
    QMat mob_gens;
    for (const auto& y : enumerate_models(x)) {
        QMat wy = class_matrix(y);
        QMat normals = wy;
        ConeRep nef_y = cone_from_inequalities(y.fan.rays.size(), normals);
        auto push_class = [&](const QVec& b) {
            QVec on_x = pullback_values(y, b, x.fan.rays);
            QVec cls(nw, Rat(0));
            for (std::size_t w = 0; w < nw; ++w) cls[w] = dot(l[w], on_x);
            if (!is_zero(cls)) mob_gens.push_back(std::move(cls));
        };
        for (const auto& b : nef_y.rays) push_class(b);
        for (const auto& li : nef_y.lineality) {
            push_class(li);
            push_class(scale(Rat(-1), li));
        }
    }
    return report_from_class_matrix(x.fan.rays.size(), l, mob_gens);
}

ConeReport positive_cones(const SurfaceLattice& s) {
    // class map: coefficients on the recorded curve list to the lattice
    QMat l(s.rank, QVec(s.curve_classes.size(), Rat(0)));
    for (std::size_t j = 0; j < s.curve_classes.size(); ++j)
        for (std::size_t i = 0; i < s.rank; ++i) l[i][j] = s.curve_classes[j][i];

    ConeReport rep;
    rep.eff = cone_from_rays(s.rank, s.curve_classes);
    QMat normals;
    for (const auto& c : s.curve_classes) normals.push_back(mat_vec(s.gram, c));
    rep.nef = cone_from_inequalities(s.rank, normals);
    rep.samp = rep.nef;
    // surface 1-contractions are morphisms, so the mobile part of any
    // class is already nef on the surface itself
    rep.mob = rep.nef;

    rep.samp_div = preimage_cone(s.curve_classes.size(), l, rep.samp);
    rep.nef_div = rep.samp_div;
    rep.mob_div = rep.nef_div;
    rep.eff_div = preimage_cone(s.curve_classes.size(), l, rep.eff);
    return rep;
}

MobExcDecomposition mob_exc(const ToricModel& x, const QVec& d) {
    MmpRun run = run_dmmp(x, d);
    if (run.fibration)
        throw std::domain_error("divisor class is not pseudo-effective");
    MobExcDecomposition out;
    out.mobile = pullback_values(run.final_model, run.final_divisor, x.fan.rays);
    out.exceptional = sub(d, out.mobile);
    for (const auto& c : out.exceptional)
        if (c < 0) throw std::logic_error("mob_exc: negative exceptional multiplicity");
    out.target_key = model_key(run.final_model);
    out.target = std::move(run.final_model);
    return out;
}

std::vector<MoriChamber> mori_chambers(const ToricModel& x) {
    if (!x.q_factorial)
        throw std::invalid_argument("mori_chambers requires a Q-factorial model");
    const std::size_t n = x.fan.rays.size();

    // closure of the model under flips and divisorial contractions: every
    // end model of a divisor-directed run appears here
    std::vector<ToricModel> models;
    std::map<std::string, std::size_t> seen;
    std::deque<std::size_t> frontier;
    models.push_back(x);
    seen.emplace(model_key(x), 0);
    frontier.push_back(0);
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& r : extremal_rays(models[cur])) {
            if (r.kind == RayKind::Fibering) continue;
            ToricModel next = r.kind == RayKind::Small
                                  ? flip(models[cur], r)
                                  : contract(models[cur], r).target;
            std::string key = model_key(next);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), models.size());
            models.push_back(std::move(next));
            frontier.push_back(models.size() - 1);
        }
    }

    std::vector<MoriChamber> out;
    for (auto& y : models) {
        MoriChamber ch;
        ch.model_id = model_key(y);

        // rays of x missing from y: the divisors the map contracts
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(y.fan.rays.begin(), y.fan.rays.end(), x.fan.rays[i]) ==
                y.fan.rays.end())
                ch.exc_rays.push_back(i);
        }

        // chamber = pullback of Nef(y) joined with the dropped coordinate rays
        ConeRep nef_y = cone_from_inequalities(y.fan.rays.size(), class_matrix(y));
        QMat gens;
        auto push_pullback = [&](const QVec& b) {
            gens.push_back(pullback_values(y, b, x.fan.rays));
        };
        for (const auto& b : nef_y.rays) push_pullback(b);
        for (const auto& li : nef_y.lineality) {
            push_pullback(li);
            push_pullback(scale(Rat(-1), li));
        }
        for (auto i : ch.exc_rays) {
            QVec e(n, Rat(0));
            e[i] = 1;
            gens.push_back(std::move(e));
        }
        ch.chamber = cone_from_rays(n, gens);
        ch.model = std::move(y);
        out.push_back(std::move(ch));
    }
    return out;
}

}  // namespace geolog
