#include "geolog/mmp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace geolog {

namespace {

constexpr std::size_t kStepCap = 20000;

// relative Picard number: rank of the span of the vertical curve classes
std::size_t picard_rank(const ToricModel& x) {
    QMat classes;
    for (auto wi : x.vertical_walls) classes.push_back(curve_class(x, wi));
    return rank(classes);
}

// transport divisor coefficients across a birational contraction: the
// target rays are a subset of the source rays (same lattice), so match
// them by value
QVec transport_coeffs(const ToricModel& from, const QVec& coeffs,
                      const ToricModel& to) {
    QVec out;
    out.reserve(to.fan.rays.size());
    for (const auto& ray : to.fan.rays) {
        auto it = std::find(from.fan.rays.begin(), from.fan.rays.end(), ray);
        if (it == from.fan.rays.end())
            throw std::logic_error("transport_coeffs: target ray missing in source fan");
        out.push_back(coeffs[std::size_t(it - from.fan.rays.begin())]);
    }
    return out;
}

}  // namespace

std::string wall_key(const ToricModel& x, std::size_t wi) {
    std::string key;
    for (auto ri : x.walls[wi].rays) {
        for (const auto& c : x.fan.rays[ri]) key += rat_to_string(c) + ",";
        key += ";";
    }
    return key;
}

MmpRun run_dmmp(const ToricModel& x, const QVec& coeffs) {
    if (!x.q_factorial)
        throw std::invalid_argument("run_dmmp requires a Q-factorial model");
    if (coeffs.size() != x.fan.rays.size())
        throw std::invalid_argument("run_dmmp: coefficient count does not match ray count");

    MmpRun run;
    run.initial = x;
    run.initial_divisor = coeffs;

    ToricModel cur = x;
    QVec d = coeffs;
    while (true) {
        if (run.steps.size() > kStepCap)
            throw std::runtime_error("run_dmmp: step cap exceeded");
        const std::string here = model_key(cur);
        if (is_nef(cur, d)) {
            run.steps.push_back({StepKind::NefStop, "", here, here});
            run.final_model = std::move(cur);
            run.final_divisor = std::move(d);
            return run;
        }

        auto rays = extremal_rays(cur);
        // candidates: extremal rays the divisor is negative on, keyed by the
        // smallest wall on the ray for a deterministic choice
        const ExtremalRay* pick = nullptr;
        std::string pick_key;
        for (const auto& r : rays) {
            if (dot(d, r.cls) >= 0) continue;
            std::string k;
            for (auto wi : r.walls) {
                std::string wk = wall_key(cur, wi);
                if (k.empty() || wk < k) k = std::move(wk);
            }
            if (!pick || k < pick_key) {
                pick = &r;
                pick_key = std::move(k);
            }
        }
        if (!pick)
            throw std::logic_error("run_dmmp: divisor not nef but no negative extremal ray");

        if (pick->kind == RayKind::Fibering) {
            Contraction c = contract(cur, *pick);
            // extremal fibration sanity: relative Picard rank drops by one
            // and the base has strictly smaller dimension
            if (c.target.fan.rank >= cur.fan.rank)
                throw std::logic_error("run_dmmp: fibration base is not lower-dimensional");
            if (picard_rank(cur) != picard_rank(c.target) + 1)
                throw std::logic_error("run_dmmp: fibration does not drop the Picard rank by one");
            run.steps.push_back({StepKind::FiberStop, pick_key, here, ""});
            run.fibration = true;
            run.fibration_rec = MoriFibration{cur, c.target, c.map, pick->cls};
            run.final_model = std::move(cur);
            run.final_divisor = std::move(d);
            return run;
        }

        if (pick->kind == RayKind::Divisorial) {
            Contraction c = contract(cur, *pick);
            QVec nd = transport_coeffs(cur, d, c.target);
            run.steps.push_back({StepKind::Divisorial, pick_key, here, model_key(c.target)});
            cur = std::move(c.target);
            d = std::move(nd);
        } else {
            ToricModel next = flip(cur, *pick);  // rays and order unchanged
            run.steps.push_back({StepKind::Flip, pick_key, here, model_key(next)});
            cur = std::move(next);
        }
    }
}

MmpRun resulting_model(const ToricModel& x, const QVec& b) {
    if (b.size() != x.fan.rays.size())
        throw std::invalid_argument("resulting_model: coefficient count does not match ray count");
    QVec d(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) d[i] = b[i] - 1;  // K + B
    return run_dmmp(x, d);
}

Polyhedron divisor_polyhedron(const ToricModel& x, const QVec& coeffs) {
    std::vector<Halfspace> hs;
    hs.reserve(x.fan.rays.size());
    for (std::size_t i = 0; i < x.fan.rays.size(); ++i)
        hs.push_back({x.fan.rays[i], -coeffs[i], false});
    return Polyhedron(x.fan.rank, std::move(hs));
}

std::optional<long> nu_dimension(const ToricModel& x, const QVec& b) {
    MmpRun run = resulting_model(x, b);
    if (run.fibration) return std::nullopt;
    Polyhedron p = divisor_polyhedron(run.final_model, run.final_divisor);
    if (p.empty())
        throw std::logic_error("nu_dimension: nef divisor with empty section polyhedron");
    QMat rec = p.recession_rays();
    for (const auto& l : p.lineality()) rec.push_back(l);
    return long(p.dim()) - long(rank(rec));
}

LcModelResult lc_model(const ToricModel& x, const QVec& b) {
    MmpRun run = resulting_model(x, b);
    if (run.fibration)
        throw std::domain_error("pair has no weak log canonical model");
    const ToricModel& y = run.final_model;
    const QVec& d = run.final_divisor;
    const std::size_t n = y.fan.rank;

    Polyhedron p = divisor_polyhedron(y, d);
    if (p.empty())
        throw std::logic_error("lc_model: nef divisor with empty section polyhedron");

    // directions the polyhedron actually spans
    QMat span;
    const QMat& verts = p.vertices();
    for (std::size_t i = 1; i < verts.size(); ++i)
        span.push_back(sub(verts[i], verts[0]));
    for (const auto& r : p.recession_rays()) span.push_back(r);
    for (const auto& l : p.lineality()) span.push_back(l);

    LcModelResult out;
    out.source = y;
    out.source_divisor = d;

    // quotient map: kill the normal directions of the polyhedron's span, so
    // the rows form a lattice basis of the saturation of the span
    QMat normals;
    if (span.empty()) {  // the polyhedron is a single point
        normals = QMat(n, QVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) normals[i][i] = 1;
    } else {
        normals = kernel_basis(span);
    }
    QMat q;
    if (normals.empty()) {
        // full-dimensional polyhedron: identity quotient
        q = QMat(n, QVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) q[i][i] = 1;
    } else {
        q = lattice_kernel_basis(normals);
    }
    const std::size_t k = q.size();
    out.map = q;
    if (k == 0) {  // numerically trivial class: the model is a point
        Fan pt;
        pt.rank = 0;
        out.model = make_model(std::move(pt));
        return out;
    }

    // normal fan of the polyhedron, one maximal cone per vertex
    QMat rays;
    std::map<std::string, std::size_t> index;
    auto intern = [&](const QVec& v) {
        QVec pr = primitive(v);
        std::string key;
        for (const auto& c : pr) key += rat_to_string(c) + ",";
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        rays.push_back(pr);
        index.emplace(key, rays.size() - 1);
        return rays.size() - 1;
    };
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& v : verts) {
        QMat ineqs;
        for (const auto& w : verts) {
            QVec diff = sub(w, v);
            if (!is_zero(diff)) ineqs.push_back(std::move(diff));
        }
        for (const auto& r : p.recession_rays()) ineqs.push_back(r);
        QMat eqs;
        for (const auto& l : p.lineality()) eqs.push_back(l);
        ConeRep cv = cone_from_inequalities(n, ineqs, eqs);
        std::set<std::size_t> cone;
        for (const auto& r : cv.rays) {
            QVec img = mat_vec(q, r);
            if (!is_zero(img)) cone.insert(intern(img));
        }
        for (const auto& l : cv.lineality) {
            QVec img = mat_vec(q, l);
            if (is_zero(img)) continue;
            cone.insert(intern(img));
            cone.insert(intern(scale(Rat(-1), img)));
        }
        cones.push_back({cone.begin(), cone.end()});
    }
    Fan tf = make_fan(k, std::move(rays), std::move(cones));

    if (y.base) {
        // factor the structure map through the quotient, row by row
        const std::size_t dR = n;
        QMat qt(dR, QVec(k));
        for (std::size_t j = 0; j < dR; ++j)
            for (std::size_t i = 0; i < k; ++i) qt[j][i] = q[i][j];
        QMat bmap;
        for (const auto& psi : y.base_map) {
            QMat aug = qt;
            for (std::size_t j = 0; j < dR; ++j) aug[j].push_back(psi[j]);
            auto pivots = rref(aug);
            if (!pivots.empty() && pivots.back() == k)
                throw std::logic_error("lc_model: structure map does not factor through the quotient");
            QVec yrow(k, Rat(0));
            for (std::size_t i = 0; i < pivots.size(); ++i) yrow[pivots[i]] = aug[i][k];
            bmap.push_back(std::move(yrow));
        }
        out.model = make_model(std::move(tf), *y.base, std::move(bmap));
    } else {
        out.model = make_model(std::move(tf));
    }
    return out;
}

}  // namespace geolog
