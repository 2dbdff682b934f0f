#include "geolog/links.hpp"

#include "geolog/cones.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace geolog {
namespace {

std::string vkey(const QVec& v) {
    std::string s;
    for (const auto& x : v) s += rat_to_string(x) + ",";
    return s;
}

// ---- id parsing -----------------------------------------------------------

// "T{1,3,}" -> {1, 3}
std::vector<std::size_t> parse_contracted(const std::string& id) {
    if (id.rfind("T{", 0) != 0 || id.back() != '}')
        throw std::invalid_argument("not a contraction id: " + id);
    std::vector<std::size_t> out;
    std::string body = id.substr(2, id.size() - 3);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoul(tok));
    return out;
}

bool is_fib_id(const std::string& id) { return id.rfind("fib:", 0) == 0; }

FibrationRecord parse_fib_id(const std::string& id) {
    if (!is_fib_id(id)) throw std::invalid_argument("not a fibration id: " + id);
    std::size_t colon = id.find(':', 4);
    if (colon == std::string::npos) throw std::invalid_argument("malformed fibration id");
    FibrationRecord rec;
    rec.total_id = id;
    rec.base_dim = std::stoul(id.substr(4, colon - 4));
    rec.detail = id.substr(colon + 1);
    return rec;
}

// ---- stage snapshots -------------------------------------------------------

LinkStage surface_stage(const SurfaceLattice& s, const std::string& model_id) {
    LinkStage st;
    st.model_id = model_id;
    std::vector<std::size_t> c = parse_contracted(model_id);
    st.rho = long(s.rank) - long(c.size());
    st.terminal = true;  // smooth surface models stay smooth under contraction
    st.k_square = image_square(s, c, s.canonical_class);
    // Fano type: the anticanonical image is big and non-negative on every
    // surviving listed curve
    QVec kpull = contraction_pullback(s, c, s.canonical_class);
    bool nef = true;
    for (std::size_t i = 0; i < s.curve_classes.size(); ++i) {
        if (std::find(c.begin(), c.end(), i) != c.end()) continue;
        if (pair(s, kpull, s.curve_classes[i]) > 0) nef = false;
    }
    st.ft = nef && st.k_square > 0;
    return st;
}

QVec anticanonical(const ToricModel& x) {
    return QVec(x.fan.rays.size(), Rat(1));
}

Rat det_of(const QMat& rows) {
    QMat a = rows;
    std::size_t n = a.size();
    Rat d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Rat f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    return d;
}

bool toric_terminal(const ToricModel& x) {
    // smooth models are terminal; this is the checkable case we rely on
    for (const auto& cone : x.fan.cones) {
        if (cone.size() != x.fan.rank) return false;
        QMat rows;
        for (auto i : cone) rows.push_back(x.fan.rays[i]);
        Rat d = det_of(rows);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

Rat toric_k_square(const ToricModel& x) {
    // K^2 = sum_rho k_rho (K . D_rho) with k_rho = -1; on a complete surface
    // every ray is a wall
    QVec k(x.fan.rays.size(), Rat(-1));
    Rat total = 0;
    for (std::size_t w = 0; w < x.walls.size(); ++w) total += wall_degree(x, k, w);
    return -total;
}

LinkStage toric_stage(const ToricModel& x) {
    LinkStage st;
    st.model_id = model_key(x);
    st.rho = long(x.fan.rays.size()) - long(x.fan.rank);
    st.terminal = toric_terminal(x);
    st.k_square = x.fan.rank == 2 && x.proper && !x.base ? toric_k_square(x) : Rat(0);
    // the anticanonical class of a proper toric model is big with no fixed part
    MobExcDecomposition me = mob_exc(x, anticanonical(x));
    st.ft = is_zero(me.exceptional);
    return st;
}

// ---- ring walking ----------------------------------------------------------

struct RingWalk {
    std::vector<std::size_t> cells;  // end facet, country, ..., country, end facet
    std::size_t before = 0, beyond = 0;  // the out-of-region countries past the ends
};

RingWalk walk_ring(const Geography& g, const std::vector<std::size_t>& ring, bool reverse) {
    std::vector<std::size_t> r = ring;
    if (reverse) std::reverse(r.begin(), r.end());
    std::size_t n = r.size();
    auto dim = [&](std::size_t k) { return g.complex.cells[r[k % n]].dim; };
    auto inside = [&](std::size_t k) { return g.payloads[r[k % n]].in_ns; };

    std::size_t start = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (dim(k) + 1 != g.m) continue;
        if (dim(k + n - 1) != g.m || dim(k + 1) != g.m)
            throw classification_error("ridge ring does not alternate");
        if (!inside(k + n - 1) && inside(k + 1)) {
            start = k;
            break;
        }
    }
    if (start == n) throw classification_error("ridge ring has no entry facet");

    RingWalk walk;
    walk.before = r[(start + n - 1) % n];
    walk.cells.push_back(r[start]);
    for (std::size_t k = start + 1;; ++k) {
        walk.cells.push_back(r[k % n]);
        if (dim(k) + 1 == g.m && !inside(k + 1)) {
            walk.beyond = r[(k + 1) % n];
            return walk;
        }
        if (k > start + n) throw classification_error("ridge ring does not close up");
    }
}

std::vector<LinkStep> steps_of_walk(const Geography& g, const RingWalk& walk, bool& ordered) {
    std::vector<LinkStep> steps;
    ordered = true;
    bool contracted = false;
    std::size_t extractions = 0, contractions = 0;
    for (std::size_t k = 2; k + 1 < walk.cells.size(); k += 2) {
        const CellPayload& a = g.payloads[walk.cells[k - 1]];
        const CellPayload& b = g.payloads[walk.cells[k + 1]];
        LinkStep st;
        st.detail = a.model_id + " -> " + b.model_id;
        st.model_after = b.model_id;
        if (b.dropped < a.dropped) {
            st.kind = LinkStepKind::DivisorialExtraction;
            ++extractions;
            if (contracted) ordered = false;
        } else if (b.dropped > a.dropped) {
            st.kind = LinkStepKind::DivisorialContraction;
            ++contractions;
            contracted = true;
        } else {
            st.kind = LinkStepKind::Flop;
            if (contracted) ordered = false;
        }
        steps.push_back(st);
    }
    if (extractions > 2 || contractions > 2) ordered = false;
    return steps;
}

// ---- complete toric surfaces as ray sets ------------------------------------

int half_of(const QVec& v) {
    if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
    return 1;
}

bool ray_angle_less(const QVec& a, const QVec& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return a[0] * b[1] - a[1] * b[0] > 0;
}

Rat det2(const QVec& a, const QVec& b) { return a[0] * b[1] - a[1] * b[0]; }

ToricModel surface_from_rays(QMat rays) {
    std::sort(rays.begin(), rays.end(), ray_angle_less);
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < rays.size(); ++i)
        cones.push_back({i, (i + 1) % rays.size()});
    return make_model(make_fan(2, rays, cones));
}

std::set<std::string> ray_keys(const QMat& rays) {
    std::set<std::string> out;
    for (const auto& r : rays) out.insert(vkey(r));
    return out;
}

// a ray of a complete surface fan can be removed when its two angular
// neighbors still span a pointed cone containing it
bool removable(const QMat& sorted_rays, std::size_t i) {
    if (sorted_rays.size() < 4) return false;
    std::size_t n = sorted_rays.size();
    const QVec& u = sorted_rays[(i + n - 1) % n];
    const QVec& w = sorted_rays[(i + 1) % n];
    return det2(u, w) > 0;
}

FibrationRecord surface_fibration_record(const ToricModel& x) {
    FibrationRecord rec;
    rec.total_id = model_key(x);
    std::set<std::string> keys = ray_keys(x.fan.rays);
    for (const auto& r : x.fan.rays) {
        QVec neg = scale(-1, r);
        if (keys.count(vkey(neg))) {
            rec.base_dim = 1;
            QVec normal = primitive_signless({-r[1], r[0]});
            rec.detail = "ruling " + vkey(normal);
            return rec;
        }
    }
    rec.base_dim = 0;
    rec.detail = x.fan.rays.size() == 3 ? "pt" : "none";
    return rec;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    QMat out(a.size(), QVec(b.empty() ? 0 : b[0].size(), Rat(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

QMat mat_inverse(const QMat& a) {
    std::size_t n = a.size();
    QMat cols;
    for (std::size_t j = 0; j < n; ++j) {
        QVec e(n, Rat(0));
        e[j] = 1;
        cols.push_back(solve_square(a, e));
    }
    QMat inv(n, QVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = cols[j][i];
    return inv;
}

// "ruling 0,1," -> (0, 1)
QVec parse_ruling_normal(const std::string& detail) {
    if (detail.rfind("ruling ", 0) != 0)
        throw std::invalid_argument("not a ruling record: " + detail);
    QVec out;
    std::stringstream ss(detail.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t slash = tok.find('/');
        long num = std::stol(slash == std::string::npos ? tok : tok.substr(0, slash));
        long den = slash == std::string::npos ? 1 : std::stol(tok.substr(slash + 1));
        out.push_back(rat(num, den));
    }
    return out;
}

// relative nef/big of -K along a ruling: test the invariant fibers, the
// rays the ruling functional kills
bool anti_k_positive_over_base(const ToricModel& x, const FibrationRecord& base,
                               bool strict) {
    QVec mk = anticanonical(x);
    if (base.base_dim == 0) {
        if (!is_nef(x, mk)) return false;
        return !strict || toric_k_square(x) > 0;
    }
    QVec normal = parse_ruling_normal(base.detail);
    for (std::size_t w = 0; w < x.walls.size(); ++w) {
        if (x.walls[w].rays.size() != 1) continue;
        const QVec& r = x.fan.rays[x.walls[w].rays[0]];
        if (dot(normal, r) != 0) continue;
        Rat d = wall_degree(x, mk, w);
        if (d < 0 || (strict && d == 0)) return false;
    }
    return true;
}

CentralModel toric_central(const ToricModel& x, const FibrationRecord& base) {
    CentralModel cm;
    cm.model_id = model_key(x);
    cm.base_id = base.base_dim == 0 ? "pt" : base.detail;
    long rho = long(x.fan.rays.size()) - 2;
    long rho_base = base.base_dim == 0 ? 0 : 1;
    cm.relative_rank_two = rho - rho_base == 2;
    cm.weak_log_fano = anti_k_positive_over_base(x, base, true);
    // with an empty fixed part the mobile part is the anti-adjoint class itself
    cm.mobile_antiadjoint = cm.weak_log_fano;
    return cm;
}

}  // namespace

// ---- central models ----------------------------------------------------------

CentralModel central_model(const Geography& g, std::size_t ridge, const QVec& b,
                           const QVec& f_part) {
    if (!g.surface_category)
        throw std::domain_error("central models are read off surface geographies");
    if (b.size() != g.m || f_part.size() != g.m)
        throw std::invalid_argument("boundary size mismatch");
    for (std::size_t i = 0; i < g.m; ++i)
        if (f_part[i] < 0 || f_part[i] > b[i])
            throw std::invalid_argument("fixed part must sit inside the boundary");
    const CellPayload& rp = g.payloads[ridge];
    if (!rp.in_ns || !rp.nu)
        throw classification_error("ridge carries no central fibration");
    long tdim = *rp.nu;

    std::vector<std::size_t> ring = ridge_ring(g, ridge);
    CentralModel cm;
    cm.f_part = f_part;
    cm.m_part = sub(b, f_part);
    cm.base_id = rp.lcm_id;

    std::size_t best = g.complex.cells.size();
    std::size_t orbit = 0;
    for (auto j : ring) {
        if (g.complex.cells[j].dim != g.m || !g.payloads[j].in_ns) continue;
        if (best == g.complex.cells.size() ||
            g.payloads[j].dropped < g.payloads[best].dropped)
            best = j;
    }
    if (best == g.complex.cells.size())
        throw classification_error("ridge has no adjacent country");
    for (auto j : ring)
        if (g.complex.cells[j].dim == g.m && g.payloads[j].in_ns &&
            g.payloads[j].dropped == g.payloads[best].dropped)
            ++orbit;
    cm.model_id = g.payloads[best].model_id;
    cm.flop_orbit = orbit;

    const SurfaceLattice& s = g.lattice;
    QVec bclass = qvec_zero(s.rank), fclass = qvec_zero(s.rank);
    QVec mults(g.component_mults.empty() ? 0 : g.component_mults[0].size(), Rat(0));
    for (std::size_t i = 0; i < g.m; ++i) {
        bclass = axpy(bclass, b[i], g.component_classes[i]);
        fclass = axpy(fclass, f_part[i], g.component_classes[i]);
        if (!g.component_mults.empty())
            mults = axpy(mults, b[i], g.component_mults[i]);
    }
    SurfaceMmpResult res = log_mmp_surface(s, bclass, mults);
    const std::vector<std::size_t>& c = res.contracted;
    const QVec& p = res.pullback_class;

    auto vertical = [&](std::size_t i) {
        return tdim == 0 || pair(s, p, s.curve_classes[i]) == 0;
    };
    auto surviving = [&](std::size_t i) {
        return std::find(c.begin(), c.end(), i) == c.end();
    };

    cm.relative_rank_two =
        long(s.rank) - long(c.size()) - (tdim == 0 ? 0 : 1) == 2;

    QVec neg_kf = scale(-1, add(s.canonical_class, fclass));
    QVec neg_kf_y = contraction_pullback(s, c, neg_kf);
    bool nef = true;
    for (std::size_t i = 0; i < s.curve_classes.size(); ++i)
        if (surviving(i) && vertical(i) && pair(s, neg_kf_y, s.curve_classes[i]) < 0)
            nef = false;
    bool big = tdim == 0 ? image_square(s, c, neg_kf) > 0 : pair(s, neg_kf_y, p) > 0;
    cm.weak_log_fano = nef && big;

    QVec adj_y = contraction_pullback(s, c, add(s.canonical_class, bclass));
    bool anti = true;
    for (std::size_t i = 0; i < s.curve_classes.size(); ++i)
        if (surviving(i) && vertical(i) && pair(s, adj_y, s.curve_classes[i]) != 0)
            anti = false;
    cm.mobile_antiadjoint = anti;
    return cm;
}

// ---- links from ridges ---------------------------------------------------------

ElementaryLink link_from_ridge(const Geography& g, std::size_t ridge) {
    RidgeTag tag = classify_ridge(g, ridge);
    if (tag.type != RidgeType::Fib2A && tag.type != RidgeType::Fib2B &&
        tag.type != RidgeType::Fib2C)
        throw classification_error("only fibering ridges encode links");

    std::vector<std::size_t> ring = ridge_ring(g, ridge);
    RingWalk walk = walk_ring(g, ring, false);
    bool ordered = false;
    std::vector<LinkStep> steps = steps_of_walk(g, walk, ordered);
    RingWalk rwalk = walk_ring(g, ring, true);
    bool rordered = false;
    std::vector<LinkStep> rsteps = steps_of_walk(g, rwalk, rordered);
    // of the two reading directions prefer one that starts by extracting
    auto starts_with_extraction = [](const std::vector<LinkStep>& s) {
        return !s.empty() && s.front().kind == LinkStepKind::DivisorialExtraction;
    };
    if (!ordered || (rordered && !starts_with_extraction(steps) &&
                     starts_with_extraction(rsteps))) {
        if (rordered) {
            walk = rwalk;
            steps = rsteps;
            ordered = true;
        }
    }
    if (!ordered) throw classification_error("ridge chain is not an elementary link");

    ElementaryLink link;
    link.type = tag.type;
    link.sarkisov = tag.type == RidgeType::Fib2A
                        ? "IV"
                        : (tag.type == RidgeType::Fib2B ? "I-III" : "II");
    link.steps = steps;
    link.from = parse_fib_id(g.payloads[walk.before].model_id);
    link.to = parse_fib_id(g.payloads[walk.beyond].model_id);
    for (std::size_t k = 1; k < walk.cells.size(); k += 2) {
        const CellPayload& p = g.payloads[walk.cells[k]];
        if (g.surface_category) {
            link.stages.push_back(surface_stage(g.lattice, p.model_id));
        } else {
            MmpRun run = resulting_model(
                g.model, boundary_coefficients(
                             g, g.complex.cells[walk.cells[k]].closure.rel_interior_point()));
            link.stages.push_back(toric_stage(run.final_model));
        }
    }
    if (g.surface_category) {
        QVec b = g.complex.cells[ridge].closure.rel_interior_point();
        link.central = central_model(g, ridge, b, qvec_zero(g.m));
    } else {
        link.central.model_id = g.payloads[ridge].model_id;
        link.central.base_id = g.payloads[ridge].lcm_id;
    }
    link.cte = true;
    for (const auto& st : link.stages)
        if (!st.terminal) link.cte = false;
    return link;
}

// ---- factoring maps of Mori fibrations -------------------------------------------

LinkChain factor_mori_map(const MoriFibration& f1, const MoriFibration& f2,
                          const QMat& mu) {
    if (f1.total.fan.rank != 2 || f2.total.fan.rank != 2 || !f1.total.proper ||
        !f2.total.proper || f1.total.base || f2.total.base)
        throw std::domain_error("factoring needs complete rank-two models");
    if (mu.size() != 2 || mu[0].size() != 2 || det_of(mu) == 0)
        throw std::invalid_argument("the lattice map must be invertible");
    QMat mu_inv = mat_inverse(mu);

    // carry the target data back to the source lattice
    QMat moved;
    for (const auto& r : f2.total.fan.rays) moved.push_back(primitive(mat_vec(mu_inv, r)));
    ToricModel target = make_model(make_fan(2, moved, f2.total.fan.cones));
    QMat target_map = mat_mul(f2.map, mu);

    LinkChain chain;
    chain.composite = mu;
    chain.report = "ray-set walk between the two fans";
    chain.source.total_id = model_key(f1.total);
    chain.source.base_dim = f1.target.fan.rank;
    chain.source.detail = f1.target.fan.rank == 0
                              ? "pt"
                              : "ruling " + vkey(primitive_signless(f1.map[0]));
    chain.target.total_id = model_key(target);
    chain.target.base_dim = f2.target.fan.rank;
    chain.target.detail = f2.target.fan.rank == 0
                              ? "pt"
                              : "ruling " + vkey(primitive_signless(target_map[0]));

    if (same_model(f1.total, target)) {
        if (f1.target.fan.rank == f2.target.fan.rank &&
            (f1.target.fan.rank == 0 ||
             primitive_signless(f1.map[0]) == primitive_signless(target_map[0])))
            return chain;  // the map is an isomorphism of the fibrations
        // one total model, two fibration structures: a single square link
        ElementaryLink link;
        link.type = RidgeType::Fib2A;
        link.sarkisov = "IV";
        link.from = chain.source;
        link.to = chain.target;
        link.stages.push_back(toric_stage(f1.total));
        FibrationRecord pt{model_key(f1.total), 0, "pt"};
        link.central = toric_central(f1.total, pt);
        link.cte = link.stages[0].terminal;
        chain.links.push_back(link);
        return chain;
    }

    std::set<std::string> want = ray_keys(target.fan.rays);
    ToricModel cur = f1.total;
    FibrationRecord cur_rec = chain.source;
    std::size_t guard = f1.total.fan.rays.size() + target.fan.rays.size() + 4;

    while (!same_model(cur, target)) {
        if (chain.links.size() > guard)
            throw std::logic_error("factorization failed to make progress");
        std::set<std::string> have = ray_keys(cur.fan.rays);
        ElementaryLink link;
        link.from = cur_rec;
        link.stages.push_back(toric_stage(cur));
        QMat rays = cur.fan.rays;
        ToricModel dominating = cur;

        QVec missing;
        for (const auto& r : target.fan.rays)
            if (!have.count(vkey(r))) {
                missing = r;
                break;
            }
        if (!missing.empty()) {
            rays.push_back(missing);
            cur = surface_from_rays(rays);
            rays = cur.fan.rays;
            dominating = cur;
            LinkStep st;
            st.kind = LinkStepKind::DivisorialExtraction;
            st.detail = "extract " + vkey(missing);
            st.model_after = model_key(cur);
            link.steps.push_back(st);
            link.stages.push_back(toric_stage(cur));
        }

        // contract the first leftover ray whose neighbors still span a fan
        QMat around = rays;
        std::sort(around.begin(), around.end(), ray_angle_less);
        std::size_t drop = rays.size();
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (want.count(vkey(rays[i]))) continue;
            std::size_t ai =
                std::find(around.begin(), around.end(), rays[i]) - around.begin();
            if (removable(around, ai)) {
                drop = i;
                break;
            }
        }
        if (drop != rays.size()) {
            QVec gone = rays[drop];
            rays.erase(rays.begin() + long(drop));
            cur = surface_from_rays(rays);
            LinkStep st;
            st.kind = LinkStepKind::DivisorialContraction;
            st.detail = "contract " + vkey(gone);
            st.model_after = model_key(cur);
            link.steps.push_back(st);
            link.stages.push_back(toric_stage(cur));
        }
        if (link.steps.empty())
            throw std::logic_error("factorization failed to make progress");

        cur_rec = same_model(cur, target) ? chain.target : surface_fibration_record(cur);
        link.to = cur_rec;
        bool ext = link.steps.front().kind == LinkStepKind::DivisorialExtraction;
        bool con = link.steps.back().kind == LinkStepKind::DivisorialContraction;
        link.type = ext && con ? RidgeType::Fib2C : RidgeType::Fib2B;
        link.sarkisov = ext && con ? "II" : "I-III";
        // the link plays out over the base shared by its two ends, a point
        // when the rulings disagree
        FibrationRecord base =
            link.from.base_dim == 1 && link.to.base_dim == 1 &&
                    link.from.detail == link.to.detail
                ? link.from
                : FibrationRecord{link.stages.front().model_id, 0, "pt"};
        link.central = toric_central(dominating, base);
        link.cte = true;
        for (const auto& st : link.stages)
            if (!st.terminal) link.cte = false;
        chain.links.push_back(link);
    }
    return chain;
}

std::vector<LinkStep> factor_flops(const ToricModel& y1, const ToricModel& y2) {
    if (y1.fan.rank != y2.fan.rank || y1.fan.rays != y2.fan.rays ||
        bool(y1.base) != bool(y2.base) ||
        (y1.base && (!(*y1.base == *y2.base) || y1.base_map != y2.base_map)))
        throw std::invalid_argument("models do not share rays and base");

    // polarization pulled over from y2
    QVec ample;
    QVec ones = anticanonical(y2);
    if (is_ample(y2, ones)) {
        ample = ones;
    } else {
        std::size_t n = y2.fan.rays.size();
        if (n > 16) throw std::domain_error("no small polarization found");
        for (unsigned long mask = 1; mask < (1ul << n) && ample.empty(); ++mask) {
            QVec c(n, Rat(0));
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ul << i)) c[i] = 1;
            if (is_ample(y2, c)) ample = c;
        }
        if (ample.empty()) throw std::domain_error("no small polarization found");
    }

    MmpRun run = run_dmmp(y1, ample);
    if (run.fibration || !same_model(run.final_model, y2))
        throw std::domain_error("models are not connected by small modifications");

    std::vector<LinkStep> out;
    ToricModel cur = y1;
    QVec k(cur.fan.rays.size(), Rat(-1));
    for (const auto& step : run.steps) {
        if (step.kind == StepKind::NefStop) continue;
        if (step.kind != StepKind::Flip)
            throw std::domain_error("models are not connected by small modifications");
        std::vector<ExtremalRay> rays = extremal_rays(cur);
        bool found = false;
        for (const auto& r : rays) {
            if (r.kind != RayKind::Small) continue;
            std::string key;
            for (auto w : r.walls) {
                std::string wk = wall_key(cur, w);
                if (key.empty() || wk < key) key = wk;
            }
            if (key != step.ray_key) continue;
            Rat kd = wall_degree(cur, k, r.walls[0]);
            LinkStep st;
            st.kind = kd < 0 ? LinkStepKind::Flip
                             : (kd == 0 ? LinkStepKind::Flop : LinkStepKind::Antiflip);
            st.detail = step.ray_key;
            cur = flip(cur, r);
            st.model_after = model_key(cur);
            out.push_back(st);
            found = true;
            break;
        }
        if (!found) throw std::logic_error("replay lost track of a flip");
    }
    if (!same_model(cur, y2)) throw std::logic_error("replay missed the target");
    return out;
}

// ---- validation -----------------------------------------------------------------

LinkReport validate_link(const ElementaryLink& l) {
    LinkReport rep;
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        rep.violations.push_back(why);
    };

    if (l.stages.size() != l.steps.size() + 1) fail("stage count does not match steps");

    // ordering: extractions, then small modifications, then contractions
    int phase = 0;
    std::size_t extractions = 0, contractions = 0, flops = 0;
    for (const auto& st : l.steps) {
        switch (st.kind) {
            case LinkStepKind::DivisorialExtraction:
                if (phase > 0) fail("extraction after a later phase");
                ++extractions;
                break;
            case LinkStepKind::Antiflip:
            case LinkStepKind::Flop:
            case LinkStepKind::Flip:
                if (phase > 1) fail("small modification after a contraction");
                phase = 1;
                if (st.kind == LinkStepKind::Flop) ++flops;
                break;
            case LinkStepKind::DivisorialContraction:
                phase = 2;
                ++contractions;
                break;
        }
    }
    if (extractions > 2) fail("more than two divisorial extractions");
    if (contractions > 2) fail("more than two divisorial contractions");
    if (flops > 1) fail("more than one flop");

    if (l.stages.size() == l.steps.size() + 1) {
        for (std::size_t i = 0; i < l.steps.size(); ++i) {
            long d = l.stages[i + 1].rho - l.stages[i].rho;
            long want = l.steps[i].kind == LinkStepKind::DivisorialExtraction
                            ? 1
                            : (l.steps[i].kind == LinkStepKind::DivisorialContraction ? -1
                                                                                      : 0);
            if (d != want) fail("rank accounting fails at step " + std::to_string(i));
        }
    }
    for (const auto& st : l.stages)
        if (!st.ft) fail("stage " + st.model_id + " is not of Fano type");
    if (!l.central.relative_rank_two) fail("central model has wrong relative rank");
    if (!l.central.weak_log_fano) fail("central model is not weak log Fano");
    if (!l.central.mobile_antiadjoint) fail("mobile part is not anti-adjoint");
    if (l.central.base_id == "pt" && !l.stages.empty()) {
        std::size_t top = 0;
        for (std::size_t i = 1; i < l.stages.size(); ++i)
            if (l.stages[i].rho > l.stages[top].rho) top = i;
        if (l.stages[top].k_square <= 0)
            fail("canonical square is not positive over a point");
    }
    return rep;
}

}  // namespace geolog
