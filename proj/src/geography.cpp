#include "geolog/geography.hpp"

#include "geolog/cones.hpp"
#include "geolog/mmp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace geolog {

namespace {

std::string vec_key(const QVec& v) {
    std::string s;
    for (const auto& x : v) {
        if (!s.empty()) s += ",";
        s += rat_to_string(x);
    }
    return s;
}

std::string mat_key(const QMat& m) {
    std::string s;
    for (const auto& r : m) s += vec_key(r) + ";";
    return s;
}

// affine functionals are reconstructed from m+1 evaluations
AffineWall affine_from_eval(std::size_t m, const std::function<Rat(const QVec&)>& f) {
    QVec zero = qvec_zero(m);
    Rat f0 = f(zero);
    AffineWall w;
    w.normal = qvec_zero(m);
    for (std::size_t i = 0; i < m; ++i) {
        QVec e = zero;
        e[i] = 1;
        w.normal[i] = f(e) - f0;
    }
    w.offset = -f0;
    return w;
}

struct WallCollector {
    std::vector<AffineWall> walls;
    std::set<std::string> seen;

    void add(const AffineWall& w) {
        if (is_zero(w.normal)) return;
        QVec c = w.normal;
        c.push_back(w.offset);
        c = primitive_signless(c);
        std::string key = vec_key(c);
        if (!seen.insert(key).second) return;
        AffineWall canon;
        canon.offset = c.back();
        c.pop_back();
        canon.normal = c;
        walls.push_back(canon);
    }
};

// ---------------------------------------------------------------- toric

std::size_t ray_index_in(const ToricModel& x, const QVec& v) {
    for (std::size_t i = 0; i < x.fan.rays.size(); ++i)
        if (x.fan.rays[i] == v) return i;
    return x.fan.rays.size();
}

// multiplicity of the boundary along the ray with index idx of the start model
Rat toric_mult(const Geography& g, std::size_t idx, const QVec& b) {
    Rat m = 0;
    for (std::size_t i = 0; i < g.m; ++i) m += b[i] * g.components[i][idx];
    return m;
}

// boundary coefficient vector on the start model
QVec toric_boundary(const Geography& g, const QVec& b) {
    QVec out = qvec_zero(g.model.fan.rays.size());
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = toric_mult(g, r, b);
    return out;
}

// boundary coefficients transported to a model sharing a subset of the rays
QVec boundary_on(const Geography& g, const ToricModel& y, const QVec& b) {
    QVec out = qvec_zero(y.fan.rays.size());
    for (std::size_t r = 0; r < out.size(); ++r) {
        std::size_t idx = ray_index_in(g.model, y.fan.rays[r]);
        if (idx == g.model.fan.rays.size())
            throw std::logic_error("geography: model has a ray outside the start model");
        out[r] = toric_mult(g, idx, b);
    }
    return out;
}

Rat toric_ild(const Geography& g, const QVec& v, const QVec& b) {
    std::size_t idx = ray_index_in(g.model, v);
    if (idx < g.model.fan.rays.size()) return Rat(1) - toric_mult(g, idx, b);
    return 0;  // divisor extracted by the runs, absent from the start model
}

// every Q-factorial model reachable by flips and divisorial contractions
std::vector<ToricModel> toric_closure(const ToricModel& x) {
    std::vector<ToricModel> out;
    std::set<std::string> seen;
    std::vector<ToricModel> queue{x};
    seen.insert(model_key(x));
    while (!queue.empty()) {
        ToricModel cur = queue.back();
        queue.pop_back();
        out.push_back(cur);
        for (const auto& r : extremal_rays(cur)) {
            if (r.kind == RayKind::Fibering) continue;
            ToricModel next = r.kind == RayKind::Small ? flip(cur, r)
                                                       : contract(cur, r).target;
            if (seen.insert(model_key(next)).second) queue.push_back(next);
        }
    }
    return out;
}

std::string fib_id(std::size_t base_rank, const std::string& detail) {
    return "fib:" + std::to_string(base_rank) + ":" + detail;
}

std::size_t fib_id_rank(const std::string& id) {
    auto a = id.find(':');
    auto b = id.find(':', a + 1);
    return std::stoul(id.substr(a + 1, b - a - 1));
}

CellPayload eval_toric(const Geography& g, const QVec& b) {
    CellPayload p;
    MmpRun run = resulting_model(g.model, toric_boundary(g, b));
    if (run.fibration) {
        p.in_ns = false;
        p.model_id = fib_id(run.fibration_rec->target.fan.rank,
                            model_key(run.fibration_rec->target) + "|" +
                                model_key(run.fibration_rec->total));
        p.dropped = g.model.fan.rays.size() - run.final_model.fan.rays.size();
        return p;
    }
    p.in_ns = true;
    p.model_id = model_key(run.final_model);
    p.dropped = g.model.fan.rays.size() - run.final_model.fan.rays.size();

    const ToricModel& v = g.high_model;
    QVec pull = pullback_values(run.final_model, run.final_divisor, v.fan.rays);
    for (auto w : v.vertical_walls) p.p_signs.push_back(sgn(wall_degree(v, pull, w)));
    QVec bf = run.final_divisor;
    for (auto& c : bf) c += 1;
    for (const auto& ray : v.fan.rays) {
        Rat e = log_discrepancy(run.final_model, bf, ray) - toric_ild(g, ray, b);
        p.e_signs.push_back(sgn(e));
    }

    Polyhedron sect = divisor_polyhedron(run.final_model, run.final_divisor);
    QMat horizon = sect.recession_rays();
    for (const auto& l : sect.lineality()) horizon.push_back(l);
    p.nu = long(sect.dim()) - long(rank(horizon));

    LcModelResult lc = lc_model(g.model, toric_boundary(g, b));
    p.lcm_id = fan_key(lc.model.fan) + "|" + mat_key(lc.map);
    return p;
}

void toric_md(const ToricModel& y, const QVec& d, std::set<std::string>& out,
              std::set<std::string>& seen) {
    if (!seen.insert(model_key(y) + "#" + vec_key(d)).second) return;
    bool negative = false;
    for (const auto& r : extremal_rays(y)) {
        if (dot(d, r.cls) >= 0) continue;
        negative = true;
        if (r.kind == RayKind::Fibering) {
            Contraction c = contract(y, r);
            out.insert(fib_id(c.target.fan.rank, model_key(c.target) + "|" + model_key(y)));
        } else if (r.kind == RayKind::Divisorial) {
            Contraction c = contract(y, r);
            QVec dn = qvec_zero(c.target.fan.rays.size());
            for (std::size_t i = 0; i < dn.size(); ++i)
                dn[i] = d[ray_index_in(y, c.target.fan.rays[i])];
            toric_md(c.target, dn, out, seen);
        } else {
            toric_md(flip(y, r), d, out, seen);
        }
    }
    if (!negative) out.insert(model_key(y));
}

// -------------------------------------------------------------- surface

QVec surface_adjoint(const Geography& g, const QVec& b) {
    QVec adj = g.lattice.canonical_class;
    for (std::size_t i = 0; i < g.m; ++i) adj = axpy(adj, b[i], g.component_classes[i]);
    return adj;
}

QVec surface_mults(const Geography& g, const QVec& b) {
    QVec m = qvec_zero(g.lattice.curve_classes.size());
    for (std::size_t i = 0; i < g.m; ++i) m = axpy(m, b[i], g.component_mults[i]);
    return m;
}

std::string contracted_id(std::vector<std::size_t> t) {
    std::sort(t.begin(), t.end());
    std::string s = "T{";
    for (auto i : t) s += std::to_string(i) + ",";
    return s + "}";
}

Rat det(QMat a) {
    Rat d = 1;
    std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rat f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

bool negative_definite(const SurfaceLattice& s, const std::vector<std::size_t>& t) {
    for (std::size_t k = 1; k <= t.size(); ++k) {
        QMat minor(k, qvec_zero(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                minor[i][j] = pair(s, s.curve_classes[t[i]], s.curve_classes[t[j]]);
        int want = k % 2 == 0 ? 1 : -1;
        if (sgn(det(minor)) != want) return false;
    }
    return true;
}

// all contractible curve sets (negative definite Gram), the empty set first
std::vector<std::vector<std::size_t>> contractible_sets(const SurfaceLattice& s) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::vector<std::size_t> base = out[k];
        std::size_t low = base.empty() ? 0 : base.back() + 1;
        for (std::size_t i = low; i < s.curve_classes.size(); ++i) {
            if (std::find(s.negative_curves.begin(), s.negative_curves.end(), i) ==
                s.negative_curves.end())
                continue;
            std::vector<std::size_t> next = base;
            next.push_back(i);
            if (negative_definite(s, next)) out.push_back(next);
        }
    }
    return out;
}

// multiplicities of the contracted curves in the immobile part of adj
QVec immobile_mults(const SurfaceLattice& s, const std::vector<std::size_t>& t,
                    const QVec& adj) {
    if (t.empty()) return {};
    QVec p = contraction_pullback(s, t, adj);
    QVec f = sub(adj, p);
    QMat gram(t.size(), qvec_zero(t.size()));
    QVec rhs = qvec_zero(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        rhs[i] = pair(s, f, s.curve_classes[t[i]]);
        for (std::size_t j = 0; j < t.size(); ++j)
            gram[i][j] = pair(s, s.curve_classes[t[i]], s.curve_classes[t[j]]);
    }
    return solve_square(gram, rhs);
}

CellPayload eval_surface(const Geography& g, const QVec& b) {
    CellPayload p;
    const SurfaceLattice& s = g.lattice;
    QVec adj = surface_adjoint(g, b);
    QVec mults = surface_mults(g, b);
    SurfaceMmpResult res = log_mmp_surface(s, sub(adj, s.canonical_class), mults);
    p.dropped = res.contracted.size();
    if (res.outcome != SurfaceOutcome::WlcModel) {
        p.in_ns = false;
        std::string detail = contracted_id(res.contracted);
        if (res.outcome == SurfaceOutcome::FiberToCurve)
            p.model_id = fib_id(1, vec_key(res.fiber_class) + "|" + detail);
        else
            p.model_id = fib_id(0, "pt|" + detail);
        return p;
    }
    p.in_ns = true;
    p.model_id = contracted_id(res.contracted);
    for (const auto& c : s.curve_classes)
        p.p_signs.push_back(sgn(pair(s, res.pullback_class, c)));
    // e along a contracted curve is log discrepancy + multiplicity - 1
    for (auto c : s.negative_curves) {
        auto it = std::find(res.contracted.begin(), res.contracted.end(), c);
        if (it == res.contracted.end()) {
            p.e_signs.push_back(0);
            continue;
        }
        std::size_t k = std::size_t(it - res.contracted.begin());
        p.e_signs.push_back(sgn(res.discrepancies[k] + mults[c] - 1));
    }
    const QVec& pos = res.pullback_class;
    Rat sq = pair(s, pos, pos);
    if (is_zero(pos)) {
        p.nu = 0;
        p.lcm_id = "pt";
    } else if (sq > 0) {
        p.nu = 2;
        p.lcm_id = "big:" + p.model_id;
    } else {
        p.nu = 1;
        p.lcm_id = "curve:" + vec_key(primitive(pos));
    }
    return p;
}

void surface_md(const SurfaceLattice& s, const QVec& adj, std::vector<std::size_t> t,
                std::set<std::string>& out, std::set<std::string>& seen) {
    std::sort(t.begin(), t.end());
    if (!seen.insert(contracted_id(t)).second) return;
    QVec img = contraction_pullback(s, t, adj);
    bool negative = false;
    for (std::size_t i = 0; i < s.curve_classes.size(); ++i) {
        if (std::find(t.begin(), t.end(), i) != t.end()) continue;
        if (pair(s, img, s.curve_classes[i]) >= 0) continue;
        negative = true;
        bool is_neg_curve = std::find(s.negative_curves.begin(), s.negative_curves.end(),
                                      i) != s.negative_curves.end();
        if (is_neg_curve && image_square(s, t, s.curve_classes[i]) < 0) {
            std::vector<std::size_t> next = t;
            next.push_back(i);
            surface_md(s, adj, next, out, seen);
        } else {
            QVec fib = contraction_pullback(s, t, s.curve_classes[i]);
            if (pair(s, fib, fib) == 0)
                out.insert(fib_id(1, vec_key(primitive(fib)) + "|" + contracted_id(t)));
            else
                out.insert(fib_id(0, "pt|" + contracted_id(t)));
        }
    }
    if (!negative) out.insert(contracted_id(t));
}

// ------------------------------------------------------- shared assembly

void finish_geography(Geography& g, const Polyhedron& ns_cut,
                      const std::vector<AffineWall>& walls) {
    g.ns = g.cube.intersect(ns_cut);
    g.complex = arrangement_chambers(g.cube, walls);
    g.payloads.clear();
    std::map<std::string, std::size_t> class_of;
    for (auto& cell : g.complex.cells) {
        QVec p = cell.closure.rel_interior_point();
        CellPayload pay = evaluate_boundary(g, p);
        std::ostringstream key;
        key << pay.in_ns << "|" << pay.model_id << "|" << pay.lcm_id << "|"
            << (pay.nu ? *pay.nu : -1000) << "|" << vec_key(QVec(pay.p_signs.begin(),
                                                                 pay.p_signs.end()))
            << "|" << vec_key(QVec(pay.e_signs.begin(), pay.e_signs.end()));
        auto it = class_of.find(key.str());
        std::size_t cls;
        if (it == class_of.end()) {
            cls = g.classes.size();
            class_of.emplace(key.str(), cls);
            g.classes.emplace_back();
        } else {
            cls = it->second;
        }
        cell.payload = long(cls);
        g.classes[cls].push_back(g.payloads.size());
        g.payloads.push_back(std::move(pay));
    }
}

int half_of(const std::pair<Rat, Rat>& p) {
    if (p.second > 0 || (p.second == 0 && p.first > 0)) return 0;
    return 1;
}

bool angle_less(const std::pair<Rat, Rat>& p, const std::pair<Rat, Rat>& q) {
    int hp = half_of(p), hq = half_of(q);
    if (hp != hq) return hp < hq;
    return p.first * q.second - p.second * q.first > 0;
}

}  // namespace

std::size_t Geography::tracked_curve_count() const {
    return surface_category ? lattice.curve_classes.size()
                            : high_model.vertical_walls.size();
}

std::size_t Geography::tracked_divisor_count() const {
    return surface_category ? lattice.negative_curves.size() : high_model.fan.rays.size();
}

Geography compute_geography(const ToricModel& x, const QMat& components) {
    if (!x.q_factorial) throw std::invalid_argument("geography needs a Q-factorial model");
    if (components.empty()) throw std::invalid_argument("geography needs components");
    for (const auto& c : components) {
        if (c.size() != x.fan.rays.size())
            throw std::invalid_argument("component coefficient vector has wrong length");
        for (const auto& v : c)
            if (v < 0) throw std::invalid_argument("component coefficients must be >= 0");
    }

    Geography g;
    g.surface_category = false;
    g.m = components.size();
    g.model = x;
    g.components = components;

    // region: the unit cube cut down so no ray coefficient exceeds one
    Polyhedron region = Polyhedron::box01(g.m);
    for (std::size_t r = 0; r < x.fan.rays.size(); ++r) {
        QVec n = qvec_zero(g.m);
        bool any = false;
        for (std::size_t i = 0; i < g.m; ++i) {
            n[i] = -components[i][r];
            if (n[i] != 0) any = true;
        }
        if (any) region = region.intersect(Halfspace{n, Rat(-1), false});
    }
    g.cube = region;

    std::vector<ToricModel> closure = toric_closure(x);
    Fan refined = x.fan;
    for (const auto& y : closure) refined = common_refinement(refined, y.fan);
    refined = triangulate(refined);
    g.high_model = x.base ? make_model(refined, *x.base, x.base_map) : make_model(refined);

    // one affine wall per curve degree and per tracked-divisor immobility,
    // over every model the runs can land on
    WallCollector wc;
    for (const auto& y : closure) {
        for (auto w : y.vertical_walls) {
            QVec cc = curve_class(y, w);
            wc.add(affine_from_eval(g.m, [&](const QVec& b) {
                QVec coeffs = boundary_on(g, y, b);
                for (auto& v : coeffs) v -= 1;
                return dot(cc, coeffs);
            }));
        }
        for (const auto& ray : g.high_model.fan.rays) {
            // the explicit return type forces evaluation before the operands
            // of the difference go out of scope (gmpxx expression templates)
            wc.add(affine_from_eval(g.m, [&](const QVec& b) -> Rat {
                return log_discrepancy(y, boundary_on(g, y, b), ray) - toric_ild(g, ray, b);
            }));
        }
    }

    ConeRep eff = positive_cones(x).eff_div;
    std::vector<Halfspace> hs, eqs;
    auto lift = [&](const QVec& f) {
        QVec n = qvec_zero(g.m);
        Rat off = 0;
        for (std::size_t r = 0; r < f.size(); ++r) off += f[r];
        for (std::size_t i = 0; i < g.m; ++i) n[i] = dot(f, components[i]);
        return Halfspace{n, off, false};
    };
    for (const auto& f : eff.facet_normals) hs.push_back(lift(f));
    for (const auto& f : eff.span_normals) eqs.push_back(lift(f));

    std::size_t ambient = 0;
    {
        QMat all;
        for (std::size_t r = 0; r < x.fan.rays.size(); ++r) {
            QVec e = qvec_zero(x.fan.rays.size());
            e[r] = 1;
            all.push_back(divisor_class(x, e));
        }
        ambient = rank(all);
        QMat comp_classes;
        for (const auto& c : components) comp_classes.push_back(divisor_class(x, c));
        g.generality = rank(comp_classes) == ambient;
    }

    finish_geography(g, Polyhedron(g.m, hs, eqs), wc.walls);
    return g;
}

Geography compute_geography(const SurfaceLattice& s, const QMat& component_classes,
                            const QMat& component_mults) {
    if (component_classes.empty())
        throw std::invalid_argument("geography needs components");
    if (component_mults.size() != component_classes.size())
        throw std::invalid_argument("one multiplicity row per component required");
    for (const auto& c : component_classes)
        if (c.size() != s.rank)
            throw std::invalid_argument("component class has wrong length");
    for (const auto& m : component_mults) {
        if (m.size() != s.curve_classes.size())
            throw std::invalid_argument("multiplicity row has wrong length");
        for (const auto& v : m)
            if (v < 0) throw std::invalid_argument("multiplicities must be >= 0");
    }

    Geography g;
    g.surface_category = true;
    g.m = component_classes.size();
    g.lattice = s;
    g.component_classes = component_classes;
    g.component_mults = component_mults;

    Polyhedron region = Polyhedron::box01(g.m);
    for (std::size_t c = 0; c < s.curve_classes.size(); ++c) {
        QVec n = qvec_zero(g.m);
        bool any = false;
        for (std::size_t i = 0; i < g.m; ++i) {
            n[i] = -component_mults[i][c];
            if (n[i] != 0) any = true;
        }
        if (any) region = region.intersect(Halfspace{n, Rat(-1), false});
    }
    g.cube = region;

    WallCollector wc;
    for (const auto& t : contractible_sets(s)) {
        for (const auto& c : s.curve_classes) {
            wc.add(affine_from_eval(g.m, [&](const QVec& b) {
                return pair(s, contraction_pullback(s, t, surface_adjoint(g, b)), c);
            }));
        }
        for (std::size_t k = 0; k < t.size(); ++k) {
            wc.add(affine_from_eval(g.m, [&](const QVec& b) {
                return immobile_mults(s, t, surface_adjoint(g, b))[k];
            }));
        }
    }

    ConeRep eff = effective_cone(s);
    std::vector<Halfspace> hs, eqs;
    auto lift = [&](const QVec& f) {
        QVec n = qvec_zero(g.m);
        for (std::size_t i = 0; i < g.m; ++i) n[i] = dot(f, component_classes[i]);
        return Halfspace{n, -dot(f, s.canonical_class), false};
    };
    for (const auto& f : eff.facet_normals) hs.push_back(lift(f));
    for (const auto& f : eff.span_normals) eqs.push_back(lift(f));

    {
        QMat cc = component_classes;
        g.generality = rank(cc) == s.rank;
    }

    finish_geography(g, Polyhedron(g.m, hs, eqs), wc.walls);
    return g;
}

QVec boundary_coefficients(const Geography& g, const QVec& b) {
    if (b.size() != g.m) throw std::invalid_argument("cube point has wrong length");
    if (g.surface_category) return sub(surface_adjoint(g, b), g.lattice.canonical_class);
    return toric_boundary(g, b);
}

bool in_ns(const Geography& g, const QVec& b) { return g.ns.contains(b); }

CellPayload evaluate_boundary(const Geography& g, const QVec& b) {
    if (b.size() != g.m) throw std::invalid_argument("cube point has wrong length");
    return g.surface_category ? eval_surface(g, b) : eval_toric(g, b);
}

Rat ild_value(const Geography& g, std::size_t divisor, const QVec& b) {
    if (divisor >= g.tracked_divisor_count())
        throw std::invalid_argument("tracked divisor index out of range");
    if (g.surface_category) {
        std::size_t c = g.lattice.negative_curves[divisor];
        Rat m = 0;
        for (std::size_t i = 0; i < g.m; ++i) m += b[i] * g.component_mults[i][c];
        return Rat(1) - m;
    }
    return toric_ild(g, g.high_model.fan.rays[divisor], b);
}

Rat p_value(const Geography& g, std::size_t curve, const QVec& b) {
    if (curve >= g.tracked_curve_count())
        throw std::invalid_argument("tracked curve index out of range");
    if (g.surface_category) {
        const SurfaceLattice& s = g.lattice;
        SurfaceMmpResult res =
            log_mmp_surface(s, sub(surface_adjoint(g, b), s.canonical_class),
                            surface_mults(g, b));
        if (res.outcome != SurfaceOutcome::WlcModel)
            throw std::domain_error("boundary outside the wlc region");
        return pair(s, res.pullback_class, s.curve_classes[curve]);
    }
    MmpRun run = resulting_model(g.model, toric_boundary(g, b));
    if (run.fibration) throw std::domain_error("boundary outside the wlc region");
    QVec pull = pullback_values(run.final_model, run.final_divisor, g.high_model.fan.rays);
    return wall_degree(g.high_model, pull, g.high_model.vertical_walls[curve]);
}

Rat e_value(const Geography& g, std::size_t divisor, const QVec& b) {
    if (divisor >= g.tracked_divisor_count())
        throw std::invalid_argument("tracked divisor index out of range");
    if (g.surface_category) {
        const SurfaceLattice& s = g.lattice;
        QVec mults = surface_mults(g, b);
        SurfaceMmpResult res =
            log_mmp_surface(s, sub(surface_adjoint(g, b), s.canonical_class), mults);
        if (res.outcome != SurfaceOutcome::WlcModel)
            throw std::domain_error("boundary outside the wlc region");
        std::size_t c = g.lattice.negative_curves[divisor];
        auto it = std::find(res.contracted.begin(), res.contracted.end(), c);
        if (it == res.contracted.end()) return 0;
        return res.discrepancies[std::size_t(it - res.contracted.begin())] + mults[c] - 1;
    }
    MmpRun run = resulting_model(g.model, toric_boundary(g, b));
    if (run.fibration) throw std::domain_error("boundary outside the wlc region");
    QVec bf = run.final_divisor;
    for (auto& c : bf) c += 1;
    const QVec& v = g.high_model.fan.rays[divisor];
    return log_discrepancy(run.final_model, bf, v) - toric_ild(g, v, b);
}

std::set<std::string> resulting_model_set(const Geography& g, const QVec& b) {
    std::set<std::string> out, seen;
    if (g.surface_category) {
        surface_md(g.lattice, surface_adjoint(g, b), {}, out, seen);
    } else {
        QVec d = toric_boundary(g, b);
        for (auto& c : d) c -= 1;
        toric_md(g.model, d, out, seen);
    }
    return out;
}

bool equivalent(const Geography& g, const QVec& b1, const QVec& b2, EqRel rel) {
    if (rel == EqRel::Md)
        return resulting_model_set(g, b1) == resulting_model_set(g, b2);
    CellPayload p1 = evaluate_boundary(g, b1);
    CellPayload p2 = evaluate_boundary(g, b2);
    if (!p1.in_ns && !p2.in_ns) return true;  // nothing to compare
    if (p1.in_ns != p2.in_ns) return false;
    switch (rel) {
        case EqRel::Wlc: return p1.model_id == p2.model_id;
        case EqRel::Lcm: return p1.lcm_id == p2.lcm_id;
        case EqRel::Mob: return p1.p_signs == p2.p_signs;
        case EqRel::Fix: return p1.e_signs == p2.e_signs;
        default: return false;
    }
}

FacetTag classify_facet(const Geography& g, std::size_t cell) {
    const std::size_t m = g.m;
    if (cell >= g.complex.cells.size()) throw std::invalid_argument("no such cell");
    const Cell& c = g.complex.cells[cell];
    if (c.dim + 1 != m) throw std::invalid_argument("cell is not a facet");

    FacetTag tag;
    tag.verified = g.generality;
    for (int s : c.region_signs)
        if (s == 0) {
            tag.type = FacetType::CubeBordering;
            tag.note = "on the cube boundary";
            return tag;
        }

    std::vector<std::size_t> sides;
    for (auto j : g.complex.face_of[cell])
        if (g.complex.cells[j].dim == m) sides.push_back(j);
    std::vector<std::size_t> countries;
    for (auto j : sides)
        if (g.payloads[j].in_ns) countries.push_back(j);

    if (countries.empty()) {
        tag.type = FacetType::CubeBordering;
        tag.verified = false;
        tag.note = "no adjacent country";
        return tag;
    }
    for (auto j : sides) tag.models.push_back(g.payloads[j].model_id);

    if (countries.size() == 1) {
        tag.type = FacetType::Fibering;
        bool ok = false;
        for (auto j : sides)
            if (!g.payloads[j].in_ns && g.payloads[j].model_id.rfind("fib:", 0) == 0)
                ok = true;
        if (!ok)
            throw classification_error("fibering facet without a fibration witness");
        return tag;
    }

    const CellPayload& a = g.payloads[countries[0]];
    const CellPayload& b = g.payloads[countries[1]];
    if (a.model_id == b.model_id) {
        tag.type = FacetType::CubeBordering;
        tag.verified = false;
        tag.note = "not a class boundary";
        return tag;
    }
    if (a.dropped == b.dropped) {
        tag.type = FacetType::Flopping;
        return tag;
    }
    tag.type = FacetType::Divisorial;
    // the country dropping more divisors must contract one that the facet
    // itself keeps at immobility zero
    const CellPayload& more = a.dropped > b.dropped ? a : b;
    const CellPayload& here = g.payloads[cell];
    bool witness = false;
    for (std::size_t i = 0; i < here.e_signs.size() && i < more.e_signs.size(); ++i)
        if (here.e_signs[i] == 0 && more.e_signs[i] > 0) witness = true;
    if (!witness && here.in_ns)
        throw classification_error("divisorial facet without a vanishing immobility");
    return tag;
}

std::vector<std::size_t> ridge_ring(const Geography& g, std::size_t cell) {
    const std::size_t m = g.m;
    if (cell >= g.complex.cells.size()) throw std::invalid_argument("no such cell");
    const Cell& c = g.complex.cells[cell];
    if (c.dim + 2 != m) throw std::invalid_argument("cell is not a ridge");

    // two functionals transverse to the ridge give rotational coordinates
    QVec x0 = c.closure.rel_interior_point();
    QMat dirs;
    for (const auto& v : c.closure.vertices()) dirs.push_back(sub(v, x0));
    for (const auto& r : c.closure.recession_rays()) dirs.push_back(r);
    for (const auto& l : c.closure.lineality()) dirs.push_back(l);
    QMat w;
    if (dirs.empty()) {
        for (std::size_t i = 0; i < m; ++i) {
            QVec e = qvec_zero(m);
            e[i] = 1;
            w.push_back(e);
        }
    } else {
        w = kernel_basis(dirs);
    }
    if (w.size() < 2) throw std::logic_error("ridge has too few transverse directions");

    struct Around {
        std::size_t cell;
        std::pair<Rat, Rat> coord;
    };
    std::vector<Around> ring;
    for (auto j : g.complex.face_of[cell]) {
        std::size_t d = g.complex.cells[j].dim;
        if (d != m && d + 1 != m) continue;
        QVec p = sub(g.complex.cells[j].closure.rel_interior_point(), x0);
        ring.push_back({j, {dot(w[0], p), dot(w[1], p)}});
    }
    std::sort(ring.begin(), ring.end(),
              [](const Around& a, const Around& b) { return angle_less(a.coord, b.coord); });
    std::vector<std::size_t> out;
    for (const auto& a : ring) out.push_back(a.cell);
    return out;
}

RidgeTag classify_ridge(const Geography& g, std::size_t cell) {
    const std::size_t m = g.m;
    if (cell >= g.complex.cells.size()) throw std::invalid_argument("no such cell");
    const Cell& c = g.complex.cells[cell];
    if (c.dim + 2 != m) throw std::invalid_argument("cell is not a ridge");

    RidgeTag tag;
    tag.verified = g.generality;
    for (int s : c.region_signs)
        if (s == 0) {
            tag.type = RidgeType::CubeBordering;
            tag.note = "on the cube boundary";
            return tag;
        }

    std::vector<std::size_t> ring_cells = ridge_ring(g, cell);

    std::vector<std::size_t> full;
    for (auto j : ring_cells)
        if (g.complex.cells[j].dim == m) full.push_back(j);

    bool any_out = false;
    for (auto j : full)
        if (!g.payloads[j].in_ns) any_out = true;

    if (!any_out) {
        // interior ridge: tally the facet types around it
        std::size_t flopping = 0, divisorial = 0, other = 0;
        for (auto j : ring_cells) {
            if (g.complex.cells[j].dim + 1 != m) continue;
            tag.facets.push_back(j);
            FacetTag f = classify_facet(g, j);
            if (f.type == FacetType::Flopping)
                ++flopping;
            else if (f.type == FacetType::Divisorial)
                ++divisorial;
            else
                ++other;
        }
        tag.countries = full;
        tag.central = g.payloads[cell].model_id;
        if (other != 0)
            throw classification_error("interior ridge with a non-birational facet");
        if (divisorial == 0 && flopping > 0)
            tag.type = RidgeType::Bir3A;
        else if (divisorial == 2)
            tag.type = RidgeType::Bir3B;
        else if (divisorial == 4)
            tag.type = RidgeType::Bir3C;
        else
            throw classification_error("interior ridge with an unexpected facet tally");
        return tag;
    }

    if (!g.payloads[cell].in_ns)
        throw classification_error("boundary ridge outside the wlc region");
    if (!g.payloads[cell].nu)
        throw classification_error("boundary ridge without a central fibration");
    long tdim = *g.payloads[cell].nu;
    tag.central = g.payloads[cell].lcm_id;

    // walk the ring: facets sitting between an inside and an outside country
    // are the two end fibrations of the chain
    std::size_t n = ring_cells.size();
    std::size_t matching = 0, ends = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = ring_cells[k];
        if (g.complex.cells[j].dim + 1 != m) continue;
        std::size_t prev = ring_cells[(k + n - 1) % n];
        std::size_t next = ring_cells[(k + 1) % n];
        if (g.complex.cells[prev].dim != m || g.complex.cells[next].dim != m)
            throw classification_error("ridge ring does not alternate");
        bool pin = g.payloads[prev].in_ns, nin = g.payloads[next].in_ns;
        if (pin == nin) {
            if (pin) tag.facets.push_back(j);
            continue;
        }
        ++ends;
        tag.facets.push_back(j);
        const CellPayload& out = g.payloads[pin ? next : prev];
        if (out.model_id.rfind("fib:", 0) != 0)
            throw classification_error("end facet without a fibration beyond it");
        if (long(fib_id_rank(out.model_id)) == tdim) ++matching;
    }
    for (auto j : full)
        if (g.payloads[j].in_ns) tag.countries.push_back(j);
    if (ends != 2 || tag.countries.empty())
        throw classification_error("boundary ridge without a two-ended country chain");

    if (matching == 0)
        tag.type = RidgeType::Fib2A;
    else if (matching == 1)
        tag.type = RidgeType::Fib2B;
    else
        tag.type = RidgeType::Fib2C;
    return tag;
}

QVec project_from_origin(const QVec& b) {
    Rat s = 0;
    for (const auto& v : b) s += v;
    if (s == 0) throw std::domain_error("cannot project the origin");
    return scale(1 / s, b);
}

Separatrix separatrix_and_projection(const Geography& g) {
    Separatrix sep;
    sep.origin = qvec_zero(g.m);
    if (g.ns.empty()) {
        sep.image = Polyhedron(g.m, {Halfspace{qvec_zero(g.m), Rat(1), false}});
        return sep;
    }
    std::set<std::string> seen;
    for (const auto& f : g.ns.faces_of_codim(1)) {
        QVec p = f.rel_interior_point();
        bool on_cube = false;
        for (const auto& h : g.cube.halfspaces())
            if (h.eval(p) == 0) on_cube = true;
        if (on_cube) continue;
        sep.pieces.push_back(f);
        for (const auto& v : f.vertices())
            if (seen.insert(vec_key(v)).second) sep.vertices.push_back(v);
    }
    for (const auto& v : sep.vertices) sep.projected.push_back(project_from_origin(v));
    if (!sep.projected.empty())
        sep.image = Polyhedron::convex_hull(g.m, sep.projected, {});
    else
        sep.image = Polyhedron(g.m, {Halfspace{qvec_zero(g.m), Rat(1), false}});
    return sep;
}

Geography extend(const Geography& g, const QMat& new_components, const QMat& new_mults) {
    if (new_components.size() < g.m)
        throw std::invalid_argument("extension must keep the existing components");
    if (g.surface_category) {
        for (std::size_t i = 0; i < g.m; ++i)
            if (new_components[i] != g.component_classes[i] ||
                (i < new_mults.size() && new_mults[i] != g.component_mults[i]))
                throw std::invalid_argument("extension must keep the existing components");
        return compute_geography(g.lattice, new_components, new_mults);
    }
    for (std::size_t i = 0; i < g.m; ++i)
        if (new_components[i] != g.components[i])
            throw std::invalid_argument("extension must keep the existing components");
    return compute_geography(g.model, new_components);
}

std::vector<GridSample> oracle_grid_geography(const Geography& g, long pitch_den) {
    if (pitch_den <= 0) throw std::invalid_argument("grid pitch must be positive");
    std::vector<GridSample> out;
    std::vector<long> idx(g.m, 0);
    for (;;) {
        QVec b(g.m);
        for (std::size_t i = 0; i < g.m; ++i) b[i] = rat(idx[i], pitch_den);
        if (g.cube.contains(b)) out.push_back({b, evaluate_boundary(g, b)});
        std::size_t k = 0;
        while (k < g.m && ++idx[k] > pitch_den) idx[k++] = 0;
        if (k == g.m) break;
    }
    return out;
}

}  // namespace geolog
