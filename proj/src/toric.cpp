#include "geolog/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace geolog {

static QVec curve_class_impl(const ToricModel& x, std::size_t wi);

namespace {

QMat cone_generators(const Fan& f, const std::vector<std::size_t>& cone) {
    QMat gen;
    for (auto i : cone) gen.push_back(f.rays[i]);
    return gen;
}

// Solve <m, v_rho> = -coeffs[rho] over the rays of one maximal cone; the
// support function of the divisor is x -> <m, x> there.  Throws
// std::domain_error when the system is inconsistent (divisor not Q-Cartier
// on that cone).
QVec support_vector(const Fan& f, const std::vector<std::size_t>& cone,
                    const QVec& coeffs) {
    const std::size_t d = f.rank;
    if (cone.size() == d) {
        QMat a = cone_generators(f, cone);
        QVec b(d);
        for (std::size_t k = 0; k < d; ++k) b[k] = -coeffs[cone[k]];
        return solve_square(a, b);
    }
    QMat aug;
    for (auto i : cone) {
        QVec row = f.rays[i];
        row.push_back(-coeffs[i]);
        aug.push_back(std::move(row));
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == d)
        throw std::domain_error("divisor is not Q-Cartier on a maximal cone");
    if (pivots.size() != d)
        throw std::logic_error("maximal cone does not span the lattice");
    QVec m(d, Rat(0));
    for (std::size_t k = 0; k < d; ++k) m[pivots[k]] = aug[k][d];
    return m;
}

// primitive functional generating the annihilator of the wall span
QVec wall_functional(const Fan& f, const Wall& w) {
    if (w.rays.empty()) {
        // only possible in rank 1
        QVec phi(f.rank, Rat(0));
        phi[0] = 1;
        return phi;
    }
    QMat rows;
    for (auto i : w.rays) rows.push_back(f.rays[i]);
    QMat ker = kernel_basis(rows);
    if (ker.size() != 1) throw std::logic_error("wall span has wrong codimension");
    return ker[0];
}

// boundary facets (ray-index set, owning cone, facet normal) of a fan
struct BoundaryFacet {
    std::vector<std::size_t> rays;
    std::size_t cone;
    QVec normal;
};

void scan_facets(const Fan& f, const std::vector<ConeRep>& reps,
                 std::vector<Wall>& walls, std::vector<BoundaryFacet>& boundary) {
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, QVec>>> seen;
    for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
        for (const auto& n : reps[ci].facet_normals) {
            std::vector<std::size_t> tight;
            for (auto i : f.cones[ci])
                if (dot(n, f.rays[i]) == 0) tight.push_back(i);
            seen[tight].push_back({ci, n});
        }
    }
    for (auto& [key, owners] : seen) {
        if (owners.size() == 1) {
            boundary.push_back({key, owners[0].first, owners[0].second});
        } else if (owners.size() == 2) {
            Wall w;
            w.rays = key;
            w.cone_a = owners[0].first;
            w.cone_b = owners[1].first;
            walls.push_back(std::move(w));
        } else {
            throw std::invalid_argument("fan: facet shared by more than two cones");
        }
    }
}

bool image_in_one_base_cone(const QMat& base_map, const std::vector<ConeRep>& base_reps,
                            const QMat& points) {
    QMat images;
    for (const auto& p : points) images.push_back(mat_vec(base_map, p));
    for (const auto& rep : base_reps) {
        bool all = true;
        for (const auto& q : images)
            if (!rep.contains(q)) { all = false; break; }
        if (all) return true;
    }
    return false;
}

}  // namespace

static ToricModel finish_model(Fan fan, std::optional<Fan> base, QMat base_map) {
    ToricModel x;
    x.fan = std::move(fan);
    x.base = std::move(base);
    x.base_map = std::move(base_map);

    if (x.fan.rank == 0) {  // the point, as a degenerate model
        x.q_factorial = true;
        x.proper = true;
        x.projective = true;
        return x;
    }

    for (const auto& c : x.fan.cones)
        x.cone_reps.push_back(cone_from_rays(x.fan.rank, cone_generators(x.fan, c)));

    x.q_factorial = true;
    for (const auto& c : x.fan.cones)
        if (c.size() != x.fan.rank) x.q_factorial = false;

    std::vector<BoundaryFacet> boundary;
    scan_facets(x.fan, x.cone_reps, x.walls, boundary);

    std::vector<ConeRep> base_reps;
    std::vector<BoundaryFacet> base_boundary;
    if (x.base) {
        if (x.base_map.size() != x.base->rank)
            throw std::invalid_argument("base map has wrong number of rows");
        for (const auto& row : x.base_map)
            if (row.size() != x.fan.rank)
                throw std::invalid_argument("base map has wrong number of columns");
        for (const auto& c : x.base->cones)
            base_reps.push_back(cone_from_rays(x.base->rank, cone_generators(*x.base, c)));
        std::vector<Wall> base_walls;
        scan_facets(*x.base, base_reps, base_walls, base_boundary);
        for (std::size_t ci = 0; ci < x.fan.cones.size(); ++ci)
            if (!image_in_one_base_cone(x.base_map, base_reps,
                                        cone_generators(x.fan, x.fan.cones[ci])))
                throw std::invalid_argument("maximal cone does not map into the base fan");
    }

    // properness: every boundary facet must sit over the boundary of the base
    x.proper = true;
    for (const auto& bf : boundary) {
        if (!x.base) { x.proper = false; break; }
        QVec p(x.fan.rank, Rat(0));
        for (auto i : bf.rays) p = add(p, x.fan.rays[i]);
        QVec q = mat_vec(x.base_map, p);
        bool on_base_boundary = false;
        for (const auto& bb : base_boundary) {
            if (dot(bb.normal, q) != 0) continue;
            QMat gen = cone_generators(*x.base, x.base->cones[bb.cone]);
            if (cone_from_rays(x.base->rank, gen).contains(q)) {
                on_base_boundary = true;
                break;
            }
        }
        if (!on_base_boundary) { x.proper = false; break; }
    }

    // vertical walls and wall relations
    for (std::size_t wi = 0; wi < x.walls.size(); ++wi) {
        Wall& w = x.walls[wi];
        const auto& ca = x.fan.cones[w.cone_a];
        const auto& cb = x.fan.cones[w.cone_b];
        if (x.base) {
            QMat pts = cone_generators(x.fan, ca);
            for (const auto& r : cone_generators(x.fan, cb)) pts.push_back(r);
            w.vertical = image_in_one_base_cone(x.base_map, base_reps, pts);
        }
        if (w.vertical) x.vertical_walls.push_back(wi);
        if (ca.size() == x.fan.rank && cb.size() == x.fan.rank) {
            std::vector<std::size_t> support = ca;
            for (auto i : cb)
                if (std::find(support.begin(), support.end(), i) == support.end())
                    support.push_back(i);
            std::sort(support.begin(), support.end());
            QMat m(x.fan.rank, QVec(support.size()));
            for (std::size_t k = 0; k < support.size(); ++k)
                for (std::size_t i = 0; i < x.fan.rank; ++i)
                    m[i][k] = x.fan.rays[support[k]][i];
            QMat ker = kernel_basis(m);
            if (ker.size() != 1) throw std::logic_error("wall circuit is not unique");
            QVec rel(x.fan.rays.size(), Rat(0));
            for (std::size_t k = 0; k < support.size(); ++k) rel[support[k]] = ker[0][k];
            // orient positively on the ray of cone_a opposite the wall
            for (auto i : ca) {
                if (std::find(w.rays.begin(), w.rays.end(), i) != w.rays.end()) continue;
                if (rel[i] < 0)
                    for (auto& c : rel) c = -c;
                break;
            }
            w.relation = std::move(rel);
            w.has_relation = true;
        }
    }

    // projectivity: a strictly convex support function exists
    if (x.vertical_walls.empty()) {
        x.projective = true;
    } else if (x.q_factorial) {
        QMat normals;
        for (auto wi : x.vertical_walls) normals.push_back(curve_class_impl(x, wi));
        ConeRep nef = cone_from_inequalities(x.fan.rays.size(), normals);
        QVec p = nef.interior_point();
        x.projective = true;
        for (const auto& n : normals)
            if (dot(n, p) <= 0) { x.projective = false; break; }
    } else {
        // one local linear piece per maximal cone, glued along the walls
        const std::size_t d = x.fan.rank;
        const std::size_t nv = x.fan.cones.size() * d;
        QMat equations, normals;
        for (const auto& w : x.walls) {
            QVec un = cone_generators(x.fan, x.fan.cones[w.cone_b])[0];
            for (auto i : x.fan.cones[w.cone_b]) {
                bool in_wall = std::find(w.rays.begin(), w.rays.end(), i) != w.rays.end();
                if (!in_wall) { un = x.fan.rays[i]; break; }
            }
            auto diff_row = [&](const QVec& v) {
                QVec row(nv, Rat(0));
                for (std::size_t k = 0; k < d; ++k) {
                    row[w.cone_a * d + k] = v[k];
                    row[w.cone_b * d + k] -= v[k];
                }
                return row;
            };
            for (auto i : w.rays) equations.push_back(diff_row(x.fan.rays[i]));
            if (w.vertical) normals.push_back(diff_row(un));
        }
        ConeRep feas = cone_from_inequalities(nv, normals, equations);
        QVec p = feas.interior_point();
        x.projective = true;
        for (const auto& n : normals)
            if (dot(n, p) <= 0) { x.projective = false; break; }
    }
    return x;
}

ToricModel make_model(Fan fan) { return finish_model(std::move(fan), std::nullopt, {}); }

ToricModel make_model(Fan fan, Fan base, QMat base_map) {
    return finish_model(std::move(fan), std::move(base), std::move(base_map));
}

bool same_model(const ToricModel& a, const ToricModel& b) {
    if (!(a.fan == b.fan)) return false;
    if (a.base.has_value() != b.base.has_value()) return false;
    if (a.base && !(*a.base == *b.base && a.base_map == b.base_map)) return false;
    return true;
}

std::string model_key(const ToricModel& x) {
    std::ostringstream os;
    os << fan_key(x.fan);
    if (x.base) {
        os << "/" << fan_key(*x.base) << ";";
        for (const auto& row : x.base_map) {
            for (const auto& c : row) os << rat_to_string(c) << ',';
            os << '|';
        }
    }
    return os.str();
}

Rat wall_degree(const ToricModel& x, const QVec& coeffs, std::size_t wi) {
    const Wall& w = x.walls.at(wi);
    if (coeffs.size() != x.fan.rays.size())
        throw std::invalid_argument("divisor coefficient vector has wrong length");
    QVec ma = support_vector(x.fan, x.fan.cones[w.cone_a], coeffs);
    QVec mb = support_vector(x.fan, x.fan.cones[w.cone_b], coeffs);
    // the ray of cone_b opposite the wall
    const QVec* u = nullptr;
    for (auto i : x.fan.cones[w.cone_b]) {
        if (std::find(w.rays.begin(), w.rays.end(), i) == w.rays.end()) {
            u = &x.fan.rays[i];
            break;
        }
    }
    if (!u) throw std::logic_error("wall equals a maximal cone");
    QVec phi = wall_functional(x.fan, w);
    Rat ell = dot(phi, *u);
    if (ell < 0) ell = -ell;
    if (ell == 0) throw std::logic_error("opposite ray lies in the wall span");
    return dot(sub(ma, mb), *u) / ell;
}

static QVec curve_class_impl(const ToricModel& x, std::size_t wi) {
    const std::size_t n = x.fan.rays.size();
    QVec cls(n);
    QVec e(n, Rat(0));
    for (std::size_t r = 0; r < n; ++r) {
        e[r] = 1;
        cls[r] = wall_degree(x, e, wi);
        e[r] = 0;
    }
    return cls;
}

QVec curve_class(const ToricModel& x, std::size_t wi) { return curve_class_impl(x, wi); }

QVec divisor_class(const ToricModel& x, const QVec& coeffs) {
    QVec out;
    for (auto wi : x.vertical_walls) out.push_back(wall_degree(x, coeffs, wi));
    return out;
}

bool is_nef(const ToricModel& x, const QVec& coeffs) {
    for (auto wi : x.vertical_walls)
        if (wall_degree(x, coeffs, wi) < 0) return false;
    // force the Q-Cartier check even on wall-free cones
    for (std::size_t ci = 0; ci < x.fan.cones.size(); ++ci)
        support_vector(x.fan, x.fan.cones[ci], coeffs);
    return true;
}

bool is_ample(const ToricModel& x, const QVec& coeffs) {
    for (auto wi : x.vertical_walls)
        if (wall_degree(x, coeffs, wi) <= 0) return false;
    for (std::size_t ci = 0; ci < x.fan.cones.size(); ++ci)
        support_vector(x.fan, x.fan.cones[ci], coeffs);
    return true;
}

Rat log_discrepancy(const ToricModel& x, const QVec& b, const QVec& v) {
    // support function of K_X + B has value b_rho - 1 at... the PL function
    // with <m, v_rho> = 1 - b_rho extends the assignment rho -> a(rho) = 1 - b_rho.
    QVec kb(x.fan.rays.size());
    for (std::size_t i = 0; i < kb.size(); ++i) kb[i] = b[i] - 1;
    for (std::size_t ci = 0; ci < x.fan.cones.size(); ++ci) {
        if (!x.cone_reps[ci].contains(v)) continue;
        QVec m = support_vector(x.fan, x.fan.cones[ci], kb);
        return dot(m, v);
    }
    throw std::invalid_argument("valuation point outside the support of the fan");
}

QVec pullback_values(const ToricModel& x, const QVec& coeffs, const QMat& points) {
    QVec out;
    std::vector<std::optional<QVec>> cache(x.fan.cones.size());
    for (const auto& p : points) {
        bool found = false;
        for (std::size_t ci = 0; ci < x.fan.cones.size() && !found; ++ci) {
            if (!x.cone_reps[ci].contains(p)) continue;
            if (!cache[ci]) cache[ci] = support_vector(x.fan, x.fan.cones[ci], coeffs);
            out.push_back(-dot(*cache[ci], p));
            found = true;
        }
        if (!found) throw std::invalid_argument("point outside the support of the fan");
    }
    return out;
}

std::vector<ExtremalRay> extremal_rays(const ToricModel& x) {
    if (!x.q_factorial)
        throw std::domain_error("extremal rays require a Q-factorial model");
    const std::size_t n = x.fan.rays.size();
    QMat classes;
    for (auto wi : x.vertical_walls) classes.push_back(curve_class_impl(x, wi));
    ConeRep ne = cone_from_rays(n, classes);
    if (ne.lineality_dim() != 0)
        throw std::domain_error("curve cone is not pointed (model not projective over the base)");
    std::vector<ExtremalRay> out;
    for (const auto& g : ne.rays) {
        ExtremalRay r;
        r.cls = g;
        for (std::size_t k = 0; k < x.vertical_walls.size(); ++k)
            if (primitive(classes[k]) == g) r.walls.push_back(x.vertical_walls[k]);
        if (r.walls.empty()) throw std::logic_error("extremal ray without a wall");
        r.relation = x.walls[r.walls[0]].relation;
        std::size_t neg = 0;
        for (const auto& c : r.relation)
            if (c < 0) ++neg;
        r.kind = neg == 0 ? RayKind::Fibering
                          : (neg == 1 ? RayKind::Divisorial : RayKind::Small);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Contraction contract(const ToricModel& x, const ExtremalRay& r) {
    UnionFind uf(x.fan.cones.size());
    for (auto wi : r.walls) uf.unite(x.walls[wi].cone_a, x.walls[wi].cone_b);
    std::map<std::size_t, std::set<std::size_t>> comps;  // root -> union of ray indices
    std::map<std::size_t, bool> merged;
    for (std::size_t ci = 0; ci < x.fan.cones.size(); ++ci) {
        auto root = uf.find(ci);
        comps[root].insert(x.fan.cones[ci].begin(), x.fan.cones[ci].end());
        if (ci != root) merged[root] = true;
    }

    Contraction out;
    const std::size_t d = x.fan.rank;

    if (r.kind == RayKind::Fibering) {
        QMat span;
        for (std::size_t i = 0; i < r.relation.size(); ++i)
            if (r.relation[i] != 0) span.push_back(x.fan.rays[i]);
        QMat proj = lattice_kernel_basis(span);
        const std::size_t k = proj.size();
        out.map = proj;
        if (k == 0) {  // contraction to the base / a point
            Fan pt;
            pt.rank = 0;
            out.target = finish_model(std::move(pt), std::nullopt, {});
            return out;
        }
        QMat rays;
        std::map<std::string, std::size_t> index;
        auto intern = [&](const QVec& v) {
            QVec p = primitive(v);
            std::string key;
            for (const auto& c : p) key += rat_to_string(c) + ",";
            auto it = index.find(key);
            if (it != index.end()) return it->second;
            rays.push_back(p);
            index.emplace(key, rays.size() - 1);
            return rays.size() - 1;
        };
        std::vector<std::vector<std::size_t>> cones;
        for (const auto& [root, rset] : comps) {
            std::set<std::size_t> cone;
            for (auto ri : rset) {
                QVec img = mat_vec(proj, x.fan.rays[ri]);
                if (is_zero(img)) continue;
                cone.insert(intern(img));
            }
            cones.push_back({cone.begin(), cone.end()});
        }
        Fan tf = make_fan(k, std::move(rays), std::move(cones));
        if (x.base) {
            // factor the structure map through the quotient
            QMat pt;  // proj transposed, as rows of the solve
            for (std::size_t j = 0; j < d; ++j) {
                QVec row(k);
                for (std::size_t i = 0; i < k; ++i) row[i] = proj[i][j];
                pt.push_back(std::move(row));
            }
            QMat bmap;
            for (const auto& psi : x.base_map) {
                QMat aug = pt;
                for (std::size_t j = 0; j < d; ++j) aug[j].push_back(psi[j]);
                auto pivots = rref(aug);
                if (!pivots.empty() && pivots.back() == k)
                    throw std::logic_error("structure map does not factor through the quotient");
                QVec y(k, Rat(0));
                for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = aug[i][k];
                bmap.push_back(std::move(y));
            }
            out.target = finish_model(std::move(tf), x.base, std::move(bmap));
        } else {
            out.target = finish_model(std::move(tf), std::nullopt, {});
        }
        return out;
    }

    // birational contractions keep the lattice
    out.map = QMat(d, QVec(d, Rat(0)));
    for (std::size_t i = 0; i < d; ++i) out.map[i][i] = 1;

    std::size_t drop = x.fan.rays.size();
    if (r.kind == RayKind::Divisorial) {
        for (std::size_t i = 0; i < r.relation.size(); ++i)
            if (r.relation[i] < 0) drop = i;
    }

    QMat rays;
    std::vector<std::size_t> remap(x.fan.rays.size());
    for (std::size_t i = 0; i < x.fan.rays.size(); ++i) {
        if (i == drop) continue;
        rays.push_back(x.fan.rays[i]);
        remap[i] = rays.size() - 1;
    }
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& [root, rset] : comps) {
        std::vector<std::size_t> cone;
        for (auto ri : rset) {
            if (ri == drop) {
                if (!merged.count(root))
                    throw std::logic_error("dropped ray appears outside the contracted locus");
                continue;
            }
            cone.push_back(remap[ri]);
        }
        cones.push_back(std::move(cone));
    }
    Fan tf = make_fan(d, std::move(rays), std::move(cones));
    if (x.base)
        out.target = finish_model(std::move(tf), x.base, x.base_map);
    else
        out.target = finish_model(std::move(tf), std::nullopt, {});
    return out;
}

ToricModel flip(const ToricModel& x, const ExtremalRay& r) {
    if (r.kind != RayKind::Small)
        throw std::invalid_argument("flip requires a small extremal ray");
    std::vector<std::size_t> circuit, jneg, jpos;
    for (std::size_t i = 0; i < r.relation.size(); ++i) {
        if (r.relation[i] == 0) continue;
        circuit.push_back(i);
        (r.relation[i] < 0 ? jneg : jpos).push_back(i);
    }
    std::vector<std::vector<std::size_t>> cones;
    std::set<std::vector<std::size_t>> links;
    for (const auto& c : x.fan.cones) {
        bool has_jneg = std::includes(c.begin(), c.end(), jneg.begin(), jneg.end());
        if (!has_jneg) {
            cones.push_back(c);
            continue;
        }
        std::vector<std::size_t> inter, link;
        std::set_intersection(c.begin(), c.end(), circuit.begin(), circuit.end(),
                              std::back_inserter(inter));
        std::set_difference(c.begin(), c.end(), circuit.begin(), circuit.end(),
                            std::back_inserter(link));
        if (inter.size() + 1 != circuit.size())
            throw std::logic_error("cone around the flipping circuit has unexpected shape");
        links.insert(link);
    }
    for (const auto& link : links) {
        for (auto i : jneg) {
            std::vector<std::size_t> cone = link;
            for (auto j : circuit)
                if (j != i) cone.push_back(j);
            std::sort(cone.begin(), cone.end());
            cones.push_back(std::move(cone));
        }
    }
    Fan nf = make_fan(x.fan.rank, x.fan.rays, std::move(cones));
    if (x.base) return finish_model(std::move(nf), x.base, x.base_map);
    return finish_model(std::move(nf), std::nullopt, {});
}

}  // namespace geolog
