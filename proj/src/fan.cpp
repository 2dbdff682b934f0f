#include "geolog/toric.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace geolog {

namespace {

bool is_primitive_integer(const QVec& v) {
    bool nonzero = false;
    for (const auto& c : v) {
        if (c.get_den() != 1) return false;
        if (c != 0) nonzero = true;
    }
    if (!nonzero) return false;
    return v == primitive(v);
}

// smallest face of `rep` containing the point p (p must lie in rep)
ConeRep smallest_face(const ConeRep& rep, const QVec& p) {
    QMat equations = rep.span_normals;
    for (const auto& n : rep.facet_normals)
        if (dot(n, p) == 0) equations.push_back(n);
    return cone_from_inequalities(rep.ambient_dim, rep.facet_normals, equations);
}

}  // namespace

Fan make_fan(std::size_t rank, QMat rays,
             std::vector<std::vector<std::size_t>> cones) {
    if (rank == 0) throw std::invalid_argument("fan: rank must be positive");
    for (const auto& r : rays) {
        if (r.size() != rank) throw std::invalid_argument("fan: ray has wrong length");
        if (!is_primitive_integer(r))
            throw std::invalid_argument("fan: ray is not a primitive integer vector");
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j]) throw std::invalid_argument("fan: duplicate ray");

    // canonical ray order
    std::vector<std::size_t> order(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(rays[a], rays[b]); });
    std::vector<std::size_t> pos(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    QMat sorted_rays;
    for (auto i : order) sorted_rays.push_back(rays[i]);

    std::set<std::vector<std::size_t>> cone_set;
    for (auto& c : cones) {
        if (c.empty()) throw std::invalid_argument("fan: empty cone");
        std::vector<std::size_t> mapped;
        for (auto i : c) {
            if (i >= rays.size()) throw std::invalid_argument("fan: ray index out of range");
            mapped.push_back(pos[i]);
        }
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        cone_set.insert(mapped);
    }
    if (cone_set.empty()) throw std::invalid_argument("fan: no cones");

    Fan f;
    f.rank = rank;
    f.rays = std::move(sorted_rays);
    f.cones.assign(cone_set.begin(), cone_set.end());

    std::vector<bool> used(f.rays.size(), false);
    for (const auto& c : f.cones)
        for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw std::invalid_argument("fan: ray not used by any cone");

    // geometric checks
    std::vector<ConeRep> reps;
    for (const auto& c : f.cones) {
        QMat gen;
        for (auto i : c) gen.push_back(f.rays[i]);
        ConeRep rep = cone_from_rays(rank, gen);
        if (rep.lineality_dim() != 0)
            throw std::invalid_argument("fan: maximal cone is not pointed");
        if (rep.dim() != rank)
            throw std::invalid_argument("fan: maximal cone is not full-dimensional");
        if (rep.rays.size() != c.size())
            throw std::invalid_argument("fan: cone generator is not an extreme ray");
        reps.push_back(std::move(rep));
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            ConeRep inter = intersect(reps[i], reps[j]);
            if (inter.is_trivial()) continue;
            QVec p = inter.interior_point();
            if (!(smallest_face(reps[i], p) == inter) ||
                !(smallest_face(reps[j], p) == inter))
                throw std::invalid_argument("fan: cones overlap without a common face");
        }
    }
    return f;
}

std::string fan_key(const Fan& f) {
    std::ostringstream os;
    os << f.rank << ';';
    for (const auto& r : f.rays) {
        for (const auto& c : r) os << rat_to_string(c) << ',';
        os << '|';
    }
    os << ';';
    for (const auto& c : f.cones) {
        for (auto i : c) os << i << ',';
        os << '|';
    }
    return os.str();
}

bool in_support(const Fan& f, const QVec& v) {
    for (const auto& c : f.cones) {
        QMat gen;
        for (auto i : c) gen.push_back(f.rays[i]);
        if (cone_from_rays(f.rank, gen).contains(v)) return true;
    }
    return false;
}

Fan star_subdivide(const Fan& f, const QVec& v) {
    if (!is_primitive_integer(v))
        throw std::invalid_argument("star subdivision point must be primitive integer");
    for (const auto& r : f.rays)
        if (r == v) return f;  // already a ray: nothing to do
    if (!in_support(f, v))
        throw std::invalid_argument("star subdivision point outside the support");

    QMat rays = f.rays;
    rays.push_back(v);
    const std::size_t vi = rays.size() - 1;
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& c : f.cones) {
        QMat gen;
        for (auto i : c) gen.push_back(f.rays[i]);
        ConeRep rep = cone_from_rays(f.rank, gen);
        if (!rep.contains(v)) {
            cones.push_back(c);
            continue;
        }
        // replace by the join of v with every facet not containing v
        for (const auto& n : rep.facet_normals) {
            if (dot(n, v) == 0) continue;
            std::vector<std::size_t> nc;
            for (auto i : c)
                if (dot(n, f.rays[i]) == 0) nc.push_back(i);
            nc.push_back(vi);
            cones.push_back(std::move(nc));
        }
    }
    return make_fan(f.rank, std::move(rays), std::move(cones));
}

Fan common_refinement(const Fan& a, const Fan& b) {
    if (a.rank != b.rank) throw std::invalid_argument("refinement: rank mismatch");
    auto reps = [&](const Fan& f) {
        std::vector<ConeRep> out;
        for (const auto& c : f.cones) {
            QMat gen;
            for (auto i : c) gen.push_back(f.rays[i]);
            out.push_back(cone_from_rays(f.rank, gen));
        }
        return out;
    };
    auto ra = reps(a), rb = reps(b);
    QMat rays;
    std::map<std::string, std::size_t> ray_index;
    auto intern = [&](const QVec& r) {
        std::string key;
        for (const auto& c : r) key += rat_to_string(c) + ",";
        auto it = ray_index.find(key);
        if (it != ray_index.end()) return it->second;
        rays.push_back(r);
        ray_index.emplace(key, rays.size() - 1);
        return rays.size() - 1;
    };
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& ca : ra) {
        for (const auto& cb : rb) {
            ConeRep inter = intersect(ca, cb);
            if (inter.dim() != a.rank) continue;
            std::vector<std::size_t> cone;
            for (const auto& r : inter.rays) cone.push_back(intern(r));
            cones.push_back(std::move(cone));
        }
    }
    return make_fan(a.rank, std::move(rays), std::move(cones));
}

namespace {

// pulling triangulation of the cone spanned by the given ray indices
void triangulate_rec(const QMat& rays, std::vector<std::size_t> cone,
                     std::vector<std::vector<std::size_t>>& out) {
    std::sort(cone.begin(), cone.end());
    QMat gen;
    for (auto i : cone) gen.push_back(rays[i]);
    ConeRep rep = cone_from_rays(rays[0].size(), gen);
    if (cone.size() == rep.dim()) {
        out.push_back(std::move(cone));
        return;
    }
    const std::size_t apex = cone[0];  // rays are lex-sorted: deterministic
    std::vector<std::vector<std::size_t>> pieces;
    for (const auto& n : rep.facet_normals) {
        if (dot(n, rays[apex]) == 0) continue;
        std::vector<std::size_t> facet;
        for (auto i : cone)
            if (dot(n, rays[i]) == 0) facet.push_back(i);
        pieces.clear();
        triangulate_rec(rays, facet, pieces);
        for (auto& s : pieces) {
            s.push_back(apex);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
}

}  // namespace

Fan triangulate(const Fan& f) {
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& c : f.cones) triangulate_rec(f.rays, c, cones);
    return make_fan(f.rank, f.rays, std::move(cones));
}

}  // namespace geolog
