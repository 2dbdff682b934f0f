#include "geolog/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace geolog {

Polyhedron::Polyhedron(std::size_t ambient_dim, std::vector<Halfspace> halfspaces,
                       std::vector<Halfspace> equations)
    : ambient_dim_(ambient_dim),
      halfspaces_(std::move(halfspaces)),
      equations_(std::move(equations)) {
    for (const auto& h : halfspaces_)
        if (h.normal.size() != ambient_dim_ || h.strict)
            throw std::invalid_argument("Polyhedron: bad halfspace");
    for (const auto& e : equations_)
        if (e.normal.size() != ambient_dim_)
            throw std::invalid_argument("Polyhedron: bad equation");
    rebuild();
}

Polyhedron Polyhedron::box01(std::size_t m) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < m; ++i) {
        QVec e(m, Rat(0));
        e[i] = 1;
        hs.push_back({e, Rat(0), false});          // x_i >= 0
        QVec f(m, Rat(0));
        f[i] = -1;
        hs.push_back({f, Rat(-1), false});         // x_i <= 1
    }
    return Polyhedron(m, std::move(hs));
}

void Polyhedron::rebuild() {
    const std::size_t d = ambient_dim_;
    QMat normals, eqs;
    for (const auto& h : halfspaces_) {
        QVec row = h.normal;
        row.push_back(-h.offset);
        normals.push_back(std::move(row));
    }
    {
        QVec t_pos(d + 1, Rat(0));
        t_pos[d] = 1;
        normals.push_back(std::move(t_pos));  // homogenizing t >= 0
    }
    for (const auto& e : equations_) {
        QVec row = e.normal;
        row.push_back(-e.offset);
        eqs.push_back(std::move(row));
    }
    DDResult dd = double_description(d + 1, normals, eqs);

    vertices_.clear();
    rays_.clear();
    lineality_.clear();
    for (const auto& r : dd.rays) {
        Rat t = r[d];
        QVec x(r.begin(), r.begin() + d);
        if (t > 0) {
            for (auto& c : x) c /= t;
            vertices_.push_back(std::move(x));
        } else {
            rays_.push_back(primitive(x));
        }
    }
    for (const auto& l : dd.lineality) {
        // t >= 0 forces lineality into { t = 0 }
        QVec x(l.begin(), l.begin() + d);
        if (!is_zero(x)) lineality_.push_back(primitive(x));
    }
    std::sort(vertices_.begin(), vertices_.end(), lex_less);
    std::sort(rays_.begin(), rays_.end(), lex_less);
    rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());

    empty_ = vertices_.empty();
    if (empty_) {
        rays_.clear();
        lineality_.clear();
        dim_ = 0;
        return;
    }
    QMat span;
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        span.push_back(sub(vertices_[i], vertices_[0]));
    for (const auto& r : rays_) span.push_back(r);
    for (const auto& l : lineality_) span.push_back(l);
    dim_ = rank(span);
}

bool Polyhedron::contains(const QVec& x) const {
    if (empty_) return false;
    for (const auto& h : halfspaces_)
        if (h.eval(x) < 0) return false;
    for (const auto& e : equations_)
        if (e.eval(x) != 0) return false;
    return true;
}

bool Polyhedron::contains_rel_interior(const QVec& x) const {
    if (!contains(x)) return false;
    for (const auto& h : halfspaces_) {
        if (h.eval(x) > 0) continue;
        // tight at x: acceptable only when tight on the whole polyhedron
        bool tight_everywhere = true;
        for (const auto& v : vertices_)
            if (h.eval(v) != 0) { tight_everywhere = false; break; }
        if (tight_everywhere)
            for (const auto& r : rays_)
                if (dot(h.normal, r) != 0) { tight_everywhere = false; break; }
        if (tight_everywhere)
            for (const auto& l : lineality_)
                if (dot(h.normal, l) != 0) { tight_everywhere = false; break; }
        if (!tight_everywhere) return false;
    }
    return true;
}

QVec Polyhedron::rel_interior_point() const {
    if (empty_) throw std::domain_error("rel_interior_point of empty polyhedron");
    QVec p(ambient_dim_, Rat(0));
    for (const auto& v : vertices_) p = add(p, v);
    Rat inv(1, static_cast<unsigned long>(vertices_.size()));
    p = scale(inv, p);
    for (const auto& r : rays_) p = add(p, r);
    return p;
}

bool Polyhedron::subset_of(const Polyhedron& other) const {
    if (empty_) return true;
    if (other.empty()) return false;
    for (const auto& v : vertices_)
        if (!other.contains(v)) return false;
    auto ray_ok = [&other](const QVec& r, bool both_signs) {
        for (const auto& h : other.halfspaces_) {
            Rat s = dot(h.normal, r);
            if (s < 0 || (both_signs && s != 0)) return false;
        }
        for (const auto& e : other.equations_)
            if (dot(e.normal, r) != 0) return false;
        return true;
    };
    for (const auto& r : rays_)
        if (!ray_ok(r, false)) return false;
    for (const auto& l : lineality_)
        if (!ray_ok(l, true)) return false;
    return true;
}

bool Polyhedron::operator==(const Polyhedron& o) const {
    if (empty_ || o.empty_) return empty_ == o.empty_;
    return ambient_dim_ == o.ambient_dim_ && vertices_ == o.vertices_ &&
           rays_ == o.rays_ && lineality_ == o.lineality_;
}

Polyhedron Polyhedron::intersect(const Polyhedron& q) const {
    if (ambient_dim_ != q.ambient_dim_)
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    std::vector<Halfspace> hs = halfspaces_;
    hs.insert(hs.end(), q.halfspaces_.begin(), q.halfspaces_.end());
    std::vector<Halfspace> eq = equations_;
    eq.insert(eq.end(), q.equations_.begin(), q.equations_.end());
    return Polyhedron(ambient_dim_, std::move(hs), std::move(eq));
}

Polyhedron Polyhedron::intersect(const Halfspace& extra, bool as_equation) const {
    std::vector<Halfspace> hs = halfspaces_;
    std::vector<Halfspace> eq = equations_;
    (as_equation ? eq : hs).push_back({extra.normal, extra.offset, false});
    return Polyhedron(ambient_dim_, std::move(hs), std::move(eq));
}

std::vector<Polyhedron> Polyhedron::all_faces() const {
    std::vector<Polyhedron> out;
    if (empty_) return out;
    // incidence of every halfspace with vertices and rays
    const std::size_t nh = halfspaces_.size();
    std::vector<std::set<std::size_t>> tight_v(nh), tight_r(nh);
    for (std::size_t h = 0; h < nh; ++h) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (halfspaces_[h].eval(vertices_[i]) == 0) tight_v[h].insert(i);
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (dot(halfspaces_[h].normal, rays_[i]) == 0) tight_r[h].insert(i);
    }
    using Key = std::pair<std::set<std::size_t>, std::set<std::size_t>>;
    std::set<Key> seen;
    std::vector<Key> queue;
    Key top;
    for (std::size_t i = 0; i < vertices_.size(); ++i) top.first.insert(i);
    for (std::size_t i = 0; i < rays_.size(); ++i) top.second.insert(i);
    seen.insert(top);
    queue.push_back(top);
    auto emit = [&](const Key& k) {
        std::vector<Halfspace> eq = equations_;
        for (std::size_t h = 0; h < nh; ++h) {
            // h is tight on the face iff every face vertex/ray is tight for h
            bool all_tight = true;
            for (auto i : k.first)
                if (!tight_v[h].count(i)) { all_tight = false; break; }
            if (all_tight)
                for (auto i : k.second)
                    if (!tight_r[h].count(i)) { all_tight = false; break; }
            if (all_tight) eq.push_back(halfspaces_[h]);
        }
        out.push_back(Polyhedron(ambient_dim_, halfspaces_, std::move(eq)));
    };
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Key cur = queue[qi];
        emit(cur);
        for (std::size_t h = 0; h < nh; ++h) {
            Key child;
            for (auto i : cur.first)
                if (tight_v[h].count(i)) child.first.insert(i);
            for (auto i : cur.second)
                if (tight_r[h].count(i)) child.second.insert(i);
            if (child.first.empty()) continue;  // empty face (pointed case)
            if (child == cur) continue;
            if (seen.insert(child).second) queue.push_back(child);
        }
    }
    return out;
}

std::vector<Polyhedron> Polyhedron::faces_of_codim(std::size_t k) const {
    std::vector<Polyhedron> out;
    if (empty_ || k > dim_) return out;
    for (auto& f : all_faces())
        if (!f.empty() && f.dim() + k == dim_) out.push_back(std::move(f));
    return out;
}

Polyhedron Polyhedron::convex_hull(std::size_t ambient_dim, const QMat& points,
                                   const QMat& rays) {
    QMat gens;
    for (const auto& p : points) {
        QVec row = p;
        row.push_back(Rat(1));
        gens.push_back(std::move(row));
    }
    for (const auto& r : rays) {
        QVec row = r;
        row.push_back(Rat(0));
        gens.push_back(std::move(row));
    }
    if (gens.empty()) return Polyhedron();  // empty
    ConeRep cone = cone_from_rays(ambient_dim + 1, gens);
    std::vector<Halfspace> hs;
    std::vector<Halfspace> eq;
    for (const auto& f : cone.facet_normals) {
        QVec n(f.begin(), f.begin() + ambient_dim);
        if (is_zero(n)) continue;  // the t >= 0 facet
        hs.push_back({std::move(n), -f[ambient_dim], false});
    }
    for (const auto& s : cone.span_normals) {
        QVec n(s.begin(), s.begin() + ambient_dim);
        if (is_zero(n)) continue;
        eq.push_back({std::move(n), -s[ambient_dim], false});
    }
    return Polyhedron(ambient_dim, std::move(hs), std::move(eq));
}

}  // namespace geolog
