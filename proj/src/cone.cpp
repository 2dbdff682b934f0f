#include "geolog/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace geolog {

namespace {

// Tight-set bitmask over processed constraints.
using Mask = std::vector<std::uint64_t>;

void mask_set(Mask& m, std::size_t i) {
    if (m.size() <= i / 64) m.resize(i / 64 + 1, 0);
    m[i / 64] |= std::uint64_t(1) << (i % 64);
}

bool mask_subset(const Mask& a, const Mask& b) {  // a subseteq b
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t bw = i < b.size() ? b[i] : 0;
        if (a[i] & ~bw) return false;
    }
    return true;
}

Mask mask_and(const Mask& a, const Mask& b) {
    Mask out(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

struct TrackedRay {
    QVec v;      // primitive
    Mask tight;  // processed constraints with value 0
};

bool parallel_same_dir(const QVec& a, const QVec& b) {
    // both primitive and nonzero, so parallel-same-direction means equal
    return a == b;
}

// Orthogonal projection of v off the span of the rows of L (over Q).
QVec project_off(const QVec& v, const QMat& L) {
    if (L.empty()) return v;
    const std::size_t k = L.size();
    QMat gram(k, QVec(k));
    QVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(L[i], L[j]);
        rhs[i] = dot(L[i], v);
    }
    QVec c = solve_square(gram, rhs);
    QVec out = v;
    for (std::size_t i = 0; i < k; ++i) out = axpy(out, -c[i], L[i]);
    return out;
}

// Drop rays that are not extreme (mod lineality): r is redundant iff some
// non-parallel ray has a tight set containing r's.
void minimalize(std::vector<TrackedRay>& rays) {
    std::vector<bool> drop(rays.size(), false);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        for (std::size_t j = 0; j < rays.size(); ++j) {
            if (i == j) continue;
            if (parallel_same_dir(rays[i].v, rays[j].v)) {
                if (j < i) drop[i] = true;  // duplicate
                continue;
            }
            if (mask_subset(rays[i].tight, rays[j].tight)) {
                drop[i] = true;
                break;
            }
        }
    }
    std::vector<TrackedRay> kept;
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(rays[i]));
    rays.swap(kept);
}

void sort_rows(QMat& m) {
    std::sort(m.begin(), m.end(), lex_less);
    m.erase(std::unique(m.begin(), m.end()), m.end());
}

QMat canonical_basis(QMat rows) {
    // remove zero rows, rref, make primitive, sort
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const QVec& r) { return is_zero(r); }),
               rows.end());
    if (rows.empty()) return rows;
    rref(rows);
    QMat out;
    for (auto& r : rows)
        if (!is_zero(r)) out.push_back(primitive(r));
    sort_rows(out);
    return out;
}

}  // namespace

DDResult double_description(std::size_t dim, const QMat& normals,
                            const QMat& equations) {
    // constraint list: each equation contributes a pair (a, -a)
    QMat cons;
    for (const auto& e : equations) {
        cons.push_back(e);
        cons.push_back(scale(Rat(-1), e));
    }
    for (const auto& n : normals) cons.push_back(n);
    for (const auto& c : cons)
        if (c.size() != dim)
            throw std::invalid_argument("double_description: normal dimension mismatch");

    QMat lineality;
    for (std::size_t i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        lineality.push_back(e);
    }
    std::vector<TrackedRay> rays;

    for (std::size_t ci = 0; ci < cons.size(); ++ci) {
        const QVec& a = cons[ci];

        // Does the constraint cut the lineality space?
        std::size_t cut = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(a, lineality[i]) != 0) { cut = i; break; }

        if (cut < lineality.size()) {
            QVec r0 = lineality[cut];
            Rat ar0 = dot(a, r0);
            if (ar0 < 0) { r0 = scale(Rat(-1), r0); ar0 = -ar0; }
            QMat new_lin;
            for (std::size_t i = 0; i < lineality.size(); ++i) {
                if (i == cut) continue;
                Rat al = dot(a, lineality[i]);
                new_lin.push_back(axpy(lineality[i], -al / ar0, r0));
            }
            lineality = std::move(new_lin);
            std::vector<TrackedRay> next;
            for (auto& r : rays) {
                Rat ar = dot(a, r.v);
                QVec w = axpy(r.v, -ar / ar0, r0);
                w = primitive(project_off(w, lineality));
                if (is_zero(w)) continue;
                TrackedRay t{std::move(w), r.tight};
                mask_set(t.tight, ci);
                next.push_back(std::move(t));
            }
            TrackedRay extra{primitive(project_off(r0, lineality)), Mask{}};
            // r0 is tight for nothing new except possibly earlier constraints:
            // recompute its tight set from scratch for safety
            for (std::size_t k = 0; k <= ci; ++k)
                if (dot(cons[k], extra.v) == 0) mask_set(extra.tight, k);
            next.push_back(std::move(extra));
            rays = std::move(next);
            minimalize(rays);
            continue;
        }

        // Pointed-phase step: split by sign.
        std::vector<int> sign(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            sign[i] = sgn(dot(a, rays[i].v));
            if (sign[i] < 0) any_neg = true;
            if (sign[i] == 0) mask_set(rays[i].tight, ci);
        }
        if (!any_neg) continue;  // nothing cut

        std::vector<TrackedRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (sign[i] >= 0) next.push_back(rays[i]);
        // new rays from adjacent (+,-) pairs
        for (std::size_t pi = 0; pi < rays.size(); ++pi) {
            if (sign[pi] <= 0) continue;
            for (std::size_t ni = 0; ni < rays.size(); ++ni) {
                if (sign[ni] >= 0) continue;
                const TrackedRay& p = rays[pi];
                const TrackedRay& n = rays[ni];
                Mask common = mask_and(p.tight, n.tight);
                // adjacency: no third extreme ray is tight on all of `common`
                bool adjacent = true;
                for (std::size_t ti = 0; ti < rays.size(); ++ti) {
                    if (ti == pi || ti == ni) continue;
                    if (mask_subset(common, rays[ti].tight)) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                Rat ap = dot(a, p.v), an = dot(a, n.v);
                QVec w = sub(scale(ap, n.v), scale(an, p.v));
                w = primitive(w);
                if (is_zero(w)) continue;
                TrackedRay t{std::move(w), common};
                mask_set(t.tight, ci);
                next.push_back(std::move(t));
            }
        }
        rays = std::move(next);
        minimalize(rays);
    }

    DDResult out;
    for (auto& r : rays) out.rays.push_back(primitive(r.v));
    sort_rows(out.rays);
    out.lineality = canonical_basis(lineality);
    return out;
}

std::size_t ConeRep::dim() const {
    QMat span = rays;
    for (const auto& l : lineality) span.push_back(l);
    return rank(span);
}

bool ConeRep::contains(const QVec& x) const {
    for (const auto& e : span_normals)
        if (dot(e, x) != 0) return false;
    for (const auto& n : facet_normals)
        if (dot(n, x) < 0) return false;
    return true;
}

bool ConeRep::contains_interior(const QVec& x) const {
    for (const auto& e : span_normals)
        if (dot(e, x) != 0) return false;
    for (const auto& n : facet_normals)
        if (dot(n, x) <= 0) return false;
    return true;
}

QVec ConeRep::interior_point() const {
    QVec p(ambient_dim, Rat(0));
    for (const auto& r : rays) p = add(p, r);
    return p;
}

bool ConeRep::operator==(const ConeRep& o) const {
    return ambient_dim == o.ambient_dim && rays == o.rays &&
           lineality == o.lineality && facet_normals == o.facet_normals &&
           span_normals == o.span_normals;
}

ConeRep cone_from_rays(std::size_t ambient_dim, const QMat& rays) {
    for (const auto& r : rays)
        if (r.size() != ambient_dim)
            throw std::invalid_argument("cone_from_rays: ray dimension mismatch");
    ConeRep c;
    c.ambient_dim = ambient_dim;
    QMat gens;
    for (const auto& r : rays) {
        QVec p = primitive(r);
        if (!is_zero(p)) gens.push_back(std::move(p));
    }
    // dual cone: facets of cone(gens) are the extreme rays of
    // { y : y . r >= 0 }, and its lineality is span(gens)^perp.
    DDResult dual = double_description(ambient_dim, gens);
    c.facet_normals = dual.rays;
    c.span_normals = dual.lineality;
    // canonical V-side: regenerate from the (irredundant) H-side
    DDResult prim = double_description(ambient_dim, c.facet_normals, c.span_normals);
    c.rays = prim.rays;
    c.lineality = prim.lineality;
    return c;
}

ConeRep cone_from_inequalities(std::size_t ambient_dim, const QMat& normals,
                               const QMat& equations) {
    DDResult prim = double_description(ambient_dim, normals, equations);
    ConeRep c;
    c.ambient_dim = ambient_dim;
    c.rays = prim.rays;
    c.lineality = prim.lineality;
    QMat cons = prim.rays;
    DDResult dual = double_description(ambient_dim, cons, prim.lineality);
    c.facet_normals = dual.rays;
    c.span_normals = dual.lineality;
    return c;
}

ConeRep dual_rep(std::optional<QMat> rays, std::optional<QMat> normals,
                 std::size_t ambient_dim) {
    if (!rays && !normals)
        throw std::invalid_argument("dual_rep: no representation given");
    if (rays && !normals) return cone_from_rays(ambient_dim, *rays);
    if (normals && !rays) return cone_from_inequalities(ambient_dim, *normals);
    // both given: rebuild from rays, then verify the inequalities describe
    // the same cone
    ConeRep c = cone_from_rays(ambient_dim, *rays);
    ConeRep h = cone_from_inequalities(ambient_dim, *normals);
    if (!(c == h))
        throw std::invalid_argument("dual_rep: representation mismatch");
    return c;
}

ConeRep dual_cone(const ConeRep& c) {
    ConeRep d;
    d.ambient_dim = c.ambient_dim;
    d.rays = c.facet_normals;
    d.lineality = c.span_normals;
    d.facet_normals = c.rays;
    d.span_normals = c.lineality;
    return d;
}

ConeRep intersect(const ConeRep& a, const ConeRep& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    QMat normals = a.facet_normals;
    for (const auto& n : b.facet_normals) normals.push_back(n);
    QMat eqs = a.span_normals;
    for (const auto& e : b.span_normals) eqs.push_back(e);
    return cone_from_inequalities(a.ambient_dim, normals, eqs);
}

ConeRep join(const ConeRep& a, const ConeRep& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("join: ambient dimension mismatch");
    QMat rays = a.rays;
    for (const auto& r : b.rays) rays.push_back(r);
    for (const auto& l : a.lineality) {
        rays.push_back(l);
        rays.push_back(scale(Rat(-1), l));
    }
    for (const auto& l : b.lineality) {
        rays.push_back(l);
        rays.push_back(scale(Rat(-1), l));
    }
    return cone_from_rays(a.ambient_dim, rays);
}

std::string cone_debug_string(const ConeRep& c) {
    std::ostringstream os;
    auto dump = [&os](const char* tag, const QMat& m) {
        os << tag << ":";
        for (const auto& row : m) {
            os << " (";
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << row[i].get_str();
            os << ")";
        }
        os << "\n";
    };
    dump("rays", c.rays);
    dump("lin", c.lineality);
    dump("facets", c.facet_normals);
    dump("span", c.span_normals);
    return os.str();
}

}  // namespace geolog
