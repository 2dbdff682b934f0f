#include "geolog/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace geolog {

namespace {

// signature (positives, negatives) of a symmetric rational matrix via
// congruent diagonalization
std::pair<std::size_t, std::size_t> signature(QMat m) {
    const std::size_t n = m.size();
    std::size_t pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            // bring a nonzero entry onto the diagonal congruently
            std::size_t j = k;
            for (std::size_t i = k + 1; i < n && j == k; ++i)
                if (m[i][i] != 0) j = i;
            if (j != k) {
                std::swap(m[k], m[j]);
                for (auto& row : m) std::swap(row[k], row[j]);
            } else {
                std::size_t a = n, b = n;
                for (std::size_t i = k; i < n && a == n; ++i)
                    for (std::size_t l = i + 1; l < n && a == n; ++l)
                        if (m[i][l] != 0) { a = i; b = l; }
                if (a == n) break;  // remaining block is zero
                // row/col a += row/col b makes m[a][a] = 2 m[a][b] != 0
                for (std::size_t c = 0; c < n; ++c) m[a][c] += m[b][c];
                for (std::size_t r = 0; r < n; ++r) m[r][a] += m[r][b];
                if (a != k) {
                    std::swap(m[k], m[a]);
                    for (auto& row : m) std::swap(row[k], row[a]);
                }
            }
            if (m[k][k] == 0) break;
        }
        if (m[k][k] > 0) ++pos; else ++neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (std::size_t c = 0; c < n; ++c) m[i][c] -= f * m[k][c];
            for (std::size_t r = 0; r < n; ++r) m[r][i] -= f * m[r][k];
        }
    }
    return {pos, neg};
}

}  // namespace

SurfaceLattice make_surface(std::size_t rank, QMat gram, QVec canonical_class,
                            QMat curve_classes, std::vector<std::string> labels) {
    if (rank == 0) throw std::invalid_argument("surface lattice: rank must be positive");
    if (gram.size() != rank) throw std::invalid_argument("surface lattice: gram size");
    for (const auto& row : gram)
        if (row.size() != rank) throw std::invalid_argument("surface lattice: gram size");
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i + 1; j < rank; ++j)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("surface lattice: gram not symmetric");
    auto [pos, neg] = signature(gram);
    if (pos != 1 || neg != rank - 1)
        throw std::invalid_argument("surface lattice: intersection form must have signature (1, rank-1)");

    SurfaceLattice s;
    s.rank = rank;
    s.gram = std::move(gram);
    s.canonical_class = std::move(canonical_class);
    s.curve_classes = std::move(curve_classes);
    if (labels.empty())
        for (std::size_t i = 0; i < s.curve_classes.size(); ++i)
            labels.push_back("C" + std::to_string(i));
    if (labels.size() != s.curve_classes.size())
        throw std::invalid_argument("surface lattice: label count mismatch");
    s.curve_labels = std::move(labels);

    if (s.canonical_class.size() != rank)
        throw std::invalid_argument("surface lattice: canonical class size");
    auto integral = [&](const QVec& a, const QVec& b) {
        return pair(s, a, b).get_den() == 1;
    };
    if (!integral(s.canonical_class, s.canonical_class))
        throw std::invalid_argument("surface lattice: K*K not integral");
    for (const auto& c : s.curve_classes) {
        if (c.size() != rank) throw std::invalid_argument("surface lattice: class size");
        if (!integral(s.canonical_class, c))
            throw std::invalid_argument("surface lattice: K*C not integral");
        if (pair(s, c, c) < 0) s.negative_curves.push_back(&c - &s.curve_classes[0]);
    }
    return s;
}

Rat pair(const SurfaceLattice& s, const QVec& a, const QVec& b) {
    return dot(a, mat_vec(s.gram, b));
}

bool nef_test_surface(const SurfaceLattice& s, const QVec& d) {
    for (const auto& c : s.curve_classes)
        if (pair(s, d, c) < 0) return false;
    return true;
}

ConeRep effective_cone(const SurfaceLattice& s) {
    return cone_from_rays(s.rank, s.curve_classes);
}

bool pseudo_effective(const SurfaceLattice& s, const QVec& d) {
    return effective_cone(s).contains(d);
}

namespace {

// coefficients y with (d + sum y_i c_i) orthogonal to every c in t
QVec orthogonalizing_coefficients(const SurfaceLattice& s,
                                  const std::vector<std::size_t>& t, const QVec& d) {
    const std::size_t m = t.size();
    QMat g(m, QVec(m));
    QVec rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            g[i][j] = pair(s, s.curve_classes[t[i]], s.curve_classes[t[j]]);
        rhs[i] = -pair(s, d, s.curve_classes[t[i]]);
    }
    return solve_square(g, rhs);  // negative definite gram: never singular
}

}  // namespace

QVec contraction_pullback(const SurfaceLattice& s, const std::vector<std::size_t>& t,
                          const QVec& c) {
    if (t.empty()) return c;
    QVec y = orthogonalizing_coefficients(s, t, c);
    QVec out = c;
    for (std::size_t i = 0; i < t.size(); ++i)
        out = add(out, scale(y[i], s.curve_classes[t[i]]));
    return out;
}

Rat image_square(const SurfaceLattice& s, const std::vector<std::size_t>& t,
                 const QVec& c) {
    return pair(s, contraction_pullback(s, t, c), c);
}

ZariskiDecomposition zariski_decomposition(const SurfaceLattice& s, const QVec& d) {
    if (!pseudo_effective(s, d))
        throw std::domain_error("zariski decomposition: class is not pseudo-effective");
    // grow the support: repeatedly add negative curves the candidate nef
    // part is still negative on, and re-solve for the orthogonal projection
    std::vector<std::size_t> support;
    QVec p = d;
    for (;;) {
        std::size_t next = s.curve_classes.size();
        for (auto i : s.negative_curves) {
            if (std::find(support.begin(), support.end(), i) != support.end()) continue;
            if (pair(s, p, s.curve_classes[i]) < 0) { next = i; break; }
        }
        if (next == s.curve_classes.size()) break;
        support.push_back(next);
        std::sort(support.begin(), support.end());
        p = contraction_pullback(s, support, d);
        // contraction_pullback adds multiples of the support curves; for the
        // decomposition we need d - N, which is the same projection
    }
    ZariskiDecomposition z;
    z.positive = p;
    z.negative = sub(d, p);
    if (!support.empty()) {
        QVec y = orthogonalizing_coefficients(s, support, d);
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (y[i] > 0)
                throw std::domain_error("zariski decomposition: inconsistent curve list");
            if (y[i] == 0) continue;
            z.support.push_back(support[i]);
            z.multiplicities.push_back(-y[i]);
        }
    }
    if (!nef_test_surface(s, z.positive))
        throw std::domain_error("zariski decomposition: inconsistent curve list");
    return z;
}

SurfaceMmpResult log_mmp_surface(const SurfaceLattice& s, const QVec& b_class,
                                 const QVec& mults) {
    if (mults.size() != s.curve_classes.size())
        throw std::invalid_argument("boundary multiplicity vector has wrong length");
    for (const auto& m : mults)
        if (m < 0 || m > 1)
            throw std::invalid_argument("boundary multiplicities must lie in [0,1]");

    SurfaceMmpResult res;
    res.pair_class = add(s.canonical_class, b_class);

    for (;;) {
        QVec adj = contraction_pullback(s, res.contracted, res.pair_class);
        // prefer a birational step: an adjoint-negative curve whose image
        // still has negative square
        std::size_t pick = s.curve_classes.size();
        std::size_t fib = s.curve_classes.size();
        for (std::size_t i = 0; i < s.curve_classes.size(); ++i) {
            if (std::find(res.contracted.begin(), res.contracted.end(), i) !=
                res.contracted.end())
                continue;
            if (pair(s, adj, s.curve_classes[i]) >= 0) continue;
            if (image_square(s, res.contracted, s.curve_classes[i]) < 0) {
                pick = i;
                break;
            }
            if (fib == s.curve_classes.size()) fib = i;
        }
        if (pick < s.curve_classes.size()) {
            res.contracted.push_back(pick);
            continue;
        }
        if (fib < s.curve_classes.size()) {
            QVec img = contraction_pullback(s, res.contracted, s.curve_classes[fib]);
            if (pair(s, img, img) == 0) {
                res.outcome = SurfaceOutcome::FiberToCurve;
                res.fiber_class = primitive(img);
            } else {
                res.outcome = SurfaceOutcome::FiberToPoint;
            }
        } else {
            res.outcome = SurfaceOutcome::WlcModel;
        }
        res.pullback_class = adj;
        break;
    }

    // log discrepancies of the contracted curves: the pullback of the end
    // adjoint class has coefficient 1 - a - b along each contracted curve
    if (!res.contracted.empty()) {
        QVec y = orthogonalizing_coefficients(s, res.contracted, res.pair_class);
        for (std::size_t i = 0; i < res.contracted.size(); ++i)
            res.discrepancies.push_back(Rat(1) - mults[res.contracted[i]] - y[i]);
    }
    return res;
}

}  // namespace geolog
