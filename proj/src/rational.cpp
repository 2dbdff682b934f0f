#include "geolog/rational.hpp"

#include <algorithm>

namespace geolog {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();  // mpq_class arithmetic keeps values canonical, but
                       // raw two-argument construction does not
    return c.get_str();
}

QVec qvec_zero(std::size_t n) { return QVec(n, Rat(0)); }

QVec qvec_from_ints(const std::vector<long>& v) {
    QVec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("add: dimension mismatch");
    QVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

QVec sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sub: dimension mismatch");
    QVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

QVec scale(const Rat& c, const QVec& a) {
    QVec out(a);
    for (auto& x : out) x *= c;
    return out;
}

QVec axpy(const QVec& a, const Rat& c, const QVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("axpy: dimension mismatch");
    QVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += c * b[i];
    return out;
}

bool is_zero(const QVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

bool lex_less(const QVec& a, const QVec& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

QVec primitive(const QVec& a) {
    // lcm of denominators, then gcd of numerators
    mpz_class den = 1;
    for (const auto& x : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class g = 0;
    std::vector<mpz_class> ints;
    ints.reserve(a.size());
    for (const auto& x : a) {
        mpz_class v = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    QVec out(a.size(), Rat(0));
    if (g == 0) return out;  // zero vector
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = Rat(ints[i] / g);
    return out;
}

QVec primitive_signless(const QVec& a) {
    QVec p = primitive(a);
    for (const auto& x : p) {
        if (x > 0) return p;
        if (x < 0) {
            for (auto& y : p) y = -y;
            return p;
        }
    }
    return p;
}

std::size_t rank(QMat m) {
    std::size_t r = 0;
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    if (rows == 0) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rat inv = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

QVec solve_square(QMat a, QVec b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_square: not square");
        a[i].push_back(b[i]);
    }
    auto pivots = rref(a);
    if (pivots.size() != n || pivots.back() == n)
        throw std::domain_error("solve_square: singular matrix");
    QVec x(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = a[i][n];
    return x;
}

QMat kernel_basis(QMat a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    QMat basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols, Rat(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][c];
        basis.push_back(primitive(v));
    }
    return basis;
}

QVec mat_vec(const QMat& m, const QVec& v) {
    QVec out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(dot(row, v));
    return out;
}

QMat lattice_kernel_basis(const QMat& a) {
    if (a.empty()) return {};
    const std::size_t rows = a.size();
    const std::size_t n = a[0].size();
    // Clear denominators row by row; the kernel is unchanged.
    std::vector<std::vector<mpz_class>> w(rows, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < rows; ++i) {
        QVec r = primitive(a[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (r[j].get_den() != 1) throw std::logic_error("lattice_kernel_basis: non-integer row");
            w[i][j] = r[j].get_num();
        }
    }
    // Column reduce w with unimodular operations, mirrored on u = I.
    std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
    for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        for (std::size_t i = 0; i < rows; ++i) w[i][dst] += f * w[i][src];
        for (std::size_t i = 0; i < n; ++i) u[i][dst] += f * u[i][src];
    };
    auto col_swap = [&](std::size_t c1, std::size_t c2) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(w[i][c1], w[i][c2]);
        for (std::size_t i = 0; i < n; ++i) std::swap(u[i][c1], u[i][c2]);
    };
    std::size_t fixed = 0;
    for (std::size_t r = 0; r < rows && fixed < n; ++r) {
        // Euclidean reduction across the free columns to leave a single
        // nonzero entry in row r.
        while (true) {
            std::size_t best = n;
            for (std::size_t c = fixed; c < n; ++c) {
                if (w[r][c] == 0) continue;
                if (best == n || abs(w[r][c]) < abs(w[r][best])) best = c;
            }
            if (best == n) break;  // row already zero on free columns
            bool cleared = true;
            for (std::size_t c = fixed; c < n; ++c) {
                if (c == best || w[r][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w[r][c].get_mpz_t(), w[r][best].get_mpz_t());
                col_axpy(c, best, -q);
                if (w[r][c] != 0) cleared = false;
            }
            if (cleared) {
                col_swap(fixed, best);
                ++fixed;
                break;
            }
        }
    }
    QMat basis;
    for (std::size_t c = fixed; c < n; ++c) {
        QVec v(n);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = Rat(u[i][c]);
            if (v[i] != 0) nonzero = true;
        }
        if (nonzero) basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace geolog
