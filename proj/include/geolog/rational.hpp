#ifndef GEOLOG_RATIONAL_HPP
#define GEOLOG_RATIONAL_HPP

// Exact rational scalars and vectors.  Everything in the kernel is a
// GMP rational; there is deliberately no floating point anywhere below
// the rendering layer.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geolog {

using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parse "p/q" or "p".  Used by the JSON layer; kept here so tests can
// round-trip values without touching I/O code.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

// ---- vector arithmetic ----------------------------------------------------

QVec qvec_zero(std::size_t n);
QVec qvec_from_ints(const std::vector<long>& v);

Rat dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec mat_vec(const QMat& m, const QVec& v);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rat& c, const QVec& a);
// a + c*b, the only fused op used in hot loops
QVec axpy(const QVec& a, const Rat& c, const QVec& b);

bool is_zero(const QVec& a);
bool lex_less(const QVec& a, const QVec& b);

// Clear denominators and divide by the content so the vector becomes a
// primitive integer vector pointing the same way.  Zero stays zero.
QVec primitive(const QVec& a);

// Like primitive() but also fixes the overall sign so the first nonzero
// entry is positive.  Canonical form for hyperplane normals (where the
// two orientations describe the same wall).
QVec primitive_signless(const QVec& a);

// ---- exact linear algebra --------------------------------------------------

// Rank by fraction-free Gaussian elimination.
std::size_t rank(QMat m);

// Solve A x = b for square A; throws std::domain_error when singular.
QVec solve_square(QMat a, QVec b);

// Basis of the kernel of A (column vectors), reduced and primitive.
QMat kernel_basis(QMat a);

// Reduced row echelon form (in place); returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

// Z-basis of { x in Z^n : A x = 0 } for an integer matrix A, computed by
// unimodular column reduction.  Unlike kernel_basis() the result generates
// the full (saturated) kernel lattice, which matters whenever a quotient
// lattice is formed.
QMat lattice_kernel_basis(const QMat& a);

}  // namespace geolog

#endif
