#ifndef GEOLOG_SURFACE_HPP
#define GEOLOG_SURFACE_HPP

// Surface pairs through their Picard lattice: exact intersection pairing,
// pseudo-effectivity against a recorded curve list, Zariski decomposition,
// and a lattice-level log minimal model program where contractions are
// tracked as orthogonal projections with full discrepancy bookkeeping.

#include "geolog/cone.hpp"
#include "geolog/rational.hpp"

#include <string>
#include <vector>

namespace geolog {

struct SurfaceLattice {
    std::size_t rank = 0;
    QMat gram;                 // symmetric, signature (1, rank-1)
    QVec canonical_class;
    // classes of known irreducible curves: the negative curves that can be
    // contracted, plus nef generators closing up the effective cone
    QMat curve_classes;
    std::vector<std::string> curve_labels;

    std::vector<std::size_t> negative_curves;  // indices with c*c < 0
};

// Validates symmetry, the (1, rank-1) signature, and integrality of the
// pairings among K and the listed classes.
SurfaceLattice make_surface(std::size_t rank, QMat gram, QVec canonical_class,
                            QMat curve_classes, std::vector<std::string> labels = {});

Rat pair(const SurfaceLattice& s, const QVec& a, const QVec& b);

// nef relative to the recorded curve list
bool nef_test_surface(const SurfaceLattice& s, const QVec& d);

// membership in the cone spanned by the recorded classes
bool pseudo_effective(const SurfaceLattice& s, const QVec& d);
ConeRep effective_cone(const SurfaceLattice& s);

struct ZariskiDecomposition {
    QVec positive;                      // nef part
    QVec negative;                      // effective part, = sum mults[i]*curve[i]
    std::vector<std::size_t> support;   // indices of the negative-part curves
    QVec multiplicities;                // aligned with `support`, all > 0
};

// D = P + N with P nef, P orthogonal to every component of N, and the
// support of N negative definite.  Throws std::domain_error when D is not
// pseudo-effective.
ZariskiDecomposition zariski_decomposition(const SurfaceLattice& s, const QVec& d);

enum class SurfaceOutcome { WlcModel, FiberToCurve, FiberToPoint };

struct SurfaceMmpResult {
    QVec pair_class;                     // K + B on the starting lattice
    std::vector<std::size_t> contracted; // curve indices in contraction order
    QVec pullback_class;                 // adjoint class of the end model, pulled back
    QVec discrepancies;                  // log discrepancy of each contracted curve
    SurfaceOutcome outcome = SurfaceOutcome::WlcModel;
    QVec fiber_class;                    // set when outcome == FiberToCurve
};

// Adjoint MMP for the pair (X, B) with B = b_class and mults[i] the
// multiplicity of the i-th listed curve in B (needed for discrepancy
// bookkeeping; pass zeros when no listed curve is a component of B).
// Contracts adjoint-negative curves whose image still has negative square,
// and stops at a nef adjoint class or at a fibration certificate.
SurfaceMmpResult log_mmp_surface(const SurfaceLattice& s, const QVec& b_class,
                                 const QVec& mults);

// Self-intersection of the image of class c after contracting the curves
// in `t` (orthogonal projection onto the complement of their span).
Rat image_square(const SurfaceLattice& s, const std::vector<std::size_t>& t,
                 const QVec& c);

// Pullback to the starting lattice of the pushforward of `c` to the model
// with the curves in `t` contracted (the unique lift orthogonal to them).
QVec contraction_pullback(const SurfaceLattice& s, const std::vector<std::size_t>& t,
                          const QVec& c);

}  // namespace geolog

#endif
