#ifndef GEOLOG_MMP_HPP
#define GEOLOG_MMP_HPP

// Divisor-directed minimal model program on Q-factorial toric models:
// contract or flip extremal rays the divisor is negative on until it is
// nef or a fibration certificate appears.  All runs carry full traces, a
// deterministic ray tie-break, and termination caps.  On top of the driver
// sit the adjoint (boundary) variant, the numerical dimension, and the
// semiample (Iitaka-type) contraction of the resulting nef class.

#include "geolog/polyhedron.hpp"
#include "geolog/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geolog {

enum class StepKind { Divisorial, Flip, FiberStop, NefStop };

struct MmpStep {
    StepKind kind = StepKind::NefStop;
    std::string ray_key;       // canonical key of the smallest wall on the ray
    std::string model_before;
    std::string model_after;   // empty for the two stop kinds
};

struct MoriFibration {
    ToricModel total;   // the last Q-factorial model
    ToricModel target;  // base of the extremal fibration
    QMat map;           // lattice quotient map
    QVec ray_class;     // class of the contracted extremal ray
};

struct MmpRun {
    ToricModel initial;
    QVec initial_divisor;
    std::vector<MmpStep> steps;
    ToricModel final_model;
    QVec final_divisor;   // transform of the divisor; nef unless fibration
    bool fibration = false;
    std::optional<MoriFibration> fibration_rec;

    std::size_t step_count() const { return steps.size(); }
};

// canonical string key of one wall (its spanning ray vectors)
std::string wall_key(const ToricModel& x, std::size_t wi);

MmpRun run_dmmp(const ToricModel& x, const QVec& coeffs);

// Adjoint run for the pair (X, B): D = K + B with B = sum b_rho D_rho.
// The outcome is exclusive: either the transform of K + B is nef on the
// final model, or the run ends in a Mori fibration.
MmpRun resulting_model(const ToricModel& x, const QVec& b);

// Numerical dimension of (X, B): nullopt encodes "minus infinity" (Mori
// fibration case); otherwise the dimension of the section polyhedron of
// the resulting nef class minus the dimension of its recession cone.
std::optional<long> nu_dimension(const ToricModel& x, const QVec& b);

// section polyhedron { m : <m, v_rho> + a_rho >= 0 } of a divisor
Polyhedron divisor_polyhedron(const ToricModel& x, const QVec& coeffs);

struct LcModelResult {
    ToricModel model;   // image of the semiample contraction
    QMat map;           // lattice map from the final wlc model
    ToricModel source;  // the wlc model the contraction starts from
    QVec source_divisor;
};

// Contraction defined by the resulting nef class, built as the normal fan
// of its section polyhedron.  Throws std::domain_error when the pair has
// no weak log canonical model (fibration case).
LcModelResult lc_model(const ToricModel& x, const QVec& b);

}  // namespace geolog

#endif
