#ifndef GEOLOG_LINKS_HPP
#define GEOLOG_LINKS_HPP

// Elementary links between Mori fibrations and their chains.  A link is a
// short birational surgery — at most one divisorial extraction, a small
// modification, and at most one divisorial contraction — hung around a
// central model over a base.  Two constructions produce them: reading the
// ring of countries around a fibering ridge of a geography, and factoring
// a birational map of toric Mori fibrations step by step.  Every link
// carries per-stage data so a chain can be validated after the fact.

#include "geolog/geography.hpp"
#include "geolog/mmp.hpp"
#include "geolog/toric.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace geolog {

enum class LinkStepKind {
    DivisorialExtraction,
    Antiflip,
    Flop,
    Flip,
    DivisorialContraction,
};

struct LinkStep {
    LinkStepKind kind = LinkStepKind::Flop;
    std::string detail;       // the ray or curve the step acts on
    std::string model_after;  // id of the model the step lands on
};

// snapshot of one model visited by a link (stages = steps + 1)
struct LinkStage {
    std::string model_id;
    long rho = 0;              // rank of the relative divisor class group
    bool ft = true;            // Fano type over the base
    bool terminal = false;     // terminal singularities (checkable cases)
    Rat k_square = 0;          // self-intersection of the canonical class
};

struct FibrationRecord {
    std::string total_id;
    std::size_t base_dim = 0;
    std::string detail;
};

struct CentralModel {
    std::string model_id;  // the distinguished model over the base
    std::string base_id;
    QVec f_part, m_part;   // boundary split into fixed and mobile pieces
    bool relative_rank_two = false;   // relative class-group rank equals two
    bool weak_log_fano = false;       // -(K+F) nef and big over the base
    bool mobile_antiadjoint = false;  // M numerically -(K+F) over the base
    std::size_t flop_orbit = 1;       // models sharing the ridge up to flops
};

struct ElementaryLink {
    RidgeType type = RidgeType::Fib2A;
    std::string sarkisov;  // "I-III", "II", or "IV"
    std::vector<LinkStep> steps;
    std::vector<LinkStage> stages;  // first entry is the source stage
    FibrationRecord from, to;
    CentralModel central;
    bool cte = false;  // all stages terminal (checkable categories only)
};

struct LinkChain {
    std::vector<ElementaryLink> links;
    FibrationRecord source, target;
    QMat composite;  // lattice map realized by the whole chain
    bool generality_ok = true;
    std::string report;  // why generality or factorization degraded, if it did
};

struct LinkReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// The distinguished model over the base at a fibering ridge: the country
// with the largest relative class-group rank, checked against the three
// defining conditions with the boundary split B = F + M at the point b.
CentralModel central_model(const Geography& g, std::size_t ridge, const QVec& b,
                           const QVec& f_part);

// Assemble the elementary link encoded by a fibering ridge: the chain of
// countries around it gives the steps, the two end fibrations give the
// endpoints.  Throws classification_error when the ring is not elementary
// (more than two divisorial moves on one side).
ElementaryLink link_from_ridge(const Geography& g, std::size_t ridge);

// Factor the birational map of toric Mori fibrations given by mu : N -> N
// (a lattice isomorphism carrying f1's torus to f2's) into elementary
// links.  Equal fibrations give an empty chain; a shared total model with a
// different fibration gives a single type IV link; otherwise the total
// models are connected one extraction/contraction at a time.  Complete
// surfaces only; throws std::domain_error otherwise.
LinkChain factor_mori_map(const MoriFibration& f1, const MoriFibration& f2,
                          const QMat& mu);

// Factor a small birational map of toric models: walk the D-MMP for the
// transform of an ample divisor on y2.  Both models must share their rays
// and base; every step of the result is a small modification.
std::vector<LinkStep> factor_flops(const ToricModel& y1, const ToricModel& y2);

// Check a link against the elementary-link axioms: step ordering, at most
// two divisorial moves per side, at most one flop, class-group rank
// accounting across the stages, Fano type throughout, and the sign of the
// canonical self-intersection on the central stage.
LinkReport validate_link(const ElementaryLink& l);

}  // namespace geolog

#endif
