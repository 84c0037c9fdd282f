#pragma once

// Bounded model search over quasi-saw frames.
//
// Sizes are visited in order (|w0| ascending, then |w1| ascending). At each
// size the depth-0 points receive a nondecreasing sequence of cell types
// (subsets of the formula's variables), and the depth-1 points a set of
// pairwise distinct successor sets with at least two elements each
// (exactly two for FrameClass::con2). Depth-1 points with one successor,
// or with the same successors as another, never change any atom, so no
// model is lost by skipping them. Contact, c and ci are monotone in the set
// of depth-1 points, which lets the search prune a partial choice as soon
// as some literal is decided against the formula.

#include "topocon/formula.hpp"
#include "topocon/quasisaw.hpp"

#include <cstdint>
#include <optional>

namespace topocon {

struct Bounds {
    std::size_t max_w0 = 5;
    std::size_t max_w1 = 10;
};

struct SolveOptions {
    /// Budget in search nodes (type sequences plus partial frames examined).
    std::uint64_t work_limit = 10'000'000;
    /// Worker threads; results do not depend on this.
    unsigned jobs = 1;
};

struct SolveResult {
    enum class Status { sat, unsat_up_to, resource_exhausted };

    Status status = Status::unsat_up_to;
    /// Set when status is sat.
    std::optional<QsModel> model;
    FrameClass frame_class = FrameClass::all;
    Bounds bounds;
    /// Search nodes examined.
    std::uint64_t examined = 0;
    /// Size being searched when the budget ran out.
    std::size_t reached_w0 = 0;
    std::size_t reached_w1 = 0;
};

std::string_view to_string(SolveResult::Status s);

/// Throws Error(invalid_argument) for bounds with max_w0 == 0 or above 63,
/// or formulas with more than 63 variables.
SolveResult solve(const Formula& f, FrameClass cls, Bounds b, const SolveOptions& opt = {});
/// Connected quasi-saws; requires language_of(f) to be B or Bci.
SolveResult solve_rc3(const Formula& f, Bounds b, const SolveOptions& opt = {});
/// Connected 2-quasi-saws for to_bullet(f); requires B or Bci. The model
/// certifies to_bullet(f), which verify expects as its formula.
SolveResult solve_rcp3(const Formula& f, Bounds b, const SolveOptions& opt = {});

/// True iff res is sat and its model satisfies f under check and, when the
/// frame is small enough, oracle_check.
bool verify(const SolveResult& res, const Formula& f);

} // namespace topocon
