#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "chorc/ast.hpp"
#include "chorc/label.hpp"

namespace chorc {

struct SeqConfig {
  ChorPtr chor;
  State state;
};

int compare(const SeqConfig& a, const SeqConfig& b);
bool operator==(const SeqConfig& a, const SeqConfig& b);

/// Exhaustively removes empty groups and definitions with terminated scopes,
/// everywhere in the term. Does not unfold recursion. Idempotent.
ChorPtr normalize(const ChorPtr& c);

/// True iff the term normalizes to 0.
bool is_terminated(const ChorPtr& c);

/// One deterministic head-reduction step: whole multicoms and multisels are
/// consumed atomically, every sender expression reading the pre-state.
/// Recursion unfolds lazily, at most once per procedure per step.
/// Empty iff the configuration is terminated (or recursion is unguarded).
std::optional<std::pair<TransitionLabel, SeqConfig>> step_seq(
    const SeqConfig& cfg);

struct SeqRun {
  Trace trace;
  SeqConfig final;
};

SeqRun run_seq(SeqConfig cfg, std::uint64_t fuel);

}  // namespace chorc
