#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "chorc/seq.hpp"

namespace chorc {

// An enabled reduction occurrence. `pos` is the index of the node on the
// walked spine of the (normalized) term, counting groups and definition
// wrappers; it pins the syntactic occurrence the payload was lifted from.

struct ComRedex {
  Com com;
  int pos = 0;
};
struct SelRedex {
  Sel sel;
  int pos = 0;
};
struct IfRedex {
  ProcName proc;
  int pos = 0;
};

using Redex = std::variant<ComRedex, SelRedex, IfRedex>;

int compare(const Redex& a, const Redex& b);
bool operator==(const Redex& a, const Redex& b);
std::string to_text(const Redex& r);

struct StaleRedexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every single communication, selection and conditional that the spine
/// lifting discipline can move to the head. Conditionals are not lifted
/// through conditionals.
std::vector<Redex> enabled_conc(const SeqConfig& cfg);

/// Fires one redex: the interaction is removed from its group in place
/// (materializing any unfolds the lift needed), expressions read the current
/// state. Throws StaleRedexError when `r` is not enabled in `cfg`.
std::pair<TransitionLabel, SeqConfig> apply_redex(const SeqConfig& cfg,
                                                  const Redex& r);

/// Randomized execution: uniform seeded choice among enabled redexes.
SeqRun run_conc(SeqConfig cfg, std::uint64_t fuel, std::uint64_t seed);

struct ConcExecution {
  Trace trace;
  SeqConfig final;
};

/// Exhaustive DFS over all schedules, up to `max_steps` per execution.
/// Executions hitting the bound are marked Truncated.
std::vector<ConcExecution> all_executions(const SeqConfig& cfg,
                                          std::size_t max_steps,
                                          std::size_t max_execs = 1u << 20);

/// The set of distinct traces, canonically sorted.
std::vector<Trace> all_traces(const SeqConfig& cfg, std::size_t max_steps);

/// All one-step rewrites of the structural (pre)congruence, congruence
/// closed: group split/merge, group/group and group/conditional and
/// group/definition swaps, conditional/conditional swap, unfolding, and the
/// collection rules. The oriented rules (unfolding, collection) are only
/// applied left to right.
std::vector<ChorPtr> congruence_rewrites(const ChorPtr& c);

/// Bounded search: true iff `to` is reachable from `from` within `bound`
/// rewrite applications. False means "not found within bound".
bool equiv_oracle(const ChorPtr& from, const ChorPtr& to, std::size_t bound);

/// Validates one production redex against the rewrite oracle: searches for a
/// rewriting of cfg.chor exposing the redex at the head, fires it there, and
/// compares label, state, and (up to bounded rewriting) the resulting term.
bool confirm_redex(const SeqConfig& cfg, const Redex& r, std::size_t bound);

}  // namespace chorc
