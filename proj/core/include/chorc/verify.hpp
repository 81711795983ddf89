#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chorc/ast.hpp"
#include "chorc/seq.hpp"

namespace chorc {

/// Knobs for the random choreography generator.
struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 4;
  int max_group_size = 4;
  int process_pool = 5;  // >= 2
  struct Weights {
    int mcom = 4;
    int msel = 2;
    int cond = 2;
    int rec = 1;
    int end = 1;
  } weights;
  /// When set, conditionals are wrapped with label broadcasts from the
  /// deciding process so that generated programs project; the generator
  /// verifies by projecting and resamples on failure.
  bool require_projectable = true;
  int resample_budget = 64;
};

/// Well-formed by construction: groups are filtered through the
/// well-formedness checks, self-interactions are never produced, calls are
/// always bound, and recursion is guarded.
ChorPtr gen_chor(const GenConfig& cfg);

struct CheckFailure {
  std::uint64_t seed = 0;
  std::string counterexample;  // minimized, printed choreography
  std::string detail;
};

struct CheckReport {
  std::string property;
  int instances = 0;
  int inconclusive = 0;  // bounded searches that found nothing either way
  std::vector<CheckFailure> failures;
  double elapsed_seconds = 0;

  bool ok() const { return failures.empty(); }
};

std::string to_text(const CheckReport& r);
std::string to_json_text(const std::vector<CheckReport>& rs);

/// Shared bounds for the check suites. join/closure bounds default to
/// 2 * max_group_size when left at zero.
struct CheckOptions {
  std::uint64_t fuel = 64;      // steps explored per execution
  int schedules = 3;            // sampled randomized schedules per instance
  int states_per_instance = 2;  // sampled initial states per instance
  std::size_t join_bound = 0;
  std::size_t closure_bound = 0;
  std::size_t configs_per_instance = 64;  // cap on explored configurations
  std::uint64_t seed = 0;
  int max_group_size = 4;  // used for defaulted bounds
};

struct Corpus {
  std::vector<ChorPtr> chors;
  std::vector<std::uint64_t> seeds;  // instance seeds, for failure replay
};

Corpus gen_corpus(const GenConfig& cfg, int instances);

/// Property suites. Every failure carries the instance seed and a minimized
/// counterexample obtained by subterm deletion.
CheckReport check_progress(const Corpus& corpus, const CheckOptions& opts);
CheckReport check_confluence(const Corpus& corpus, const CheckOptions& opts);
CheckReport check_seq_conc(const Corpus& corpus, const CheckOptions& opts);
CheckReport check_epp(const Corpus& corpus, const CheckOptions& opts);

/// Exhaustive enumeration of small well-formed choreographies over the fixed
/// vocabulary {p, q, r} x {x, y} x {L}, up to `max_nodes` AST nodes.
std::vector<ChorPtr> enumerate_small(int max_nodes);

/// Confirms every production redex of every enumerated term against the
/// rewrite oracle (soundness of the lifting discipline).
CheckReport check_oracle(int max_nodes, std::size_t bound);

}  // namespace chorc
