#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "chorc/behaviour.hpp"
#include "chorc/label.hpp"

namespace chorc {

struct NetConfig {
  Network net;
  State state;
};

int compare(const NetConfig& a, const NetConfig& b);
bool operator==(const NetConfig& a, const NetConfig& b);

/// Drops terminated processes, empty groups and definitions with terminated
/// scopes. Idempotent.
Network normalize_net(const Network& n);

/// True iff the behaviour has terminated, unfolding definitions as needed
/// (e.g. def X = 0 in X).
bool behaviour_terminated(const BehaviourPtr& b);

/// True iff every process of the network has terminated.
bool is_terminated_net(const Network& n);

// A synchronous rendezvous or a local conditional. Both endpoints' enabling
// terms must be in the processes' current head groups (reached through
// definition wrappers, unfolding each procedure at most once).
struct SyncComRedex {
  ProcName from;
  ProcName to;
  ExprPtr expr;
  VarName var;
};
struct SyncSelRedex {
  ProcName from;
  ProcName to;
  Label label;
};
struct LocalIfRedex {
  ProcName proc;
};

using NetRedex = std::variant<SyncComRedex, SyncSelRedex, LocalIfRedex>;

int compare(const NetRedex& a, const NetRedex& b);
bool operator==(const NetRedex& a, const NetRedex& b);
std::string to_text(const NetRedex& r);

std::vector<NetRedex> enabled_net(const NetConfig& cfg);

/// Fires one rendezvous or local conditional. Throws StaleRedexError (from
/// chorc/conc.hpp) when the redex is not enabled.
std::pair<TransitionLabel, NetConfig> apply_net(const NetConfig& cfg,
                                                const NetRedex& r);

struct NetRun {
  Trace trace;
  NetConfig final;
};

/// Randomized execution with uniform seeded scheduling. A non-terminated
/// configuration without redexes ends the run with status Stuck.
NetRun run_net(NetConfig cfg, std::uint64_t fuel, std::uint64_t seed);

struct NetExecution {
  Trace trace;
  NetConfig final;
};

/// Exhaustive DFS over all schedules (for desk-scale networks).
std::vector<NetExecution> all_net_executions(const NetConfig& cfg,
                                             std::size_t max_steps,
                                             std::size_t max_execs = 1u << 20);

}  // namespace chorc
