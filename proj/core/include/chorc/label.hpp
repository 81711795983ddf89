#pragma once

#include <string>
#include <variant>
#include <vector>

#include "chorc/ast.hpp"

namespace chorc {

// Observable transition labels. The same vocabulary is used by the
// choreography engines and the network engine so traces can be diffed
// directly.

struct ComLabel {
  ProcName from;
  Value value;
  ProcName to;
  VarName var;
};
struct SelLabel {
  ProcName from;
  ProcName to;
  Label label;
};
struct ThenLabel {
  ProcName proc;
};
struct ElseLabel {
  ProcName proc;
};
/// One whole group consumed atomically (sequential semantics only).
/// Exactly one of `coms`/`sels` is nonempty.
struct GroupLabel {
  std::vector<ComLabel> coms;
  std::vector<SelLabel> sels;
};

using TransitionLabel =
    std::variant<ComLabel, SelLabel, ThenLabel, ElseLabel, GroupLabel>;

int compare(const TransitionLabel& a, const TransitionLabel& b);
bool operator==(const TransitionLabel& a, const TransitionLabel& b);
std::string to_text(const TransitionLabel& l);

enum class RunStatus { Terminated, OutOfFuel, Stuck, Truncated };

std::string_view status_text(RunStatus s);

struct Trace {
  std::vector<TransitionLabel> labels;
  RunStatus status = RunStatus::Terminated;
};

int compare(const Trace& a, const Trace& b);
bool operator==(const Trace& a, const Trace& b);

/// JSON form: an array of label records followed by one {"status": ...}
/// record. Values are embedded as native JSON (tagged values as objects).
std::string to_json_text(const Trace& t);
std::string to_json_text(const std::vector<Trace>& traces);

}  // namespace chorc
