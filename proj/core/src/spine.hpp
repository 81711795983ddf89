#pragma once

// Shared walk over the spine of a choreography term: the chain of group,
// definition and call nodes leading to the first conditional, stuck call or
// 0. Calls found on the spine unfold lazily (each procedure at most once per
// walk) by textual substitution of the bound body. Both engines use the same
// walk, so redex positions mean the same thing in enumeration and firing.

#include <vector>

#include "chorc/ast.hpp"

namespace chorc::detail {

struct SpineFrame {
  enum class Kind { MCom, MSel, Def, If, Call, End };

  Kind kind;
  // MCom / MSel
  Multicom mcom;
  Multisel msel;
  // Def
  RecVar def_name;
  std::set<ProcName> def_procs;
  ChorPtr def_body;
  // If
  ProcName if_proc;
  ExprPtr if_guard;
  ChorPtr if_then;
  ChorPtr if_else;
  // Call (stuck: unbound or already unfolded on this walk)
  RecVar call_name;
  std::set<ProcName> call_procs;
  // Original continuation of MCom/MSel/Def nodes, with no unfolds applied.
  ChorPtr cont;
};

std::vector<SpineFrame> walk_spine(const ChorPtr& c);

/// Reassembles frames[0..count) on top of `tail`. Unfolds performed by the
/// walk before `count` become part of the result; later ones do not (the
/// frame at the firing position supplies its original continuation).
ChorPtr rebuild_spine(const std::vector<SpineFrame>& frames, std::size_t count,
                      ChorPtr tail);

}  // namespace chorc::detail
