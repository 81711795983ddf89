#pragma once

#include <stdexcept>
#include <string>

#include "chorc/ast.hpp"
#include "chorc/behaviour.hpp"

namespace chorc {

/// Raised when a process cannot be projected. `process` is empty when the
/// failure surfaces from a bare merge outside a projection.
struct ProjectionError : std::runtime_error {
  enum class Kind { MergeConflict, SelfProjection };

  Kind kind;
  ProcName process;
  std::string path;
  std::string detail;  // the two unmergeable heads, rendered

  ProjectionError(Kind kind, ProcName process, std::string path,
                  std::string detail);
};

/// Fills every definition and call annotation with the least fixpoint of the
/// processes occurring in the procedure body, where calls contribute the
/// current annotation of their definition.
ChorPtr annotate(const ChorPtr& c);

/// Merge of two behaviours: isomorphic up to branching, unioning branches
/// with distinct labels. Partial; throws ProjectionError on conflict.
BehaviourPtr merge(const BehaviourPtr& a, const BehaviourPtr& b);

/// Behaviour projection of an annotated, well-formed choreography at `r`.
BehaviourPtr project_behaviour(const ChorPtr& c, const ProcName& r);

/// Projection of the whole choreography: one behaviour per process in pn(C).
/// Processes whose behaviour is 0 are kept; network normalization absorbs
/// them.
Network project(const ChorPtr& c);

/// Pruning: `small` equals `big` up to branches that merging introduced and
/// that are no longer reachable. Both sides are network-normalized first and
/// must then have the same process domain.
bool prunes(const Network& small, const Network& big);

}  // namespace chorc
