#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chorc/ast.hpp"

namespace chorc {

enum class ViolationKind {
  SameChannelClash,  // two communications on the same sender->receiver pair
  SameCellClash,     // two communications writing the same receiver variable
  ReadWriteClash,    // a receiver of one communication sends an expression
                     // reading the received variable in another
  SelTargetClash,    // a selection target is sender or target of another
  SelfInteraction,
  UnboundCall,
  EmptyGroup,
};

std::string_view kind_text(ViolationKind k);

/// A single diagnostic. `first`/`second` are the offending group elements
/// rendered in surface syntax; `path` locates the enclosing node ($ is the
/// root, with .cont/.then/.else/.body/.scope steps).
struct Violation {
  ViolationKind kind;
  std::string path;
  std::string first;
  std::optional<std::string> second;
};

std::string to_text(const Violation& v);
std::string to_json_text(const std::vector<Violation>& vs);

/// Both conditions of the multicom well-formedness definition, checked over
/// all pairs, plus self-interaction checks. Violations are data, not errors.
std::vector<Violation> check_multicom(const Multicom& h);

/// Multisel well-formedness: no selection target may be sender or target of
/// another selection.
std::vector<Violation> check_multisel(const Multisel& phi);

/// Recursively checks every group in the choreography and flags empty
/// groups, self-interactions and calls to undefined procedures.
std::vector<Violation> check_chor(const ChorPtr& c);

}  // namespace chorc
