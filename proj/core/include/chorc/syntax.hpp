#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "chorc/ast.hpp"
#include "chorc/behaviour.hpp"

namespace chorc {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line, int column, const std::string& what);
};

// Parsers. All reject duplicate elements inside a group (groups are sets)
// and report positions as 1-based line/column.
ChorPtr parse_chor(std::string_view text);
Network parse_network(std::string_view text);
State parse_state(std::string_view text);

// Canonical printers: deterministic, groups sorted, singleton braces elided,
// trailing `; 0` elided. parse(print(t)) == t for every AST.
std::string print_chor(const ChorPtr& c);
std::string print_behaviour(const BehaviourPtr& b);
std::string print_network(const Network& n);
std::string print_state(const State& s);

}  // namespace chorc
