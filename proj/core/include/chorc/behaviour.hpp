#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "chorc/ast.hpp"

namespace chorc {

// Process-local actions: q!e sends, q?x receives.
struct SendAct {
  ProcName to;
  ExprPtr expr;
};
struct RecvAct {
  ProcName from;
  VarName var;
};

struct Theta {
  std::variant<SendAct, RecvAct> node;

  static Theta send(ProcName to, ExprPtr expr);
  static Theta recv(ProcName from, VarName var);
};

int compare(const Theta& a, const Theta& b);
bool operator==(const Theta& a, const Theta& b);
std::string to_text(const Theta& t);

/// One outgoing selection q(+)[l].
struct SelAct {
  ProcName to;
  Label label;
};

int compare(const SelAct& a, const SelAct& b);
bool operator==(const SelAct& a, const SelAct& b);
std::string to_text(const SelAct& s);

/// Set of concurrent sends/receives, canonically sorted.
class ThetaGroup {
 public:
  ThetaGroup() = default;
  static ThetaGroup of(std::vector<Theta> thetas);

  const std::vector<Theta>& thetas() const { return thetas_; }
  bool empty() const { return thetas_.empty(); }
  std::size_t size() const { return thetas_.size(); }
  bool contains(const Theta& t) const;
  ThetaGroup without(const Theta& t) const;

  friend bool operator==(const ThetaGroup&, const ThetaGroup&) = default;

 private:
  std::vector<Theta> thetas_;
};

/// Set of concurrent outgoing selections; targets are pairwise distinct.
class SelActGroup {
 public:
  SelActGroup() = default;
  static SelActGroup of(std::vector<SelAct> sels);

  const std::vector<SelAct>& sels() const { return sels_; }
  bool empty() const { return sels_.empty(); }
  std::size_t size() const { return sels_.size(); }
  bool contains(const SelAct& s) const;
  SelActGroup without(const SelAct& s) const;

  friend bool operator==(const SelActGroup&, const SelActGroup&) = default;

 private:
  std::vector<SelAct> sels_;
};

// ------------------------------------------------------------- behaviours

struct Behaviour;
using BehaviourPtr = std::shared_ptr<const Behaviour>;

struct BTheta {
  ThetaGroup group;
  BehaviourPtr cont;
};
struct BSel {
  SelActGroup group;
  BehaviourPtr cont;
};
struct BBranch {
  ProcName from;
  std::map<Label, BehaviourPtr> branches;  // nonempty
};
struct BIf {
  ExprPtr guard;
  BehaviourPtr then_branch;
  BehaviourPtr else_branch;
};
struct BDef {
  RecVar name;
  BehaviourPtr body;
  BehaviourPtr scope;
};
struct BCall {
  RecVar name;
};
struct BEnd {};

struct Behaviour {
  std::variant<BTheta, BSel, BBranch, BIf, BDef, BCall, BEnd> node;

  static BehaviourPtr theta(ThetaGroup group, BehaviourPtr cont);
  static BehaviourPtr sel(SelActGroup group, BehaviourPtr cont);
  static BehaviourPtr branch(ProcName from,
                             std::map<Label, BehaviourPtr> branches);
  static BehaviourPtr cond(ExprPtr guard, BehaviourPtr then_branch,
                           BehaviourPtr else_branch);
  static BehaviourPtr rec(RecVar name, BehaviourPtr body, BehaviourPtr scope);
  static BehaviourPtr call(RecVar name);
  static BehaviourPtr end();
};

int compare(const Behaviour& a, const Behaviour& b);
int compare(const BehaviourPtr& a, const BehaviourPtr& b);
bool operator==(const Behaviour& a, const Behaviour& b);

/// Removes empty groups and definitions with terminated scopes, everywhere.
/// Idempotent.
BehaviourPtr normalize(const BehaviourPtr& b);

/// Parallel composition of named processes; the empty map is the inactive
/// network. Associativity/commutativity of | come for free from the map.
struct Network {
  std::map<ProcName, BehaviourPtr> procs;

  friend bool operator==(const Network&, const Network&);
};

int compare(const Network& a, const Network& b);

}  // namespace chorc
