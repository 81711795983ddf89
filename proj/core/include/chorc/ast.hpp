#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chorc {

/// True when `s` is a legal identifier: [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view s);

/// Opaque identifier distinguished by a tag type. Ordering is plain textual,
/// which makes these usable as keys in maps and sets.
template <class Tag>
struct Name {
  std::string value;

  Name() = default;
  explicit Name(std::string v) : value(std::move(v)) {}

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;
};

using ProcName = Name<struct ProcNameTag>;  // p, q, r, ...
using VarName = Name<struct VarNameTag>;    // x, y, ...
using Label = Name<struct LabelTag>;        // L, R, ...
using RecVar = Name<struct RecVarTag>;      // X, Y, ...

// ----------------------------------------------------------------- values

struct Value;

struct VUnit {};
struct VInt {
  std::int64_t value = 0;
};
struct VBool {
  bool value = false;
};
struct VStr {
  std::string value;
};
struct VTagged {
  std::string ctor;
  std::vector<Value> args;
};

/// A closed runtime value. Unit is the result of unbound reads and of
/// ill-typed primitive applications, which keeps evaluation total.
struct Value {
  std::variant<VUnit, VInt, VBool, VStr, VTagged> node;

  static Value unit();
  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value str(std::string s);
  static Value tagged(std::string ctor, std::vector<Value> args);

  /// True iff this is exactly Bool(true).
  bool is_true() const;
};

int compare(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);
bool operator!=(const Value& a, const Value& b);
std::string to_text(const Value& v);

// ------------------------------------------------------------ expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOpKind { Add, Sub, Mul, Lt, Eq, And, Or, Concat };

std::string_view binop_text(BinOpKind op);

struct EInt {
  std::int64_t value = 0;
};
struct EBool {
  bool value = false;
};
struct EStr {
  std::string value;
};
struct EVar {
  VarName name;
};
struct EBin {
  BinOpKind op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct ENot {
  ExprPtr arg;
};
struct ECtor {
  std::string ctor;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<EInt, EBool, EStr, EVar, EBin, ENot, ECtor> node;

  static ExprPtr lit(std::int64_t v);
  static ExprPtr lit(bool v);
  static ExprPtr lit(std::string s);
  static ExprPtr var(VarName x);
  static ExprPtr bin(BinOpKind op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr negation(ExprPtr arg);
  static ExprPtr ctor(std::string name, std::vector<ExprPtr> args);
};

int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
bool operator!=(const Expr& a, const Expr& b);

/// Canonical rendering with minimal parentheses.
std::string to_text(const Expr& e);

/// One process's view of the store.
using LocalStore = std::map<VarName, Value>;

/// Total, deterministic evaluation. Type mismatches and unbound variables
/// yield Unit; `=` is structural equality on values.
Value eval(const Expr& e, const LocalStore& local);
Value eval(const ExprPtr& e, const LocalStore& local);

/// The set of variables read by `e`. Constructor names are not variables.
std::set<VarName> free_vars(const Expr& e);
std::set<VarName> free_vars(const ExprPtr& e);

// ----------------------------------------------------- grouped interactions

/// A single value communication p.e -> q.y. Self-interactions (p = q) are
/// representable but rejected by the well-formedness checker.
struct Com {
  ProcName sender;
  ExprPtr expr;
  ProcName receiver;
  VarName var;
};

int compare(const Com& a, const Com& b);
bool operator==(const Com& a, const Com& b);
std::string to_text(const Com& c);

/// A single label selection p -> q[l].
struct Sel {
  ProcName sender;
  ProcName receiver;
  Label label;
};

int compare(const Sel& a, const Sel& b);
bool operator==(const Sel& a, const Sel& b);
std::string to_text(const Sel& s);

/// A set of communications, stored as a canonically sorted duplicate-free
/// sequence so that structural equality is insensitive to insertion order.
class Multicom {
 public:
  Multicom() = default;
  static Multicom of(std::vector<Com> coms);

  const std::vector<Com>& coms() const { return coms_; }
  bool empty() const { return coms_.empty(); }
  std::size_t size() const { return coms_.size(); }
  bool contains(const Com& c) const;
  Multicom without(const Com& c) const;
  Multicom with(const Com& c) const;

  friend bool operator==(const Multicom&, const Multicom&) = default;

 private:
  std::vector<Com> coms_;
};

/// A set of selections; same storage discipline as Multicom.
class Multisel {
 public:
  Multisel() = default;
  static Multisel of(std::vector<Sel> sels);

  const std::vector<Sel>& sels() const { return sels_; }
  bool empty() const { return sels_.empty(); }
  std::size_t size() const { return sels_.size(); }
  bool contains(const Sel& s) const;
  Multisel without(const Sel& s) const;
  Multisel with(const Sel& s) const;

  friend bool operator==(const Multisel&, const Multisel&) = default;

 private:
  std::vector<Sel> sels_;
};

/// Processes occurring in a communication of H (senders and receivers).
std::set<ProcName> pn(const Multicom& h);
/// Selection targets of Phi.
std::set<ProcName> tn(const Multisel& phi);

// ------------------------------------------------------------ choreographies

struct Chor;
using ChorPtr = std::shared_ptr<const Chor>;

struct CMCom {
  Multicom group;
  ChorPtr cont;
};
struct CMSel {
  Multisel group;
  ChorPtr cont;
};
struct CIf {
  ProcName proc;
  ExprPtr guard;
  ChorPtr then_branch;
  ChorPtr else_branch;
};
/// def X = body in scope. `procs` is the projection annotation; it is empty
/// until the annotation pass fills it.
struct CDef {
  RecVar name;
  std::set<ProcName> procs;
  ChorPtr body;
  ChorPtr scope;
};
struct CCall {
  RecVar name;
  std::set<ProcName> procs;
};
struct CEnd {};

struct Chor {
  std::variant<CMCom, CMSel, CIf, CDef, CCall, CEnd> node;

  static ChorPtr mcom(Multicom group, ChorPtr cont);
  static ChorPtr msel(Multisel group, ChorPtr cont);
  static ChorPtr cond(ProcName proc, ExprPtr guard, ChorPtr then_branch,
                      ChorPtr else_branch);
  static ChorPtr rec(RecVar name, std::set<ProcName> procs, ChorPtr body,
                     ChorPtr scope);
  static ChorPtr call(RecVar name, std::set<ProcName> procs = {});
  static ChorPtr end();
};

int compare(const Chor& a, const Chor& b);
int compare(const ChorPtr& a, const ChorPtr& b);
bool operator==(const Chor& a, const Chor& b);

/// All process names occurring in interactions, conditionals and annotations.
std::set<ProcName> pn(const Chor& c);
std::set<ProcName> pn(const ChorPtr& c);

// ------------------------------------------------------------------- states

/// Finite map from (process, variable) to values. Reads of absent cells give
/// Unit; updates are functional and produce a new State.
class State {
 public:
  using Cells = std::map<std::pair<ProcName, VarName>, Value>;

  State() = default;
  explicit State(Cells cells) : cells_(std::move(cells)) {}

  Value get(const ProcName& p, const VarName& x) const;
  State with(const ProcName& p, const VarName& x, Value v) const;
  LocalStore locals(const ProcName& p) const;
  const Cells& cells() const { return cells_; }

  friend bool operator==(const State&, const State&) = default;

 private:
  Cells cells_;
};

int compare(const State& a, const State& b);

}  // namespace chorc
