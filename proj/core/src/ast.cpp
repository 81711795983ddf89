#include "chorc/ast.hpp"

#include <algorithm>
#include <cctype>

namespace chorc {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && ch != '_') return false;
  }
  return true;
}

// ----------------------------------------------------------------- values

Value Value::unit() { return Value{VUnit{}}; }
Value Value::integer(std::int64_t v) { return Value{VInt{v}}; }
Value Value::boolean(bool v) { return Value{VBool{v}}; }
Value Value::str(std::string s) { return Value{VStr{std::move(s)}}; }
Value Value::tagged(std::string ctor, std::vector<Value> args) {
  return Value{VTagged{std::move(ctor), std::move(args)}};
}

bool Value::is_true() const {
  const auto* b = std::get_if<VBool>(&node);
  return b != nullptr && b->value;
}

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare(const Value& a, const Value& b) {
  if (int c = cmp3(a.node.index(), b.node.index()); c != 0) return c;
  struct Visitor {
    const Value& rhs;
    int operator()(const VUnit&) const { return 0; }
    int operator()(const VInt& x) const {
      return cmp3(x.value, std::get<VInt>(rhs.node).value);
    }
    int operator()(const VBool& x) const {
      return cmp3(x.value, std::get<VBool>(rhs.node).value);
    }
    int operator()(const VStr& x) const {
      return cmp3(x.value, std::get<VStr>(rhs.node).value);
    }
    int operator()(const VTagged& x) const {
      const auto& y = std::get<VTagged>(rhs.node);
      if (int c = cmp3(x.ctor, y.ctor); c != 0) return c;
      if (int c = cmp3(x.args.size(), y.args.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.args.size(); ++i)
        if (int c = compare(x.args[i], y.args[i]); c != 0) return c;
      return 0;
    }
  };
  return std::visit(Visitor{b}, a.node);
}

bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }

namespace {

std::string escape_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_text(const Value& v) {
  struct Visitor {
    std::string operator()(const VUnit&) const { return "unit"; }
    std::string operator()(const VInt& x) const {
      return std::to_string(x.value);
    }
    std::string operator()(const VBool& x) const {
      return x.value ? "true" : "false";
    }
    std::string operator()(const VStr& x) const { return escape_str(x.value); }
    std::string operator()(const VTagged& x) const {
      std::string out = x.ctor + "(";
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_text(x.args[i]);
      }
      return out + ")";
    }
  };
  return std::visit(Visitor{}, v.node);
}

// ------------------------------------------------------------ expressions

std::string_view binop_text(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add: return "+";
    case BinOpKind::Sub: return "-";
    case BinOpKind::Mul: return "*";
    case BinOpKind::Lt: return "<";
    case BinOpKind::Eq: return "=";
    case BinOpKind::And: return "and";
    case BinOpKind::Or: return "or";
    case BinOpKind::Concat: return "++";
  }
  return "?";
}

ExprPtr Expr::lit(std::int64_t v) {
  return std::make_shared<const Expr>(Expr{EInt{v}});
}
ExprPtr Expr::lit(bool v) {
  return std::make_shared<const Expr>(Expr{EBool{v}});
}
ExprPtr Expr::lit(std::string s) {
  return std::make_shared<const Expr>(Expr{EStr{std::move(s)}});
}
ExprPtr Expr::var(VarName x) {
  return std::make_shared<const Expr>(Expr{EVar{std::move(x)}});
}
ExprPtr Expr::bin(BinOpKind op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(
      Expr{EBin{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr Expr::negation(ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{ENot{std::move(arg)}});
}
ExprPtr Expr::ctor(std::string name, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(
      Expr{ECtor{std::move(name), std::move(args)}});
}

int compare(const Expr& a, const Expr& b) {
  if (int c = cmp3(a.node.index(), b.node.index()); c != 0) return c;
  struct Visitor {
    const Expr& rhs;
    int operator()(const EInt& x) const {
      return cmp3(x.value, std::get<EInt>(rhs.node).value);
    }
    int operator()(const EBool& x) const {
      return cmp3(x.value, std::get<EBool>(rhs.node).value);
    }
    int operator()(const EStr& x) const {
      return cmp3(x.value, std::get<EStr>(rhs.node).value);
    }
    int operator()(const EVar& x) const {
      return cmp3(x.name, std::get<EVar>(rhs.node).name);
    }
    int operator()(const EBin& x) const {
      const auto& y = std::get<EBin>(rhs.node);
      if (int c = cmp3(static_cast<int>(x.op), static_cast<int>(y.op));
          c != 0)
        return c;
      if (int c = compare(*x.lhs, *y.lhs); c != 0) return c;
      return compare(*x.rhs, *y.rhs);
    }
    int operator()(const ENot& x) const {
      return compare(*x.arg, *std::get<ENot>(rhs.node).arg);
    }
    int operator()(const ECtor& x) const {
      const auto& y = std::get<ECtor>(rhs.node);
      if (int c = cmp3(x.ctor, y.ctor); c != 0) return c;
      if (int c = cmp3(x.args.size(), y.args.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.args.size(); ++i)
        if (int c = compare(*x.args[i], *y.args[i]); c != 0) return c;
      return 0;
    }
  };
  return std::visit(Visitor{b}, a.node);
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

namespace {

// Precedence levels for printing: or < and < (<,=) < (+,-,++) < * < not.
int binop_prec(BinOpKind op) {
  switch (op) {
    case BinOpKind::Or: return 1;
    case BinOpKind::And: return 2;
    case BinOpKind::Lt:
    case BinOpKind::Eq: return 3;
    case BinOpKind::Add:
    case BinOpKind::Sub:
    case BinOpKind::Concat: return 4;
    case BinOpKind::Mul: return 5;
  }
  return 0;
}

std::string expr_text(const Expr& e, int min_prec) {
  struct Visitor {
    int min_prec;
    std::string operator()(const EInt& x) const {
      return std::to_string(x.value);
    }
    std::string operator()(const EBool& x) const {
      return x.value ? "true" : "false";
    }
    std::string operator()(const EStr& x) const {
      return escape_str(x.value);
    }
    std::string operator()(const EVar& x) const { return x.name.value; }
    std::string operator()(const EBin& x) const {
      int prec = binop_prec(x.op);
      std::string out = expr_text(*x.lhs, prec);
      out += ' ';
      out += binop_text(x.op);
      out += ' ';
      out += expr_text(*x.rhs, prec + 1);  // binaries are left-associative
      if (prec < min_prec) return "(" + out + ")";
      return out;
    }
    std::string operator()(const ENot& x) const {
      std::string out = "not " + expr_text(*x.arg, 6);
      if (6 < min_prec) return "(" + out + ")";
      return out;
    }
    std::string operator()(const ECtor& x) const {
      std::string out = x.ctor + "(";
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += expr_text(*x.args[i], 0);
      }
      return out + ")";
    }
  };
  return std::visit(Visitor{min_prec}, e.node);
}

}  // namespace

std::string to_text(const Expr& e) { return expr_text(e, 0); }

Value eval(const Expr& e, const LocalStore& local) {
  struct Visitor {
    const LocalStore& local;
    Value operator()(const EInt& x) const { return Value::integer(x.value); }
    Value operator()(const EBool& x) const { return Value::boolean(x.value); }
    Value operator()(const EStr& x) const { return Value::str(x.value); }
    Value operator()(const EVar& x) const {
      auto it = local.find(x.name);
      return it == local.end() ? Value::unit() : it->second;
    }
    Value operator()(const EBin& x) const {
      Value l = eval(*x.lhs, local);
      Value r = eval(*x.rhs, local);
      switch (x.op) {
        case BinOpKind::Eq:
          return Value::boolean(l == r);
        case BinOpKind::Add:
        case BinOpKind::Sub:
        case BinOpKind::Mul:
        case BinOpKind::Lt: {
          const auto* li = std::get_if<VInt>(&l.node);
          const auto* ri = std::get_if<VInt>(&r.node);
          if (li == nullptr || ri == nullptr) return Value::unit();
          switch (x.op) {
            case BinOpKind::Add: return Value::integer(li->value + ri->value);
            case BinOpKind::Sub: return Value::integer(li->value - ri->value);
            case BinOpKind::Mul: return Value::integer(li->value * ri->value);
            default: return Value::boolean(li->value < ri->value);
          }
        }
        case BinOpKind::And:
        case BinOpKind::Or: {
          const auto* lb = std::get_if<VBool>(&l.node);
          const auto* rb = std::get_if<VBool>(&r.node);
          if (lb == nullptr || rb == nullptr) return Value::unit();
          return Value::boolean(x.op == BinOpKind::And
                                    ? (lb->value && rb->value)
                                    : (lb->value || rb->value));
        }
        case BinOpKind::Concat: {
          const auto* ls = std::get_if<VStr>(&l.node);
          const auto* rs = std::get_if<VStr>(&r.node);
          if (ls == nullptr || rs == nullptr) return Value::unit();
          return Value::str(ls->value + rs->value);
        }
      }
      return Value::unit();
    }
    Value operator()(const ENot& x) const {
      Value v = eval(*x.arg, local);
      const auto* b = std::get_if<VBool>(&v.node);
      if (b == nullptr) return Value::unit();
      return Value::boolean(!b->value);
    }
    Value operator()(const ECtor& x) const {
      std::vector<Value> args;
      args.reserve(x.args.size());
      for (const auto& a : x.args) args.push_back(eval(*a, local));
      return Value::tagged(x.ctor, std::move(args));
    }
  };
  return std::visit(Visitor{local}, e.node);
}

Value eval(const ExprPtr& e, const LocalStore& local) {
  return eval(*e, local);
}

namespace {

void collect_vars(const Expr& e, std::set<VarName>& out) {
  struct Visitor {
    std::set<VarName>& out;
    void operator()(const EInt&) const {}
    void operator()(const EBool&) const {}
    void operator()(const EStr&) const {}
    void operator()(const EVar& x) const { out.insert(x.name); }
    void operator()(const EBin& x) const {
      collect_vars(*x.lhs, out);
      collect_vars(*x.rhs, out);
    }
    void operator()(const ENot& x) const { collect_vars(*x.arg, out); }
    void operator()(const ECtor& x) const {
      for (const auto& a : x.args) collect_vars(*a, out);
    }
  };
  std::visit(Visitor{out}, e.node);
}

}  // namespace

std::set<VarName> free_vars(const Expr& e) {
  std::set<VarName> out;
  collect_vars(e, out);
  return out;
}

std::set<VarName> free_vars(const ExprPtr& e) { return free_vars(*e); }

// ----------------------------------------------------- grouped interactions

int compare(const Com& a, const Com& b) {
  if (int c = cmp3(a.sender, b.sender); c != 0) return c;
  if (int c = cmp3(a.receiver, b.receiver); c != 0) return c;
  if (int c = cmp3(a.var, b.var); c != 0) return c;
  return compare(*a.expr, *b.expr);
}
bool operator==(const Com& a, const Com& b) { return compare(a, b) == 0; }

std::string to_text(const Com& c) {
  return c.sender.value + "." + to_text(*c.expr) + " -> " + c.receiver.value +
         "." + c.var.value;
}

int compare(const Sel& a, const Sel& b) {
  if (int c = cmp3(a.sender, b.sender); c != 0) return c;
  if (int c = cmp3(a.receiver, b.receiver); c != 0) return c;
  return cmp3(a.label, b.label);
}
bool operator==(const Sel& a, const Sel& b) { return compare(a, b) == 0; }

std::string to_text(const Sel& s) {
  return s.sender.value + " -> " + s.receiver.value + "[" + s.label.value +
         "]";
}

namespace {

template <class T>
void sort_dedup(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end(),
            [](const T& a, const T& b) { return compare(a, b) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](const T& a, const T& b) { return compare(a, b) == 0; }),
           xs.end());
}

}  // namespace

Multicom Multicom::of(std::vector<Com> coms) {
  Multicom h;
  h.coms_ = std::move(coms);
  sort_dedup(h.coms_);
  return h;
}

bool Multicom::contains(const Com& c) const {
  return std::any_of(coms_.begin(), coms_.end(),
                     [&](const Com& x) { return x == c; });
}

Multicom Multicom::without(const Com& c) const {
  std::vector<Com> out;
  out.reserve(coms_.size());
  for (const auto& x : coms_)
    if (!(x == c)) out.push_back(x);
  return Multicom::of(std::move(out));
}

Multicom Multicom::with(const Com& c) const {
  std::vector<Com> out = coms_;
  out.push_back(c);
  return Multicom::of(std::move(out));
}

Multisel Multisel::of(std::vector<Sel> sels) {
  Multisel p;
  p.sels_ = std::move(sels);
  sort_dedup(p.sels_);
  return p;
}

bool Multisel::contains(const Sel& s) const {
  return std::any_of(sels_.begin(), sels_.end(),
                     [&](const Sel& x) { return x == s; });
}

Multisel Multisel::without(const Sel& s) const {
  std::vector<Sel> out;
  out.reserve(sels_.size());
  for (const auto& x : sels_)
    if (!(x == s)) out.push_back(x);
  return Multisel::of(std::move(out));
}

Multisel Multisel::with(const Sel& s) const {
  std::vector<Sel> out = sels_;
  out.push_back(s);
  return Multisel::of(std::move(out));
}

std::set<ProcName> pn(const Multicom& h) {
  std::set<ProcName> out;
  for (const auto& c : h.coms()) {
    out.insert(c.sender);
    out.insert(c.receiver);
  }
  return out;
}

std::set<ProcName> tn(const Multisel& phi) {
  std::set<ProcName> out;
  for (const auto& s : phi.sels()) out.insert(s.receiver);
  return out;
}

// ------------------------------------------------------------ choreographies

ChorPtr Chor::mcom(Multicom group, ChorPtr cont) {
  return std::make_shared<const Chor>(
      Chor{CMCom{std::move(group), std::move(cont)}});
}
ChorPtr Chor::msel(Multisel group, ChorPtr cont) {
  return std::make_shared<const Chor>(
      Chor{CMSel{std::move(group), std::move(cont)}});
}
ChorPtr Chor::cond(ProcName proc, ExprPtr guard, ChorPtr then_branch,
                   ChorPtr else_branch) {
  return std::make_shared<const Chor>(Chor{CIf{
      std::move(proc), std::move(guard), std::move(then_branch),
      std::move(else_branch)}});
}
ChorPtr Chor::rec(RecVar name, std::set<ProcName> procs, ChorPtr body,
                  ChorPtr scope) {
  return std::make_shared<const Chor>(Chor{CDef{
      std::move(name), std::move(procs), std::move(body), std::move(scope)}});
}
ChorPtr Chor::call(RecVar name, std::set<ProcName> procs) {
  return std::make_shared<const Chor>(
      Chor{CCall{std::move(name), std::move(procs)}});
}
ChorPtr Chor::end() {
  static const ChorPtr instance = std::make_shared<const Chor>(Chor{CEnd{}});
  return instance;
}

namespace {

template <class T>
int compare_groups(const T& a, const T& b, auto&& elems) {
  const auto& xs = elems(a);
  const auto& ys = elems(b);
  if (int c = cmp3(xs.size(), ys.size()); c != 0) return c;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  return 0;
}

int compare_proc_sets(const std::set<ProcName>& a,
                      const std::set<ProcName>& b) {
  if (int c = cmp3(a.size(), b.size()); c != 0) return c;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib)
    if (int c = cmp3(*ia, *ib); c != 0) return c;
  return 0;
}

}  // namespace

int compare(const Chor& a, const Chor& b) {
  if (int c = cmp3(a.node.index(), b.node.index()); c != 0) return c;
  struct Visitor {
    const Chor& rhs;
    int operator()(const CMCom& x) const {
      const auto& y = std::get<CMCom>(rhs.node);
      if (int c = compare_groups(x.group, y.group,
                                 [](const Multicom& g) -> const auto& {
                                   return g.coms();
                                 });
          c != 0)
        return c;
      return compare(*x.cont, *y.cont);
    }
    int operator()(const CMSel& x) const {
      const auto& y = std::get<CMSel>(rhs.node);
      if (int c = compare_groups(x.group, y.group,
                                 [](const Multisel& g) -> const auto& {
                                   return g.sels();
                                 });
          c != 0)
        return c;
      return compare(*x.cont, *y.cont);
    }
    int operator()(const CIf& x) const {
      const auto& y = std::get<CIf>(rhs.node);
      if (int c = cmp3(x.proc, y.proc); c != 0) return c;
      if (int c = compare(*x.guard, *y.guard); c != 0) return c;
      if (int c = compare(*x.then_branch, *y.then_branch); c != 0) return c;
      return compare(*x.else_branch, *y.else_branch);
    }
    int operator()(const CDef& x) const {
      const auto& y = std::get<CDef>(rhs.node);
      if (int c = cmp3(x.name, y.name); c != 0) return c;
      if (int c = compare_proc_sets(x.procs, y.procs); c != 0) return c;
      if (int c = compare(*x.body, *y.body); c != 0) return c;
      return compare(*x.scope, *y.scope);
    }
    int operator()(const CCall& x) const {
      const auto& y = std::get<CCall>(rhs.node);
      if (int c = cmp3(x.name, y.name); c != 0) return c;
      return compare_proc_sets(x.procs, y.procs);
    }
    int operator()(const CEnd&) const { return 0; }
  };
  return std::visit(Visitor{b}, a.node);
}

int compare(const ChorPtr& a, const ChorPtr& b) { return compare(*a, *b); }

bool operator==(const Chor& a, const Chor& b) { return compare(a, b) == 0; }

namespace {

void collect_pn(const Chor& c, std::set<ProcName>& out) {
  struct Visitor {
    std::set<ProcName>& out;
    void operator()(const CMCom& x) const {
      for (const auto& h : x.group.coms()) {
        out.insert(h.sender);
        out.insert(h.receiver);
      }
      collect_pn(*x.cont, out);
    }
    void operator()(const CMSel& x) const {
      for (const auto& s : x.group.sels()) {
        out.insert(s.sender);
        out.insert(s.receiver);
      }
      collect_pn(*x.cont, out);
    }
    void operator()(const CIf& x) const {
      out.insert(x.proc);
      collect_pn(*x.then_branch, out);
      collect_pn(*x.else_branch, out);
    }
    void operator()(const CDef& x) const {
      out.insert(x.procs.begin(), x.procs.end());
      collect_pn(*x.body, out);
      collect_pn(*x.scope, out);
    }
    void operator()(const CCall& x) const {
      out.insert(x.procs.begin(), x.procs.end());
    }
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{out}, c.node);
}

}  // namespace

std::set<ProcName> pn(const Chor& c) {
  std::set<ProcName> out;
  collect_pn(c, out);
  return out;
}

std::set<ProcName> pn(const ChorPtr& c) { return pn(*c); }

// ------------------------------------------------------------------- states

Value State::get(const ProcName& p, const VarName& x) const {
  auto it = cells_.find({p, x});
  return it == cells_.end() ? Value::unit() : it->second;
}

State State::with(const ProcName& p, const VarName& x, Value v) const {
  Cells cells = cells_;
  cells.insert_or_assign({p, x}, std::move(v));
  return State(std::move(cells));
}

LocalStore State::locals(const ProcName& p) const {
  LocalStore out;
  for (const auto& [key, value] : cells_)
    if (key.first == p) out.emplace(key.second, value);
  return out;
}

int compare(const State& a, const State& b) {
  const auto& xs = a.cells();
  const auto& ys = b.cells();
  if (int c = cmp3(xs.size(), ys.size()); c != 0) return c;
  auto ix = xs.begin();
  auto iy = ys.begin();
  for (; ix != xs.end(); ++ix, ++iy) {
    if (int c = cmp3(ix->first, iy->first); c != 0) return c;
    if (int c = compare(ix->second, iy->second); c != 0) return c;
  }
  return 0;
}

}  // namespace chorc
