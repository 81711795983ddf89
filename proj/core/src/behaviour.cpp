#include "chorc/behaviour.hpp"

#include <algorithm>

namespace chorc {

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

Theta Theta::send(ProcName to, ExprPtr expr) {
  return Theta{SendAct{std::move(to), std::move(expr)}};
}
Theta Theta::recv(ProcName from, VarName var) {
  return Theta{RecvAct{std::move(from), std::move(var)}};
}

// Sends order before receives, matching the usual display of theta groups.
int compare(const Theta& a, const Theta& b) {
  if (int c = cmp3(a.node.index(), b.node.index()); c != 0) return c;
  if (const auto* s = std::get_if<SendAct>(&a.node)) {
    const auto& t = std::get<SendAct>(b.node);
    if (int c = cmp3(s->to, t.to); c != 0) return c;
    return compare(*s->expr, *t.expr);
  }
  const auto& r = std::get<RecvAct>(a.node);
  const auto& t = std::get<RecvAct>(b.node);
  if (int c = cmp3(r.from, t.from); c != 0) return c;
  return cmp3(r.var, t.var);
}

bool operator==(const Theta& a, const Theta& b) { return compare(a, b) == 0; }

std::string to_text(const Theta& t) {
  if (const auto* s = std::get_if<SendAct>(&t.node))
    return s->to.value + "!" + to_text(*s->expr);
  const auto& r = std::get<RecvAct>(t.node);
  return r.from.value + "?" + r.var.value;
}

int compare(const SelAct& a, const SelAct& b) {
  if (int c = cmp3(a.to, b.to); c != 0) return c;
  return cmp3(a.label, b.label);
}

bool operator==(const SelAct& a, const SelAct& b) {
  return compare(a, b) == 0;
}

std::string to_text(const SelAct& s) {
  return s.to.value + "(+)[" + s.label.value + "]";
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

ThetaGroup ThetaGroup::of(std::vector<Theta> thetas) {
  ThetaGroup g;
  g.thetas_ = std::move(thetas);
  sort_dedup(g.thetas_);
  return g;
}

bool ThetaGroup::contains(const Theta& t) const {
  return std::any_of(thetas_.begin(), thetas_.end(),
                     [&](const Theta& x) { return x == t; });
}

ThetaGroup ThetaGroup::without(const Theta& t) const {
  std::vector<Theta> out;
  out.reserve(thetas_.size());
  for (const auto& x : thetas_)
    if (!(x == t)) out.push_back(x);
  return ThetaGroup::of(std::move(out));
}

SelActGroup SelActGroup::of(std::vector<SelAct> sels) {
  SelActGroup g;
  g.sels_ = std::move(sels);
  sort_dedup(g.sels_);
  return g;
}

bool SelActGroup::contains(const SelAct& s) const {
  return std::any_of(sels_.begin(), sels_.end(),
                     [&](const SelAct& x) { return x == s; });
}

SelActGroup SelActGroup::without(const SelAct& s) const {
  std::vector<SelAct> out;
  out.reserve(sels_.size());
  for (const auto& x : sels_)
    if (!(x == s)) out.push_back(x);
  return SelActGroup::of(std::move(out));
}

BehaviourPtr Behaviour::theta(ThetaGroup group, BehaviourPtr cont) {
  return std::make_shared<const Behaviour>(
      Behaviour{BTheta{std::move(group), std::move(cont)}});
}
BehaviourPtr Behaviour::sel(SelActGroup group, BehaviourPtr cont) {
  return std::make_shared<const Behaviour>(
      Behaviour{BSel{std::move(group), std::move(cont)}});
}
BehaviourPtr Behaviour::branch(ProcName from,
                               std::map<Label, BehaviourPtr> branches) {
  return std::make_shared<const Behaviour>(
      Behaviour{BBranch{std::move(from), std::move(branches)}});
}
BehaviourPtr Behaviour::cond(ExprPtr guard, BehaviourPtr then_branch,
                             BehaviourPtr else_branch) {
  return std::make_shared<const Behaviour>(Behaviour{BIf{
      std::move(guard), std::move(then_branch), std::move(else_branch)}});
}
BehaviourPtr Behaviour::rec(RecVar name, BehaviourPtr body,
                            BehaviourPtr scope) {
  return std::make_shared<const Behaviour>(
      Behaviour{BDef{std::move(name), std::move(body), std::move(scope)}});
}
BehaviourPtr Behaviour::call(RecVar name) {
  return std::make_shared<const Behaviour>(Behaviour{BCall{std::move(name)}});
}
BehaviourPtr Behaviour::end() {
  static const BehaviourPtr instance =
      std::make_shared<const Behaviour>(Behaviour{BEnd{}});
  return instance;
}

int compare(const Behaviour& a, const Behaviour& b) {
  if (int c = cmp3(a.node.index(), b.node.index()); c != 0) return c;
  struct Visitor {
    const Behaviour& rhs;
    int operator()(const BTheta& x) const {
      const auto& y = std::get<BTheta>(rhs.node);
      if (int c = cmp3(x.group.size(), y.group.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.group.size(); ++i)
        if (int c = compare(x.group.thetas()[i], y.group.thetas()[i]); c != 0)
          return c;
      return compare(*x.cont, *y.cont);
    }
    int operator()(const BSel& x) const {
      const auto& y = std::get<BSel>(rhs.node);
      if (int c = cmp3(x.group.size(), y.group.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.group.size(); ++i)
        if (int c = compare(x.group.sels()[i], y.group.sels()[i]); c != 0)
          return c;
      return compare(*x.cont, *y.cont);
    }
    int operator()(const BBranch& x) const {
      const auto& y = std::get<BBranch>(rhs.node);
      if (int c = cmp3(x.from, y.from); c != 0) return c;
      if (int c = cmp3(x.branches.size(), y.branches.size()); c != 0) return c;
      auto ix = x.branches.begin();
      auto iy = y.branches.begin();
      for (; ix != x.branches.end(); ++ix, ++iy) {
        if (int c = cmp3(ix->first, iy->first); c != 0) return c;
        if (int c = compare(*ix->second, *iy->second); c != 0) return c;
      }
      return 0;
    }
    int operator()(const BIf& x) const {
      const auto& y = std::get<BIf>(rhs.node);
      if (int c = compare(*x.guard, *y.guard); c != 0) return c;
      if (int c = compare(*x.then_branch, *y.then_branch); c != 0) return c;
      return compare(*x.else_branch, *y.else_branch);
    }
    int operator()(const BDef& x) const {
      const auto& y = std::get<BDef>(rhs.node);
      if (int c = cmp3(x.name, y.name); c != 0) return c;
      if (int c = compare(*x.body, *y.body); c != 0) return c;
      return compare(*x.scope, *y.scope);
    }
    int operator()(const BCall& x) const {
      return cmp3(x.name, std::get<BCall>(rhs.node).name);
    }
    int operator()(const BEnd&) const { return 0; }
  };
  return std::visit(Visitor{b}, a.node);
}

int compare(const BehaviourPtr& a, const BehaviourPtr& b) {
  return compare(*a, *b);
}

bool operator==(const Behaviour& a, const Behaviour& b) {
  return compare(a, b) == 0;
}

BehaviourPtr normalize(const BehaviourPtr& b) {
  struct Visitor {
    const BehaviourPtr& self;
    BehaviourPtr operator()(const BTheta& x) const {
      BehaviourPtr cont = normalize(x.cont);
      if (x.group.empty()) return cont;
      if (cont == x.cont) return self;
      return Behaviour::theta(x.group, std::move(cont));
    }
    BehaviourPtr operator()(const BSel& x) const {
      BehaviourPtr cont = normalize(x.cont);
      if (x.group.empty()) return cont;
      if (cont == x.cont) return self;
      return Behaviour::sel(x.group, std::move(cont));
    }
    BehaviourPtr operator()(const BBranch& x) const {
      std::map<Label, BehaviourPtr> branches;
      bool changed = false;
      for (const auto& [label, body] : x.branches) {
        BehaviourPtr n = normalize(body);
        changed = changed || n != body;
        branches.emplace(label, std::move(n));
      }
      if (!changed) return self;
      return Behaviour::branch(x.from, std::move(branches));
    }
    BehaviourPtr operator()(const BIf& x) const {
      BehaviourPtr t = normalize(x.then_branch);
      BehaviourPtr e = normalize(x.else_branch);
      if (t == x.then_branch && e == x.else_branch) return self;
      return Behaviour::cond(x.guard, std::move(t), std::move(e));
    }
    BehaviourPtr operator()(const BDef& x) const {
      BehaviourPtr scope = normalize(x.scope);
      if (std::holds_alternative<BEnd>(scope->node)) return scope;
      BehaviourPtr body = normalize(x.body);
      if (body == x.body && scope == x.scope) return self;
      return Behaviour::rec(x.name, std::move(body), std::move(scope));
    }
    BehaviourPtr operator()(const BCall&) const { return self; }
    BehaviourPtr operator()(const BEnd&) const { return self; }
  };
  return std::visit(Visitor{b}, b->node);
}

int compare(const Network& a, const Network& b) {
  if (int c = cmp3(a.procs.size(), b.procs.size()); c != 0) return c;
  auto ia = a.procs.begin();
  auto ib = b.procs.begin();
  for (; ia != a.procs.end(); ++ia, ++ib) {
    if (int c = cmp3(ia->first, ib->first); c != 0) return c;
    if (int c = compare(*ia->second, *ib->second); c != 0) return c;
  }
  return 0;
}

bool operator==(const Network& a, const Network& b) {
  return compare(a, b) == 0;
}

}  // namespace chorc
