#include "chorc/epp.hpp"

#include <map>
#include <utility>
#include <vector>

#include "chorc/net.hpp"
#include "chorc/syntax.hpp"

namespace chorc {

ProjectionError::ProjectionError(Kind kind, ProcName process,
                                 std::string path, std::string detail)
    : std::runtime_error(
          (process.value.empty() ? std::string("merge")
                                 : "process " + process.value) +
          " at " + path + ": " +
          (kind == Kind::MergeConflict ? "cannot merge " : "self-projection ") +
          detail),
      kind(kind),
      process(std::move(process)),
      path(std::move(path)),
      detail(std::move(detail)) {}

// ----------------------------------------------------------- annotation

namespace {

using DefId = const Chor*;
using Ann = std::map<DefId, std::set<ProcName>>;
using Binding = std::pair<RecVar, DefId>;

DefId resolve(const std::vector<Binding>& env, const RecVar& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return it->second;
  return nullptr;
}

// Process names in the body, with calls contributing the current annotation
// of their definition.
void collect_ann(const Chor& c, std::vector<Binding>& env, const Ann& ann,
                 std::set<ProcName>& out) {
  struct Visitor {
    const Chor& self;
    std::vector<Binding>& env;
    const Ann& ann;
    std::set<ProcName>& out;
    void operator()(const CMCom& x) const {
      for (const auto& h : x.group.coms()) {
        out.insert(h.sender);
        out.insert(h.receiver);
      }
      collect_ann(*x.cont, env, ann, out);
    }
    void operator()(const CMSel& x) const {
      for (const auto& s : x.group.sels()) {
        out.insert(s.sender);
        out.insert(s.receiver);
      }
      collect_ann(*x.cont, env, ann, out);
    }
    void operator()(const CIf& x) const {
      out.insert(x.proc);
      collect_ann(*x.then_branch, env, ann, out);
      collect_ann(*x.else_branch, env, ann, out);
    }
    void operator()(const CDef& x) const {
      env.emplace_back(x.name, &self);
      collect_ann(*x.body, env, ann, out);
      collect_ann(*x.scope, env, ann, out);
      env.pop_back();
    }
    void operator()(const CCall& x) const {
      if (DefId d = resolve(env, x.name); d != nullptr) {
        auto it = ann.find(d);
        if (it != ann.end()) out.insert(it->second.begin(), it->second.end());
      }
    }
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{c, env, ann, out}, c.node);
}

void gather_defs(const Chor& c, std::vector<Binding>& env,
                 std::vector<std::pair<DefId, const CDef*>>& defs) {
  struct Visitor {
    const Chor& self;
    std::vector<Binding>& env;
    std::vector<std::pair<DefId, const CDef*>>& defs;
    void operator()(const CMCom& x) const {
      gather_defs(*x.cont, env, defs);
    }
    void operator()(const CMSel& x) const {
      gather_defs(*x.cont, env, defs);
    }
    void operator()(const CIf& x) const {
      gather_defs(*x.then_branch, env, defs);
      gather_defs(*x.else_branch, env, defs);
    }
    void operator()(const CDef& x) const {
      defs.emplace_back(&self, &x);
      env.emplace_back(x.name, &self);
      gather_defs(*x.body, env, defs);
      gather_defs(*x.scope, env, defs);
      env.pop_back();
    }
    void operator()(const CCall&) const {}
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{c, env, defs}, c.node);
}

ChorPtr fill_ann(const ChorPtr& c, std::vector<Binding>& env, const Ann& ann) {
  struct Visitor {
    const ChorPtr& self;
    std::vector<Binding>& env;
    const Ann& ann;
    ChorPtr operator()(const CMCom& x) const {
      return Chor::mcom(x.group, fill_ann(x.cont, env, ann));
    }
    ChorPtr operator()(const CMSel& x) const {
      return Chor::msel(x.group, fill_ann(x.cont, env, ann));
    }
    ChorPtr operator()(const CIf& x) const {
      return Chor::cond(x.proc, x.guard, fill_ann(x.then_branch, env, ann),
                        fill_ann(x.else_branch, env, ann));
    }
    ChorPtr operator()(const CDef& x) const {
      auto it = ann.find(self.get());
      std::set<ProcName> procs =
          it == ann.end() ? x.procs : it->second;
      env.emplace_back(x.name, self.get());
      ChorPtr body = fill_ann(x.body, env, ann);
      ChorPtr scope = fill_ann(x.scope, env, ann);
      env.pop_back();
      return Chor::rec(x.name, std::move(procs), std::move(body),
                       std::move(scope));
    }
    ChorPtr operator()(const CCall& x) const {
      DefId d = resolve(env, x.name);
      if (d == nullptr) return self;
      auto it = ann.find(d);
      return Chor::call(x.name,
                        it == ann.end() ? x.procs : it->second);
    }
    ChorPtr operator()(const CEnd&) const { return self; }
  };
  return std::visit(Visitor{c, env, ann}, c->node);
}

}  // namespace

ChorPtr annotate(const ChorPtr& c) {
  std::vector<std::pair<DefId, const CDef*>> defs;
  std::vector<Binding> env;
  gather_defs(*c, env, defs);
  if (defs.empty()) return c;

  // The binding environment at each definition is reconstructed per round
  // by walking from the root.
  Ann ann;
  for (const auto& [id, def] : defs) ann[id] = {};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, def] : defs) {
      // Rebuild the binding environment for this definition's body.
      struct Finder {
        DefId target;
        std::vector<Binding> env;
        bool found = false;
        void walk(const Chor& c) {
          if (found) return;
          if (const auto* x = std::get_if<CDef>(&c.node)) {
            env.emplace_back(x->name, &c);
            if (&c == target) {
              found = true;
              return;
            }
            walk(*x->body);
            if (found) return;
            walk(*x->scope);
            if (!found) env.pop_back();
            return;
          }
          if (const auto* x = std::get_if<CMCom>(&c.node)) return walk(*x->cont);
          if (const auto* x = std::get_if<CMSel>(&c.node)) return walk(*x->cont);
          if (const auto* x = std::get_if<CIf>(&c.node)) {
            walk(*x->then_branch);
            if (!found) walk(*x->else_branch);
          }
        }
      };
      Finder finder{id, {}, false};
      finder.walk(*c);
      std::set<ProcName> next;
      collect_ann(*def->body, finder.env, ann, next);
      if (next != ann[id]) {
        ann[id] = std::move(next);
        changed = true;
      }
    }
  }
  env.clear();
  return fill_ann(c, env, ann);
}

// ------------------------------------------------------------- projection

namespace {

BehaviourPtr merge_or_throw(const BehaviourPtr& a, const BehaviourPtr& b) {
  if (const auto* x = std::get_if<BTheta>(&a->node)) {
    if (const auto* y = std::get_if<BTheta>(&b->node);
        y != nullptr && x->group == y->group)
      return Behaviour::theta(x->group, merge_or_throw(x->cont, y->cont));
  } else if (const auto* x = std::get_if<BSel>(&a->node)) {
    if (const auto* y = std::get_if<BSel>(&b->node);
        y != nullptr && x->group == y->group)
      return Behaviour::sel(x->group, merge_or_throw(x->cont, y->cont));
  } else if (const auto* x = std::get_if<BBranch>(&a->node)) {
    if (const auto* y = std::get_if<BBranch>(&b->node);
        y != nullptr && x->from == y->from) {
      std::map<Label, BehaviourPtr> branches = x->branches;
      for (const auto& [label, body] : y->branches) {
        auto it = branches.find(label);
        if (it == branches.end())
          branches.emplace(label, body);
        else
          it->second = merge_or_throw(it->second, body);
      }
      return Behaviour::branch(x->from, std::move(branches));
    }
  } else if (const auto* x = std::get_if<BIf>(&a->node)) {
    if (const auto* y = std::get_if<BIf>(&b->node);
        y != nullptr && *x->guard == *y->guard)
      return Behaviour::cond(x->guard,
                             merge_or_throw(x->then_branch, y->then_branch),
                             merge_or_throw(x->else_branch, y->else_branch));
  } else if (const auto* x = std::get_if<BDef>(&a->node)) {
    if (const auto* y = std::get_if<BDef>(&b->node);
        y != nullptr && x->name == y->name)
      return Behaviour::rec(x->name, merge_or_throw(x->body, y->body),
                            merge_or_throw(x->scope, y->scope));
  } else if (const auto* x = std::get_if<BCall>(&a->node)) {
    if (const auto* y = std::get_if<BCall>(&b->node);
        y != nullptr && x->name == y->name)
      return a;
  } else if (std::holds_alternative<BEnd>(a->node) &&
             std::holds_alternative<BEnd>(b->node)) {
    return a;
  }
  throw ProjectionError(ProjectionError::Kind::MergeConflict, ProcName{}, "$",
                        print_behaviour(a) + "  vs  " + print_behaviour(b));
}

BehaviourPtr project_at(const ChorPtr& c, const ProcName& r,
                        const std::string& path) {
  struct Visitor {
    const ProcName& r;
    const std::string& path;
    BehaviourPtr operator()(const CMCom& x) const {
      std::vector<Theta> thetas;
      for (const Com& h : x.group.coms()) {
        if (h.sender == h.receiver && h.sender == r)
          throw ProjectionError(ProjectionError::Kind::SelfProjection, r,
                                path, to_text(h));
        if (h.sender == r) thetas.push_back(Theta::send(h.receiver, h.expr));
        if (h.receiver == r) thetas.push_back(Theta::recv(h.sender, h.var));
      }
      BehaviourPtr cont = project_at(x.cont, r, path + ".cont");
      if (thetas.empty()) return cont;
      return Behaviour::theta(ThetaGroup::of(std::move(thetas)),
                              std::move(cont));
    }
    BehaviourPtr operator()(const CMSel& x) const {
      // In a well-formed multisel, r is the target of at most one selection
      // and never both target and sender.
      const Sel* incoming = nullptr;
      std::vector<SelAct> outgoing;
      for (const Sel& s : x.group.sels()) {
        if (s.sender == s.receiver && s.sender == r)
          throw ProjectionError(ProjectionError::Kind::SelfProjection, r,
                                path, to_text(s));
        if (s.receiver == r) {
          if (incoming != nullptr)
            throw ProjectionError(
                ProjectionError::Kind::MergeConflict, r, path,
                "two selections target " + r.value + ": " +
                    to_text(*incoming) + "  vs  " + to_text(s));
          incoming = &s;
        }
        if (s.sender == r) outgoing.push_back(SelAct{s.receiver, s.label});
      }
      if (incoming != nullptr && !outgoing.empty())
        throw ProjectionError(ProjectionError::Kind::MergeConflict, r, path,
                              r.value + " is both selection target and sender");
      BehaviourPtr cont = project_at(x.cont, r, path + ".cont");
      if (incoming != nullptr)
        return Behaviour::branch(incoming->sender,
                                 {{incoming->label, std::move(cont)}});
      if (outgoing.empty()) return cont;
      return Behaviour::sel(SelActGroup::of(std::move(outgoing)),
                            std::move(cont));
    }
    BehaviourPtr operator()(const CIf& x) const {
      BehaviourPtr t = project_at(x.then_branch, r, path + ".then");
      BehaviourPtr e = project_at(x.else_branch, r, path + ".else");
      if (x.proc == r) return Behaviour::cond(x.guard, t, e);
      try {
        return merge_or_throw(t, e);
      } catch (const ProjectionError& err) {
        if (err.process.value.empty())
          throw ProjectionError(err.kind, r, path, err.detail);
        throw;
      }
    }
    BehaviourPtr operator()(const CDef& x) const {
      if (x.procs.count(r) > 0)
        return Behaviour::rec(x.name, project_at(x.body, r, path + ".body"),
                              project_at(x.scope, r, path + ".scope"));
      return project_at(x.scope, r, path + ".scope");
    }
    BehaviourPtr operator()(const CCall& x) const {
      if (x.procs.count(r) > 0) return Behaviour::call(x.name);
      return Behaviour::end();
    }
    BehaviourPtr operator()(const CEnd&) const { return Behaviour::end(); }
  };
  return std::visit(Visitor{r, path}, c->node);
}

}  // namespace

BehaviourPtr merge(const BehaviourPtr& a, const BehaviourPtr& b) {
  return merge_or_throw(a, b);
}

BehaviourPtr project_behaviour(const ChorPtr& c, const ProcName& r) {
  return project_at(c, r, "$");
}

Network project(const ChorPtr& c) {
  Network n;
  for (const ProcName& r : pn(c)) n.procs.emplace(r, project_behaviour(c, r));
  return n;
}

// ---------------------------------------------------------------- pruning

namespace {

bool calls_name(const Behaviour& b, const RecVar& name) {
  struct Visitor {
    const RecVar& name;
    bool operator()(const BTheta& x) const { return calls_name(*x.cont, name); }
    bool operator()(const BSel& x) const { return calls_name(*x.cont, name); }
    bool operator()(const BBranch& x) const {
      for (const auto& [label, body] : x.branches)
        if (calls_name(*body, name)) return true;
      return false;
    }
    bool operator()(const BIf& x) const {
      return calls_name(*x.then_branch, name) ||
             calls_name(*x.else_branch, name);
    }
    bool operator()(const BDef& x) const {
      if (x.name == name) return false;  // rebound
      return calls_name(*x.body, name) || calls_name(*x.scope, name);
    }
    bool operator()(const BCall& x) const { return x.name == name; }
    bool operator()(const BEnd&) const { return false; }
  };
  return std::visit(Visitor{name}, b.node);
}

using BEnv = std::vector<std::pair<RecVar, BehaviourPtr>>;

const BehaviourPtr* benv_resolve(const BEnv& env, const RecVar& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

// Structural pruning with unfold-on-demand: definitions consumed on one side
// but not the other are crossed by unfolding each procedure at most once per
// comparison path.
bool pruned_by(const BehaviourPtr& small, BEnv& small_env,
               const BehaviourPtr& big, BEnv& big_env,
               std::set<RecVar> small_unfolded,
               std::set<RecVar> big_unfolded);

bool pruned_by_cont(const BehaviourPtr& small, BEnv& small_env,
                    const BehaviourPtr& big, BEnv& big_env) {
  return pruned_by(small, small_env, big, big_env, {}, {});
}

bool pruned_by(const BehaviourPtr& small, BEnv& small_env,
               const BehaviourPtr& big, BEnv& big_env,
               std::set<RecVar> small_unfolded,
               std::set<RecVar> big_unfolded) {
  if (const auto* x = std::get_if<BCall>(&small->node)) {
    if (const auto* y = std::get_if<BCall>(&big->node))
      return x->name == y->name;
  }
  // Unfold a call facing a non-call, at most once per name per path.
  if (const auto* x = std::get_if<BCall>(&small->node)) {
    const BehaviourPtr* body = benv_resolve(small_env, x->name);
    if (body != nullptr && small_unfolded.count(x->name) == 0) {
      small_unfolded.insert(x->name);
      return pruned_by(normalize(*body), small_env, big, big_env,
                       std::move(small_unfolded), std::move(big_unfolded));
    }
    return false;
  }
  if (const auto* y = std::get_if<BCall>(&big->node)) {
    const BehaviourPtr* body = benv_resolve(big_env, y->name);
    if (body != nullptr && big_unfolded.count(y->name) == 0) {
      big_unfolded.insert(y->name);
      return pruned_by(small, small_env, normalize(*body), big_env,
                       std::move(small_unfolded), std::move(big_unfolded));
    }
    return false;
  }

  if (const auto* x = std::get_if<BDef>(&small->node)) {
    if (const auto* y = std::get_if<BDef>(&big->node);
        y != nullptr && x->name == y->name) {
      if (!(*x->body == *y->body)) return false;
      small_env.emplace_back(x->name, x->body);
      big_env.emplace_back(y->name, y->body);
      bool ok = pruned_by(x->scope, small_env, y->scope, big_env,
                          std::move(small_unfolded), std::move(big_unfolded));
      small_env.pop_back();
      big_env.pop_back();
      return ok;
    }
  }
  // A definition on the big side whose procedure the small side no longer
  // needs is absorbed when unused in the live scope.
  if (const auto* y = std::get_if<BDef>(&big->node)) {
    if (!std::holds_alternative<BDef>(small->node) &&
        !calls_name(*y->scope, y->name))
      return pruned_by(small, small_env, y->scope, big_env,
                       std::move(small_unfolded), std::move(big_unfolded));
  }

  if (small->node.index() != big->node.index()) return false;

  if (const auto* x = std::get_if<BTheta>(&small->node)) {
    const auto& y = std::get<BTheta>(big->node);
    return x->group == y.group &&
           pruned_by_cont(x->cont, small_env, y.cont, big_env);
  }
  if (const auto* x = std::get_if<BSel>(&small->node)) {
    const auto& y = std::get<BSel>(big->node);
    return x->group == y.group &&
           pruned_by_cont(x->cont, small_env, y.cont, big_env);
  }
  if (const auto* x = std::get_if<BBranch>(&small->node)) {
    const auto& y = std::get<BBranch>(big->node);
    if (!(x->from == y.from)) return false;
    for (const auto& [label, body] : x->branches) {
      auto it = y.branches.find(label);
      if (it == y.branches.end()) return false;
      if (!pruned_by_cont(body, small_env, it->second, big_env)) return false;
    }
    return true;  // extra labels on the big side are the pruned branches
  }
  if (const auto* x = std::get_if<BIf>(&small->node)) {
    const auto& y = std::get<BIf>(big->node);
    return *x->guard == *y.guard &&
           pruned_by_cont(x->then_branch, small_env, y.then_branch, big_env) &&
           pruned_by_cont(x->else_branch, small_env, y.else_branch, big_env);
  }
  return std::holds_alternative<BEnd>(small->node);
}

}  // namespace

bool prunes(const Network& small, const Network& big) {
  // Processes that have terminated (possibly behind unfolds) are absorbed by
  // the network precongruence on either side.
  auto live = [](const Network& n) {
    Network out;
    for (const auto& [name, beh] : normalize_net(n).procs)
      if (!behaviour_terminated(beh)) out.procs.emplace(name, beh);
    return out;
  };
  Network s = live(small);
  Network b = live(big);
  if (s.procs.size() != b.procs.size()) return false;
  auto is = s.procs.begin();
  auto ib = b.procs.begin();
  for (; is != s.procs.end(); ++is, ++ib) {
    if (!(is->first == ib->first)) return false;
    BEnv small_env, big_env;
    if (!pruned_by(is->second, small_env, ib->second, big_env, {}, {}))
      return false;
  }
  return true;
}

}  // namespace chorc
