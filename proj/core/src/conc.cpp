#include "chorc/conc.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <unordered_set>

#include "chorc/syntax.hpp"
#include "chorc/wellformed.hpp"
#include "spine.hpp"

namespace chorc {

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare(const Redex& a, const Redex& b) {
  auto pos_of = [](const Redex& r) {
    return std::visit([](const auto& x) { return x.pos; }, r);
  };
  if (int c = cmp3(pos_of(a), pos_of(b)); c != 0) return c;
  if (int c = cmp3(a.index(), b.index()); c != 0) return c;
  struct Visitor {
    const Redex& rhs;
    int operator()(const ComRedex& x) const {
      return compare(x.com, std::get<ComRedex>(rhs).com);
    }
    int operator()(const SelRedex& x) const {
      return compare(x.sel, std::get<SelRedex>(rhs).sel);
    }
    int operator()(const IfRedex& x) const {
      return cmp3(x.proc, std::get<IfRedex>(rhs).proc);
    }
  };
  return std::visit(Visitor{b}, a);
}

bool operator==(const Redex& a, const Redex& b) { return compare(a, b) == 0; }

std::string to_text(const Redex& r) {
  struct Visitor {
    std::string operator()(const ComRedex& x) const {
      return to_text(x.com) + " @" + std::to_string(x.pos);
    }
    std::string operator()(const SelRedex& x) const {
      return to_text(x.sel) + " @" + std::to_string(x.pos);
    }
    std::string operator()(const IfRedex& x) const {
      return "if " + x.proc.value + " @" + std::to_string(x.pos);
    }
  };
  return std::visit(Visitor{}, r);
}

namespace {

using detail::SpineFrame;

// A communication commutes past an earlier multicom iff adding it keeps the
// group well-formed, and past an earlier multisel iff no selection targets
// one of its endpoints.
bool com_passes(const Com& com, const SpineFrame& barrier) {
  if (barrier.kind == SpineFrame::Kind::MCom) {
    if (barrier.mcom.contains(com)) return false;
    return check_multicom(barrier.mcom.with(com)).empty();
  }
  if (barrier.kind == SpineFrame::Kind::MSel) {
    for (const Sel& s : barrier.msel.sels())
      if (s.receiver == com.sender || s.receiver == com.receiver)
        return false;
    return true;
  }
  return true;  // definitions are transparent
}

bool sel_passes(const Sel& sel, const SpineFrame& barrier) {
  if (barrier.kind == SpineFrame::Kind::MCom) {
    for (const Com& c : barrier.mcom.coms())
      if (c.sender == sel.receiver || c.receiver == sel.receiver)
        return false;
    return true;
  }
  if (barrier.kind == SpineFrame::Kind::MSel) {
    if (barrier.msel.contains(sel)) return false;
    return check_multisel(barrier.msel.with(sel)).empty();
  }
  return true;
}

// A conditional at p commutes past an earlier multicom iff no communication
// receives at p into a free variable of the guard, and past a multisel iff p
// is not a selection target.
bool if_passes(const ProcName& proc, const std::set<VarName>& guard_vars,
               const SpineFrame& barrier) {
  if (barrier.kind == SpineFrame::Kind::MCom) {
    for (const Com& c : barrier.mcom.coms())
      if (c.receiver == proc && guard_vars.count(c.var) > 0) return false;
    return true;
  }
  if (barrier.kind == SpineFrame::Kind::MSel) {
    for (const Sel& s : barrier.msel.sels())
      if (s.receiver == proc) return false;
    return true;
  }
  return true;
}

std::vector<Redex> enabled_on_frames(const std::vector<SpineFrame>& frames) {
  std::vector<Redex> out;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const SpineFrame& f = frames[k];
    auto barriers = [&](auto&& pass) {
      for (std::size_t j = 0; j < k; ++j)
        if (!pass(frames[j])) return false;
      return true;
    };
    switch (f.kind) {
      case SpineFrame::Kind::MCom:
        for (const Com& c : f.mcom.coms())
          if (barriers([&](const SpineFrame& b) { return com_passes(c, b); }))
            out.push_back(ComRedex{c, static_cast<int>(k)});
        break;
      case SpineFrame::Kind::MSel:
        for (const Sel& s : f.msel.sels())
          if (barriers([&](const SpineFrame& b) { return sel_passes(s, b); }))
            out.push_back(SelRedex{s, static_cast<int>(k)});
        break;
      case SpineFrame::Kind::If: {
        std::set<VarName> guard_vars = free_vars(f.if_guard);
        if (barriers([&](const SpineFrame& b) {
              return if_passes(f.if_proc, guard_vars, b);
            }))
          out.push_back(IfRedex{f.if_proc, static_cast<int>(k)});
        break;
      }
      default:
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<Redex> enabled_conc(const SeqConfig& cfg) {
  return enabled_on_frames(detail::walk_spine(normalize(cfg.chor)));
}

std::pair<TransitionLabel, SeqConfig> apply_redex(const SeqConfig& cfg,
                                                  const Redex& r) {
  ChorPtr term = normalize(cfg.chor);
  std::vector<SpineFrame> frames = detail::walk_spine(term);
  std::vector<Redex> enabled = enabled_on_frames(frames);
  if (std::find(enabled.begin(), enabled.end(), r) == enabled.end())
    throw StaleRedexError("redex is not enabled: " + to_text(r));

  struct Visitor {
    const std::vector<SpineFrame>& frames;
    const State& state;
    std::pair<TransitionLabel, SeqConfig> operator()(const ComRedex& x) const {
      const SpineFrame& f = frames[static_cast<std::size_t>(x.pos)];
      Multicom rest = f.mcom.without(x.com);
      ChorPtr tail =
          rest.empty() ? f.cont : Chor::mcom(std::move(rest), f.cont);
      Value v = eval(x.com.expr, state.locals(x.com.sender));
      State next = state.with(x.com.receiver, x.com.var, v);
      ComLabel label{x.com.sender, std::move(v), x.com.receiver, x.com.var};
      ChorPtr chor = normalize(detail::rebuild_spine(
          frames, static_cast<std::size_t>(x.pos), std::move(tail)));
      return {TransitionLabel{std::move(label)},
              SeqConfig{std::move(chor), std::move(next)}};
    }
    std::pair<TransitionLabel, SeqConfig> operator()(const SelRedex& x) const {
      const SpineFrame& f = frames[static_cast<std::size_t>(x.pos)];
      Multisel rest = f.msel.without(x.sel);
      ChorPtr tail =
          rest.empty() ? f.cont : Chor::msel(std::move(rest), f.cont);
      SelLabel label{x.sel.sender, x.sel.receiver, x.sel.label};
      ChorPtr chor = normalize(detail::rebuild_spine(
          frames, static_cast<std::size_t>(x.pos), std::move(tail)));
      return {TransitionLabel{label}, SeqConfig{std::move(chor), state}};
    }
    std::pair<TransitionLabel, SeqConfig> operator()(const IfRedex& x) const {
      const SpineFrame& f = frames[static_cast<std::size_t>(x.pos)];
      Value guard = eval(f.if_guard, state.locals(x.proc));
      bool take_then = guard.is_true();
      ChorPtr chor = normalize(
          detail::rebuild_spine(frames, static_cast<std::size_t>(x.pos),
                                take_then ? f.if_then : f.if_else));
      TransitionLabel label = take_then ? TransitionLabel{ThenLabel{x.proc}}
                                        : TransitionLabel{ElseLabel{x.proc}};
      return {std::move(label), SeqConfig{std::move(chor), state}};
    }
  };
  return std::visit(Visitor{frames, cfg.state}, r);
}

SeqRun run_conc(SeqConfig cfg, std::uint64_t fuel, std::uint64_t seed) {
  SeqRun run;
  cfg.chor = normalize(cfg.chor);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    std::vector<Redex> redexes = enabled_conc(cfg);
    if (redexes.empty()) {
      run.trace.status = is_terminated(cfg.chor) ? RunStatus::Terminated
                                                 : RunStatus::Stuck;
      run.final = std::move(cfg);
      return run;
    }
    const Redex& pick = redexes[rng() % redexes.size()];
    auto [label, next] = apply_redex(cfg, pick);
    run.trace.labels.push_back(std::move(label));
    cfg = std::move(next);
  }
  run.trace.status =
      is_terminated(cfg.chor) ? RunStatus::Terminated : RunStatus::OutOfFuel;
  run.final = std::move(cfg);
  return run;
}

namespace {

void explore(const SeqConfig& cfg, std::vector<TransitionLabel>& prefix,
             std::size_t max_steps, std::size_t max_execs,
             std::vector<ConcExecution>& out) {
  if (out.size() >= max_execs)
    throw std::runtime_error("all_executions: state space exceeds limit");
  std::vector<Redex> redexes = enabled_conc(cfg);
  if (redexes.empty()) {
    RunStatus status = is_terminated(cfg.chor) ? RunStatus::Terminated
                                               : RunStatus::Stuck;
    out.push_back(ConcExecution{Trace{prefix, status}, cfg});
    return;
  }
  if (prefix.size() >= max_steps) {
    out.push_back(ConcExecution{Trace{prefix, RunStatus::Truncated}, cfg});
    return;
  }
  for (const Redex& r : redexes) {
    auto [label, next] = apply_redex(cfg, r);
    prefix.push_back(std::move(label));
    explore(next, prefix, max_steps, max_execs, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<ConcExecution> all_executions(const SeqConfig& cfg,
                                          std::size_t max_steps,
                                          std::size_t max_execs) {
  std::vector<ConcExecution> out;
  std::vector<TransitionLabel> prefix;
  SeqConfig start{normalize(cfg.chor), cfg.state};
  explore(start, prefix, max_steps, max_execs, out);
  return out;
}

std::vector<Trace> all_traces(const SeqConfig& cfg, std::size_t max_steps) {
  std::vector<ConcExecution> execs = all_executions(cfg, max_steps);
  std::vector<Trace> traces;
  traces.reserve(execs.size());
  for (auto& e : execs) traces.push_back(std::move(e.trace));
  std::sort(traces.begin(), traces.end(),
            [](const Trace& a, const Trace& b) { return compare(a, b) < 0; });
  traces.erase(std::unique(traces.begin(), traces.end(),
                           [](const Trace& a, const Trace& b) {
                             return compare(a, b) == 0;
                           }),
               traces.end());
  return traces;
}

// ------------------------------------------------------- rewrite oracle

namespace {

// All single substitutions of one in-scope occurrence of `name` by `body`.
void unfold_variants(const ChorPtr& c, const RecVar& name,
                     const ChorPtr& body, std::vector<ChorPtr>& out) {
  struct Visitor {
    const ChorPtr& self;
    const RecVar& name;
    const ChorPtr& body;
    std::vector<ChorPtr>& out;
    void child(const ChorPtr& sub,
               const std::function<ChorPtr(const ChorPtr&)>& rebuild) const {
      std::vector<ChorPtr> subs;
      unfold_variants(sub, name, body, subs);
      for (const ChorPtr& s : subs) out.push_back(rebuild(s));
    }
    void operator()(const CMCom& x) const {
      child(x.cont, [&](const ChorPtr& s) { return Chor::mcom(x.group, s); });
    }
    void operator()(const CMSel& x) const {
      child(x.cont, [&](const ChorPtr& s) { return Chor::msel(x.group, s); });
    }
    void operator()(const CIf& x) const {
      child(x.then_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, s, x.else_branch);
      });
      child(x.else_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, x.then_branch, s);
      });
    }
    void operator()(const CDef& x) const {
      if (x.name == name) return;  // shadowed
      child(x.body, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, s, x.scope);
      });
      child(x.scope, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, x.body, s);
      });
    }
    void operator()(const CCall& x) const {
      if (x.name == name) out.push_back(body);
    }
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{c, name, body, out}, c->node);
}

bool mcom_if_condition(const Multicom& h, const ProcName& proc,
                       const ExprPtr& guard) {
  std::set<VarName> guard_vars = free_vars(guard);
  for (const Com& c : h.coms())
    if (c.receiver == proc && guard_vars.count(c.var) > 0) return false;
  return true;
}

bool msel_if_condition(const Multisel& phi, const ProcName& proc) {
  for (const Sel& s : phi.sels())
    if (s.receiver == proc) return false;
  return true;
}

bool mcom_msel_condition(const Multicom& h, const Multisel& phi) {
  std::set<ProcName> procs = pn(h);
  for (const Sel& s : phi.sels())
    if (procs.count(s.receiver) > 0) return false;
  return true;
}

void head_rewrites(const ChorPtr& c, std::vector<ChorPtr>& out) {
  if (const auto* x = std::get_if<CMCom>(&c->node)) {
    const auto& coms = x->group.coms();
    if (coms.empty()) {
      out.push_back(x->cont);  // empty group collapses
      return;
    }
    // split into any nonempty proper subset and its complement
    if (coms.size() > 1 && coms.size() <= 16) {
      for (std::uint32_t mask = 1; mask + 1 < (1u << coms.size()); ++mask) {
        std::vector<Com> first, second;
        for (std::size_t i = 0; i < coms.size(); ++i)
          ((mask >> i) & 1u ? first : second).push_back(coms[i]);
        out.push_back(Chor::mcom(
            Multicom::of(std::move(first)),
            Chor::mcom(Multicom::of(std::move(second)), x->cont)));
      }
    }
    if (const auto* y = std::get_if<CMCom>(&x->cont->node)) {
      bool disjoint = true;
      for (const Com& c2 : y->group.coms())
        if (x->group.contains(c2)) disjoint = false;
      if (disjoint) {
        std::vector<Com> merged = x->group.coms();
        merged.insert(merged.end(), y->group.coms().begin(),
                      y->group.coms().end());
        Multicom m = Multicom::of(std::move(merged));
        if (check_multicom(m).empty())
          out.push_back(Chor::mcom(std::move(m), y->cont));
      }
    }
    if (const auto* y = std::get_if<CMSel>(&x->cont->node)) {
      if (mcom_msel_condition(x->group, y->group))
        out.push_back(
            Chor::msel(y->group, Chor::mcom(x->group, y->cont)));
    }
    if (const auto* y = std::get_if<CIf>(&x->cont->node)) {
      if (mcom_if_condition(x->group, y->proc, y->guard))
        out.push_back(Chor::cond(y->proc, y->guard,
                                 Chor::mcom(x->group, y->then_branch),
                                 Chor::mcom(x->group, y->else_branch)));
    }
    if (const auto* y = std::get_if<CDef>(&x->cont->node)) {
      out.push_back(Chor::rec(y->name, y->procs, y->body,
                              Chor::mcom(x->group, y->scope)));
    }
    return;
  }
  if (const auto* x = std::get_if<CMSel>(&c->node)) {
    const auto& sels = x->group.sels();
    if (sels.empty()) {
      out.push_back(x->cont);
      return;
    }
    if (sels.size() > 1 && sels.size() <= 16) {
      for (std::uint32_t mask = 1; mask + 1 < (1u << sels.size()); ++mask) {
        std::vector<Sel> first, second;
        for (std::size_t i = 0; i < sels.size(); ++i)
          ((mask >> i) & 1u ? first : second).push_back(sels[i]);
        out.push_back(Chor::msel(
            Multisel::of(std::move(first)),
            Chor::msel(Multisel::of(std::move(second)), x->cont)));
      }
    }
    if (const auto* y = std::get_if<CMSel>(&x->cont->node)) {
      bool disjoint = true;
      for (const Sel& s2 : y->group.sels())
        if (x->group.contains(s2)) disjoint = false;
      if (disjoint) {
        std::vector<Sel> merged = x->group.sels();
        merged.insert(merged.end(), y->group.sels().begin(),
                      y->group.sels().end());
        Multisel m = Multisel::of(std::move(merged));
        if (check_multisel(m).empty())
          out.push_back(Chor::msel(std::move(m), y->cont));
      }
    }
    if (const auto* y = std::get_if<CMCom>(&x->cont->node)) {
      if (mcom_msel_condition(y->group, x->group))
        out.push_back(
            Chor::mcom(y->group, Chor::msel(x->group, y->cont)));
    }
    if (const auto* y = std::get_if<CIf>(&x->cont->node)) {
      if (msel_if_condition(x->group, y->proc))
        out.push_back(Chor::cond(y->proc, y->guard,
                                 Chor::msel(x->group, y->then_branch),
                                 Chor::msel(x->group, y->else_branch)));
    }
    if (const auto* y = std::get_if<CDef>(&x->cont->node)) {
      out.push_back(Chor::rec(y->name, y->procs, y->body,
                              Chor::msel(x->group, y->scope)));
    }
    return;
  }
  if (const auto* x = std::get_if<CIf>(&c->node)) {
    if (const auto* t = std::get_if<CMCom>(&x->then_branch->node)) {
      if (const auto* e = std::get_if<CMCom>(&x->else_branch->node)) {
        if (t->group == e->group &&
            mcom_if_condition(t->group, x->proc, x->guard))
          out.push_back(Chor::mcom(
              t->group, Chor::cond(x->proc, x->guard, t->cont, e->cont)));
      }
    }
    if (const auto* t = std::get_if<CMSel>(&x->then_branch->node)) {
      if (const auto* e = std::get_if<CMSel>(&x->else_branch->node)) {
        if (t->group == e->group && msel_if_condition(t->group, x->proc))
          out.push_back(Chor::msel(
              t->group, Chor::cond(x->proc, x->guard, t->cont, e->cont)));
      }
    }
    if (const auto* t = std::get_if<CIf>(&x->then_branch->node)) {
      if (const auto* e = std::get_if<CIf>(&x->else_branch->node)) {
        if (t->proc == e->proc && *t->guard == *e->guard)
          out.push_back(Chor::cond(
              t->proc, t->guard,
              Chor::cond(x->proc, x->guard, t->then_branch, e->then_branch),
              Chor::cond(x->proc, x->guard, t->else_branch,
                         e->else_branch)));
      }
    }
    return;
  }
  if (const auto* x = std::get_if<CDef>(&c->node)) {
    if (std::holds_alternative<CEnd>(x->scope->node)) {
      out.push_back(Chor::end());  // terminated scope collects the def
    }
    if (const auto* y = std::get_if<CMCom>(&x->scope->node)) {
      out.push_back(Chor::mcom(
          y->group, Chor::rec(x->name, x->procs, x->body, y->cont)));
    }
    if (const auto* y = std::get_if<CMSel>(&x->scope->node)) {
      out.push_back(Chor::msel(
          y->group, Chor::rec(x->name, x->procs, x->body, y->cont)));
    }
    std::vector<ChorPtr> unfolds;
    unfold_variants(x->scope, x->name, x->body, unfolds);
    for (const ChorPtr& s : unfolds)
      out.push_back(Chor::rec(x->name, x->procs, x->body, s));
    return;
  }
}

}  // namespace

std::vector<ChorPtr> congruence_rewrites(const ChorPtr& c) {
  std::vector<ChorPtr> out;
  head_rewrites(c, out);
  struct Visitor {
    const ChorPtr& self;
    std::vector<ChorPtr>& out;
    void child(const ChorPtr& sub,
               const std::function<ChorPtr(const ChorPtr&)>& rebuild) const {
      for (const ChorPtr& s : congruence_rewrites(sub)) out.push_back(rebuild(s));
    }
    void operator()(const CMCom& x) const {
      child(x.cont, [&](const ChorPtr& s) { return Chor::mcom(x.group, s); });
    }
    void operator()(const CMSel& x) const {
      child(x.cont, [&](const ChorPtr& s) { return Chor::msel(x.group, s); });
    }
    void operator()(const CIf& x) const {
      child(x.then_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, s, x.else_branch);
      });
      child(x.else_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, x.then_branch, s);
      });
    }
    void operator()(const CDef& x) const {
      child(x.body, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, s, x.scope);
      });
      child(x.scope, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, x.body, s);
      });
    }
    void operator()(const CCall&) const {}
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{c, out}, c->node);
  return out;
}

namespace {

constexpr std::size_t kOracleVisitedLimit = 200000;

// Bounded BFS over the rewrite graph; visits `stop` for every reached term
// until it returns true.
bool rewrite_search(const ChorPtr& from, std::size_t bound,
                    auto&& stop) {
  std::unordered_set<std::string> visited;
  std::deque<std::pair<ChorPtr, std::size_t>> queue;
  visited.insert(print_chor(from));
  queue.emplace_back(from, 0);
  while (!queue.empty()) {
    auto [term, depth] = queue.front();
    queue.pop_front();
    if (stop(term)) return true;
    if (depth >= bound || visited.size() > kOracleVisitedLimit) continue;
    for (const ChorPtr& next : congruence_rewrites(term)) {
      std::string key = print_chor(next);
      if (visited.insert(std::move(key)).second)
        queue.emplace_back(next, depth + 1);
    }
  }
  return false;
}

}  // namespace

bool equiv_oracle(const ChorPtr& from, const ChorPtr& to, std::size_t bound) {
  return rewrite_search(
      from, bound, [&](const ChorPtr& t) { return *t == *to; });
}

bool confirm_redex(const SeqConfig& cfg, const Redex& r, std::size_t bound) {
  SeqConfig start{normalize(cfg.chor), cfg.state};
  auto [expected_label, expected] = apply_redex(start, r);

  auto same_result = [&](const ChorPtr& reduct, const State& state) {
    if (!(state == expected.state)) return false;
    ChorPtr n = normalize(reduct);
    if (*n == *expected.chor) return true;
    return equiv_oracle(n, expected.chor, bound) ||
           equiv_oracle(expected.chor, n, bound);
  };

  TransitionLabel want = expected_label;
  const State& sigma = start.state;
  return rewrite_search(start.chor, bound, [&](const ChorPtr& t) {
    // Reductions happen inside definition wrappers (the context rule), so
    // peel them before matching the head and wrap them around the reduct.
    std::vector<const CDef*> defs;
    const Chor* inner = t.get();
    while (const auto* d = std::get_if<CDef>(&inner->node)) {
      defs.push_back(d);
      inner = d->scope.get();
    }
    auto wrap = [&](ChorPtr reduct) {
      for (std::size_t i = defs.size(); i-- > 0;)
        reduct = Chor::rec(defs[i]->name, defs[i]->procs, defs[i]->body,
                           std::move(reduct));
      return reduct;
    };
    if (const auto* x = std::get_if<ComRedex>(&r)) {
      const auto* head = std::get_if<CMCom>(&inner->node);
      if (head == nullptr || head->group.size() != 1 ||
          !(head->group.coms().front() == x->com))
        return false;
      Value v = eval(x->com.expr, sigma.locals(x->com.sender));
      TransitionLabel got =
          ComLabel{x->com.sender, v, x->com.receiver, x->com.var};
      if (!(got == want)) return false;
      State next = sigma.with(x->com.receiver, x->com.var, std::move(v));
      return same_result(wrap(head->cont), next);
    }
    if (const auto* x = std::get_if<SelRedex>(&r)) {
      const auto* head = std::get_if<CMSel>(&inner->node);
      if (head == nullptr || head->group.size() != 1 ||
          !(head->group.sels().front() == x->sel))
        return false;
      TransitionLabel got =
          SelLabel{x->sel.sender, x->sel.receiver, x->sel.label};
      if (!(got == want)) return false;
      return same_result(wrap(head->cont), sigma);
    }
    const auto& x = std::get<IfRedex>(r);
    const auto* head = std::get_if<CIf>(&inner->node);
    if (head == nullptr || !(head->proc == x.proc)) return false;
    bool take_then = eval(head->guard, sigma.locals(x.proc)).is_true();
    TransitionLabel got = take_then ? TransitionLabel{ThenLabel{x.proc}}
                                    : TransitionLabel{ElseLabel{x.proc}};
    if (!(got == want)) return false;
    return same_result(
        wrap(take_then ? head->then_branch : head->else_branch), sigma);
  });
}

}  // namespace chorc
