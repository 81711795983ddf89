#include "chorc/seq.hpp"

#include "spine.hpp"

namespace chorc {

int compare(const SeqConfig& a, const SeqConfig& b) {
  if (int c = compare(*a.chor, *b.chor); c != 0) return c;
  return compare(a.state, b.state);
}

bool operator==(const SeqConfig& a, const SeqConfig& b) {
  return compare(a, b) == 0;
}

ChorPtr normalize(const ChorPtr& c) {
  struct Visitor {
    const ChorPtr& self;
    ChorPtr operator()(const CMCom& x) const {
      ChorPtr cont = normalize(x.cont);
      if (x.group.empty()) return cont;
      if (cont == x.cont) return self;
      return Chor::mcom(x.group, std::move(cont));
    }
    ChorPtr operator()(const CMSel& x) const {
      ChorPtr cont = normalize(x.cont);
      if (x.group.empty()) return cont;
      if (cont == x.cont) return self;
      return Chor::msel(x.group, std::move(cont));
    }
    ChorPtr operator()(const CIf& x) const {
      ChorPtr t = normalize(x.then_branch);
      ChorPtr e = normalize(x.else_branch);
      if (t == x.then_branch && e == x.else_branch) return self;
      return Chor::cond(x.proc, x.guard, std::move(t), std::move(e));
    }
    ChorPtr operator()(const CDef& x) const {
      ChorPtr scope = normalize(x.scope);
      if (std::holds_alternative<CEnd>(scope->node)) return scope;
      ChorPtr body = normalize(x.body);
      if (body == x.body && scope == x.scope) return self;
      return Chor::rec(x.name, x.procs, std::move(body), std::move(scope));
    }
    ChorPtr operator()(const CCall&) const { return self; }
    ChorPtr operator()(const CEnd&) const { return self; }
  };
  return std::visit(Visitor{c}, c->node);
}

bool is_terminated(const ChorPtr& c) {
  // Termination is closed under the precongruence, so unfolding may be
  // needed to see it (e.g. def X = 0 in X). The walk performs exactly those
  // unfolds; the term has terminated when nothing but definition wrappers
  // precede 0.
  auto frames = detail::walk_spine(normalize(c));
  for (const auto& f : frames)
    if (f.kind != detail::SpineFrame::Kind::Def &&
        f.kind != detail::SpineFrame::Kind::End)
      return false;
  return frames.back().kind == detail::SpineFrame::Kind::End;
}

std::optional<std::pair<TransitionLabel, SeqConfig>> step_seq(
    const SeqConfig& cfg) {
  using detail::SpineFrame;
  ChorPtr term = normalize(cfg.chor);
  std::vector<SpineFrame> frames = detail::walk_spine(term);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const SpineFrame& f = frames[k];
    switch (f.kind) {
      case SpineFrame::Kind::Def:
        continue;  // reduction happens inside the definition scope
      case SpineFrame::Kind::MCom: {
        // All sender expressions are evaluated under the pre-state, then all
        // receiver cells are updated: the group reduces as one simultaneous
        // interaction.
        GroupLabel label;
        State state = cfg.state;
        for (const Com& c : f.mcom.coms()) {
          Value v = eval(c.expr, cfg.state.locals(c.sender));
          label.coms.push_back(ComLabel{c.sender, v, c.receiver, c.var});
          state = state.with(c.receiver, c.var, std::move(v));
        }
        ChorPtr next =
            normalize(detail::rebuild_spine(frames, k, f.cont));
        return std::pair{TransitionLabel{std::move(label)},
                         SeqConfig{std::move(next), std::move(state)}};
      }
      case SpineFrame::Kind::MSel: {
        GroupLabel label;
        for (const Sel& s : f.msel.sels())
          label.sels.push_back(SelLabel{s.sender, s.receiver, s.label});
        ChorPtr next =
            normalize(detail::rebuild_spine(frames, k, f.cont));
        return std::pair{TransitionLabel{std::move(label)},
                         SeqConfig{std::move(next), cfg.state}};
      }
      case SpineFrame::Kind::If: {
        Value guard = eval(f.if_guard, cfg.state.locals(f.if_proc));
        bool take_then = guard.is_true();
        ChorPtr next = normalize(detail::rebuild_spine(
            frames, k, take_then ? f.if_then : f.if_else));
        TransitionLabel label =
            take_then ? TransitionLabel{ThenLabel{f.if_proc}}
                      : TransitionLabel{ElseLabel{f.if_proc}};
        return std::pair{std::move(label),
                         SeqConfig{std::move(next), cfg.state}};
      }
      case SpineFrame::Kind::Call:  // unguarded recursion: no redex
      case SpineFrame::Kind::End:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

SeqRun run_seq(SeqConfig cfg, std::uint64_t fuel) {
  SeqRun run;
  cfg.chor = normalize(cfg.chor);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    if (is_terminated(cfg.chor)) {
      run.trace.status = RunStatus::Terminated;
      run.final = std::move(cfg);
      return run;
    }
    auto step = step_seq(cfg);
    if (!step) {
      run.trace.status = RunStatus::Stuck;
      run.final = std::move(cfg);
      return run;
    }
    run.trace.labels.push_back(std::move(step->first));
    cfg = std::move(step->second);
  }
  run.trace.status =
      is_terminated(cfg.chor) ? RunStatus::Terminated : RunStatus::OutOfFuel;
  run.final = std::move(cfg);
  return run;
}

}  // namespace chorc
