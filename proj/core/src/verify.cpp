#include "chorc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "chorc/conc.hpp"
#include "chorc/epp.hpp"
#include "chorc/net.hpp"
#include "chorc/syntax.hpp"
#include "chorc/wellformed.hpp"
#include "spine.hpp"

namespace chorc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string config_key(const SeqConfig& cfg) {
  return print_chor(cfg.chor) + "\n##\n" + print_state(cfg.state);
}

// ----------------------------------------------------------- generator

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    for (int i = 0; i < std::max(2, cfg.process_pool); ++i)
      pool_.push_back(ProcName("p" + std::to_string(i + 1)));
    vars_ = {VarName("x"), VarName("y"), VarName("z")};
  }

  ChorPtr generate() {
    for (int attempt = 0; attempt < cfg_.resample_budget; ++attempt) {
      std::vector<RecVar> defs;
      ChorPtr c = gen(cfg_.max_depth, defs, true);
      if (std::holds_alternative<CEnd>(c->node)) continue;
      if (!check_chor(c).empty()) continue;
      ChorPtr annotated = annotate(c);
      if (cfg_.require_projectable) {
        try {
          project(annotated);
        } catch (const ProjectionError&) {
          continue;
        }
      }
      return annotated;
    }
    throw std::runtime_error("gen_chor: resampling budget exhausted");
  }

  const std::vector<ProcName>& pool() const { return pool_; }
  const std::vector<VarName>& vars() const { return vars_; }

 private:
  std::size_t pick(std::size_t n) { return rng_() % n; }

  const ProcName& pick_proc() { return pool_[pick(pool_.size())]; }

  ProcName pick_proc_not(const ProcName& avoid) {
    while (true) {
      const ProcName& p = pick_proc();
      if (!(p == avoid)) return p;
    }
  }

  ExprPtr gen_expr() {
    switch (pick(4)) {
      case 0: return Expr::lit(static_cast<std::int64_t>(pick(10)));
      case 1:
      case 2: return Expr::var(vars_[pick(vars_.size())]);
      default:
        return Expr::bin(BinOpKind::Add, Expr::var(vars_[pick(vars_.size())]),
                         Expr::lit(static_cast<std::int64_t>(pick(5))));
    }
  }

  ExprPtr gen_guard() {
    switch (pick(4)) {
      case 0:
        return Expr::bin(BinOpKind::Lt, Expr::var(vars_[pick(vars_.size())]),
                         Expr::lit(static_cast<std::int64_t>(pick(10))));
      case 1:
        return Expr::bin(BinOpKind::Eq, Expr::var(vars_[pick(vars_.size())]),
                         Expr::lit(static_cast<std::int64_t>(pick(5))));
      case 2: return Expr::lit(pick(2) == 0);
      default: return Expr::var(vars_[pick(vars_.size())]);
    }
  }

  Multicom gen_multicom() {
    std::size_t want = 1 + pick(static_cast<std::size_t>(cfg_.max_group_size));
    Multicom group;
    for (std::size_t tries = 0; tries < want * 6 && group.size() < want;
         ++tries) {
      ProcName sender = pick_proc();
      Com cand{sender, gen_expr(), pick_proc_not(sender),
               vars_[pick(vars_.size())]};
      Multicom next = group.with(cand);
      if (check_multicom(next).empty()) group = std::move(next);
    }
    return group;
  }

  Multisel gen_multisel() {
    std::size_t want = 1 + pick(static_cast<std::size_t>(cfg_.max_group_size));
    Multisel group;
    std::vector<Label> labels = {Label("L"), Label("R"), Label("M")};
    for (std::size_t tries = 0; tries < want * 6 && group.size() < want;
         ++tries) {
      ProcName sender = pick_proc();
      Sel cand{sender, pick_proc_not(sender), labels[pick(labels.size())]};
      Multisel next = group.with(cand);
      if (check_multisel(next).empty()) group = std::move(next);
    }
    return group;
  }

  // `guarded` is false right after entering a procedure body, before any
  // group or conditional: a call there could unfold without ever reducing.
  ChorPtr gen(int depth, std::vector<RecVar>& defs, bool guarded) {
    if (depth <= 0) {
      if (guarded && !defs.empty() && pick(3) == 0)
        return Chor::call(defs[pick(defs.size())]);
      return Chor::end();
    }
    GenConfig::Weights w = cfg_.weights;
    w.mcom = std::max(w.mcom, 0);
    w.msel = std::max(w.msel, 0);
    w.cond = std::max(w.cond, 0);
    w.rec = std::max(w.rec, 0);
    w.end = std::max(w.end, 0);
    int rec_w = depth >= 2 ? w.rec : 0;
    int call_w = (guarded && !defs.empty()) ? 1 : 0;
    int total = w.mcom + w.msel + w.cond + rec_w + w.end + call_w;
    if (total == 0) return Chor::end();
    int roll = static_cast<int>(pick(static_cast<std::size_t>(total)));
    if ((roll -= w.mcom) < 0)
      return Chor::mcom(gen_multicom(), gen(depth - 1, defs, true));
    if ((roll -= w.msel) < 0)
      return Chor::msel(gen_multisel(), gen(depth - 1, defs, true));
    if ((roll -= w.cond) < 0) return gen_cond(depth, defs);
    if ((roll -= rec_w) < 0) {
      RecVar name("X" + std::to_string(def_counter_++));
      defs.push_back(name);
      ChorPtr body = gen(depth - 1, defs, false);
      // The wrapper itself consumes no step, so the scope inherits the
      // current guardedness.
      ChorPtr scope = gen(depth - 1, defs, guarded);
      defs.pop_back();
      return Chor::rec(name, {}, std::move(body), std::move(scope));
    }
    if ((roll -= w.end) < 0) return Chor::end();
    return Chor::call(defs[pick(defs.size())]);
  }

  ChorPtr gen_cond(int depth, std::vector<RecVar>& defs) {
    ProcName proc = pick_proc();
    ExprPtr guard = gen_guard();
    ChorPtr then_branch = gen(depth - 1, defs, true);
    ChorPtr else_branch = gen(depth - 1, defs, true);
    if (cfg_.require_projectable) {
      // Broadcast the decision to every other process so both branches
      // merge at every non-deciding process.
      std::vector<Sel> to_then, to_else;
      for (const ProcName& q : pool_) {
        if (q == proc) continue;
        to_then.push_back(Sel{proc, q, Label("L")});
        to_else.push_back(Sel{proc, q, Label("R")});
      }
      then_branch =
          Chor::msel(Multisel::of(std::move(to_then)), then_branch);
      else_branch =
          Chor::msel(Multisel::of(std::move(to_else)), else_branch);
    }
    return Chor::cond(proc, guard, then_branch, else_branch);
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<ProcName> pool_;
  std::vector<VarName> vars_;
  int def_counter_ = 0;
};

State gen_state(std::uint64_t seed, const std::vector<ProcName>& pool,
                const std::vector<VarName>& vars) {
  std::mt19937_64 rng(seed);
  State::Cells cells;
  for (const ProcName& p : pool)
    for (const VarName& v : vars)
      cells.emplace(std::pair{p, v},
                    Value::integer(static_cast<std::int64_t>(rng() % 10)));
  return State(std::move(cells));
}

// Cells for every process the generator can name, so sampled states cover
// any instance of the corpus.
const std::vector<ProcName>& sampler_pool() {
  static const std::vector<ProcName> pool = [] {
    std::vector<ProcName> out;
    for (int i = 0; i < 8; ++i) out.push_back(ProcName("p" + std::to_string(i + 1)));
    return out;
  }();
  return pool;
}

const std::vector<VarName>& sampler_vars() {
  static const std::vector<VarName> vars = {VarName("x"), VarName("y"),
                                            VarName("z")};
  return vars;
}

// ----------------------------------------------------------- shrinking

void shrink_candidates(const ChorPtr& c, std::vector<ChorPtr>& out) {
  struct Visitor {
    const ChorPtr& self;
    std::vector<ChorPtr>& out;
    void sub(const ChorPtr& child,
             const std::function<ChorPtr(const ChorPtr&)>& rebuild) const {
      std::vector<ChorPtr> cands;
      shrink_candidates(child, cands);
      for (const ChorPtr& s : cands) out.push_back(rebuild(s));
    }
    void operator()(const CMCom& x) const {
      out.push_back(x.cont);
      if (x.group.size() > 1)
        for (const Com& e : x.group.coms())
          out.push_back(Chor::mcom(x.group.without(e), x.cont));
      sub(x.cont, [&](const ChorPtr& s) { return Chor::mcom(x.group, s); });
    }
    void operator()(const CMSel& x) const {
      out.push_back(x.cont);
      if (x.group.size() > 1)
        for (const Sel& e : x.group.sels())
          out.push_back(Chor::msel(x.group.without(e), x.cont));
      sub(x.cont, [&](const ChorPtr& s) { return Chor::msel(x.group, s); });
    }
    void operator()(const CIf& x) const {
      out.push_back(x.then_branch);
      out.push_back(x.else_branch);
      sub(x.then_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, s, x.else_branch);
      });
      sub(x.else_branch, [&](const ChorPtr& s) {
        return Chor::cond(x.proc, x.guard, x.then_branch, s);
      });
    }
    void operator()(const CDef& x) const {
      out.push_back(x.scope);  // kept only if calls stay bound (checked later)
      sub(x.body, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, s, x.scope);
      });
      sub(x.scope, [&](const ChorPtr& s) {
        return Chor::rec(x.name, x.procs, x.body, s);
      });
    }
    void operator()(const CCall&) const { out.push_back(Chor::end()); }
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{c, out}, c->node);
}

using FailFn = std::function<bool(const ChorPtr&)>;

ChorPtr shrink(ChorPtr c, const FailFn& still_fails) {
  for (int rounds = 0; rounds < 200; ++rounds) {
    std::vector<ChorPtr> cands;
    shrink_candidates(c, cands);
    bool advanced = false;
    for (const ChorPtr& cand : cands) {
      if (!check_chor(cand).empty()) continue;
      ChorPtr next = annotate(cand);
      if (still_fails(next)) {
        c = std::move(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return c;
}

struct SuiteClock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::size_t defaulted(std::size_t bound, int max_group_size) {
  return bound != 0 ? bound : 2 * static_cast<std::size_t>(max_group_size);
}

}  // namespace

ChorPtr gen_chor(const GenConfig& cfg) { return Generator(cfg).generate(); }

Corpus gen_corpus(const GenConfig& cfg, int instances) {
  Corpus corpus;
  for (int i = 0; i < instances; ++i) {
    GenConfig one = cfg;
    one.seed = splitmix64(cfg.seed ^ (0x517cc1b727220a95ULL *
                                      static_cast<std::uint64_t>(i + 1)));
    corpus.seeds.push_back(one.seed);
    corpus.chors.push_back(gen_chor(one));
  }
  return corpus;
}

// ------------------------------------------------------------- progress

CheckReport check_progress(const Corpus& corpus, const CheckOptions& opts) {
  SuiteClock clock;
  CheckReport report;
  report.property = "progress";
  const std::vector<ProcName>& pool = sampler_pool();
  const std::vector<VarName>& vars = sampler_vars();

  auto fail_on = [&](const ChorPtr& c, std::uint64_t seed) -> std::string {
    for (int si = 0; si < opts.states_per_instance; ++si) {
      State sigma = gen_state(splitmix64(seed ^ (si + 1)), pool, vars);
      // sequential semantics
      SeqConfig cfg{normalize(c), sigma};
      for (std::uint64_t i = 0; i < opts.fuel; ++i) {
        if (is_terminated(cfg.chor)) break;
        auto step = step_seq(cfg);
        if (!step) return "stuck under sequential semantics";
        cfg = std::move(step->second);
      }
      // concurrent semantics, sampled schedules
      for (int sched = 0; sched < opts.schedules; ++sched) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x100 + sched)));
        SeqConfig cur{normalize(c), sigma};
        for (std::uint64_t i = 0; i < opts.fuel; ++i) {
          if (is_terminated(cur.chor)) break;
          std::vector<Redex> redexes = enabled_conc(cur);
          if (redexes.empty()) return "stuck under concurrent semantics";
          cur = apply_redex(cur, redexes[rng() % redexes.size()]).second;
        }
      }
      // projected network, sampled schedules
      Network n0;
      try {
        n0 = project(c);
      } catch (const ProjectionError&) {
        continue;  // only projectable instances exercise the network suite
      }
      for (int sched = 0; sched < opts.schedules; ++sched) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x200 + sched)));
        NetConfig cur{normalize_net(n0), sigma};
        for (std::uint64_t i = 0; i < opts.fuel; ++i) {
          if (is_terminated_net(cur.net)) break;
          std::vector<NetRedex> redexes = enabled_net(cur);
          if (redexes.empty()) return "projected network is stuck";
          cur = apply_net(cur, redexes[rng() % redexes.size()]).second;
        }
      }
    }
    return "";
  };

  for (std::size_t i = 0; i < corpus.chors.size(); ++i) {
    ++report.instances;
    std::string why = fail_on(corpus.chors[i], corpus.seeds[i]);
    if (!why.empty()) {
      ChorPtr min = shrink(corpus.chors[i], [&](const ChorPtr& c) {
        return !fail_on(c, corpus.seeds[i]).empty();
      });
      report.failures.push_back(
          {corpus.seeds[i], print_chor(min), why});
    }
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

// ------------------------------------------------------------ confluence

namespace {

// True when the two one-step successors rejoin within `bound` steps on each
// side.
bool joins_within(const SeqConfig& a, const SeqConfig& b, std::size_t bound) {
  if (a == b) return true;
  std::map<std::string, SeqConfig> fa{{config_key(a), a}};
  std::map<std::string, SeqConfig> fb{{config_key(b), b}};
  std::unordered_set<std::string> seen_a{config_key(a)};
  std::unordered_set<std::string> seen_b{config_key(b)};
  auto intersects = [&] {
    for (const auto& [k, cfg] : fa)
      if (seen_b.count(k) > 0) return true;
    return false;
  };
  for (std::size_t d = 0; d < bound; ++d) {
    if (intersects()) return true;
    std::map<std::string, SeqConfig> next_a;
    for (const auto& [k, cfg] : fa)
      for (const Redex& r : enabled_conc(cfg)) {
        SeqConfig succ = apply_redex(cfg, r).second;
        std::string key = config_key(succ);
        if (seen_a.insert(key).second) next_a.emplace(std::move(key), succ);
      }
    fa = std::move(next_a);
    if (intersects()) return true;
    std::map<std::string, SeqConfig> next_b;
    for (const auto& [k, cfg] : fb)
      for (const Redex& r : enabled_conc(cfg)) {
        SeqConfig succ = apply_redex(cfg, r).second;
        std::string key = config_key(succ);
        if (seen_b.insert(key).second) next_b.emplace(std::move(key), succ);
      }
    fb = std::move(next_b);
  }
  // final check: everything seen on either side
  for (const std::string& k : seen_a)
    if (seen_b.count(k) > 0) return true;
  return false;
}

}  // namespace

CheckReport check_confluence(const Corpus& corpus, const CheckOptions& opts) {
  SuiteClock clock;
  CheckReport report;
  report.property = "confluence";
  std::size_t bound = defaulted(opts.join_bound, opts.max_group_size);
  const std::vector<ProcName>& pool = sampler_pool();
  const std::vector<VarName>& vars = sampler_vars();

  auto fail_on = [&](const ChorPtr& c, std::uint64_t seed) -> std::string {
    State sigma = gen_state(splitmix64(seed ^ 7), pool, vars);
    // breadth-first over reachable configurations, capped
    std::deque<SeqConfig> queue{{normalize(c), sigma}};
    std::unordered_set<std::string> visited{config_key(queue.front())};
    std::size_t explored = 0;
    while (!queue.empty() && explored < opts.configs_per_instance) {
      SeqConfig cfg = queue.front();
      queue.pop_front();
      ++explored;
      std::vector<Redex> redexes = enabled_conc(cfg);
      std::vector<std::pair<TransitionLabel, SeqConfig>> succs;
      succs.reserve(redexes.size());
      for (const Redex& r : redexes) succs.push_back(apply_redex(cfg, r));
      for (std::size_t i = 0; i < succs.size(); ++i)
        for (std::size_t j = i + 1; j < succs.size(); ++j)
          if (!joins_within(succs[i].second, succs[j].second, bound))
            return "divergent pair does not rejoin: " +
                   to_text(redexes[i]) + " vs " + to_text(redexes[j]);
      for (auto& [label, succ] : succs)
        if (visited.insert(config_key(succ)).second) queue.push_back(succ);
    }
    return "";
  };

  for (std::size_t i = 0; i < corpus.chors.size(); ++i) {
    ++report.instances;
    std::string why = fail_on(corpus.chors[i], corpus.seeds[i]);
    if (!why.empty()) {
      ChorPtr min = shrink(corpus.chors[i], [&](const ChorPtr& c) {
        return !fail_on(c, corpus.seeds[i]).empty();
      });
      report.failures.push_back({corpus.seeds[i], print_chor(min), why});
    }
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

// -------------------------------------------- sequential/concurrent lemma

namespace {

// Upper bounds for the closure search, from the same walk the enumerator
// uses (so interactions inside unfolded procedure bodies are counted).
std::size_t spine_elements(const SeqConfig& cfg) {
  std::size_t n = 2;
  for (const auto& f : detail::walk_spine(normalize(cfg.chor))) {
    n += 1 + f.mcom.size() + f.msel.size();
  }
  return n;
}

std::size_t spine_length(const SeqConfig& cfg) {
  return detail::walk_spine(normalize(cfg.chor)).size() + 2;
}

// Direction 1: one sequential step is replayed as single concurrent steps of
// the same group, reaching the identical configuration.
bool replay_seq_step(const SeqConfig& from, const TransitionLabel& label,
                     const SeqConfig& expected) {
  SeqConfig cur = from;
  if (const auto* group = std::get_if<GroupLabel>(&label)) {
    auto fire_matching = [&](auto&& matches) -> bool {
      std::vector<Redex> redexes = enabled_conc(cur);
      for (const Redex& r : redexes) {
        if (!matches(r)) continue;
        cur = apply_redex(cur, r).second;
        return true;
      }
      return false;
    };
    for (const ComLabel& l : group->coms) {
      if (!fire_matching([&](const Redex& r) {
            const auto* cr = std::get_if<ComRedex>(&r);
            return cr != nullptr && cr->com.sender == l.from &&
                   cr->com.receiver == l.to && cr->com.var == l.var;
          }))
        return false;
    }
    for (const SelLabel& l : group->sels) {
      if (!fire_matching([&](const Redex& r) {
            const auto* sr = std::get_if<SelRedex>(&r);
            return sr != nullptr && sr->sel.sender == l.from &&
                   sr->sel.receiver == l.to && sr->sel.label == l.label;
          }))
        return false;
    }
    return cur == expected;
  }
  const ProcName* proc = nullptr;
  if (const auto* t = std::get_if<ThenLabel>(&label)) proc = &t->proc;
  if (const auto* e = std::get_if<ElseLabel>(&label)) proc = &e->proc;
  if (proc == nullptr) return false;
  for (const Redex& r : enabled_conc(cur)) {
    if (const auto* ir = std::get_if<IfRedex>(&r); ir != nullptr &&
        ir->proc == *proc) {
      cur = apply_redex(cur, r).second;
      return cur == expected;
    }
  }
  return false;
}

// Direction 2: a concurrent step extends, by consuming the earliest pending
// interactions first, to a configuration the sequential semantics reaches.
bool closes_to_seq(const SeqConfig& from, const SeqConfig& after,
                   std::size_t seq_depth, std::size_t completion_cap) {
  std::unordered_set<std::string> seq_keys;
  SeqConfig cur = from;
  for (std::size_t i = 0; i < seq_depth; ++i) {
    auto step = step_seq(cur);
    if (!step) break;
    cur = std::move(step->second);
    seq_keys.insert(config_key(cur));
  }
  SeqConfig comp = after;
  for (std::size_t i = 0; i <= completion_cap; ++i) {
    if (seq_keys.count(config_key(comp)) > 0) return true;
    std::vector<Redex> redexes = enabled_conc(comp);
    if (redexes.empty()) return false;
    comp = apply_redex(comp, redexes.front()).second;
  }
  return false;
}

}  // namespace

CheckReport check_seq_conc(const Corpus& corpus, const CheckOptions& opts) {
  SuiteClock clock;
  CheckReport report;
  report.property = "seq-conc correspondence";
  std::size_t closure = defaulted(opts.closure_bound, opts.max_group_size);
  const std::vector<ProcName>& pool = sampler_pool();
  const std::vector<VarName>& vars = sampler_vars();

  int inconclusive = 0;
  auto fail_on = [&](const ChorPtr& c, std::uint64_t seed,
                     bool count_inconclusive) -> std::string {
    State sigma = gen_state(splitmix64(seed ^ 11), pool, vars);
    // direction 1 along the sequential run
    SeqConfig cfg{normalize(c), sigma};
    for (std::uint64_t i = 0; i < opts.fuel; ++i) {
      auto step = step_seq(cfg);
      if (!step) break;
      if (!replay_seq_step(cfg, step->first, step->second))
        return "sequential step has no concurrent replay: " +
               to_text(step->first);
      cfg = std::move(step->second);
    }
    // direction 2 along sampled concurrent runs
    for (int sched = 0; sched < opts.schedules; ++sched) {
      std::mt19937_64 rng(splitmix64(seed ^ (0x300 + sched)));
      SeqConfig cur{normalize(c), sigma};
      for (std::uint64_t i = 0; i < opts.fuel; ++i) {
        std::vector<Redex> redexes = enabled_conc(cur);
        if (redexes.empty()) break;
        std::size_t cap = std::max(closure, spine_elements(cur));
        std::size_t depth = std::max(closure, spine_length(cur));
        for (const Redex& r : redexes) {
          SeqConfig after = apply_redex(cur, r).second;
          if (!closes_to_seq(cur, after, depth, cap)) {
            if (count_inconclusive) ++inconclusive;
            if (!closes_to_seq(cur, after, 2 * depth, 2 * cap))
              return "concurrent step does not close into the sequential "
                     "semantics: " +
                     to_text(r);
          }
        }
        cur = apply_redex(cur, redexes[rng() % redexes.size()]).second;
      }
    }
    return "";
  };

  for (std::size_t i = 0; i < corpus.chors.size(); ++i) {
    ++report.instances;
    std::string why = fail_on(corpus.chors[i], corpus.seeds[i], true);
    if (!why.empty()) {
      ChorPtr min = shrink(corpus.chors[i], [&](const ChorPtr& c) {
        return !fail_on(c, corpus.seeds[i], false).empty();
      });
      report.failures.push_back({corpus.seeds[i], print_chor(min), why});
    }
  }
  report.inconclusive = inconclusive;
  report.elapsed_seconds = clock.seconds();
  return report;
}

// -------------------------------------------------- EPP correspondence

namespace {

TransitionLabel net_redex_label(const NetConfig& cfg, const NetRedex& r) {
  if (const auto* x = std::get_if<SyncComRedex>(&r))
    return ComLabel{x->from, eval(x->expr, cfg.state.locals(x->from)), x->to,
                    x->var};
  if (const auto* x = std::get_if<SyncSelRedex>(&r))
    return SelLabel{x->from, x->to, x->label};
  const auto& x = std::get<LocalIfRedex>(r);
  // The branch taken depends on the guard, which apply_net evaluates; match
  // on either label for scheduling purposes.
  return ThenLabel{x.proc};
}

bool drive_network_by(NetConfig& net, const TransitionLabel& want) {
  for (const NetRedex& r : enabled_net(net)) {
    if (std::holds_alternative<LocalIfRedex>(r)) {
      const ProcName& p = std::get<LocalIfRedex>(r).proc;
      bool wanted =
          (std::holds_alternative<ThenLabel>(want) &&
           std::get<ThenLabel>(want).proc == p) ||
          (std::holds_alternative<ElseLabel>(want) &&
           std::get<ElseLabel>(want).proc == p);
      if (!wanted) continue;
      auto [label, next] = apply_net(net, r);
      if (!(label == want)) return false;  // guard disagreed
      net = std::move(next);
      return true;
    }
    if (!(net_redex_label(net, r) == want)) continue;
    auto [label, next] = apply_net(net, r);
    net = std::move(next);
    return true;
  }
  return false;
}

}  // namespace

CheckReport check_epp(const Corpus& corpus, const CheckOptions& opts) {
  SuiteClock clock;
  CheckReport report;
  report.property = "epp correspondence";
  const std::vector<ProcName>& pool = sampler_pool();
  const std::vector<VarName>& vars = sampler_vars();

  auto fail_on = [&](const ChorPtr& c, std::uint64_t seed) -> std::string {
    Network n0;
    try {
      n0 = project(c);
    } catch (const ProjectionError& e) {
      return std::string("instance is not projectable: ") + e.what();
    }
    State sigma = gen_state(splitmix64(seed ^ 13), pool, vars);

    // Lockstep along the sequential run: drive the network by the step's
    // labels and compare against the projection of the reduct, up to
    // pruning.
    SeqConfig cfg{normalize(c), sigma};
    NetConfig net{normalize_net(n0), sigma};
    for (std::uint64_t i = 0; i < opts.fuel; ++i) {
      auto step = step_seq(cfg);
      if (!step) break;
      const TransitionLabel& label = step->first;
      if (const auto* group = std::get_if<GroupLabel>(&label)) {
        for (const ComLabel& l : group->coms)
          if (!drive_network_by(net, TransitionLabel{l}))
            return "network cannot follow " + to_text(TransitionLabel{l});
        for (const SelLabel& l : group->sels)
          if (!drive_network_by(net, TransitionLabel{l}))
            return "network cannot follow " + to_text(TransitionLabel{l});
      } else {
        if (!drive_network_by(net, label))
          return "network cannot follow " + to_text(label);
      }
      cfg = std::move(step->second);
      if (!(net.state == cfg.state))
        return "states diverge after " + to_text(label);
      if (!prunes(project(cfg.chor), net.net))
        return "projection of the reduct is not pruned by the driven "
               "network";
    }
    if (is_terminated(cfg.chor)) {
      if (!is_terminated_net(net.net))
        return "choreography terminated but network did not";
      if (!(net.state == cfg.state)) return "final states differ";
    }

    // Converse direction along sampled network schedules: every network
    // step is matched by a concurrent choreography step with the same
    // label, with pruning after each step.
    for (int sched = 0; sched < opts.schedules; ++sched) {
      std::mt19937_64 rng(splitmix64(seed ^ (0x400 + sched)));
      SeqConfig chor{normalize(c), sigma};
      NetConfig cur{normalize_net(n0), sigma};
      for (std::uint64_t i = 0; i < opts.fuel; ++i) {
        std::vector<NetRedex> redexes = enabled_net(cur);
        if (redexes.empty()) {
          if (!is_terminated_net(cur.net)) return "network deadlock";
          break;
        }
        auto [label, next] = apply_net(cur, redexes[rng() % redexes.size()]);
        bool matched = false;
        for (const Redex& r : enabled_conc(chor)) {
          auto [clabel, cnext] = apply_redex(chor, r);
          if (!(clabel == label)) continue;
          if (!prunes(project(cnext.chor), next.net)) continue;
          chor = std::move(cnext);
          matched = true;
          break;
        }
        if (!matched)
          return "no concurrent choreography step matches network label " +
                 to_text(label);
        if (!(chor.state == next.state)) return "states diverge (converse)";
        cur = std::move(next);
      }
    }
    return "";
  };

  for (std::size_t i = 0; i < corpus.chors.size(); ++i) {
    ++report.instances;
    std::string why = fail_on(corpus.chors[i], corpus.seeds[i]);
    if (!why.empty()) {
      ChorPtr min = shrink(corpus.chors[i], [&](const ChorPtr& c) {
        return !fail_on(c, corpus.seeds[i]).empty();
      });
      report.failures.push_back({corpus.seeds[i], print_chor(min), why});
    }
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

// --------------------------------------------------- small-term oracle

namespace {

// Fixed vocabulary keeping the space finite: processes p, q, r; variable
// payload Var(x) into x or y; one label; guards true / Var(x).
struct SmallVocab {
  std::vector<Com> coms;
  std::vector<Sel> sels;
  std::vector<std::pair<ProcName, ExprPtr>> guards;

  SmallVocab() {
    std::vector<ProcName> procs = {ProcName("p"), ProcName("q"),
                                   ProcName("r")};
    std::vector<VarName> vars = {VarName("x"), VarName("y")};
    ExprPtr payload = Expr::var(VarName("x"));
    for (const ProcName& s : procs)
      for (const ProcName& t : procs) {
        if (s == t) continue;
        for (const VarName& v : vars) coms.push_back(Com{s, payload, t, v});
        sels.push_back(Sel{s, t, Label("L")});
      }
    for (const ProcName& p : procs) {
      guards.emplace_back(p, Expr::lit(true));
      guards.emplace_back(p, Expr::var(VarName("x")));
    }
  }
};

void subsets_upto(std::size_t n, std::size_t max_size,
                  std::vector<std::vector<std::size_t>>& out) {
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t bits = static_cast<std::size_t>(__builtin_popcount(mask));
    if (bits > max_size) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) idx.push_back(i);
    out.push_back(std::move(idx));
  }
}

}  // namespace

std::vector<ChorPtr> enumerate_small(int max_nodes) {
  SmallVocab vocab;
  std::vector<Multicom> mcoms;
  std::vector<Multisel> msels;
  {
    std::vector<std::vector<std::size_t>> subsets;
    subsets_upto(vocab.coms.size(), 4, subsets);
    for (const auto& idx : subsets) {
      std::vector<Com> coms;
      for (std::size_t i : idx) coms.push_back(vocab.coms[i]);
      Multicom h = Multicom::of(std::move(coms));
      if (check_multicom(h).empty()) mcoms.push_back(std::move(h));
    }
    subsets.clear();
    subsets_upto(vocab.sels.size(), 4, subsets);
    for (const auto& idx : subsets) {
      std::vector<Sel> sels;
      for (std::size_t i : idx) sels.push_back(vocab.sels[i]);
      Multisel phi = Multisel::of(std::move(sels));
      if (check_multisel(phi).empty()) msels.push_back(std::move(phi));
    }
  }

  RecVar def_name("X");
  // terms of size exactly n; memo[(n, in_def_scope)]
  std::map<std::pair<int, bool>, std::vector<ChorPtr>> memo;
  std::function<const std::vector<ChorPtr>&(int, bool)> exact =
      [&](int n, bool in_def) -> const std::vector<ChorPtr>& {
    auto key = std::pair{n, in_def};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<ChorPtr> out;
    if (n == 1) {
      out.push_back(Chor::end());
      if (in_def) out.push_back(Chor::call(def_name));
    }
    for (const Multicom& h : mcoms) {
      int rest = n - 1 - static_cast<int>(h.size());
      if (rest < 1) continue;
      for (const ChorPtr& cont : exact(rest, in_def))
        out.push_back(Chor::mcom(h, cont));
    }
    for (const Multisel& phi : msels) {
      int rest = n - 1 - static_cast<int>(phi.size());
      if (rest < 1) continue;
      for (const ChorPtr& cont : exact(rest, in_def))
        out.push_back(Chor::msel(phi, cont));
    }
    for (const auto& [proc, guard] : vocab.guards) {
      for (int t = 1; t <= n - 2; ++t)
        for (const ChorPtr& then_branch : exact(t, in_def))
          for (const ChorPtr& else_branch : exact(n - 1 - t, in_def))
            out.push_back(Chor::cond(proc, guard, then_branch, else_branch));
    }
    for (int b = 1; b <= n - 2; ++b)
      for (const ChorPtr& body : exact(b, true))
        for (const ChorPtr& scope : exact(n - 1 - b, true))
          out.push_back(Chor::rec(def_name, {}, body, scope));
    auto [pos, inserted] = memo.emplace(key, std::move(out));
    return pos->second;
  };

  std::vector<ChorPtr> all;
  for (int n = 1; n <= max_nodes; ++n) {
    const std::vector<ChorPtr>& batch = exact(n, false);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

CheckReport check_oracle(int max_nodes, std::size_t bound) {
  SuiteClock clock;
  CheckReport report;
  report.property = "oracle validation";
  State::Cells cells;
  cells.emplace(std::pair{ProcName("p"), VarName("x")}, Value::integer(1));
  cells.emplace(std::pair{ProcName("q"), VarName("x")}, Value::integer(2));
  cells.emplace(std::pair{ProcName("r"), VarName("x")}, Value::integer(3));
  State sigma{std::move(cells)};

  for (const ChorPtr& c : enumerate_small(max_nodes)) {
    ++report.instances;
    SeqConfig cfg{c, sigma};
    for (const Redex& r : enabled_conc(cfg)) {
      if (!confirm_redex(cfg, r, bound)) {
        report.failures.push_back(
            {0, print_chor(c), "unconfirmed redex " + to_text(r)});
        break;
      }
    }
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

// ----------------------------------------------------------- reporting

std::string to_text(const CheckReport& r) {
  // No timing here: command output stays byte-identical for identical
  // inputs. Elapsed time lives in the JSON report.
  std::string out = r.property + ": " + std::to_string(r.instances) +
                    " instances, " + std::to_string(r.failures.size()) +
                    " failures";
  if (r.inconclusive > 0)
    out += ", " + std::to_string(r.inconclusive) + " inconclusive";
  for (const CheckFailure& f : r.failures) {
    out += "\n  seed " + std::to_string(f.seed) + ": " + f.detail;
    out += "\n  counterexample:\n";
    out += f.counterexample;
  }
  return out;
}

std::string to_json_text(const std::vector<CheckReport>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckReport& r : rs) {
    nlohmann::json failures = nlohmann::json::array();
    for (const CheckFailure& f : r.failures)
      failures.push_back({{"seed", f.seed},
                          {"counterexample", f.counterexample},
                          {"detail", f.detail}});
    arr.push_back({{"property", r.property},
                   {"instances", r.instances},
                   {"inconclusive", r.inconclusive},
                   {"failures", failures},
                   {"elapsed_seconds", r.elapsed_seconds}});
  }
  return arr.dump(2);
}

}  // namespace chorc
