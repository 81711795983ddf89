#include "chorc/net.hpp"

#include <algorithm>
#include <random>

#include "chorc/conc.hpp"  // StaleRedexError
#include "chorc/syntax.hpp"

namespace chorc {

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare(const NetConfig& a, const NetConfig& b) {
  if (int c = compare(a.net, b.net); c != 0) return c;
  return compare(a.state, b.state);
}

bool operator==(const NetConfig& a, const NetConfig& b) {
  return compare(a, b) == 0;
}

Network normalize_net(const Network& n) {
  Network out;
  for (const auto& [name, b] : n.procs) {
    BehaviourPtr nb = normalize(b);
    if (!std::holds_alternative<BEnd>(nb->node))
      out.procs.emplace(name, std::move(nb));
  }
  return out;
}

int compare(const NetRedex& a, const NetRedex& b) {
  if (int c = cmp3(a.index(), b.index()); c != 0) return c;
  struct Visitor {
    const NetRedex& rhs;
    int operator()(const SyncComRedex& x) const {
      const auto& y = std::get<SyncComRedex>(rhs);
      if (int c = cmp3(x.from, y.from); c != 0) return c;
      if (int c = cmp3(x.to, y.to); c != 0) return c;
      if (int c = cmp3(x.var, y.var); c != 0) return c;
      return compare(*x.expr, *y.expr);
    }
    int operator()(const SyncSelRedex& x) const {
      const auto& y = std::get<SyncSelRedex>(rhs);
      if (int c = cmp3(x.from, y.from); c != 0) return c;
      if (int c = cmp3(x.to, y.to); c != 0) return c;
      return cmp3(x.label, y.label);
    }
    int operator()(const LocalIfRedex& x) const {
      return cmp3(x.proc, std::get<LocalIfRedex>(rhs).proc);
    }
  };
  return std::visit(Visitor{b}, a);
}

bool operator==(const NetRedex& a, const NetRedex& b) {
  return compare(a, b) == 0;
}

std::string to_text(const NetRedex& r) {
  struct Visitor {
    std::string operator()(const SyncComRedex& x) const {
      return x.from.value + "." + to_text(*x.expr) + " -> " + x.to.value +
             "." + x.var.value;
    }
    std::string operator()(const SyncSelRedex& x) const {
      return x.from.value + " -> " + x.to.value + "[" + x.label.value + "]";
    }
    std::string operator()(const LocalIfRedex& x) const {
      return "if " + x.proc.value;
    }
  };
  return std::visit(Visitor{}, r);
}

namespace {

// The chain of definition wrappers leading to a process's current head,
// unfolding each procedure at most once.
struct BSpine {
  struct DefFrame {
    RecVar name;
    BehaviourPtr body;
  };
  std::vector<DefFrame> defs;
  BehaviourPtr head;  // never BDef; BCall only when stuck
};

BSpine walk_behaviour(const BehaviourPtr& b) {
  BSpine spine;
  std::set<RecVar> unfolded;
  BehaviourPtr cur = b;
  while (true) {
    if (const auto* x = std::get_if<BDef>(&cur->node)) {
      spine.defs.push_back({x->name, x->body});
      cur = x->scope;
      continue;
    }
    if (const auto* x = std::get_if<BCall>(&cur->node)) {
      const BehaviourPtr* body = nullptr;
      for (auto it = spine.defs.rbegin(); it != spine.defs.rend(); ++it) {
        if (it->name == x->name) {
          body = &it->body;
          break;
        }
      }
      if (body != nullptr && unfolded.count(x->name) == 0) {
        unfolded.insert(x->name);
        cur = *body;
        continue;
      }
    }
    spine.head = cur;
    return spine;
  }
}

BehaviourPtr rebuild_behaviour(const BSpine& spine, BehaviourPtr head) {
  BehaviourPtr out = std::move(head);
  for (std::size_t i = spine.defs.size(); i-- > 0;)
    out = Behaviour::rec(spine.defs[i].name, spine.defs[i].body,
                         std::move(out));
  return out;
}

}  // namespace

bool behaviour_terminated(const BehaviourPtr& b) {
  BSpine spine = walk_behaviour(normalize(b));
  return std::holds_alternative<BEnd>(spine.head->node);
}

bool is_terminated_net(const Network& n) {
  // As for choreographies, termination may hide behind unfolds
  // (def X = 0 in X); the head walk performs them.
  for (const auto& [name, b] : normalize_net(n).procs)
    if (!behaviour_terminated(b)) return false;
  return true;
}

std::vector<NetRedex> enabled_net(const NetConfig& cfg) {
  Network net = normalize_net(cfg.net);
  std::map<ProcName, BSpine> heads;
  for (const auto& [name, b] : net.procs) heads.emplace(name, walk_behaviour(b));

  std::vector<NetRedex> out;
  for (const auto& [p, spine] : heads) {
    if (const auto* tg = std::get_if<BTheta>(&spine.head->node)) {
      for (const Theta& t : tg->group.thetas()) {
        const auto* send = std::get_if<SendAct>(&t.node);
        if (send == nullptr || send->to == p) continue;  // rendezvous needs
                                                         // two processes
        auto qit = heads.find(send->to);
        if (qit == heads.end()) continue;
        const auto* qg = std::get_if<BTheta>(&qit->second.head->node);
        if (qg == nullptr) continue;
        for (const Theta& u : qg->group.thetas()) {
          const auto* recv = std::get_if<RecvAct>(&u.node);
          if (recv != nullptr && recv->from == p)
            out.push_back(SyncComRedex{p, send->to, send->expr, recv->var});
        }
      }
    } else if (const auto* sg = std::get_if<BSel>(&spine.head->node)) {
      for (const SelAct& s : sg->group.sels()) {
        if (s.to == p) continue;
        auto qit = heads.find(s.to);
        if (qit == heads.end()) continue;
        const auto* br = std::get_if<BBranch>(&qit->second.head->node);
        if (br != nullptr && br->from == p &&
            br->branches.count(s.label) > 0)
          out.push_back(SyncSelRedex{p, s.to, s.label});
      }
    } else if (std::holds_alternative<BIf>(spine.head->node)) {
      out.push_back(LocalIfRedex{p});
    }
  }
  std::sort(out.begin(), out.end(), [](const NetRedex& a, const NetRedex& b) {
    return compare(a, b) < 0;
  });
  return out;
}

std::pair<TransitionLabel, NetConfig> apply_net(const NetConfig& cfg,
                                                const NetRedex& r) {
  Network net = normalize_net(cfg.net);
  NetConfig current{net, cfg.state};
  std::vector<NetRedex> enabled = enabled_net(current);
  if (std::find(enabled.begin(), enabled.end(), r) == enabled.end())
    throw StaleRedexError("network redex is not enabled: " + to_text(r));

  auto replace_head = [&](const ProcName& p, auto&& transform) {
    BSpine spine = walk_behaviour(net.procs.at(p));
    BehaviourPtr head = transform(spine.head);
    net.procs[p] = normalize(rebuild_behaviour(spine, std::move(head)));
  };

  struct Visitor {
    Network& net;
    const State& state;
    decltype(replace_head)& replace;
    std::pair<TransitionLabel, NetConfig> operator()(
        const SyncComRedex& x) const {
      Value v = eval(x.expr, state.locals(x.from));
      replace(x.from, [&](const BehaviourPtr& head) {
        const auto& tg = std::get<BTheta>(head->node);
        ThetaGroup rest = tg.group.without(Theta::send(x.to, x.expr));
        return rest.empty() ? tg.cont
                            : Behaviour::theta(std::move(rest), tg.cont);
      });
      replace(x.to, [&](const BehaviourPtr& head) {
        const auto& tg = std::get<BTheta>(head->node);
        ThetaGroup rest = tg.group.without(Theta::recv(x.from, x.var));
        return rest.empty() ? tg.cont
                            : Behaviour::theta(std::move(rest), tg.cont);
      });
      State next = state.with(x.to, x.var, v);
      ComLabel label{x.from, std::move(v), x.to, x.var};
      Network out = normalize_net(net);
      return {TransitionLabel{std::move(label)},
              NetConfig{std::move(out), std::move(next)}};
    }
    std::pair<TransitionLabel, NetConfig> operator()(
        const SyncSelRedex& x) const {
      replace(x.from, [&](const BehaviourPtr& head) {
        const auto& sg = std::get<BSel>(head->node);
        SelActGroup rest = sg.group.without(SelAct{x.to, x.label});
        return rest.empty() ? sg.cont
                            : Behaviour::sel(std::move(rest), sg.cont);
      });
      replace(x.to, [&](const BehaviourPtr& head) {
        const auto& br = std::get<BBranch>(head->node);
        return br.branches.at(x.label);  // other branches are discarded
      });
      SelLabel label{x.from, x.to, x.label};
      Network out = normalize_net(net);
      return {TransitionLabel{label}, NetConfig{std::move(out), state}};
    }
    std::pair<TransitionLabel, NetConfig> operator()(
        const LocalIfRedex& x) const {
      bool take_then = false;
      replace(x.proc, [&](const BehaviourPtr& head) {
        const auto& c = std::get<BIf>(head->node);
        take_then = eval(c.guard, state.locals(x.proc)).is_true();
        return take_then ? c.then_branch : c.else_branch;
      });
      TransitionLabel label = take_then ? TransitionLabel{ThenLabel{x.proc}}
                                        : TransitionLabel{ElseLabel{x.proc}};
      Network out = normalize_net(net);
      return {std::move(label), NetConfig{std::move(out), state}};
    }
  };
  return std::visit(Visitor{net, cfg.state, replace_head}, r);
}

NetRun run_net(NetConfig cfg, std::uint64_t fuel, std::uint64_t seed) {
  NetRun run;
  cfg.net = normalize_net(cfg.net);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    std::vector<NetRedex> redexes = enabled_net(cfg);
    if (redexes.empty()) {
      run.trace.status = is_terminated_net(cfg.net) ? RunStatus::Terminated
                                                    : RunStatus::Stuck;
      run.final = std::move(cfg);
      return run;
    }
    const NetRedex& pick = redexes[rng() % redexes.size()];
    auto [label, next] = apply_net(cfg, pick);
    run.trace.labels.push_back(std::move(label));
    cfg = std::move(next);
  }
  run.trace.status = is_terminated_net(cfg.net) ? RunStatus::Terminated
                                                : RunStatus::OutOfFuel;
  run.final = std::move(cfg);
  return run;
}

namespace {

void explore_net(const NetConfig& cfg, std::vector<TransitionLabel>& prefix,
                 std::size_t max_steps, std::size_t max_execs,
                 std::vector<NetExecution>& out) {
  if (out.size() >= max_execs)
    throw std::runtime_error("all_net_executions: state space exceeds limit");
  std::vector<NetRedex> redexes = enabled_net(cfg);
  if (redexes.empty()) {
    RunStatus status = is_terminated_net(cfg.net) ? RunStatus::Terminated
                                                  : RunStatus::Stuck;
    out.push_back(NetExecution{Trace{prefix, status}, cfg});
    return;
  }
  if (prefix.size() >= max_steps) {
    out.push_back(NetExecution{Trace{prefix, RunStatus::Truncated}, cfg});
    return;
  }
  for (const NetRedex& r : redexes) {
    auto [label, next] = apply_net(cfg, r);
    prefix.push_back(std::move(label));
    explore_net(next, prefix, max_steps, max_execs, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<NetExecution> all_net_executions(const NetConfig& cfg,
                                             std::size_t max_steps,
                                             std::size_t max_execs) {
  std::vector<NetExecution> out;
  std::vector<TransitionLabel> prefix;
  NetConfig start{normalize_net(cfg.net), cfg.state};
  explore_net(start, prefix, max_steps, max_execs, out);
  return out;
}

}  // namespace chorc
