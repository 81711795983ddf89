#include <doctest.h>

#include "chorc/epp.hpp"
#include "chorc/net.hpp"
#include "chorc/syntax.hpp"
#include "util.hpp"

using namespace chorc;

TEST_CASE("network normalization") {
  Network empty_group;
  empty_group.procs.emplace(ProcName("p"),
                            Behaviour::theta(ThetaGroup{}, Behaviour::end()));
  CHECK(normalize_net(empty_group).procs.empty());

  Network dead_def;
  dead_def.procs.emplace(
      ProcName("p"),
      Behaviour::rec(RecVar("X"),
                     parse_network("p |> q!x").procs.at(ProcName("p")),
                     Behaviour::end()));
  CHECK(normalize_net(dead_def).procs.empty());

  Network n = parse_network(read_data_file("epp_exchange.net"));
  CHECK(normalize_net(n) == n);  // already normal
}

TEST_CASE("termination, also behind unfolds") {
  CHECK(is_terminated_net(Network{}));
  Network one_end;
  one_end.procs.emplace(ProcName("p"), Behaviour::end());
  CHECK(is_terminated_net(one_end));
  CHECK(!is_terminated_net(parse_network("p |> q!x")));
  CHECK(is_terminated_net(parse_network("p |> def X = { 0 } in { X }")));
}

TEST_CASE("the projected exchange offers both rendezvous") {
  ChorPtr c = annotate(parse_chor(read_data_file("epp_exchange.chor")));
  Network n = project(c);
  State sigma = parse_state("p.x = 1\nq.x = 2\nr.z = 9");
  std::vector<NetRedex> rs = enabled_net({n, sigma});
  // p<->q exchange is enabled in both directions; r's send waits for p
  REQUIRE(rs.size() == 2);
  for (const NetRedex& r : rs)
    CHECK(std::holds_alternative<SyncComRedex>(r));

  NetConfig cfg{n, sigma};
  NetConfig ab = apply_net(apply_net(cfg, rs[0]).second, rs[1]).second;
  NetConfig ba = apply_net(apply_net(cfg, rs[1]).second, rs[0]).second;
  CHECK(ab == ba);
  CHECK(ab.state.get(ProcName("p"), VarName("y")) == Value::integer(2));
  CHECK(ab.state.get(ProcName("q"), VarName("y")) == Value::integer(1));
}

TEST_CASE("selection commits the branch and discards the rest") {
  Network n = parse_network(
      "p |> q(+)[L]; q!x | q |> p&{L: p?x, R: p!y}");
  State sigma = parse_state("p.x = 5");
  std::vector<NetRedex> rs = enabled_net({n, sigma});
  REQUIRE(rs.size() == 1);
  const auto& sel = std::get<SyncSelRedex>(rs[0]);
  CHECK(sel.label == Label("L"));
  auto [label, next] = apply_net({n, sigma}, rs[0]);
  CHECK(std::get<SelLabel>(label).label == Label("L"));
  CHECK(print_behaviour(next.net.procs.at(ProcName("q"))) == "p?x");
  // the rendezvous then completes
  NetRun run = run_net(next, 10, 0);
  CHECK(run.trace.status == RunStatus::Terminated);
  CHECK(run.final.state.get(ProcName("q"), VarName("x")) ==
        Value::integer(5));
}

TEST_CASE("local conditionals") {
  Network n = parse_network("p |> if 1 < 2 then { q!x } else { 0 } | q |> p?y");
  std::vector<NetRedex> rs = enabled_net({n, State{}});
  REQUIRE(rs.size() == 1);
  CHECK(std::holds_alternative<LocalIfRedex>(rs[0]));
  auto [label, next] = apply_net({n, State{}}, rs[0]);
  CHECK(std::holds_alternative<ThenLabel>(label));
  CHECK(enabled_net(next).size() == 1);
}

TEST_CASE("hand-written networks may deadlock; the checker flags them") {
  Network n = parse_network(read_data_file("deadlock.net"));
  NetConfig cfg{n, State{}};
  CHECK(enabled_net(cfg).empty());
  CHECK(!is_terminated_net(cfg.net));
  NetRun run = run_net(cfg, 10, 0);
  CHECK(run.trace.status == RunStatus::Stuck);
}

TEST_CASE("uninvolved processes are untouched by a step") {
  Network n = parse_network("p |> q!1 | q |> p?x | r |> s?z | s |> 0");
  State sigma;
  std::vector<NetRedex> rs = enabled_net({n, sigma});
  REQUIRE(rs.size() == 1);
  NetConfig next = apply_net({n, sigma}, rs[0]).second;
  CHECK(print_behaviour(next.net.procs.at(ProcName("r"))) == "s?z");
  CHECK(next.net.procs.count(ProcName("p")) == 0);  // p finished
}

TEST_CASE("recursion unfolds through definition wrappers") {
  Network n = parse_network(
      "p |> def X = { q!1; X } in { X } | q |> def Y = { p?x; Y } in { Y }");
  NetRun run = run_net({n, State{}}, 7, 3);
  CHECK(run.trace.status == RunStatus::OutOfFuel);
  CHECK(run.trace.labels.size() == 7);
  CHECK(run.final.state.get(ProcName("q"), VarName("x")) ==
        Value::integer(1));
}
