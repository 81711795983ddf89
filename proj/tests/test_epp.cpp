#include <doctest.h>

#include <set>

#include "chorc/conc.hpp"
#include "chorc/epp.hpp"
#include "chorc/net.hpp"
#include "chorc/seq.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "util.hpp"

using namespace chorc;

TEST_CASE("annotation fixpoints") {
  ChorPtr c = annotate(parse_chor("def X = {p.x -> q.y; X} in {X}"));
  const auto& def = std::get<CDef>(c->node);
  CHECK(def.procs == std::set<ProcName>{ProcName("p"), ProcName("q")});
  const auto& call = std::get<CCall>(def.scope->node);
  CHECK(call.procs == def.procs);

  // an unused body contributes nothing
  ChorPtr empty = annotate(parse_chor("def X = {0} in {p.x -> q.y}"));
  CHECK(std::get<CDef>(empty->node).procs.empty());

  // nested definitions: the inner body calls the outer procedure, so the
  // fixpoint needs a second round to stabilise
  ChorPtr nested = annotate(parse_chor(
      "def X = {p.x -> q.y; def Y = {q.z -> r.w; X} in {Y}} in {X}"));
  const auto& outer = std::get<CDef>(nested->node);
  std::set<ProcName> all = {ProcName("p"), ProcName("q"), ProcName("r")};
  CHECK(outer.procs == all);
  const auto& inner = std::get<CDef>(
      std::get<CMCom>(outer.body->node).cont->node);
  CHECK(inner.procs == all);
}

TEST_CASE("projection of the grouped exchange") {
  ChorPtr c = annotate(parse_chor(read_data_file("epp_exchange.chor")));
  Network expected = parse_network(read_data_file("epp_exchange.net"));
  CHECK(print_network(project(c)) == print_network(expected));
}

TEST_CASE("projection of the crawler") {
  ChorPtr c = annotate(parse_chor(read_data_file("crawler.chor")));
  Network got = project(c);
  CHECK(print_network(got) ==
        print_network(parse_network(read_data_file("crawler.net"))));
  // each store runs receive-then-reply
  CHECK(print_behaviour(got.procs.at(ProcName("s1"))) ==
        "p?t; p!priceof(t)");
}

TEST_CASE("projection of the selective conditional") {
  ChorPtr c = annotate(parse_chor(read_data_file("remark1.chor")));
  Network expected = parse_network(read_data_file("remark1.net"));
  CHECK(print_network(project(c)) == print_network(expected));
}

TEST_CASE("the unprojectable conditional fails at q") {
  ChorPtr c = annotate(parse_chor(read_data_file("unprojectable.chor")));
  CHECK(std::holds_alternative<BIf>(
      project_behaviour(c, ProcName("p"))->node));
  try {
    project_behaviour(c, ProcName("q"));
    FAIL("expected a projection error");
  } catch (const ProjectionError& e) {
    CHECK(e.kind == ProjectionError::Kind::MergeConflict);
    CHECK(e.process == ProcName("q"));
  }
  CHECK_THROWS_AS(project(c), ProjectionError);
}

TEST_CASE("merge unions branches and is otherwise structural") {
  BehaviourPtr l = parse_network("q |> p&{L: p?x}").procs.at(ProcName("q"));
  BehaviourPtr r = parse_network("q |> p&{R: p!y}").procs.at(ProcName("q"));
  BehaviourPtr m = merge(l, r);
  CHECK(print_behaviour(m) == "p&{L: p?x, R: p!y}");
  CHECK(*merge(m, m) == *m);  // idempotent
  CHECK_THROWS_AS(
      merge(parse_network("q |> p!x").procs.at(ProcName("q")),
            Behaviour::end()),
      ProjectionError);
}

TEST_CASE("merge is commutative and associative where defined") {
  auto branch = [](const char* net) {
    return parse_network(net).procs.at(ProcName("q"));
  };
  BehaviourPtr a = branch("q |> p&{L: p?x}");
  BehaviourPtr b = branch("q |> p&{R: p!y}");
  BehaviourPtr c = branch("q |> p&{M: 0}");
  CHECK(*merge(a, b) == *merge(b, a));
  CHECK(*merge(merge(a, b), c) == *merge(a, merge(b, c)));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 3;
    ChorPtr chor = gen_chor(cfg);
    for (const ProcName& p : pn(chor)) {
      BehaviourPtr x = project_behaviour(chor, p);
      CHECK(*merge(x, x) == *x);
    }
  }
}

TEST_CASE("projection respects pn") {
  ChorPtr c = annotate(parse_chor(read_data_file("crawler.chor")));
  CHECK(pn(c) == std::set<ProcName>{ProcName("p"), ProcName("s1"),
                                    ProcName("s2")});
  CHECK(*project_behaviour(c, ProcName("outsider")) == *Behaviour::end());
  CHECK(project(Chor::end()).procs.empty());
}

TEST_CASE("pruning") {
  Network small = parse_network("q |> p&{L: p?x}");
  Network big = parse_network("q |> p&{L: p?x, R: p!y}");
  CHECK(prunes(small, big));
  CHECK(!prunes(big, small));
  CHECK(prunes(big, big));  // reflexive

  // the projection of the stepped choreography is pruned by the stepped
  // network: the branch not taken lingers on the network side only
  ChorPtr c = annotate(parse_chor(read_data_file("remark1.chor")));
  for (bool take_then : {true, false}) {
    // guard is the variable e; bind it to pick the branch
    State sigma = take_then ? parse_state("p.e = true") : State{};
    Network n0 = project(c);
    auto step = step_seq({c, sigma});
    REQUIRE(step.has_value());
    CHECK(std::holds_alternative<ThenLabel>(step->first) == take_then);
    NetConfig net{n0, sigma};
    std::vector<NetRedex> redexes = enabled_net(net);
    REQUIRE(redexes.size() == 1);  // p's local conditional
    NetConfig net2 = apply_net(net, redexes[0]).second;
    Network projected = project(step->second.chor);
    CHECK(prunes(projected, net2.net));
    CHECK(!(print_network(projected) == print_network(net2.net)));
  }
}

TEST_CASE("network executions refine choreography executions") {
  // every complete schedule of the projected network produces a label trace
  // the concurrent choreography semantics can also produce, ending in the
  // same state (the converse fails: the choreography may schedule a
  // process's actions more liberally than its sequential projection)
  State sigma = parse_state("p.x = 1\nq.x = 2\nr.z = 9");
  for (const char* name :
       {"epp_exchange.chor", "scatter_gather.chor", "remark1.chor"}) {
    ChorPtr c = annotate(parse_chor(read_data_file(name)));
    auto chor_execs = all_executions({c, sigma}, 16);
    std::set<std::string> chor_traces;
    std::set<std::string> chor_finals;
    for (const auto& e : chor_execs) {
      chor_traces.insert(to_json_text(e.trace));
      chor_finals.insert(print_state(e.final.state));
    }
    CHECK(chor_finals.size() == 1);  // confluence: one final state

    Network n = project(c);
    auto net_execs = all_net_executions({n, sigma}, 16);
    CHECK(!net_execs.empty());
    for (const auto& e : net_execs) {
      CHECK(e.trace.status == RunStatus::Terminated);
      CHECK(chor_traces.count(to_json_text(e.trace)) == 1);
      CHECK(chor_finals.count(print_state(e.final.state)) == 1);
    }
  }
}

TEST_CASE("pruning crosses definitions consumed on one side") {
  // after one unfolding step the projection of the reduct is unfolded while
  // the uninvolved process in the network is not
  Network small = parse_network(
      "r |> def X = { q!z; X } in { q!z; X }");
  Network big = parse_network("r |> def X = { q!z; X } in { X }");
  CHECK(prunes(small, big));
  CHECK(prunes(big, small));
}
