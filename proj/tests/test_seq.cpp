#include <doctest.h>

#include "chorc/seq.hpp"
#include "chorc/syntax.hpp"
#include "util.hpp"

using namespace chorc;

TEST_CASE("normalize") {
  // definitions over terminated scopes collapse
  ChorPtr def_end = Chor::rec(RecVar("X"), {}, parse_chor("p.x -> q.y"),
                              Chor::end());
  CHECK(std::holds_alternative<CEnd>(normalize(def_end)->node));

  // empty groups vanish
  ChorPtr c = parse_chor("p.x -> q.y");
  ChorPtr empty_head = Chor::mcom(Multicom{}, c);
  CHECK(*normalize(empty_head) == *c);

  // idempotence on already-normal terms
  ChorPtr crawler = parse_chor(read_data_file("crawler.chor"));
  CHECK(normalize(crawler) == crawler);
  CHECK(*normalize(normalize(empty_head)) == *normalize(empty_head));
}

TEST_CASE("termination") {
  CHECK(is_terminated(Chor::end()));
  CHECK(is_terminated(
      Chor::rec(RecVar("X"), {}, parse_chor("p.x -> q.y"), Chor::end())));
  CHECK(!is_terminated(parse_chor("p.x -> q.y")));
  // termination hiding behind an unfold
  CHECK(is_terminated(parse_chor("def X = {0} in {X}")));
  // unguarded recursion is not terminated (and cannot step)
  ChorPtr unguarded = parse_chor("def X = {X} in {X}");
  CHECK(!is_terminated(unguarded));
  CHECK(!step_seq({unguarded, State{}}).has_value());
}

TEST_CASE("a multicom reduces atomically") {
  ChorPtr c = parse_chor(read_data_file("exchange.chor"));
  State sigma = parse_state(read_data_file("exchange.state"));

  // oracle: evaluate every expression under the pre-state first, then apply
  // all updates
  State expected = sigma;
  for (const Com& com : std::get<CMCom>(c->node).group.coms())
    expected = expected.with(com.receiver, com.var,
                             eval(com.expr, sigma.locals(com.sender)));

  auto step = step_seq({c, sigma});
  REQUIRE(step.has_value());
  CHECK(step->second.state == expected);
  CHECK(step->second.state.get(ProcName("q"), VarName("u")) ==
        Value::integer(1));
  CHECK(step->second.state.get(ProcName("p"), VarName("v")) ==
        Value::integer(2));
  const auto& group = std::get<GroupLabel>(step->first);
  CHECK(group.coms.size() == 2);
  CHECK(is_terminated(step->second.chor));
}

TEST_CASE("selections leave the state unchanged") {
  ChorPtr c = parse_chor("{p -> q[L], p -> r[R]}; p.x -> q.y");
  State sigma = parse_state("p.x = 9");
  auto step = step_seq({c, sigma});
  REQUIRE(step.has_value());
  CHECK(step->second.state == sigma);
  CHECK(std::get<GroupLabel>(step->first).sels.size() == 2);
}

TEST_CASE("conditionals take the else branch on non-boolean guards") {
  State sigma;
  auto then_step = step_seq({parse_chor("if p.(1 < 2) then {p.x -> q.a} "
                                        "else {p.x -> q.b}"),
                             sigma});
  REQUIRE(then_step.has_value());
  CHECK(std::holds_alternative<ThenLabel>(then_step->first));

  // guard evaluates to Unit (unbound variable): not true, so else
  auto else_step = step_seq({parse_chor("if p.c then {p.x -> q.a} else "
                                        "{p.x -> q.b}"),
                             sigma});
  REQUIRE(else_step.has_value());
  CHECK(std::holds_alternative<ElseLabel>(else_step->first));
}

TEST_CASE("recursion unfolds lazily, once per procedure per step") {
  ChorPtr c = parse_chor("def X = {p.x -> q.y; X} in {X}");
  State sigma = parse_state("p.x = 3");
  auto step = step_seq({c, sigma});
  REQUIRE(step.has_value());
  const auto& group = std::get<GroupLabel>(step->first);
  REQUIRE(group.coms.size() == 1);
  CHECK(group.coms[0].value == Value::integer(3));
  // the residue is the definition wrapped around the recursive call again
  CHECK(*step->second.chor == *c);

  // nested definitions: reaching the redex takes one unfold of each
  ChorPtr nested =
      parse_chor("def X = {p.x -> q.y; X} in {def Y = {X} in {Y}}");
  auto nstep = step_seq({nested, sigma});
  REQUIRE(nstep.has_value());
  CHECK(std::get<GroupLabel>(nstep->first).coms.size() == 1);
}

TEST_CASE("run_seq") {
  // the crawler terminates in two group steps
  SeqRun crawler =
      run_seq({parse_chor(read_data_file("crawler.chor")), State{}}, 10);
  CHECK(crawler.trace.status == RunStatus::Terminated);
  CHECK(crawler.trace.labels.size() == 2);

  SeqRun done = run_seq({Chor::end(), State{}}, 10);
  CHECK(done.trace.status == RunStatus::Terminated);
  CHECK(done.trace.labels.empty());

  SeqRun loop =
      run_seq({parse_chor("def X = {p.x -> q.y; X} in {X}"), State{}}, 5);
  CHECK(loop.trace.status == RunStatus::OutOfFuel);
  CHECK(loop.trace.labels.size() == 5);
}

TEST_CASE("step_seq is deterministic") {
  ChorPtr c = parse_chor(read_data_file("scatter_gather.chor"));
  State sigma;
  auto a = step_seq({c, sigma});
  auto b = step_seq({c, sigma});
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->first == b->first);
  CHECK(a->second == b->second);
}
