#include <doctest.h>

#include <algorithm>
#include <set>

#include "chorc/conc.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "util.hpp"

using namespace chorc;

namespace {

bool has_com(const std::vector<Redex>& rs, const std::string& sender,
             const std::string& receiver) {
  return std::any_of(rs.begin(), rs.end(), [&](const Redex& r) {
    const auto* c = std::get_if<ComRedex>(&r);
    return c != nullptr && c->com.sender.value == sender &&
           c->com.receiver.value == receiver;
  });
}

}  // namespace

TEST_CASE("scatter-gather enables exactly the first round") {
  ChorPtr c = parse_chor(read_data_file("scatter_gather.chor"));
  SeqConfig cfg{c, State{}};
  std::vector<Redex> rs = enabled_conc(cfg);
  CHECK(rs.size() == 2);
  CHECK(has_com(rs, "p", "s0"));
  CHECK(has_com(rs, "p", "s1"));

  // after p -> s0, the reply from s0 becomes independent of p -> s1
  const Redex* first = nullptr;
  for (const Redex& r : rs) {
    const auto* cr = std::get_if<ComRedex>(&r);
    if (cr != nullptr && cr->com.receiver.value == "s0") first = &r;
  }
  REQUIRE(first != nullptr);
  SeqConfig after = apply_redex(cfg, *first).second;
  std::vector<Redex> rs2 = enabled_conc(after);
  CHECK(rs2.size() == 2);
  CHECK(has_com(rs2, "p", "s1"));
  CHECK(has_com(rs2, "s0", "p"));
}

TEST_CASE("selections commute past communications not involving the target") {
  // tn({q -> r[L]}) = {r} is disjoint from pn({p.x -> q.y}) = {p, q}, so
  // both the communication and the selection are initially enabled.
  ChorPtr c = parse_chor("p.x -> q.y; q -> r[L]; 0");
  std::vector<Redex> rs = enabled_conc({c, State{}});
  CHECK(rs.size() == 2);
  // with the selection retargeted at a process of the multicom, it blocks
  ChorPtr blocked = parse_chor("p.x -> q.y; r -> q[L]; 0");
  std::vector<Redex> rs2 = enabled_conc({blocked, State{}});
  CHECK(rs2.size() == 1);
  CHECK(has_com(rs2, "p", "q"));
}

TEST_CASE("read dependencies block lifting") {
  // s0's reply reads y0, written by the first communication
  ChorPtr c = parse_chor("p.1 -> s0.y0; s0.y0 + 10 -> p.x0");
  std::vector<Redex> rs = enabled_conc({c, State{}});
  CHECK(rs.size() == 1);
  CHECK(has_com(rs, "p", "s0"));
  // without the read, both fire at once
  ChorPtr free = parse_chor("p.1 -> s0.y0; s0.7 -> p.x0");
  CHECK(enabled_conc({free, State{}}).size() == 2);
}

TEST_CASE("conditionals lift past independent groups only") {
  // receive at p into the guard variable blocks the conditional
  ChorPtr blocked = parse_chor(
      "q.1 -> p.c; if p.c then {p.x -> q.a} else {p.x -> q.b}");
  std::vector<Redex> rs = enabled_conc({blocked, State{}});
  CHECK(rs.size() == 1);
  // receive at p into an unrelated variable does not
  ChorPtr open = parse_chor(
      "q.1 -> p.z; if p.c then {p.x -> q.a} else {p.x -> q.b}");
  std::vector<Redex> rs2 = enabled_conc({open, State{}});
  CHECK(rs2.size() == 2);
  // a selection targeting p blocks the conditional
  ChorPtr sel_blocked = parse_chor(
      "q -> p[L]; if p.c then {p.x -> q.a} else {p.x -> q.b}");
  CHECK(enabled_conc({sel_blocked, State{}}).size() == 1);
  CHECK(std::holds_alternative<CEnd>(Chor::end()->node));
}

TEST_CASE("a repeated interaction cannot overtake itself") {
  // the same communication twice in a row: the second occurrence cannot
  // merge with the first group (sets), so only the head one is enabled
  ChorPtr c = parse_chor("p.x -> q.y; p.x -> q.y");
  std::vector<Redex> rs = enabled_conc({c, State{}});
  REQUIRE(rs.size() == 1);
  CHECK(std::get<ComRedex>(rs[0]).pos == 0);
}

TEST_CASE("apply_redex rejects stale redexes") {
  ChorPtr c = parse_chor(read_data_file("exchange.chor"));
  SeqConfig cfg{c, parse_state(read_data_file("exchange.state"))};
  std::vector<Redex> rs = enabled_conc(cfg);
  REQUIRE(rs.size() == 2);
  SeqConfig after = apply_redex(cfg, rs[0]).second;
  CHECK_THROWS_AS(apply_redex(after, rs[0]), StaleRedexError);
}

TEST_CASE("the exchange commutes to the same state in either order") {
  ChorPtr c = parse_chor(read_data_file("exchange.chor"));
  SeqConfig cfg{c, parse_state(read_data_file("exchange.state"))};
  std::vector<Redex> rs = enabled_conc(cfg);
  REQUIRE(rs.size() == 2);
  SeqConfig ab = apply_redex(apply_redex(cfg, rs[0]).second, rs[1]).second;
  SeqConfig ba = apply_redex(apply_redex(cfg, rs[1]).second, rs[0]).second;
  CHECK(ab == ba);
  CHECK(ab.state.get(ProcName("q"), VarName("u")) == Value::integer(1));
  CHECK(ab.state.get(ProcName("p"), VarName("v")) == Value::integer(2));
}

namespace {

// Independent oracle for the scatter-gather trace set: all permutations of
// the four communications respecting the two request-before-reply chains.
std::vector<Trace> linearisation_oracle() {
  ProcName p("p"), s0("s0"), s1("s1");
  std::vector<ComLabel> labels = {
      {p, Value::integer(1), s0, VarName("y0")},
      {s0, Value::integer(11), p, VarName("x0")},
      {p, Value::integer(2), s1, VarName("y1")},
      {s1, Value::integer(12), p, VarName("x1")},
  };
  std::vector<std::size_t> idx = {0, 1, 2, 3};
  std::vector<Trace> out;
  std::sort(idx.begin(), idx.end());
  do {
    auto pos = [&](std::size_t what) {
      return std::find(idx.begin(), idx.end(), what) - idx.begin();
    };
    if (pos(0) > pos(1) || pos(2) > pos(3)) continue;
    Trace t;
    for (std::size_t i : idx) t.labels.push_back(TransitionLabel{labels[i]});
    t.status = RunStatus::Terminated;
    out.push_back(std::move(t));
  } while (std::next_permutation(idx.begin(), idx.end()));
  std::sort(out.begin(), out.end(),
            [](const Trace& a, const Trace& b) { return compare(a, b) < 0; });
  return out;
}

}  // namespace

TEST_CASE("trace sets: scatter-gather has the six linearisations") {
  std::vector<Trace> expected = linearisation_oracle();
  REQUIRE(expected.size() == 6);

  std::vector<Trace> got =
      all_traces({parse_chor(read_data_file("scatter_gather.chor")), State{}},
                 16);
  CHECK(got == expected);

  // the three structurally equivalent phrasings have identical trace sets
  for (const char* name : {"scatter_gather_b.chor", "scatter_gather_c.chor"}) {
    std::vector<Trace> other =
        all_traces({parse_chor(read_data_file(name)), State{}}, 16);
    CHECK(other == expected);
  }

  std::vector<Trace> single =
      all_traces({parse_chor("p.x -> q.y"), State{}}, 4);
  CHECK(single.size() == 1);

  // executions cut off by the bound are marked truncated
  std::vector<Trace> cut =
      all_traces({parse_chor(read_data_file("scatter_gather.chor")), State{}},
                 2);
  CHECK(!cut.empty());
  for (const Trace& t : cut) CHECK(t.status == RunStatus::Truncated);
}

TEST_CASE("rewrite oracle reaches the expected equivalents") {
  // a multicom splits into its interactions in either order
  ChorPtr grouped = parse_chor("{p.x -> q.u, q.x -> p.v}");
  ChorPtr seq_a = parse_chor("p.x -> q.u; q.x -> p.v");
  ChorPtr seq_b = parse_chor("q.x -> p.v; p.x -> q.u");
  CHECK(equiv_oracle(grouped, seq_a, 2));
  CHECK(equiv_oracle(grouped, seq_b, 2));
  CHECK(equiv_oracle(seq_a, grouped, 2));

  // groups and multisels swap when targets stay out of the communication
  ChorPtr hs = parse_chor("p.x -> q.y; q -> r[L]; 0");
  ChorPtr sh = parse_chor("q -> r[L]; p.x -> q.y; 0");
  CHECK(equiv_oracle(hs, sh, 2));
  CHECK(equiv_oracle(sh, hs, 2));

  // nested conditionals on distinct processes commute
  ChorPtr pq = parse_chor(
      "if p.c then {if q.d then {p.x -> q.a} else {p.x -> q.b}} "
      "else {if q.d then {q.y -> p.a} else {q.y -> p.b}}");
  ChorPtr qp = parse_chor(
      "if q.d then {if p.c then {p.x -> q.a} else {q.y -> p.a}} "
      "else {if p.c then {p.x -> q.b} else {q.y -> p.b}}");
  CHECK(equiv_oracle(pq, qp, 2));

  // unrelated terms are not reachable
  CHECK(!equiv_oracle(grouped, parse_chor("p.x -> q.u"), 4));
}

TEST_CASE("production redexes are confirmed by the oracle") {
  State sigma = parse_state(read_data_file("exchange.state"));
  for (const char* name :
       {"exchange.chor", "scatter_gather.chor", "scatter_gather_b.chor"}) {
    SeqConfig cfg{parse_chor(read_data_file(name)), sigma};
    std::vector<Redex> rs = enabled_conc(cfg);
    CHECK(!rs.empty());
    for (const Redex& r : rs) CHECK(confirm_redex(cfg, r, 8));
  }
}

namespace {

std::string cfg_key(const SeqConfig& cfg) {
  return print_chor(cfg.chor) + "##" + print_state(cfg.state);
}

// every pair of distinct enabled redexes rejoins within two further steps
bool diamond_holds(const SeqConfig& cfg) {
  std::vector<Redex> redexes = enabled_conc(cfg);
  for (std::size_t i = 0; i < redexes.size(); ++i) {
    for (std::size_t j = i + 1; j < redexes.size(); ++j) {
      SeqConfig a = apply_redex(cfg, redexes[i]).second;
      SeqConfig b = apply_redex(cfg, redexes[j]).second;
      auto reach = [](const SeqConfig& from) {
        std::set<std::string> keys{cfg_key(from)};
        std::vector<SeqConfig> frontier{from};
        for (int d = 0; d < 2; ++d) {
          std::vector<SeqConfig> next;
          for (const SeqConfig& c : frontier)
            for (const Redex& r : enabled_conc(c)) {
              SeqConfig succ = apply_redex(c, r).second;
              if (keys.insert(cfg_key(succ)).second) next.push_back(succ);
            }
          frontier = std::move(next);
        }
        return keys;
      };
      std::set<std::string> ra = reach(a);
      std::set<std::string> rb = reach(b);
      bool met = false;
      for (const std::string& k : ra) met = met || rb.count(k) > 0;
      if (!met) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("diamond property, exhaustively at oracle scale") {
  State::Cells cells;
  cells.emplace(std::pair{ProcName("p"), VarName("x")}, Value::integer(1));
  cells.emplace(std::pair{ProcName("q"), VarName("x")}, Value::integer(2));
  cells.emplace(std::pair{ProcName("r"), VarName("x")}, Value::integer(3));
  State sigma{std::move(cells)};
  for (const ChorPtr& c : enumerate_small(5))
    CHECK(diamond_holds({c, sigma}));
}

TEST_CASE("run_conc is reproducible from the seed") {
  SeqConfig cfg{parse_chor(read_data_file("scatter_gather.chor")), State{}};
  SeqRun a = run_conc(cfg, 100, 42);
  SeqRun b = run_conc(cfg, 100, 42);
  CHECK(a.trace == b.trace);
  CHECK(a.final == b.final);
  CHECK(a.trace.status == RunStatus::Terminated);
  CHECK(a.trace.labels.size() == 4);  // singles, never groups
}
