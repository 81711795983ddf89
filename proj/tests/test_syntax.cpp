#include <doctest.h>

#include <random>

#include "chorc/epp.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "util.hpp"

using namespace chorc;

TEST_CASE("parse grouped-interaction snippets") {
  ChorPtr ex = parse_chor("{p.x -> q.u, q.y -> p.v}; 0");
  const auto& mc = std::get<CMCom>(ex->node);
  CHECK(mc.group.size() == 2);
  CHECK(std::holds_alternative<CEnd>(mc.cont->node));

  ChorPtr sel = parse_chor("p -> q[L]; p.x -> q.x; 0");
  const auto& ms = std::get<CMSel>(sel->node);
  CHECK(ms.group.size() == 1);
  CHECK(std::holds_alternative<CMCom>(ms.cont->node));

  CHECK(std::holds_alternative<CEnd>(parse_chor("0")->node));

  // trailing `; 0` is optional
  CHECK(*parse_chor("p.x -> q.u") == *parse_chor("p.x -> q.u; 0"));
}

TEST_CASE("parse networks") {
  Network n = parse_network("p |> {q!x, q?y}; 0 | q |> {p!x, p?y}; 0");
  CHECK(n.procs.size() == 2);
  const auto& pb = std::get<BTheta>(n.procs.at(ProcName("p"))->node);
  CHECK(pb.group.size() == 2);

  Network b = parse_network("q |> p&{L: p?x, R: p!y}");
  const auto& br = std::get<BBranch>(b.procs.at(ProcName("q"))->node);
  CHECK(br.branches.size() == 2);

  CHECK(parse_network("0").procs.empty());
}

TEST_CASE("parse states") {
  State s = parse_state("p.x = 1\nq.x = 2");
  CHECK(s.cells().size() == 2);
  CHECK(s.get(ProcName("q"), VarName("x")) == Value::integer(2));
  CHECK(parse_state("").cells().empty());
  State t = parse_state("p.t = \"item\"\np.n = -3\np.u = unit");
  CHECK(t.get(ProcName("p"), VarName("t")) == Value::str("item"));
  CHECK(t.get(ProcName("p"), VarName("n")) == Value::integer(-3));
  CHECK(t.get(ProcName("p"), VarName("u")) == Value::unit());
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_chor("{p.x -> q.u,\n      }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_chor("{}"), ParseError);       // empty group
  CHECK_THROWS_AS(parse_chor("{p.x -> q.u, p.x -> q.u}"), ParseError);
  CHECK_THROWS_AS(parse_chor("{p.x -> q.u, p -> q[L]}"), ParseError);
  CHECK_THROWS_AS(parse_network("p |> 0 | p |> 0"), ParseError);
  CHECK_THROWS_AS(parse_network("q |> p&{L: 0, L: 0}"), ParseError);
  CHECK_THROWS_AS(parse_network("p |> {q(+)[L], q(+)[R]}; 0"), ParseError);
  CHECK_THROWS_AS(parse_state("p.x = 1\np.x = 2"), ParseError);
  CHECK_THROWS_AS(parse_chor("p.x -> q"), ParseError);
}

TEST_CASE("printing is canonical and reparses equal") {
  for (const char* name :
       {"exchange.chor", "offers.chor", "crawler.chor", "epp_exchange.chor",
        "remark1.chor", "unprojectable.chor", "scatter_gather.chor",
        "scatter_gather_b.chor", "scatter_gather_c.chor",
        "interfering.chor", "interfering_sels.chor"}) {
    ChorPtr c = parse_chor(read_data_file(name));
    std::string printed = print_chor(c);
    CHECK(*parse_chor(printed) == *c);
    CHECK(print_chor(parse_chor(printed)) == printed);
  }
  for (const char* name :
       {"crawler.net", "epp_exchange.net", "remark1.net", "deadlock.net"}) {
    Network n = parse_network(read_data_file(name));
    std::string printed = print_network(n);
    CHECK(parse_network(printed) == n);
    CHECK(print_network(parse_network(printed)) == printed);
  }
  State s = parse_state(read_data_file("exchange.state"));
  CHECK(parse_state(print_state(s)) == s);
}

TEST_CASE("round-trip over random choreographies") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 4;
    cfg.require_projectable = (seed % 2 == 0);
    ChorPtr c = gen_chor(cfg);
    CHECK(*parse_chor(print_chor(c)) == *c);
    // annotated definitions and calls survive the round trip
    ChorPtr ann = annotate(c);
    CHECK(*parse_chor(print_chor(ann)) == *ann);
    if (cfg.require_projectable) {
      Network n = project(ann);
      CHECK(parse_network(print_network(n)) == n);
    }
  }
}

namespace {

ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0) {
    switch (rng() % 4) {
      case 0: return Expr::lit(static_cast<std::int64_t>(rng() % 100));
      case 1: return Expr::lit(rng() % 2 == 0);
      case 2: return Expr::lit(std::string("s") + char('a' + rng() % 3));
      default: return Expr::var(VarName(std::string(1, char('x' + rng() % 3))));
    }
  }
  switch (rng() % 10) {
    case 0: return Expr::negation(random_expr(rng, depth - 1));
    case 1: {
      std::vector<ExprPtr> args;
      for (std::size_t i = rng() % 3; i-- > 0;)
        args.push_back(random_expr(rng, depth - 1));
      return Expr::ctor(std::string("f") + char('0' + rng() % 3),
                        std::move(args));
    }
    default: {
      auto op = static_cast<BinOpKind>(rng() % 8);
      return Expr::bin(op, random_expr(rng, depth - 1),
                       random_expr(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("printer parenthesization round-trips on random expressions") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = random_expr(rng, 4);
    Com com{ProcName("p"), e, ProcName("q"), VarName("u")};
    ChorPtr c = Chor::mcom(Multicom::of({com}), Chor::end());
    ChorPtr back = parse_chor(print_chor(c));
    CHECK(*back == *c);
  }
}

TEST_CASE("mutated inputs either parse or raise ParseError") {
  std::vector<std::string> seeds_text;
  for (const char* name : {"crawler.chor", "remark1.chor", "exchange.chor"})
    seeds_text.push_back(read_data_file(name));
  std::mt19937_64 rng(99);
  const char alphabet[] = "{}[]()<>;,.|&!?+-*=\"x X0 definthenelse";
  for (int round = 0; round < 400; ++round) {
    std::string text = seeds_text[rng() % seeds_text.size()];
    for (int edits = 0; edits < 4; ++edits) {
      std::size_t at = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:
          if (!text.empty()) text.erase(std::min(at, text.size() - 1), 1);
          break;
        case 1:
          text.insert(at, 1, alphabet[rng() % (sizeof(alphabet) - 1)]);
          break;
        default:
          if (!text.empty())
            text[std::min(at, text.size() - 1)] =
                alphabet[rng() % (sizeof(alphabet) - 1)];
      }
    }
    try {
      ChorPtr c = parse_chor(text);
      CHECK(*parse_chor(print_chor(c)) == *c);
    } catch (const ParseError&) {
      // rejected with a position, never a crash
    }
  }
}

TEST_CASE("expression precedence round-trips") {
  const char* exprs[] = {
      "p.x + y * z -> q.u",
      "p.(x + y) * z -> q.u",
      "p.not x and y < 1 -> q.u",
      "p.a ++ b ++ c -> q.u",
      "p.x = y or not z -> q.u",
      "p.1 - 2 - 3 -> q.u",
      "p.1 - (2 - 3) -> q.u",
      "p.f() -> q.u",
      "p.pair(x, \"line\\n\") -> q.u",
  };
  for (const char* text : exprs) {
    ChorPtr c = parse_chor(text);
    CHECK(*parse_chor(print_chor(c)) == *c);
  }
  // zero-argument constructors stay distinct from variables
  ChorPtr f0 = parse_chor("p.f() -> q.u");
  ChorPtr fv = parse_chor("p.f -> q.u");
  CHECK(!(*f0 == *fv));
}
