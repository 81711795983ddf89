#include <doctest.h>

#include "chorc/ast.hpp"

using namespace chorc;

TEST_CASE("evaluation is total and deterministic") {
  LocalStore env;
  env.emplace(VarName("x"), Value::integer(5));
  env.emplace(VarName("t"), Value::str("item"));

  CHECK(eval(Expr::bin(BinOpKind::Add, Expr::lit(std::int64_t{1}),
                       Expr::lit(std::int64_t{2})),
             {}) == Value::integer(3));
  CHECK(eval(Expr::var(VarName("x")), env) == Value::integer(5));
  CHECK(eval(Expr::ctor("priceof", {Expr::var(VarName("t"))}), env) ==
        Value::tagged("priceof", {Value::str("item")}));

  // unbound reads and type mismatches yield Unit
  CHECK(eval(Expr::var(VarName("nope")), env) == Value::unit());
  CHECK(eval(Expr::bin(BinOpKind::Add, Expr::lit(true),
                       Expr::lit(std::int64_t{2})),
             {}) == Value::unit());
  CHECK(eval(Expr::negation(Expr::lit(std::int64_t{3})), {}) == Value::unit());

  // structural equality on values of any shape
  ExprPtr tagged_eq = Expr::bin(
      BinOpKind::Eq, Expr::ctor("pair", {Expr::lit(std::int64_t{1})}),
      Expr::ctor("pair", {Expr::lit(std::int64_t{1})}));
  CHECK(eval(tagged_eq, {}) == Value::boolean(true));

  ExprPtr e = Expr::bin(BinOpKind::Concat, Expr::lit(std::string("a")),
                        Expr::lit(std::string("b")));
  CHECK(eval(e, env) == eval(e, env));  // pure
  CHECK(eval(e, env) == Value::str("ab"));
}

TEST_CASE("free variables are exactly the Var occurrences") {
  ExprPtr e = Expr::bin(BinOpKind::Add, Expr::var(VarName("x")),
                        Expr::ctor("priceof", {Expr::var(VarName("y"))}));
  CHECK(free_vars(e) == std::set<VarName>{VarName("x"), VarName("y")});
  CHECK(free_vars(Expr::bin(BinOpKind::Add, Expr::lit(std::int64_t{1}),
                            Expr::lit(std::int64_t{2})))
            .empty());
  ExprPtr twice = Expr::bin(BinOpKind::Concat, Expr::var(VarName("x")),
                            Expr::var(VarName("x")));
  CHECK(free_vars(twice) == std::set<VarName>{VarName("x")});
}

TEST_CASE("pn and tn") {
  ProcName p("p"), q("q"), r("r"), s("s");
  Com pq{p, Expr::var(VarName("x")), q, VarName("y")};
  Com rp{r, Expr::var(VarName("z")), p, VarName("w")};
  CHECK(pn(Multicom::of({pq})) == std::set<ProcName>{p, q});
  CHECK(pn(Multicom::of({pq, rp})) == std::set<ProcName>{p, q, r});
  CHECK(pn(Multicom{}).empty());

  Sel s1{p, q, Label("L")};
  Sel s2{r, s, Label("R")};
  CHECK(tn(Multisel::of({s1})) == std::set<ProcName>{q});
  CHECK(tn(Multisel::of({s1, s2})) == std::set<ProcName>{q, s});
  CHECK(tn(Multisel{}).empty());

  CHECK(pn(Chor::end()).empty());
  CHECK(pn(Chor::cond(p, Expr::var(VarName("e")), Chor::end(),
                      Chor::end())) == std::set<ProcName>{p});
}

TEST_CASE("group storage is insertion-order independent") {
  ProcName p("p"), q("q"), r("r");
  Com a{p, Expr::var(VarName("x")), q, VarName("u")};
  Com b{q, Expr::var(VarName("x")), p, VarName("v")};
  Com c{r, Expr::lit(std::int64_t{1}), q, VarName("w")};
  CHECK(Multicom::of({a, b, c}) == Multicom::of({c, a, b}));
  CHECK(Multicom::of({a, a, b}) == Multicom::of({b, a}));  // set semantics

  ChorPtr c1 = Chor::mcom(Multicom::of({a, b}), Chor::end());
  ChorPtr c2 = Chor::mcom(Multicom::of({b, a}), Chor::end());
  CHECK(*c1 == *c2);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("p"));
  CHECK(is_identifier("x_s1"));
  CHECK(is_identifier("_tmp0"));
  CHECK(!is_identifier(""));
  CHECK(!is_identifier("1p"));
  CHECK(!is_identifier("a-b"));
}

TEST_CASE("pn is monotone under group union") {
  ProcName p("p"), q("q"), r("r");
  Com pq{p, Expr::var(VarName("x")), q, VarName("u")};
  Com rq{r, Expr::var(VarName("x")), q, VarName("w")};
  Multicom small = Multicom::of({pq});
  Multicom large = small.with(rq);
  for (const ProcName& name : pn(small)) CHECK(pn(large).count(name) == 1);
  Multisel ssmall = Multisel::of({Sel{p, q, Label("L")}});
  Multisel slarge = ssmall.with(Sel{p, r, Label("L")});
  for (const ProcName& name : tn(ssmall)) CHECK(tn(slarge).count(name) == 1);
}

TEST_CASE("state reads default to Unit and updates are functional") {
  State s0;
  CHECK(s0.get(ProcName("p"), VarName("x")) == Value::unit());
  State s1 = s0.with(ProcName("p"), VarName("x"), Value::integer(7));
  CHECK(s0.get(ProcName("p"), VarName("x")) == Value::unit());
  CHECK(s1.get(ProcName("p"), VarName("x")) == Value::integer(7));
  LocalStore locals = s1.locals(ProcName("p"));
  CHECK(locals.at(VarName("x")) == Value::integer(7));
  CHECK(s1.locals(ProcName("q")).empty());
}
