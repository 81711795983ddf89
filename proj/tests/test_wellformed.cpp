#include <doctest.h>

#include <algorithm>

#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "chorc/wellformed.hpp"
#include "util.hpp"

using namespace chorc;

namespace {

bool has(const std::vector<Violation>& vs, ViolationKind kind,
         const std::string& first, const std::string& second) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) {
    return v.kind == kind && v.first == first && v.second &&
           *v.second == second;
  });
}

}  // namespace

TEST_CASE("the interfering multicom") {
  ChorPtr c = parse_chor(read_data_file("interfering.chor"));
  const Multicom& h = std::get<CMCom>(c->node).group;
  std::vector<Violation> vs = check_multicom(h);

  // the three documented clashes
  CHECK(has(vs, ViolationKind::SameChannelClash, "p.x -> q.x", "p.y -> q.y"));
  CHECK(has(vs, ViolationKind::SameCellClash, "p.y -> q.y", "r.x -> q.y"));
  CHECK(has(vs, ViolationKind::ReadWriteClash, "r.x -> q.y", "q.y -> s.x"));
  // the second write into q.y races with q's send of y just as the third
  // does, so exhaustive pair checking reports it too
  CHECK(has(vs, ViolationKind::ReadWriteClash, "p.y -> q.y", "q.y -> s.x"));
  CHECK(vs.size() == 4);

  std::set<ViolationKind> kinds;
  for (const auto& v : vs) kinds.insert(v.kind);
  CHECK(kinds == std::set<ViolationKind>{ViolationKind::SameChannelClash,
                                         ViolationKind::SameCellClash,
                                         ViolationKind::ReadWriteClash});
}

TEST_CASE("the interfering multisel") {
  ChorPtr c = parse_chor(read_data_file("interfering_sels.chor"));
  const Multisel& phi = std::get<CMSel>(c->node).group;
  std::vector<Violation> vs = check_multisel(phi);
  CHECK(vs.size() >= 2);  // q is a repeated target; q is target and sender
  for (const auto& v : vs) CHECK(v.kind == ViolationKind::SelTargetClash);
}

TEST_CASE("well-formed groups") {
  ChorPtr offers = parse_chor(read_data_file("offers.chor"));
  CHECK(check_chor(offers).empty());
  ChorPtr crawler = parse_chor(read_data_file("crawler.chor"));
  CHECK(check_chor(crawler).empty());
  CHECK(check_multicom(Multicom::of({Com{ProcName("p"),
                                         Expr::var(VarName("x")),
                                         ProcName("q"), VarName("y")}}))
            .empty());
  CHECK(check_multisel(
            Multisel::of({Sel{ProcName("p"), ProcName("q"), Label("L")},
                          Sel{ProcName("p"), ProcName("r"), Label("L")}}))
            .empty());
}

TEST_CASE("self-interaction, unbound calls, conditional paths") {
  std::vector<Violation> self = check_chor(parse_chor("p.x -> p.y"));
  REQUIRE(self.size() == 1);
  CHECK(self[0].kind == ViolationKind::SelfInteraction);

  std::vector<Violation> unbound = check_chor(parse_chor("X"));
  REQUIRE(unbound.size() == 1);
  CHECK(unbound[0].kind == ViolationKind::UnboundCall);
  CHECK(check_chor(parse_chor("def X = {p.x -> q.y; X} in {X}")).empty());

  // the interfering multicom embedded under a conditional keeps its
  // violations, now located under the then branch
  std::string text = "if t.c then {\n" + read_data_file("interfering.chor") +
                     "\n} else {\n0\n}";
  std::vector<Violation> vs = check_chor(parse_chor(text));
  CHECK(vs.size() == 4);
  for (const auto& v : vs) CHECK(v.path == "$.then");
}

TEST_CASE("well-formedness is closed under subsets") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 1;
    cfg.max_group_size = 5;
    cfg.require_projectable = false;
    ChorPtr c = gen_chor(cfg);
    if (const auto* mc = std::get_if<CMCom>(&c->node)) {
      const Multicom& h = mc->group;
      REQUIRE(check_multicom(h).empty());
      for (const Com& e : h.coms())
        CHECK(check_multicom(h.without(e)).empty());
    } else if (const auto* ms = std::get_if<CMSel>(&c->node)) {
      const Multisel& phi = ms->group;
      REQUIRE(check_multisel(phi).empty());
      for (const Sel& e : phi.sels())
        CHECK(check_multisel(phi.without(e)).empty());
    }
  }
}

TEST_CASE("well-formed multicoms write pairwise-distinct cells") {
  // condition 1 implies distinct (receiver, var) pairs, which is what makes
  // the simultaneous update of a whole group unambiguous
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 1;
    cfg.max_group_size = 5;
    cfg.require_projectable = false;
    ChorPtr c = gen_chor(cfg);
    const auto* mc = std::get_if<CMCom>(&c->node);
    if (mc == nullptr) continue;
    const auto& coms = mc->group.coms();
    for (std::size_t i = 0; i < coms.size(); ++i)
      for (std::size_t j = i + 1; j < coms.size(); ++j)
        CHECK(!(coms[i].receiver == coms[j].receiver &&
                coms[i].var == coms[j].var));
  }
}

TEST_CASE("checking is element-order insensitive") {
  ChorPtr c = parse_chor(read_data_file("interfering.chor"));
  const Multicom& h = std::get<CMCom>(c->node).group;
  std::vector<Com> rev(h.coms().rbegin(), h.coms().rend());
  std::vector<Violation> a = check_multicom(h);
  std::vector<Violation> b = check_multicom(Multicom::of(rev));
  auto key = [](const Violation& v) {
    return std::string(kind_text(v.kind)) + "|" + v.first + "|" +
           (v.second ? *v.second : "");
  };
  std::vector<std::string> ka, kb;
  for (const auto& v : a) ka.push_back(key(v));
  for (const auto& v : b) kb.push_back(key(v));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  CHECK(ka == kb);
}

TEST_CASE("empty groups are flagged on constructed terms") {
  ChorPtr c = Chor::mcom(Multicom{}, Chor::end());
  std::vector<Violation> vs = check_chor(c);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == ViolationKind::EmptyGroup);
}
