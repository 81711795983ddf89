#include <doctest.h>

#include "chorc/epp.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "chorc/wellformed.hpp"

using namespace chorc;

TEST_CASE("generated choreographies are well-formed by construction") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    ChorPtr c = gen_chor(cfg);
    CHECK(check_chor(c).empty());
    CHECK_NOTHROW(project(c));  // require_projectable postcondition
    CHECK(prunes(project(c), project(c)));  // pruning is reflexive
  }
}

TEST_CASE("generation is deterministic given the seed") {
  GenConfig cfg;
  cfg.seed = 7;
  CHECK(print_chor(gen_chor(cfg)) == print_chor(gen_chor(cfg)));
  GenConfig other = cfg;
  other.seed = 8;
  CHECK(print_chor(gen_chor(cfg)) != print_chor(gen_chor(other)));
}

TEST_CASE("depth zero generates the terminated choreography") {
  GenConfig cfg;
  cfg.max_depth = 0;
  cfg.require_projectable = false;
  cfg.resample_budget = 1;
  CHECK_THROWS(gen_chor(cfg));  // nothing but 0 at depth zero
}

TEST_CASE("check suites pass on a small corpus") {
  GenConfig gen;
  gen.seed = 2026;
  Corpus corpus = gen_corpus(gen, 25);
  CheckOptions opts;
  opts.fuel = 32;
  opts.schedules = 2;
  opts.states_per_instance = 1;
  opts.configs_per_instance = 24;

  CheckReport progress = check_progress(corpus, opts);
  CHECK(progress.ok());
  CHECK(progress.instances == 25);

  CheckReport confluence = check_confluence(corpus, opts);
  CHECK(confluence.ok());

  CheckReport seqconc = check_seq_conc(corpus, opts);
  CHECK(seqconc.ok());
  CHECK(seqconc.inconclusive == 0);

  CheckReport epp = check_epp(corpus, opts);
  CHECK(epp.ok());
}

TEST_CASE("reports serialize") {
  CheckReport r;
  r.property = "demo";
  r.instances = 3;
  r.failures.push_back({42, "0", "boom"});
  std::string text = to_text(r);
  CHECK(text.find("demo") != std::string::npos);
  CHECK(text.find("42") != std::string::npos);
  std::string json = to_json_text({r});
  CHECK(json.find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("small-term enumeration") {
  std::vector<ChorPtr> tiny = enumerate_small(3);
  CHECK(!tiny.empty());
  bool has_end = false, has_com = false;
  for (const ChorPtr& c : tiny) {
    if (std::holds_alternative<CEnd>(c->node)) has_end = true;
    if (std::holds_alternative<CMCom>(c->node)) has_com = true;
    CHECK(check_chor(c).empty());
  }
  CHECK(has_end);
  CHECK(has_com);
  CHECK(enumerate_small(4).size() > tiny.size());
}

TEST_CASE("oracle check at small size") {
  CheckReport r = check_oracle(4, 8);
  CHECK(r.ok());
  CHECK(r.instances > 0);
}
