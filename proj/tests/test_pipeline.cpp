#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "latmon/pipeline.hpp"

using namespace latmon;

TEST_CASE("resolution fills defaults and validates overrides") {
  RunConfig cfg;
  cfg.lattice = "chain2";
  const auto r = resolve(cfg);
  CHECK(r.kappa == 1);
  CHECK(r.depth == 1);  // |C| = 1
  CHECK_FALSE(r.depth_restricted);

  RunConfig m3;
  m3.lattice = "M3";
  const auto rm = resolve(m3);
  CHECK(rm.kappa == 14);
  CHECK(rm.depth == 4);
  CHECK(rm.ideals.size() == 5);

  RunConfig big;
  big.lattice = "boolean3";
  const auto rb = resolve(big);
  CHECK(rb.kappa == 40);
  CHECK(rb.depth < 7);
  CHECK(rb.depth_restricted);

  RunConfig bad;
  bad.lattice = "M3";
  bad.kappa = 5;
  CHECK_THROWS_AS(resolve(bad), ConfigError);

  RunConfig missing;
  missing.lattice = "no-such-lattice";
  CHECK_THROWS_AS(resolve(missing), InputError);

  RunConfig deep;
  deep.lattice = "boolean3";
  deep.depth = 7;
  CHECK_THROWS_AS(resolve(deep), ConfigError);
}

TEST_CASE("lattice files load through the resolver") {
  const char* path = "latmon_test_lattice.json";
  {
    std::ofstream out(path);
    out << R"({"elements": ["bot", "p", "q", "top"],
               "covers": [["bot","p"], ["bot","q"], ["p","top"],
                          ["q","top"]]})";
  }
  RunConfig cfg;
  cfg.lattice = path;
  const auto r = resolve(cfg);
  CHECK(r.lattice.size() == 4);
  CHECK(r.compacts->size() == 3);
  std::remove(path);

  RunConfig broken;
  broken.lattice = path;
  CHECK_THROWS_AS(resolve(broken), InputError);
}

TEST_CASE("verification reports are reproducible byte for byte") {
  RunConfig cfg;
  cfg.lattice = "chain3";
  const Report a = run_verify(cfg);
  const Report b = run_verify(cfg);
  CHECK(a.all_pass());
  CHECK(a.to_string() == b.to_string());

  const auto e1 = run_embed(cfg);
  const auto e2 = run_embed(cfg);
  CHECK(e1.dump(2) == e2.dump(2));
}

TEST_CASE("serial and parallel kernels produce the same checks") {
  RunConfig par;
  par.lattice = "chain3";
  RunConfig ser = par;
  ser.exec = ExecMode::Serial;
  const Report a = run_verify(par);
  const Report b = run_verify(ser);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    CHECK(a.checks[i].to_json() == b.checks[i].to_json());
}

TEST_CASE("embed artifacts expose distinct index sets per ideal") {
  RunConfig cfg;
  cfg.lattice = "chain2";
  const auto art = run_embed(cfg);
  REQUIRE(art.at("ideals").size() == 2);
  CHECK(art.at("ideals")[0].at("fragment").at("size") == 1);

  RunConfig m3;
  m3.lattice = "M3";
  m3.depth = 2;
  const auto am = run_embed(m3);
  REQUIRE(am.at("ideals").size() == 5);
  std::set<std::string> s_sets;
  for (const auto& ij : am.at("ideals"))
    s_sets.insert(ij.at("s_set").dump());
  CHECK(s_sets.size() == 5);
}

TEST_CASE("oracle comparison passes on small chains") {
  RunConfig cfg;
  cfg.lattice = "chain2";
  cfg.depth = 2;
  cfg.word_bound = 3;
  cfg.trials = 200;
  const Report rep = run_oracle_compare(cfg);
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() == 2);
}

TEST_CASE("timings stay zeroed unless requested") {
  RunConfig cfg;
  cfg.lattice = "chain2";
  const Report rep = run_verify(cfg);
  for (const auto& c : rep.checks) CHECK(c.millis == 0);
}

TEST_CASE("reports keep a fixed schema") {
  RunConfig cfg;
  cfg.lattice = "chain2";
  const auto j = run_verify(cfg).to_json();
  std::vector<std::string> top;
  for (auto it = j.begin(); it != j.end(); ++it) top.push_back(it.key());
  CHECK(top == std::vector<std::string>{"config", "checks", "summary"});
  for (const auto& chk : j.at("checks")) {
    std::vector<std::string> keys;
    for (auto it = chk.begin(); it != chk.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"name", "status", "counts",
                                           "witnesses", "millis"});
    CHECK((chk.at("status") == "pass" || chk.at("status") == "fail"));
  }
  const auto& s = j.at("summary");
  CHECK(s.contains("passed"));
  CHECK(s.contains("failed"));
  CHECK(s.contains("status"));
  CHECK(s.contains("millis"));
}

TEST_CASE("a user-supplied lattice runs the whole pipeline") {
  const char* path = "latmon_test_div12.json";
  {
    std::ofstream out(path);
    // divisors of 12 ordered by divisibility
    out << R"({"elements": ["1", "2", "3", "4", "6", "12"],
               "covers": [["1","2"], ["1","3"], ["2","4"], ["2","6"],
                          ["3","6"], ["4","12"], ["6","12"]]})";
  }
  RunConfig cfg;
  cfg.lattice = path;
  cfg.trials = 200;
  const Report rep = run_verify(cfg);
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() == 11);
  std::remove(path);
}
