// Acceptance suite: exercises every property the artifact promises, at
// fixed scales with fixed seeds, enforcing the runtime limits. Prints one
// line per criterion and exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "latmon/pipeline.hpp"

using namespace latmon;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void fold(const CheckReport& rep, const std::string& ctx) {
    if (!rep.pass) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += ctx + ": " + (rep.witnesses.empty() ? "failed"
                                                    : rep.witnesses.front());
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& name,
                   std::int64_t limit_ms, Outcome (*body)()) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const Error& ex) {
    out.pass = false;
    out.detail = std::string("exception: ") + ex.what();
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      Clock::now() - start)
                      .count();
  if (ms > limit_ms) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ");
    out.detail += "over the time limit";
  }
  std::printf("[%s] %d. %s (%lld ms, limit %lld)%s%s\n",
              out.pass ? "PASS" : "FAIL", number, name.c_str(),
              static_cast<long long>(ms), static_cast<long long>(limit_ms),
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.pass) ++g_failures;
}

const std::vector<std::string> kSmallCatalog = {
    "chain2", "chain3", "chain4", "chain5", "boolean2", "M3", "N5"};

Outcome ideal_lattice_representation() {
  Outcome out;
  for (const auto& name : catalog_names()) {
    const auto l = catalog_lattice(name);
    const CompactSemilattice c(l);
    const auto ideals = ideals_enumerate(c);
    out.require(ideals.size() == l.size(), name + ": ideal count");
    for (const auto& i : ideals)
      out.require(is_ideal(c, i), name + ": non-ideal enumerated");
    out.fold(ideal_lattice_iso_check(l), name);
  }
  return out;
}

Outcome ice_axioms_chain2() {
  Outcome out;
  Engine e;
  e.trunc = Truncation::make(1, 3, 3);
  const auto comp = verify_composition(e, {});
  out.fold(comp, "composition");
  out.require(comp.counts.at("identities_checked") ==
                  comp.counts.at("identities_total"),
              "composition not exhaustive");
  CommutativityOptions copt;
  const auto com = verify_commutativity(e, copt);
  out.fold(com, "commutativity");
  out.require(com.counts.at("exhaustive") == 1, "commutativity not exhaustive");
  IndependenceOptions iopt;
  iopt.exhaustive = true;
  iopt.size_bound = 3;
  const auto ind = verify_independence(e, iopt);
  out.fold(ind, "independence");
  out.require(ind.counts.at("exhaustive") == 1, "independence not exhaustive");
  return out;
}

Outcome ice_axioms_m3() {
  Outcome out;
  const auto l = catalog_lattice("M3");
  const CompactSemilattice c(l);
  Engine e;
  e.trunc = Truncation::make(required_branching(c), 2);
  const auto comp = verify_composition(e, {});
  out.fold(comp, "composition");
  out.require(comp.counts.at("identities_checked") ==
                  comp.counts.at("identities_total"),
              "composition sampled instead of exhaustive");
  IndependenceOptions iopt;
  iopt.exhaustive = false;
  iopt.seed = 0;
  iopt.trials = 1000;
  iopt.size_bound = 4;
  const auto ind = verify_independence(e, iopt);
  out.fold(ind, "independence");
  out.require(ind.counts.at("pairs_checked") >= 1000, "fewer than 1000 pairs");
  return out;
}

Outcome oracle_agreement() {
  Outcome out;
  for (std::uint32_t depth = 1; depth <= 3; ++depth) {
    RunConfig cfg;
    cfg.lattice = "chain2";
    cfg.depth = depth;
    cfg.word_bound = 3;
    cfg.seed = 0;
    cfg.trials = 1000;
    const Report rep = run_oracle_compare(cfg);
    for (const auto& chk : rep.checks)
      out.fold(chk, "depth " + std::to_string(depth) + " " + chk.name);
  }
  return out;
}

Outcome confluence_chain2() {
  Outcome out;
  const Truncation t = Truncation::make(1, 3, 4);
  ConfluenceOptions opt;
  opt.size_bound = 4;
  const auto rep = verify_confluence(t, opt);
  out.fold(rep, "confluence");
  out.require(rep.counts.at("words") == 3060, "word census changed");
  return out;
}

Outcome enumeration_properties() {
  Outcome out;
  for (const auto& name : catalog_names()) {
    const auto l = catalog_lattice(name);
    const CompactSemilattice c(l);
    const std::uint32_t kappa = required_branching(c);
    // depth |C| for the small lattices; larger entries restrict to 2 and
    // the report records the restriction
    const std::uint32_t want = c.size();
    const std::uint32_t depth = c.size() <= 4 ? want : 2;
    const Labeling lb = Labeling::make(c, kappa);
    const Truncation t = Truncation::make(kappa, depth);
    const auto rep = verify_enumeration(lb, t, {});
    out.fold(rep, name);
    out.require(rep.counts.at("depth") == depth, name + ": depth recorded");
    if (depth < want)
      out.require(rep.counts.at("depth") == 2,
                  name + ": restriction recorded");
  }
  return out;
}

Outcome main_theorem() {
  Outcome out;
  for (const auto& name : kSmallCatalog) {
    const auto start = Clock::now();
    RunConfig cfg;
    cfg.lattice = name;
    ResolvedRun r = resolve(cfg);
    out.require(r.depth == r.compacts->size(),
                name + ": depth is not |C|");
    const Engine& e = r.engine;
    const Labeling& lb = *r.labeling;

    // every non-empty family of ideals
    std::vector<std::vector<Ideal>> families;
    const std::size_t n = r.ideals.size();
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      std::vector<Ideal> fam;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) fam.push_back(r.ideals[i]);
      families.push_back(std::move(fam));
    }
    for (std::size_t f = 0; f < families.size(); ++f) {
      JoinOptions jopt;
      out.fold(verify_join_preservation(e, lb, families[f], jopt),
               name + " join family " + std::to_string(f));
      MeetOptions mopt;
      mopt.size_bound = 4;
      mopt.seed = splitmix64(f);
      mopt.trials = 60;
      out.fold(verify_meet_preservation(e, lb, families[f], mopt),
               name + " meet family " + std::to_string(f));
    }
    out.fold(verify_injectivity(e, lb, r.ideals), name + " injectivity");
    out.fold(verify_bottom(e, lb, r.ideals.front(), 4), name + " bottom");
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        Clock::now() - start)
                        .count();
    out.require(ms < 300'000, name + ": over 5 minutes");
  }
  return out;
}

Outcome no_inverses() {
  Outcome out;
  for (const auto& name : catalog_names()) {
    RunConfig cfg;
    cfg.lattice = name;
    ResolvedRun r = resolve(cfg);
    NoInverseOptions opt;
    opt.size_bound = 3;
    opt.seed = 0;
    const auto rep =
        verify_no_inverses(r.engine, *r.labeling, r.ideals, opt);
    out.fold(rep, name);
    out.require(rep.counts.at("elements") > 0,
                name + ": fragments were trivial");
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  RunConfig cfg;
  cfg.lattice = "chain3";
  out.require(run_verify(cfg).to_string() == run_verify(cfg).to_string(),
              "verify reports differ");
  RunConfig em;
  em.lattice = "M3";
  em.depth = 2;
  out.require(run_embed(em).dump(2) == run_embed(em).dump(2),
              "embed artifacts differ");
  return out;
}

}  // namespace

int main() {
  run_criterion(1, "ideal-lattice representation", 1000,
                ideal_lattice_representation);
  run_criterion(2, "composition/commutativity/independence on chain2",
                10'000, ice_axioms_chain2);
  run_criterion(3, "composition and seeded independence on M3", 60'000,
                ice_axioms_m3);
  run_criterion(4, "oracle agreement on chain2", 60'000, oracle_agreement);
  run_criterion(5, "confluence of collapse orders", 60'000,
                confluence_chain2);
  run_criterion(6, "enumeration properties on the catalog", 480'000,
                enumeration_properties);
  run_criterion(7, "join/meet/injectivity/bottom over all families",
                2'100'000, main_theorem);
  run_criterion(8, "no inverses in bounded fragments", 600'000, no_inverses);
  run_criterion(9, "byte-identical reports", 120'000, determinism);

  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
