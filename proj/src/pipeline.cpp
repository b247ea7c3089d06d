#include "latmon/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace latmon {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

FiniteLattice load_source(const std::string& ref) {
  if (is_catalog_name(ref)) return catalog_lattice(ref);
  if (!std::filesystem::exists(ref))
    throw InputError("lattice \"" + ref +
                     "\" is neither a catalog name nor a file");
  std::ifstream in(ref);
  if (!in) throw InputError("cannot read lattice file " + ref);
  std::ostringstream text;
  text << in.rdbuf();
  return FiniteLattice::load_json_text(text.str());
}

nlohmann::ordered_json config_json(const RunConfig& cfg,
                                   const ResolvedRun& r) {
  nlohmann::ordered_json j;
  j["lattice"] = cfg.lattice;
  j["kappa"] = r.kappa;
  j["depth"] = r.depth;
  j["depth_restricted"] = r.depth_restricted;
  j["word_bound"] = cfg.word_bound;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["exhaustive_independence"] = cfg.exhaustive_independence;
  j["exec"] = cfg.exec == ExecMode::Parallel ? "parallel" : "serial";
  return j;
}

// All non-empty subfamilies when that stays within the work budget,
// otherwise singletons, pairs and the full family.
std::vector<std::vector<Ideal>> family_plan(const std::vector<Ideal>& ideals,
                                            std::uint64_t nodes,
                                            std::uint64_t work_budget,
                                            bool* all_families) {
  std::vector<std::vector<Ideal>> out;
  const std::size_t n = ideals.size();
  const bool full = n <= 20 && ((1ull << n) - 1) * std::max<std::uint64_t>(
                                                       nodes, 1) <=
                                   work_budget;
  *all_families = full;
  if (full) {
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      std::vector<Ideal> fam;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) fam.push_back(ideals[i]);
      out.push_back(std::move(fam));
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back({ideals[i]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back({ideals[i], ideals[j]});
  out.push_back(ideals);
  return out;
}

}  // namespace

ResolvedRun resolve(const RunConfig& cfg) {
  ResolvedRun r;
  r.lattice = load_source(cfg.lattice);
  r.compacts = std::make_unique<CompactSemilattice>(r.lattice);
  if (r.compacts->size() == 0)
    throw ConfigError(
        "lattice has no non-bottom elements; nothing to verify");

  const std::uint32_t need = required_branching(*r.compacts);
  r.kappa = cfg.kappa.value_or(need);
  if (r.kappa < need)
    throw ConfigError("kappa " + std::to_string(r.kappa) +
                      " is below the required branching " +
                      std::to_string(need));

  auto nodes_at = [&](std::uint32_t d) -> std::uint64_t {
    try {
      return Truncation::make(r.kappa, d).node_count(d);
    } catch (const ConfigError&) {
      return ~0ull;
    }
  };

  if (cfg.depth) {
    r.depth = *cfg.depth;
    if (r.depth < 1) throw ConfigError("depth must be >= 1");
    if (nodes_at(r.depth) > cfg.node_ceiling)
      throw ConfigError("depth " + std::to_string(r.depth) + " spans " +
                        std::to_string(nodes_at(r.depth)) +
                        " nodes, above the ceiling of " +
                        std::to_string(cfg.node_ceiling));
  } else {
    std::uint32_t want = std::max<std::uint32_t>(r.compacts->size(), 1);
    std::uint32_t d = want;
    while (d > 1 && nodes_at(d) > cfg.node_budget) --d;
    r.depth = d;
    r.depth_restricted = d < want;
  }

  r.engine.trunc = Truncation::make(r.kappa, r.depth, cfg.word_bound);
  r.engine.max_ground_bits = cfg.max_ground_bits;
  r.engine.projection_bit_limit = cfg.projection_bit_limit;
  r.labeling = std::make_unique<Labeling>(Labeling::make(*r.compacts, r.kappa));
  r.ideals = ideals_enumerate(*r.compacts);
  return r;
}

Report run_verify(const RunConfig& cfg) {
  ResolvedRun r = resolve(cfg);
  const Engine& e = r.engine;
  const Labeling& lb = *r.labeling;
  Report rep;
  rep.config = config_json(cfg, r);

  auto push = [&](CheckReport c, Clock::time_point start) {
    c.millis = cfg.timings ? ms_since(start) : 0;
    rep.checks.push_back(std::move(c));
  };

  {
    auto start = Clock::now();
    CheckReport c;
    c.name = "ideal-count";
    c.counts["elements"] = r.lattice.size();
    c.counts["ideals"] = r.ideals.size();
    if (r.ideals.size() != r.lattice.size())
      c.add_witness("expected " + std::to_string(r.lattice.size()) +
                    " ideals, found " + std::to_string(r.ideals.size()));
    for (const auto& i : r.ideals)
      if (!is_ideal(*r.compacts, i))
        c.add_witness("enumerated set is not an ideal");
    push(std::move(c), start);
  }
  {
    auto start = Clock::now();
    push(ideal_lattice_iso_check(r.lattice), start);
  }
  {
    auto start = Clock::now();
    EnumerationOptions opt;
    opt.exec = cfg.exec;
    push(verify_enumeration(lb, e.trunc, opt), start);
  }
  {
    auto start = Clock::now();
    CompositionOptions opt;
    opt.exec = cfg.exec;
    push(verify_composition(e, opt), start);
  }
  {
    auto start = Clock::now();
    CommutativityOptions opt;
    opt.exec = cfg.exec;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    push(verify_commutativity(e, opt), start);
  }
  {
    auto start = Clock::now();
    IndependenceOptions opt;
    opt.exhaustive = cfg.exhaustive_independence;
    opt.size_bound = cfg.word_bound;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.exec = cfg.exec;
    push(verify_independence(e, opt), start);
  }

  bool all_families = false;
  const auto families =
      family_plan(r.ideals, e.trunc.node_count(e.trunc.depth()),
                  cfg.family_work_budget, &all_families);
  {
    auto start = Clock::now();
    CheckReport agg;
    agg.name = "join-preservation";
    agg.counts["families"] = families.size();
    agg.counts["all_nonempty_families"] = all_families ? 1 : 0;
    std::uint64_t factorized = 0, direct = 0, skipped = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
      JoinOptions opt;
      opt.exec = cfg.exec;
      CheckReport one = verify_join_preservation(e, lb, families[f], opt);
      factorized += one.counts["factorized"];
      direct += one.counts["direct"];
      skipped += one.counts["skipped_depth"];
      if (!one.pass) {
        agg.pass = false;
        for (const auto& w : one.witnesses)
          agg.add_witness("family " + std::to_string(f) + ": " + w);
      }
    }
    agg.counts["factorized"] = factorized;
    agg.counts["direct"] = direct;
    agg.counts["skipped_depth"] = skipped;
    push(std::move(agg), start);
  }
  {
    auto start = Clock::now();
    CheckReport agg;
    agg.name = "meet-preservation";
    agg.counts["families"] = families.size();
    std::uint64_t frag_meet = 0, member_trials = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
      MeetOptions opt;
      opt.exec = cfg.exec;
      opt.size_bound = cfg.word_bound;
      opt.fragment_budget = cfg.fragment_budget;
      opt.seed = splitmix64(cfg.seed + f);
      opt.trials = std::max<std::uint64_t>(cfg.trials / families.size(), 50);
      CheckReport one = verify_meet_preservation(e, lb, families[f], opt);
      frag_meet += one.counts["fragment_meet"];
      member_trials += one.counts["member_trials"];
      if (!one.pass) {
        agg.pass = false;
        for (const auto& w : one.witnesses)
          agg.add_witness("family " + std::to_string(f) + ": " + w);
      }
    }
    agg.counts["fragment_elements"] = frag_meet;
    agg.counts["member_trials"] = member_trials;
    push(std::move(agg), start);
  }
  {
    auto start = Clock::now();
    push(verify_injectivity(e, lb, r.ideals), start);
  }
  {
    auto start = Clock::now();
    push(verify_bottom(e, lb, r.ideals.front(), cfg.word_bound), start);
  }
  {
    auto start = Clock::now();
    NoInverseOptions opt;
    opt.exec = cfg.exec;
    opt.size_bound = std::min<std::uint32_t>(cfg.word_bound, 3);
    opt.fragment_budget = std::min<std::uint64_t>(cfg.fragment_budget, 100'000);
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    push(verify_no_inverses(e, lb, r.ideals, opt), start);
  }
  return rep;
}

nlohmann::ordered_json run_embed(const RunConfig& cfg) {
  ResolvedRun r = resolve(cfg);
  const Truncation& t = r.engine.trunc;
  const Labeling& lb = *r.labeling;
  const CompactSemilattice& c = *r.compacts;

  nlohmann::ordered_json out;
  out["config"] = config_json(cfg, r);
  nlohmann::ordered_json lat;
  lat["elements"] = nlohmann::ordered_json::array();
  for (ElemId x = 0; x < r.lattice.size(); ++x)
    lat["elements"].push_back(r.lattice.name(x));
  lat["bottom"] = r.lattice.name(r.lattice.bottom());
  lat["top"] = r.lattice.name(r.lattice.top());
  out["lattice"] = std::move(lat);

  const FragmentPlan plan =
      plan_fragments(t, lb, r.ideals, cfg.word_bound, cfg.fragment_budget);

  constexpr std::uint64_t kListCap = 512;
  nlohmann::ordered_json ideals = nlohmann::ordered_json::array();
  for (std::size_t idx = 0; idx < r.ideals.size(); ++idx) {
    const IndexedMonoid m{&lb, r.ideals[idx]};
    nlohmann::ordered_json ij;
    ij["index"] = idx;
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (CompactId x : r.ideals[idx].members()) members.push_back(c.name(x));
    ij["members"] = std::move(members);

    const auto counts = s_counts_by_depth(t, m, t.depth());
    std::uint32_t list_depth = t.depth();
    while (list_depth > 1 && counts[list_depth] > kListCap) --list_depth;
    if (counts[list_depth] > kListCap) list_depth = 0;

    nlohmann::ordered_json sset;
    sset["listing_depth"] = list_depth;
    nlohmann::ordered_json by_depth = nlohmann::ordered_json::array();
    for (std::uint32_t d = 1; d < counts.size(); ++d)
      by_depth.push_back(counts[d] - counts[d - 1]);
    sset["count_by_depth"] = std::move(by_depth);
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    if (list_depth >= 1) {
      for (const auto& n : s_nodes(t, m, list_depth, kListCap)) {
        nlohmann::ordered_json nj;
        nj["node"] = n.to_string();
        nj["label"] = c.name(lb.label(n));
        nodes.push_back(std::move(nj));
      }
    }
    sset["nodes"] = std::move(nodes);
    ij["s_set"] = std::move(sset);

    FragmentOptions fo;
    fo.size_bound = plan.size_bound;
    fo.enum_depth = plan.enum_depth;
    fo.max_words = cfg.fragment_budget;
    nlohmann::ordered_json frag;
    frag["size_bound"] = plan.size_bound;
    frag["enum_depth"] = plan.enum_depth;
    frag["size"] = monoid_enumerate(t, m, fo).size();
    ij["fragment"] = std::move(frag);
    ideals.push_back(std::move(ij));
  }
  out["ideals"] = std::move(ideals);
  return out;
}

Report run_oracle_compare(const RunConfig& cfg) {
  ResolvedRun r = resolve(cfg);
  const Engine& e = r.engine;
  const Truncation& t = e.trunc;
  const Labeling& lb = *r.labeling;
  Report rep;
  rep.config = config_json(cfg, r);

  const std::uint32_t exhaustive_size = std::min<std::uint32_t>(3, cfg.word_bound);
  const auto nodes = all_nodes(t, t.depth(), 100'000);
  const auto words = enumerate_words(nodes, exhaustive_size, 500'000);

  // One ground realizing every bit of the truncation; resource error when
  // the instance is too large for explicit evaluation.
  std::vector<std::uint64_t> bits(t.bit_count());
  for (std::uint64_t b = 0; b < t.bit_count(); ++b) bits[b] = b;
  const auto ground = ExplicitGround::over_bits(bits, e.max_ground_bits);

  auto ground_equal = [&](const Word& p, const Word& q) {
    // Generator-by-generator simulation at level 0 on every point.
    for (std::uint64_t pt = 0; pt < ground.point_count(); ++pt) {
      const Assignment a = ground.assignment_of(pt);
      Point x{a, 0}, y{a, 0};
      for (const auto& n : p.entries()) x = apply_generator(t, n, x);
      for (const auto& n : q.entries()) y = apply_generator(t, n, y);
      if (x.level != y.level) return false;
    }
    return true;
  };

  {
    auto start = Clock::now();
    CheckReport c;
    c.name = "equality-oracles";
    TriangleIndex tri(words.size(), /*with_diagonal=*/true);
    c.counts["words"] = words.size();
    c.counts["exhaustive_pairs"] = tri.size();
    c.counts["random_pairs"] = cfg.trials;
    FailureLog log;
    std::atomic<std::uint64_t> canonical_compared{0};
    auto check_pair = [&](std::int64_t key, const Word& p, const Word& q) {
      const bool sym = equal_words(e, p, q);
      const bool grd = ground_equal(p, q);
      if (sym != grd)
        log.add(key, "symbolic/ground disagreement for " + p.to_string() +
                         " vs " + q.to_string());
      const Word cp = reduce_canonical(p), cq = reduce_canonical(q);
      if (is_reduced(cp) && is_reduced(cq)) {
        canonical_compared.fetch_add(1, std::memory_order_relaxed);
        if (sym != (cp == cq))
          log.add(key, "canonical/semantic disagreement for " +
                           p.to_string() + " vs " + q.to_string());
      }
    };
    for_indices(cfg.exec, static_cast<std::int64_t>(tri.size()),
                [&](std::int64_t k) {
                  auto [i, j] = tri.decode(static_cast<std::uint64_t>(k));
                  check_pair(k, words[i], words[j]);
                });
    for_indices(cfg.exec, static_cast<std::int64_t>(cfg.trials),
                [&](std::int64_t k) {
                  auto rng = rng_for(cfg.seed, static_cast<std::uint64_t>(k));
                  auto sample = [&]() {
                    const auto size = rng() % (cfg.word_bound + 1ull);
                    std::vector<Node> es;
                    for (std::uint64_t i = 0; i < size; ++i)
                      es.push_back(nodes[rng() % nodes.size()]);
                    return Word(std::move(es));
                  };
                  const Word p = sample(), q = sample();
                  check_pair(static_cast<std::int64_t>(tri.size()) + k, p, q);
                });
    c.counts["canonical_compared"] = canonical_compared.load();
    c.merge_failures(log);
    c.millis = cfg.timings ? ms_since(start) : 0;
    rep.checks.push_back(std::move(c));
  }

  {
    auto start = Clock::now();
    CheckReport c;
    c.name = "membership-oracles";
    FailureLog log;
    std::atomic<std::uint64_t> queries{0}, undecided{0};
    for_indices(cfg.exec,
                static_cast<std::int64_t>(words.size() * r.ideals.size()),
                [&](std::int64_t k) {
                  const auto wi = static_cast<std::size_t>(k) % words.size();
                  const auto ii = static_cast<std::size_t>(k) / words.size();
                  const IndexedMonoid m{&lb, r.ideals[ii]};
                  const bool canon = member(t, words[wi], m);
                  const auto search =
                      member_by_expansion_search(t, words[wi], m);
                  queries.fetch_add(1, std::memory_order_relaxed);
                  if (!search) {
                    undecided.fetch_add(1, std::memory_order_relaxed);
                    log.add(k, "expansion search undecided for " +
                                   words[wi].to_string());
                  } else if (*search != canon) {
                    log.add(k, "membership disagreement for " +
                                   words[wi].to_string() + " in ideal " +
                                   std::to_string(ii));
                  }
                });
    c.counts["queries"] = queries.load();
    c.counts["undecided"] = undecided.load();
    c.merge_failures(log);
    c.millis = cfg.timings ? ms_since(start) : 0;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace latmon
