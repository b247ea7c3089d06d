#include "latmon/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <unordered_set>

namespace latmon {

bool in_S(const IndexedMonoid& m, const Node& n) {
  return m.ideal.contains(m.labeling->label(n));
}

bool member(const Truncation& t, const Word& w, const IndexedMonoid& m) {
  (void)t;
  const Word canon = reduce_canonical(w);
  for (const auto& n : canon.entries())
    if (!in_S(m, n)) return false;
  return true;
}

Word factorize(const Truncation& t, const Labeling& lb, const Node& n,
               const std::vector<CompactId>& cover) {
  if (cover.empty()) throw DomainError("factorize: empty cover");
  const CompactSemilattice& c = lb.semilattice();
  const CompactId x = lb.label(n);
  CompactId all = cover[0];
  for (std::size_t i = 1; i < cover.size(); ++i) all = c.join(all, cover[i]);
  if (!c.leq(x, all))
    throw DomainError("factorize: label " + c.name(x) +
                      " is not below the cover join " + c.name(all));
  if (n.depth() + cover.size() - 1 > t.depth())
    throw TruncationError("factorize: cover of size " +
                          std::to_string(cover.size()) + " at depth " +
                          std::to_string(n.depth()) + " exceeds bound " +
                          std::to_string(t.depth()));
  if (cover.size() == 1) {
    Word w;
    w.insert(n);
    return w;
  }
  CompactId d = cover[0];
  for (std::size_t i = 1; i + 1 < cover.size(); ++i) d = c.join(d, cover[i]);
  const CompactId dp = cover.back();
  const auto idx = lb.pair_index(x, d, dp);
  if (!idx)
    throw DomainError("factorize: pair (" + c.name(d) + ", " + c.name(dp) +
                      ") of " + c.name(x) +
                      " has no realizing branch (labeling property "
                      "violation)");
  auto [c0, c1] = children(t, n, *idx);
  const std::vector<CompactId> prefix(cover.begin(), cover.end() - 1);
  Word w = factorize(t, lb, c0, prefix);
  w.insert(std::move(c1));
  return w;
}

std::vector<Node> s_nodes(const Truncation& t, const IndexedMonoid& m,
                          std::uint32_t max_depth, std::uint64_t max_nodes) {
  if (max_depth == 0 || max_depth > t.depth()) max_depth = t.depth();
  std::vector<Node> out;
  walk_labeled(*m.labeling, max_depth, ExecMode::Serial,
               [&](const std::vector<std::uint32_t>& path, CompactId label) {
                 if (!m.ideal.contains(label)) return;
                 if (out.size() >= max_nodes)
                   throw ResourceError("index-node enumeration exceeds " +
                                       std::to_string(max_nodes));
                 out.push_back(Node::from_packed(path));
               });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> s_counts_by_depth(const Truncation& t,
                                             const IndexedMonoid& m,
                                             std::uint32_t max_depth) {
  if (max_depth == 0 || max_depth > t.depth()) max_depth = t.depth();
  std::vector<std::uint64_t> per_depth(max_depth + 1, 0);
  walk_labeled(*m.labeling, max_depth, ExecMode::Serial,
               [&](const std::vector<std::uint32_t>& path, CompactId label) {
                 if (m.ideal.contains(label)) ++per_depth[path.size()];
               });
  for (std::uint32_t d = 1; d <= max_depth; ++d)
    per_depth[d] += per_depth[d - 1];
  return per_depth;
}

std::vector<Word> monoid_enumerate(const Truncation& t,
                                   const IndexedMonoid& m,
                                   const FragmentOptions& opt) {
  const std::uint32_t depth =
      opt.enum_depth == 0 ? t.depth() : std::min(opt.enum_depth, t.depth());
  const auto nodes = s_nodes(t, m, depth, opt.max_nodes);
  const auto words = enumerate_words(nodes, opt.size_bound, opt.max_words);
  std::vector<Word> canon;
  canon.reserve(words.size());
  for (const auto& w : words) canon.push_back(reduce_canonical(w));
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return canon;
}

namespace {

// Expansion trees of n with every leaf inside the index set: true when n
// itself is in S, or some branch splits n into two expandable children.
int expandable(const Truncation& t, const IndexedMonoid& m, const Node& n,
               std::map<Node, int>& memo, std::uint64_t max_memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  if (memo.size() >= max_memo) return 2;  // undecided
  int res = 0;
  if (in_S(m, n)) {
    res = 1;
  } else if (n.depth() >= t.depth()) {
    res = 0;
  } else {
    bool undecided = false;
    for (std::uint32_t alpha = 0; alpha < t.kappa() && res == 0; ++alpha) {
      auto [c0, c1] = children(t, n, alpha);
      const int r0 = expandable(t, m, c0, memo, max_memo);
      if (r0 == 2) undecided = true;
      if (r0 != 1) continue;
      const int r1 = expandable(t, m, c1, memo, max_memo);
      if (r1 == 2) undecided = true;
      if (r1 == 1) res = 1;
    }
    if (res == 0 && undecided) res = 2;
  }
  memo[n] = res;
  return res;
}

}  // namespace

std::optional<bool> member_by_expansion_search(
    const Truncation& t, const Word& w, const IndexedMonoid& m,
    const ExpansionSearchLimits& lim) {
  auto all_in = [&](const Word& v) {
    for (const auto& n : v.entries())
      if (!in_S(m, n)) return false;
    return true;
  };

  // Collapse closure of w, every order.
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> stack{w}, minimal;
  bool budget_hit = false;
  seen.insert(w);
  while (!stack.empty()) {
    Word cur = std::move(stack.back());
    stack.pop_back();
    if (all_in(cur)) return true;
    auto nexts = one_step_reductions(cur);
    if (nexts.empty()) minimal.push_back(std::move(cur));
    for (auto& nx : nexts) {
      if (seen.count(nx)) continue;
      if (seen.size() >= lim.max_states) {
        budget_hit = true;
        continue;
      }
      seen.insert(nx);
      stack.push_back(std::move(nx));
    }
  }

  std::map<Node, int> memo;
  for (const auto& v : minimal) {
    bool all = true, undecided = false;
    for (const auto& n : v.entries()) {
      const int r = expandable(t, m, n, memo, lim.max_memo);
      if (r == 2) undecided = true;
      if (r != 1) {
        all = false;
        break;
      }
    }
    if (all) return true;
    if (undecided) budget_hit = true;
  }
  if (budget_hit) return std::nullopt;
  return false;
}

FragmentPlan plan_fragments(const Truncation& t, const Labeling& lb,
                            const std::vector<Ideal>& ideals,
                            std::uint32_t want_size, std::uint64_t budget) {
  std::vector<std::vector<std::uint64_t>> counts;
  counts.reserve(ideals.size());
  for (const auto& i : ideals)
    counts.push_back(s_counts_by_depth(t, IndexedMonoid{&lb, i}, t.depth()));

  auto fits = [&](std::uint32_t d, std::uint32_t size) {
    for (const auto& c : counts)
      if (count_words_up_to(c[d], size) > budget) return false;
    return true;
  };

  for (std::uint32_t d = t.depth(); d >= 1; --d)
    if (fits(d, want_size)) return {d, want_size};
  for (std::uint32_t size = want_size; size > 0; --size)
    if (fits(1, size)) return {1, size};
  return {1, 0};
}

namespace {

// Smallest subset of the sorted universe whose join dominates x; subsets
// of equal size are tried in ascending mask order.
std::optional<std::vector<CompactId>> minimal_cover(
    const CompactSemilattice& c, const std::vector<CompactId>& universe,
    CompactId x) {
  const std::size_t u = universe.size();
  for (std::size_t size = 1; size <= u; ++size) {
    for (std::uint32_t mask = 1; mask < (1u << u); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      bool any = false;
      CompactId j = 0;
      std::vector<CompactId> sel;
      for (std::size_t i = 0; i < u; ++i) {
        if (!(mask >> i & 1)) continue;
        sel.push_back(universe[i]);
        j = any ? c.join(j, universe[i]) : universe[i];
        any = true;
      }
      if (any && c.leq(x, j)) return sel;
    }
  }
  return std::nullopt;
}

}  // namespace

CheckReport verify_join_preservation(const Engine& e, const Labeling& lb,
                                     const std::vector<Ideal>& family,
                                     const JoinOptions& opt) {
  if (family.empty())
    throw DomainError("verify_join_preservation: empty family");
  CheckReport rep;
  rep.name = "join-preservation";
  const Truncation& t = e.trunc;
  const CompactSemilattice& c = lb.semilattice();
  const Ideal join = ideal_join(c, family);
  const std::uint32_t budget =
      opt.depth_budget == 0 ? t.depth() : opt.depth_budget;
  rep.counts["family_size"] = family.size();
  rep.counts["depth_budget"] = budget;

  FailureLog log;
  for (std::size_t u = 0; u < family.size(); ++u)
    if (!family[u].subset_of(join))
      log.add(-1, "factor " + std::to_string(u) + " is not inside the join");

  // Minimal covers from the union, one per label in the join.
  std::vector<CompactId> universe;
  for (CompactId x = 0; x < c.size(); ++x)
    for (const auto& i : family)
      if (i.contains(x)) {
        universe.push_back(x);
        break;
      }
  std::vector<std::vector<CompactId>> cover(c.size());
  for (CompactId x = 0; x < c.size(); ++x) {
    if (!join.contains(x)) continue;
    auto mc = minimal_cover(c, universe, x);
    if (!mc) {
      log.add(-1, "no cover from the union for " + c.name(x));
      continue;
    }
    cover[x] = std::move(*mc);
  }

  auto in_some_factor = [&](CompactId x) {
    for (const auto& i : family)
      if (i.contains(x)) return true;
    return false;
  };

  std::atomic<std::uint64_t> in_join{0}, direct{0}, factorized{0},
      skipped{0};
  walk_labeled(lb, t.depth(), opt.exec,
               [&](const std::vector<std::uint32_t>& path, CompactId label) {
                 if (!join.contains(label)) return;
                 in_join.fetch_add(1, std::memory_order_relaxed);
                 const auto& cov = cover[label];
                 if (cov.empty()) return;  // already reported
                 if (cov.size() == 1) {
                   if (!in_some_factor(label))
                     log.add(static_cast<std::int64_t>(path[0]),
                             "downward closure fails for " + c.name(label));
                   else
                     direct.fetch_add(1, std::memory_order_relaxed);
                   return;
                 }
                 if (path.size() + cov.size() - 1 > budget) {
                   skipped.fetch_add(1, std::memory_order_relaxed);
                   return;
                 }
                 const Node n = Node::from_packed(path);
                 Word w;
                 try {
                   w = factorize(t, lb, n, cov);
                 } catch (const Error& ex) {
                   log.add(static_cast<std::int64_t>(path[0]),
                           "factorize failed at " + n.to_string() + ": " +
                               ex.what());
                   return;
                 }
                 Word lhs;
                 lhs.insert(n);
                 if (!equal_words(e, lhs, w)) {
                   log.add(static_cast<std::int64_t>(path[0]),
                           "factorization of " + n.to_string() +
                               " is not the same composite: " + w.to_string());
                   return;
                 }
                 for (const auto& entry : w.entries()) {
                   if (!in_some_factor(lb.label(entry))) {
                     log.add(static_cast<std::int64_t>(path[0]),
                             "factorization entry " + entry.to_string() +
                                 " lies in no factor");
                     return;
                   }
                 }
                 factorized.fetch_add(1, std::memory_order_relaxed);
               });

  rep.counts["nodes_in_join"] = in_join.load();
  rep.counts["direct"] = direct.load();
  rep.counts["factorized"] = factorized.load();
  rep.counts["skipped_depth"] = skipped.load();
  rep.merge_failures(log);
  return rep;
}

namespace {

// Uniform-ish random node of depth <= max_depth with label in the set;
// nullopt when the set looks empty.
std::optional<Node> sample_node_in(std::mt19937_64& rng, const Labeling& lb,
                                   const Truncation& t, const Ideal& set,
                                   std::uint32_t max_depth) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const auto d = static_cast<std::uint32_t>(1 + rng() % max_depth);
    std::vector<std::uint32_t> path(d);
    for (auto& digit : path)
      digit = static_cast<std::uint32_t>(rng() % (2ull * t.kappa()));
    Node n = Node::from_packed(std::move(path));
    if (set.contains(lb.label(n))) return n;
  }
  return std::nullopt;
}

}  // namespace

CheckReport verify_meet_preservation(const Engine& e, const Labeling& lb,
                                     const std::vector<Ideal>& family,
                                     const MeetOptions& opt) {
  if (family.empty())
    throw DomainError("verify_meet_preservation: empty family");
  CheckReport rep;
  rep.name = "meet-preservation";
  const Truncation& t = e.trunc;
  const CompactSemilattice& c = lb.semilattice();
  const Ideal meet = ideal_meet(c, family);
  rep.counts["family_size"] = family.size();
  FailureLog log;

  // Index sets intersect pointwise across the whole truncation.
  std::atomic<std::uint64_t> nodes{0};
  walk_labeled(lb, t.depth(), opt.exec,
               [&](const std::vector<std::uint32_t>& path, CompactId label) {
                 nodes.fetch_add(1, std::memory_order_relaxed);
                 bool all = true;
                 for (const auto& i : family)
                   if (!i.contains(label)) {
                     all = false;
                     break;
                   }
                 if (meet.contains(label) != all)
                   log.add(static_cast<std::int64_t>(path[0]),
                           "index sets disagree at " +
                               Node::from_packed(path).to_string());
               });
  rep.counts["nodes_checked"] = nodes.load();

  // No collapse step escapes a factor (or the meet): child labels inside
  // force the parent label inside.
  std::vector<Ideal> closure_sets = family;
  closure_sets.push_back(meet);
  std::atomic<std::uint64_t> closure_checks{0};
  if (t.depth() >= 2) {
    walk_labeled(
        lb, t.depth() - 1, opt.exec,
        [&](const std::vector<std::uint32_t>& path, CompactId label) {
          for (std::uint32_t alpha = 0; alpha < lb.kappa(); ++alpha) {
            const auto [d0, d1] = lb.child_pair(label, alpha);
            closure_checks.fetch_add(1, std::memory_order_relaxed);
            for (std::size_t s = 0; s < closure_sets.size(); ++s) {
              if (closure_sets[s].contains(d0) &&
                  closure_sets[s].contains(d1) &&
                  !closure_sets[s].contains(label))
                log.add(static_cast<std::int64_t>(path[0]),
                        "collapse escapes index set " + std::to_string(s) +
                            " at " + Node::from_packed(path).to_string() +
                            " branch " + std::to_string(alpha));
            }
          }
        });
  }
  rep.counts["closure_checks"] = closure_checks.load();

  // Bounded fragments: the meet's equals the intersection of the factors'.
  std::vector<Ideal> all_sets = family;
  all_sets.push_back(meet);
  const FragmentPlan plan =
      plan_fragments(t, lb, all_sets, opt.size_bound, opt.fragment_budget);
  rep.counts["fragment_depth"] = plan.enum_depth;
  rep.counts["fragment_size_bound"] = plan.size_bound;
  FragmentOptions fo;
  fo.size_bound = plan.size_bound;
  fo.enum_depth = plan.enum_depth;
  fo.max_words = opt.fragment_budget;

  std::vector<Word> inter;
  for (std::size_t u = 0; u < family.size(); ++u) {
    auto frag = monoid_enumerate(t, IndexedMonoid{&lb, family[u]}, fo);
    if (u == 0) {
      inter = std::move(frag);
    } else {
      std::vector<Word> next;
      std::set_intersection(inter.begin(), inter.end(), frag.begin(),
                            frag.end(), std::back_inserter(next));
      inter = std::move(next);
    }
  }
  const auto frag_meet = monoid_enumerate(t, IndexedMonoid{&lb, meet}, fo);
  rep.counts["fragment_meet"] = frag_meet.size();
  rep.counts["fragment_intersection"] = inter.size();
  if (inter != frag_meet) {
    std::vector<Word> diff;
    std::set_symmetric_difference(inter.begin(), inter.end(),
                                  frag_meet.begin(), frag_meet.end(),
                                  std::back_inserter(diff));
    for (std::size_t i = 0; i < diff.size() && i < 4; ++i)
      log.add(-1, "fragment mismatch: " + diff[i].to_string());
  }

  // Randomized membership agreement.
  Ideal everyone(c.size());
  for (CompactId x = 0; x < c.size(); ++x)
    for (const auto& i : family)
      if (i.contains(x)) {
        everyone.add(x);
        break;
      }
  const IndexedMonoid meet_monoid{&lb, meet};
  rep.counts["member_trials"] = opt.trials;
  for_indices(opt.exec, static_cast<std::int64_t>(opt.trials),
              [&](std::int64_t k) {
                auto rng = rng_for(opt.seed, static_cast<std::uint64_t>(k));
                const std::size_t src =
                    static_cast<std::size_t>(k) % (family.size() + 1);
                const Ideal& source =
                    src < family.size() ? family[src] : everyone;
                const auto size =
                    static_cast<std::uint32_t>(rng() % (opt.size_bound + 1ull));
                Word w;
                for (std::uint32_t i = 0; i < size; ++i) {
                  auto n = sample_node_in(rng, lb, t, source, t.depth());
                  if (!n) break;
                  w.insert(std::move(*n));
                }
                bool lhs = member(t, w, meet_monoid);
                bool rhs = true;
                for (const auto& i : family)
                  if (!member(t, w, IndexedMonoid{&lb, i})) rhs = false;
                if (lhs != rhs)
                  log.add(k, "membership disagreement for " + w.to_string());
              });

  rep.merge_failures(log);
  return rep;
}

CheckReport verify_injectivity(const Engine& e, const Labeling& lb,
                               const std::vector<Ideal>& ideals) {
  CheckReport rep;
  rep.name = "injectivity";
  const Truncation& t = e.trunc;
  const CompactSemilattice& c = lb.semilattice();
  FailureLog log;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (std::size_t j = i + 1; j < ideals.size(); ++j) {
      ++pairs;
      if (ideals[i] == ideals[j]) {
        log.add(static_cast<std::int64_t>(pairs),
                "ideals " + std::to_string(i) + " and " + std::to_string(j) +
                    " coincide");
        continue;
      }
      // Witness label from the symmetric difference; the separating node
      // is the phi-0 root carrying it.
      std::optional<CompactId> wit;
      bool in_i = false;
      for (CompactId x = 0; x < c.size(); ++x) {
        if (ideals[i].contains(x) != ideals[j].contains(x)) {
          wit = x;
          in_i = ideals[i].contains(x);
          break;
        }
      }
      if (!wit) {
        log.add(static_cast<std::int64_t>(pairs),
                "distinct ideals with empty symmetric difference");
        continue;
      }
      Word w;
      w.insert(Node::root(*wit, false));
      const IndexedMonoid big{&lb, in_i ? ideals[i] : ideals[j]};
      const IndexedMonoid small{&lb, in_i ? ideals[j] : ideals[i]};
      if (!member(t, w, big))
        log.add(static_cast<std::int64_t>(pairs),
                "witness " + w.to_string() + " missing from its own monoid");
      if (member(t, w, small))
        log.add(static_cast<std::int64_t>(pairs),
                "witness " + w.to_string() + " lies in both monoids");
    }
  }
  rep.counts["pairs"] = pairs;
  rep.merge_failures(log);
  return rep;
}

CheckReport verify_bottom(const Engine& e, const Labeling& lb,
                          const Ideal& bottom_ideal,
                          std::uint32_t size_bound) {
  CheckReport rep;
  rep.name = "bottom";
  if (!bottom_ideal.empty())
    rep.add_witness("claimed bottom ideal is non-empty");
  try {
    FragmentOptions fo;
    fo.size_bound = size_bound;
    const auto frag =
        monoid_enumerate(e.trunc, IndexedMonoid{&lb, bottom_ideal}, fo);
    rep.counts["fragment"] = frag.size();
    if (frag.size() != 1 || !frag.front().empty())
      rep.add_witness("bottom fragment is not exactly the identity (size " +
                      std::to_string(frag.size()) + ")");
  } catch (const ResourceError& ex) {
    rep.add_witness(std::string("bottom fragment not enumerable: ") +
                    ex.what());
  }
  return rep;
}

CheckReport verify_no_inverses(const Engine& e, const Labeling& lb,
                               const std::vector<Ideal>& ideals,
                               const NoInverseOptions& opt) {
  CheckReport rep;
  rep.name = "no-inverses";
  const Truncation& t = e.trunc;
  FailureLog log;
  std::uint64_t elements = 0, positivity = 0, pair_checks = 0;
  bool sampled = false;
  const Word identity;

  for (std::size_t idx = 0; idx < ideals.size(); ++idx) {
    const FragmentPlan plan = plan_fragments(t, lb, {ideals[idx]},
                                             opt.size_bound,
                                             opt.fragment_budget);
    FragmentOptions fo;
    fo.size_bound = plan.size_bound;
    fo.enum_depth = plan.enum_depth;
    fo.max_words = opt.fragment_budget;
    const auto frag =
        monoid_enumerate(t, IndexedMonoid{&lb, ideals[idx]}, fo);
    std::vector<Word> nonid;
    for (const auto& w : frag)
      if (!w.empty()) nonid.push_back(w);
    elements += nonid.size();

    for_indices(opt.exec, static_cast<std::int64_t>(nonid.size()),
                [&](std::int64_t i) {
                  if (equal_words(e, nonid[static_cast<std::size_t>(i)],
                                  identity))
                    log.add(i, "non-identity element with zero shift "
                               "profile: " +
                                   nonid[static_cast<std::size_t>(i)]
                                       .to_string());
                });
    positivity += nonid.size();

    TriangleIndex tri(nonid.size(), /*with_diagonal=*/true);
    const bool exhaustive = tri.size() <= opt.pair_cap;
    const std::uint64_t todo = exhaustive ? tri.size() : opt.trials;
    if (!exhaustive) sampled = true;
    pair_checks += todo;
    for_indices(opt.exec, static_cast<std::int64_t>(todo),
                [&](std::int64_t k) {
                  std::uint64_t a, b;
                  if (exhaustive) {
                    auto [i, j] = tri.decode(static_cast<std::uint64_t>(k));
                    a = i;
                    b = j;
                  } else {
                    auto rng =
                        rng_for(opt.seed, static_cast<std::uint64_t>(k));
                    a = rng() % nonid.size();
                    b = rng() % nonid.size();
                  }
                  const Word prod = nonid[a].merged(nonid[b]);
                  if (equal_words(e, prod, identity))
                    log.add(k, "inverse pair found: " + nonid[a].to_string() +
                                   " and " + nonid[b].to_string());
                });
  }
  rep.counts["ideals"] = ideals.size();
  rep.counts["elements"] = elements;
  rep.counts["positivity_checks"] = positivity;
  rep.counts["pair_checks"] = pair_checks;
  rep.counts["pairs_sampled"] = sampled ? 1 : 0;
  rep.merge_failures(log);
  return rep;
}

}  // namespace latmon
