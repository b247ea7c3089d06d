#include "latmon/engine.hpp"

#include <algorithm>
#include <map>

namespace latmon {

Point apply_generator(const Truncation& t, const Node& n, const Point& p) {
  switch (p.alpha.eval(path_cube(t, n))) {
    case Assignment::Eval::True:
      return Point{p.alpha, p.level + 1};
    case Assignment::Eval::False:
      return p;
    default:
      throw DomainError("apply_generator: valuation does not decide " +
                        n.to_string());
  }
}

ShiftProfile::ShiftProfile(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.cube < b.cube; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i;
    std::int64_t c = 0;
    while (j < terms_.size() && terms_[j].cube == terms_[i].cube)
      c += terms_[j++].count;
    if (c != 0) terms_[out++] = Term{terms_[i].cube, c};
    i = j;
  }
  terms_.resize(out);
}

std::int64_t ShiftProfile::value_on(const ExplicitGround& g,
                                    std::uint64_t point) const {
  std::int64_t v = 0;
  for (const auto& term : terms_)
    if (g.contains(term.cube, point)) v += term.count;
  return v;
}

ShiftProfile shift_profile(const Truncation& t, const Word& w) {
  std::vector<ShiftProfile::Term> terms;
  const auto& es = w.entries();
  for (std::size_t i = 0; i < es.size();) {
    std::size_t j = i;
    while (j < es.size() && es[j] == es[i]) ++j;
    terms.push_back({path_cube(t, es[i]),
                     static_cast<std::int64_t>(j - i)});
    i = j;
  }
  return ShiftProfile(std::move(terms));
}

namespace {

// Exact zero-test of a signed combination of cube indicator functions by
// enumerating every assignment of the mentioned bits.
bool vanishes_by_projection(const std::vector<ShiftProfile::Term>& terms,
                            const std::vector<std::uint64_t>& bits) {
  const std::uint32_t k = static_cast<std::uint32_t>(bits.size());
  const std::uint64_t pts = 1ull << k;
  thread_local std::vector<std::int64_t> buf;
  if (buf.size() < pts) buf.resize(pts);
  std::fill_n(buf.begin(), pts, 0);
  for (const auto& term : terms) {
    std::uint64_t mask = 0, val = 0;
    for (const auto& lit : term.cube.literals()) {
      const auto idx = static_cast<std::uint32_t>(
          std::lower_bound(bits.begin(), bits.end(), lit.bit) - bits.begin());
      mask |= 1ull << idx;
      if (lit.positive) val |= 1ull << idx;
    }
    const std::uint64_t free = (pts - 1) & ~mask;
    std::uint64_t sub = 0;
    while (true) {
      buf[val | sub] += term.count;
      if (sub == free) break;
      sub = (sub - free) & free;
    }
  }
  for (std::uint64_t x = 0; x < pts; ++x)
    if (buf[x] != 0) return false;
  return true;
}

// Same zero-test via multilinear expansion coefficients; exact for any
// number of bits, used past the projection budget.
bool vanishes_by_expansion(const std::vector<ShiftProfile::Term>& terms) {
  std::map<std::vector<std::uint64_t>, std::int64_t> coef;
  std::vector<std::uint64_t> mono;
  auto expand = [&](auto&& self, const std::vector<Literal>& lits,
                    std::size_t i, std::int64_t c) -> void {
    if (i == lits.size()) {
      coef[mono] += c;
      return;
    }
    if (lits[i].positive) {
      mono.push_back(lits[i].bit);
      self(self, lits, i + 1, c);
      mono.pop_back();
    } else {
      self(self, lits, i + 1, c);
      mono.push_back(lits[i].bit);
      self(self, lits, i + 1, -c);
      mono.pop_back();
    }
  };
  for (const auto& term : terms)
    expand(expand, term.cube.literals(), 0, term.count);
  for (const auto& [m, c] : coef)
    if (c != 0) return false;
  return true;
}

}  // namespace

bool equal_words(const Engine& e, const Word& p, const Word& q) {
  const ShiftProfile pp = shift_profile(e.trunc, p);
  const ShiftProfile qp = shift_profile(e.trunc, q);
  std::vector<ShiftProfile::Term> diff;
  diff.reserve(pp.terms().size() + qp.terms().size());
  for (const auto& term : pp.terms()) diff.push_back(term);
  for (const auto& term : qp.terms())
    diff.push_back({term.cube, -term.count});
  const ShiftProfile signed_diff{std::move(diff)};
  if (signed_diff.empty()) return true;

  std::vector<std::uint64_t> bits;
  for (const auto& term : signed_diff.terms())
    for (const auto& lit : term.cube.literals()) bits.push_back(lit.bit);
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());

  if (bits.size() <= e.projection_bit_limit)
    return vanishes_by_projection(signed_diff.terms(), bits);
  return vanishes_by_expansion(signed_diff.terms());
}

Separation find_separation(const Truncation& t, const Word& p,
                           const Word& q) {
  if (!is_reduced(p) || !is_reduced(q))
    throw DomainError("find_separation: words must be reduced");
  std::vector<std::pair<Node, bool>> all;  // (entry, lies in p)
  for (const auto& n : p.entries())
    if (all.empty() || all.back().first != n) all.emplace_back(n, true);
  for (const auto& n : q.entries()) {
    if (p.contains(n))
      throw DomainError("find_separation: words share entry " + n.to_string());
    all.emplace_back(n, false);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.empty()) throw DomainError("find_separation: both words empty");

  for (const auto& [n, in_first] : all) {
    bool minimal = true;
    for (const auto& [m, unused] : all) {
      if (m != n && is_initial_segment(m, n)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    const Word& other = in_first ? q : p;
    return Separation{n, in_first, separating_point(t, n, other)};
  }
  throw DomainError("find_separation: no minimal entry");  // unreachable
}

bool check_separation(const Truncation& t, const Word& p, const Word& q,
                      const Separation& s) {
  const Word& own = s.pivot_in_first ? p : q;
  const Word& other = s.pivot_in_first ? q : p;
  if (!own.contains(s.pivot)) return false;
  if (s.point.eval(path_cube(t, s.pivot)) != Assignment::Eval::True)
    return false;
  const auto& es = other.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1]) continue;
    if (s.point.eval(path_cube(t, es[i])) != Assignment::Eval::False)
      return false;
  }
  return true;
}

CheckReport verify_composition(const Engine& e, const CompositionOptions& opt) {
  return verify_composition_with(
      e, opt, [&e](const Node& n, std::uint32_t alpha) {
        auto [c0, c1] = children(e.trunc, n, alpha);
        return Word({std::move(c0), std::move(c1)});
      });
}

CheckReport verify_composition_with(const Engine& e,
                                    const CompositionOptions& opt,
                                    const RhsSupplier& rhs) {
  CheckReport rep;
  rep.name = "composition";
  const Truncation& t = e.trunc;
  const std::uint64_t interior =
      t.depth() >= 2 ? t.node_count(t.depth() - 1) : 0;
  const std::uint64_t total = interior * t.kappa();
  std::uint64_t step = 1, checked = total;
  if (total > opt.identity_cap) {
    step = (total + opt.identity_cap - 1) / opt.identity_cap;
    checked = (total + step - 1) / step;
  }
  rep.counts["identities_total"] = total;
  rep.counts["identities_checked"] = checked;
  if (step > 1) rep.counts["sample_stride"] = step;

  FailureLog log;
  for_indices(opt.exec, static_cast<std::int64_t>(checked),
              [&](std::int64_t i) {
                const std::uint64_t id = static_cast<std::uint64_t>(i) * step;
                const Node n = node_at_index(t, id / t.kappa());
                const auto alpha = static_cast<std::uint32_t>(id % t.kappa());
                Word lhs;
                lhs.insert(n);
                const Word r = rhs(n, alpha);
                if (!equal_words(e, lhs, r))
                  log.add(i, "composite mismatch at " + n.to_string() +
                                 " branch " + std::to_string(alpha) +
                                 " rhs " + r.to_string());
              });
  rep.merge_failures(log);
  return rep;
}

CheckReport verify_commutativity(const Engine& e,
                                 const CommutativityOptions& opt) {
  return verify_commutativity_with(
      e, opt,
      [&e](const ExplicitGround& g, const Node& n, std::uint64_t pt,
           std::int64_t lvl) -> std::pair<std::uint64_t, std::int64_t> {
        return {pt, lvl + (g.contains(path_cube(e.trunc, n), pt) ? 1 : 0)};
      });
}

CheckReport verify_commutativity_with(const Engine& e,
                                      const CommutativityOptions& opt,
                                      const GroundAction& act) {
  CheckReport rep;
  rep.name = "commutativity";
  const Truncation& t = e.trunc;
  // every pair ground realizes at most the two path cubes' bits
  if (2ull * t.depth() > e.max_ground_bits)
    throw ResourceError("commutativity grounds need up to " +
                        std::to_string(2 * t.depth()) + " bits > budget " +
                        std::to_string(e.max_ground_bits));
  const std::uint64_t n = t.node_count(t.depth());
  TriangleIndex tri(n, /*with_diagonal=*/true);
  const bool exhaustive = tri.size() <= opt.pair_cap;
  const std::uint64_t checked = exhaustive ? tri.size() : opt.trials;
  rep.counts["nodes"] = n;
  rep.counts["pairs_total"] = tri.size();
  rep.counts["pairs_checked"] = checked;
  rep.counts["exhaustive"] = exhaustive ? 1 : 0;
  if (!exhaustive) rep.counts["seed"] = opt.seed;

  FailureLog log;
  for_indices(opt.exec, static_cast<std::int64_t>(checked),
              [&](std::int64_t k) {
                std::uint64_t ia, ib;
                if (exhaustive) {
                  auto [i, j] = tri.decode(static_cast<std::uint64_t>(k));
                  ia = i;
                  ib = j;
                } else {
                  auto rng = rng_for(opt.seed, static_cast<std::uint64_t>(k));
                  ia = rng() % n;
                  ib = rng() % n;
                }
                const Node a = node_at_index(t, ia);
                const Node b = node_at_index(t, ib);
                const auto ground = ExplicitGround::covering(
                    t, {Word({a}), Word({b})}, e.max_ground_bits);
                for (std::uint64_t pt = 0; pt < ground.point_count(); ++pt) {
                  for (std::int64_t lvl = -opt.level_window;
                       lvl <= opt.level_window; ++lvl) {
                    auto ab = act(ground, b, pt, lvl);
                    ab = act(ground, a, ab.first, ab.second);
                    auto ba = act(ground, a, pt, lvl);
                    ba = act(ground, b, ba.first, ba.second);
                    if (ab != ba) {
                      log.add(k, "non-commuting pair " + a.to_string() + ", " +
                                     b.to_string() + " at point " +
                                     std::to_string(pt) + " level " +
                                     std::to_string(lvl));
                      return;
                    }
                  }
                }
              });
  rep.merge_failures(log);
  return rep;
}

namespace {

// Reduced by construction: an entry is only added when its sibling is
// absent.
Word sample_reduced_word(std::mt19937_64& rng, const Truncation& t,
                         std::uint32_t size_bound) {
  const std::uint32_t size =
      static_cast<std::uint32_t>(rng() % (size_bound + 1ull));
  Word w;
  for (std::uint32_t i = 0; i < size; ++i) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      const auto d = static_cast<std::uint32_t>(1 + rng() % t.depth());
      std::vector<std::uint32_t> path(d);
      for (auto& digit : path)
        digit = static_cast<std::uint32_t>(rng() % (2ull * t.kappa()));
      Node n = Node::from_packed(std::move(path));
      if (w.contains(n.sibling())) continue;
      w.insert(std::move(n));
      break;
    }
  }
  return w;
}

struct PairOutcome {
  bool ok = true;
  std::string detail;
};

PairOutcome check_independent_pair(const Engine& e, const Word& p,
                                   const Word& q) {
  const Word dp = multiset_difference(p, q);
  const Word dq = multiset_difference(q, p);
  if (dp.empty() && dq.empty()) return {false, "pair is equivalent"};

  const bool eq = equal_words(e, dp, dq);
  bool sep_ok = false;
  std::string sep_text;
  try {
    const Separation s = find_separation(e.trunc, dp, dq);
    sep_ok = check_separation(e.trunc, dp, dq, s);
    sep_text = sep_ok ? "pivot " + s.pivot.to_string() + " at " +
                            s.point.to_string(e.trunc)
                      : "separating point failed re-check";
  } catch (const Error& ex) {
    sep_text = ex.what();
  }

  if (eq)
    return {false, "equal composites for inequivalent reduced pair P=" +
                       p.to_string() + " Q=" + q.to_string() +
                       (sep_ok ? " although a separating point exists: " +
                                     sep_text
                               : "; expected separating point missing: " +
                                     sep_text)};
  if (!sep_ok)
    return {false, "separation failed for P=" + p.to_string() +
                       " Q=" + q.to_string() + ": " + sep_text};
  return {true, ""};
}

}  // namespace

CheckReport verify_independence(const Engine& e,
                                const IndependenceOptions& opt) {
  CheckReport rep;
  rep.name = "independence";
  rep.counts["exhaustive"] = opt.exhaustive ? 1 : 0;
  rep.counts["size_bound"] = opt.size_bound;
  FailureLog log;

  if (opt.exhaustive) {
    const auto nodes = all_nodes(e.trunc, e.trunc.depth(), opt.max_words);
    const auto words = enumerate_words(nodes, opt.size_bound, opt.max_words);
    std::vector<Word> reduced;
    for (const auto& w : words)
      if (is_reduced(w)) reduced.push_back(w);
    TriangleIndex tri(reduced.size(), /*with_diagonal=*/false);
    if (tri.size() > opt.max_pairs)
      throw ResourceError("exhaustive independence needs " +
                          std::to_string(tri.size()) + " pairs > budget " +
                          std::to_string(opt.max_pairs));
    rep.counts["reduced_words"] = reduced.size();
    rep.counts["pairs_checked"] = tri.size();
    for_indices(opt.exec, static_cast<std::int64_t>(tri.size()),
                [&](std::int64_t k) {
                  auto [i, j] = tri.decode(static_cast<std::uint64_t>(k));
                  const auto out =
                      check_independent_pair(e, reduced[i], reduced[j]);
                  if (!out.ok) log.add(k, out.detail);
                });
  } else {
    rep.counts["seed"] = opt.seed;
    rep.counts["pairs_checked"] = opt.trials;
    for_indices(opt.exec, static_cast<std::int64_t>(opt.trials),
                [&](std::int64_t k) {
                  auto rng = rng_for(opt.seed, static_cast<std::uint64_t>(k));
                  const Word p =
                      sample_reduced_word(rng, e.trunc, opt.size_bound);
                  Word q = sample_reduced_word(rng, e.trunc, opt.size_bound);
                  for (int tries = 0; equivalent(p, q) && tries < 32; ++tries)
                    q = sample_reduced_word(rng, e.trunc, opt.size_bound);
                  if (equivalent(p, q)) {
                    log.add(k, "could not sample an inequivalent pair");
                    return;
                  }
                  const auto out = check_independent_pair(e, p, q);
                  if (!out.ok) log.add(k, out.detail);
                });
  }
  rep.merge_failures(log);
  return rep;
}

}  // namespace latmon
