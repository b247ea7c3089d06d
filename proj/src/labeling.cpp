#include "latmon/labeling.hpp"

#include <algorithm>

namespace latmon {

std::vector<std::pair<CompactId, CompactId>> decomposition_pairs(
    const CompactSemilattice& c, CompactId x) {
  std::vector<std::pair<CompactId, CompactId>> out;
  for (CompactId d = 0; d < c.size(); ++d)
    for (CompactId dp = 0; dp < c.size(); ++dp)
      if (c.leq(x, c.join(d, dp))) out.emplace_back(d, dp);
  // CompactIds are name-sorted, so id order is lexicographic name order.
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t required_branching(const CompactSemilattice& c) {
  std::size_t k = c.size();
  for (CompactId x = 0; x < c.size(); ++x)
    k = std::max(k, decomposition_pairs(c, x).size());
  return static_cast<std::uint32_t>(k);
}

Labeling Labeling::make(const CompactSemilattice& c, std::uint32_t kappa) {
  const std::uint32_t need = required_branching(c);
  if (kappa < need)
    throw ConfigError("branching " + std::to_string(kappa) +
                      " is below the required " + std::to_string(need));
  return make_unchecked(c, kappa);
}

Labeling Labeling::make_unchecked(const CompactSemilattice& c,
                                  std::uint32_t kappa) {
  if (c.size() == 0)
    throw ConfigError("labeling needs a non-empty compact carrier");
  if (kappa < 1) throw ConfigError("branching must be >= 1");
  Labeling lb;
  lb.sem_ = &c;
  lb.kappa_ = kappa;
  lb.top_ = c.top();
  lb.pairs_.reserve(c.size());
  for (CompactId x = 0; x < c.size(); ++x)
    lb.pairs_.push_back(decomposition_pairs(c, x));
  return lb;
}

CompactId Labeling::root_label(std::uint32_t alpha, bool phi) const {
  if (alpha >= kappa_) throw DomainError("branch index exceeds branching");
  return phi ? top_ : static_cast<CompactId>(alpha % sem_->size());
}

std::pair<CompactId, CompactId> Labeling::child_pair(
    CompactId parent, std::uint32_t alpha) const {
  if (alpha >= kappa_) throw DomainError("branch index exceeds branching");
  const auto& table = pairs_[parent];
  return table[alpha % table.size()];
}

CompactId Labeling::label(const Node& n) const {
  CompactId c = root_label(n.branch(0), n.phi(0));
  for (std::uint32_t i = 1; i < n.depth(); ++i) {
    const auto [d0, d1] = child_pair(c, n.branch(i));
    c = n.phi(i) ? d1 : d0;
  }
  return c;
}

std::optional<std::uint32_t> Labeling::pair_index(CompactId c, CompactId d,
                                                  CompactId dp) const {
  const auto& table = pairs_[c];
  const auto it =
      std::lower_bound(table.begin(), table.end(), std::make_pair(d, dp));
  if (it == table.end() || *it != std::make_pair(d, dp)) return std::nullopt;
  return static_cast<std::uint32_t>(it - table.begin());
}

namespace {

// Walks the labeled subtree under one depth-1 root, checking properties
// (2) and (3) at every node that still has children inside the bound.
void check_subtree(const Labeling& lb, const CompactSemilattice& c,
                   std::uint32_t depth_bound, std::vector<std::uint32_t>& path,
                   CompactId label, std::int64_t root_index, FailureLog& log,
                   std::uint64_t& interior, std::uint64_t& pair_checks) {
  if (path.size() >= depth_bound) return;
  ++interior;
  const auto& table = lb.pairs(label);
  std::vector<bool> realized(table.size(), false);
  for (std::uint32_t alpha = 0; alpha < lb.kappa(); ++alpha) {
    const auto [d0, d1] = lb.child_pair(label, alpha);
    ++pair_checks;
    if (!c.leq(label, c.join(d0, d1))) {
      log.add(root_index,
              "property (2) fails at " +
                  Node::from_packed(path).to_string() + " branch " +
                  std::to_string(alpha) + ": " + c.name(label) + " !<= " +
                  c.name(d0) + " v " + c.name(d1));
      continue;
    }
    if (auto idx = lb.pair_index(label, d0, d1)) realized[*idx] = true;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!realized[i])
      log.add(root_index,
              "property (3) fails at " + Node::from_packed(path).to_string() +
                  ": pair (" + c.name(table[i].first) + ", " +
                  c.name(table[i].second) + ") of " + c.name(label) +
                  " never realized");
  }
  for (std::uint32_t alpha = 0; alpha < lb.kappa(); ++alpha) {
    const auto [d0, d1] = lb.child_pair(label, alpha);
    for (int phi = 0; phi < 2; ++phi) {
      path.push_back(alpha * 2 + static_cast<std::uint32_t>(phi));
      check_subtree(lb, c, depth_bound, path, phi ? d1 : d0, root_index, log,
                    interior, pair_checks);
      path.pop_back();
    }
  }
}

}  // namespace

CheckReport verify_enumeration(const Labeling& lb, const Truncation& t,
                               const EnumerationOptions& opt) {
  CheckReport rep;
  rep.name = "enumeration-properties";
  const CompactSemilattice& c = lb.semilattice();
  const std::uint32_t depth = opt.depth ? opt.depth : t.depth();
  rep.counts["depth"] = depth;
  rep.counts["kappa"] = lb.kappa();

  FailureLog log;
  // Property (1): phi-0 root labels cover the carrier.
  std::vector<bool> covered(c.size(), false);
  for (std::uint32_t alpha = 0; alpha < lb.kappa(); ++alpha)
    covered[lb.root_label(alpha, false)] = true;
  for (CompactId x = 0; x < c.size(); ++x)
    if (!covered[x])
      log.add(-1, "property (1) fails: " + c.name(x) + " missing at roots");

  std::vector<std::uint64_t> interior(2ull * lb.kappa(), 0);
  std::vector<std::uint64_t> pair_checks(2ull * lb.kappa(), 0);
  for_indices(opt.exec, 2ll * lb.kappa(), [&](std::int64_t i) {
    std::vector<std::uint32_t> path{static_cast<std::uint32_t>(i)};
    const CompactId root =
        lb.root_label(static_cast<std::uint32_t>(i) >> 1, (i & 1) != 0);
    check_subtree(lb, c, depth, path, root, i, log,
                  interior[static_cast<std::size_t>(i)],
                  pair_checks[static_cast<std::size_t>(i)]);
  });
  std::uint64_t total_interior = 0, total_pairs = 0;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    total_interior += interior[i];
    total_pairs += pair_checks[i];
  }
  rep.counts["interior_nodes"] = total_interior;
  rep.counts["pair_checks"] = total_pairs;
  rep.counts["root_labels"] = lb.kappa();
  rep.merge_failures(log);
  return rep;
}

}  // namespace latmon
