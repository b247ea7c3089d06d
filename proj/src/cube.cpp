#include "latmon/cube.hpp"

#include <algorithm>
#include <sstream>

namespace latmon {

std::uint64_t bit_id(const Truncation& t, const Node& zero_node) {
  if (zero_node.last_phi())
    throw DomainError("bit_id: last phi entry must be 0");
  validate_node(t, zero_node);
  const std::uint32_t d = zero_node.depth();
  const std::uint64_t two_k = 2ull * t.kappa();
  std::uint64_t pref = 0;  // prefix digits as a base-2k number
  for (std::uint32_t i = 0; i + 1 < d; ++i)
    pref = pref * two_k + zero_node.packed()[i];
  return t.bit_offset(d) + pref * t.kappa() + zero_node.branch(d - 1);
}

Node bit_node(const Truncation& t, std::uint64_t bit) {
  if (bit >= t.bit_count()) throw DomainError("bit id out of range");
  std::uint32_t d = 1;
  while (d < t.depth() && bit >= t.bit_offset(d + 1)) ++d;
  std::uint64_t r = bit - t.bit_offset(d);
  const std::uint64_t two_k = 2ull * t.kappa();
  std::vector<std::uint32_t> path(d);
  path[d - 1] = static_cast<std::uint32_t>(r % t.kappa()) * 2;
  r /= t.kappa();
  for (std::uint32_t i = d - 1; i-- > 0;) {
    path[i] = static_cast<std::uint32_t>(r % two_k);
    r /= two_k;
  }
  return Node::from_packed(std::move(path));
}

Cube::Cube(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
    if (literals_[i].bit == literals_[i + 1].bit) {
      if (literals_[i].positive != literals_[i + 1].positive)
        throw DomainError("cube carries a bit with both polarities");
      literals_.erase(literals_.begin() + static_cast<std::ptrdiff_t>(i + 1));
      --i;
    }
  }
}

std::string Cube::to_string(const Truncation& t) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) os << " ";
    os << (literals_[i].positive ? "+" : "-")
       << bit_node(t, literals_[i].bit).to_string();
  }
  os << "]";
  return os.str();
}

Literal node_literal(const Truncation& t, const Node& n) {
  return Literal{bit_id(t, n.zeroed()), !n.last_phi()};
}

Cube path_cube(const Truncation& t, const Node& n) {
  validate_node(t, n);
  std::vector<Literal> lits;
  lits.reserve(n.depth());
  const std::uint64_t two_k = 2ull * t.kappa();
  std::uint64_t pref = 0;
  for (std::uint32_t i = 0; i < n.depth(); ++i) {
    const std::uint64_t bit =
        t.bit_offset(i + 1) + pref * t.kappa() + n.branch(i);
    lits.push_back(Literal{bit, !n.phi(i)});
    pref = pref * two_k + n.packed()[i];
  }
  return Cube(std::move(lits));  // path bits ascend with depth
}

bool Assignment::set(std::uint64_t bit, bool value) {
  auto it = std::lower_bound(
      bits_.begin(), bits_.end(), bit,
      [](const auto& p, std::uint64_t b) { return p.first < b; });
  if (it != bits_.end() && it->first == bit) return it->second == value;
  bits_.insert(it, {bit, value});
  return true;
}

std::optional<bool> Assignment::get(std::uint64_t bit) const {
  auto it = std::lower_bound(
      bits_.begin(), bits_.end(), bit,
      [](const auto& p, std::uint64_t b) { return p.first < b; });
  if (it != bits_.end() && it->first == bit) return it->second;
  return std::nullopt;
}

Assignment::Eval Assignment::eval(const Cube& c) const {
  bool complete = true;
  for (const auto& lit : c.literals()) {
    auto v = get(lit.bit);
    if (!v)
      complete = false;
    else if (*v != lit.positive)
      return Eval::False;
  }
  return complete ? Eval::True : Eval::Unknown;
}

std::string Assignment::to_string(const Truncation& t) const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) os << ", ";
    os << bit_node(t, bits_[i].first).to_string() << "="
       << (bits_[i].second ? 1 : 0);
  }
  os << "}";
  return os.str();
}

ExplicitGround ExplicitGround::over_bits(std::vector<std::uint64_t> bits,
                                         std::uint32_t max_bits) {
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  if (bits.size() > max_bits)
    throw ResourceError("explicit ground over " + std::to_string(bits.size()) +
                        " bits exceeds budget of " + std::to_string(max_bits));
  ExplicitGround g;
  g.bits_ = std::move(bits);
  return g;
}

ExplicitGround ExplicitGround::covering(const Truncation& t,
                                        const std::vector<Word>& words,
                                        std::uint32_t max_bits) {
  std::vector<std::uint64_t> bits;
  for (const auto& w : words)
    for (const auto& n : w.entries()) {
      const Cube c = path_cube(t, n);
      for (const auto& lit : c.literals()) bits.push_back(lit.bit);
    }
  return over_bits(std::move(bits), max_bits);
}

std::uint32_t ExplicitGround::coordinate(std::uint64_t bit) const {
  auto it = std::lower_bound(bits_.begin(), bits_.end(), bit);
  if (it == bits_.end() || *it != bit)
    throw DomainError("bit " + std::to_string(bit) +
                      " is not realized on this ground");
  return static_cast<std::uint32_t>(it - bits_.begin());
}

bool ExplicitGround::contains(const Cube& c, std::uint64_t point) const {
  for (const auto& lit : c.literals()) {
    const bool v = (point >> coordinate(lit.bit)) & 1ull;
    if (v != lit.positive) return false;
  }
  return true;
}

Assignment ExplicitGround::assignment_of(std::uint64_t point) const {
  Assignment a;
  for (std::uint32_t i = 0; i < m(); ++i)
    a.set(bits_[i], (point >> i) & 1ull);
  return a;
}

Assignment separating_point(const Truncation& t, const Node& n,
                            const Word& q) {
  if (!is_reduced(q))
    throw DomainError("separating_point: word must be reduced");
  if (q.contains(n))
    throw DomainError("separating_point: node occurs in the word");
  for (const auto& p : q.entries())
    if (p != n && is_initial_segment(p, n))
      throw DomainError("separating_point: " + p.to_string() +
                        " is a proper initial segment of " + n.to_string());

  Assignment a;
  const Cube base = path_cube(t, n);
  for (const auto& lit : base.literals()) a.set(lit.bit, lit.positive);

  const auto& es = q.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1]) continue;
    const Cube c = path_cube(t, es[i]);
    if (a.eval(c) == Assignment::Eval::False) continue;
    // Pin the entry's own level bit to the wrong side. Distinct entries of
    // a reduced word have distinct level bits, and a level bit can only
    // collide with a forced path bit when the entry is an initial segment
    // of n, which the preconditions exclude.
    const Literal last = node_literal(t, es[i]);
    if (!a.set(last.bit, !last.positive))
      throw DomainError("separating_point: inconsistent constraints for " +
                        es[i].to_string());
  }
  return a;
}

}  // namespace latmon
