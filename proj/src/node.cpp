#include "latmon/node.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace latmon {

namespace {

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t* out) {
  return __builtin_mul_overflow(a, b, out);
}

bool add_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t* out) {
  return __builtin_add_overflow(a, b, out);
}

}  // namespace

Truncation Truncation::make(std::uint32_t kappa, std::uint32_t depth,
                            std::uint32_t word_bound) {
  if (kappa < 1 || depth < 1 || word_bound < 1)
    throw ConfigError("truncation bounds must all be >= 1");
  Truncation t;
  t.kappa_ = kappa;
  t.depth_ = depth;
  t.word_bound_ = word_bound;
  t.cum_nodes_.assign(depth + 1, 0);
  t.bit_offsets_.assign(depth + 2, 0);

  const std::uint64_t two_k = 2ull * kappa;
  std::uint64_t level = 1;   // (2k)^d while iterating
  std::uint64_t total = 0;   // nodes of depth <= d
  std::uint64_t zbits = 0;   // indexed nodes of depth < current d
  for (std::uint32_t d = 1; d <= depth; ++d) {
    if (mul_overflows(level, two_k, &level) ||
        add_overflows(total, level, &total))
      throw ConfigError("truncation too large: node count overflows");
    t.cum_nodes_[d] = total;
    t.bit_offsets_[d] = zbits;
    if (add_overflows(zbits, level / 2, &zbits))
      throw ConfigError("truncation too large: bit index space overflows");
  }
  t.bit_offsets_[depth + 1] = zbits;
  return t;
}

std::uint64_t Truncation::node_count(std::uint32_t d) const {
  if (d > depth_) d = depth_;
  return cum_nodes_[d];
}

std::uint64_t Truncation::bit_offset(std::uint32_t d) const {
  if (d < 1 || d > depth_ + 1)
    throw DomainError("bit_offset: depth out of range");
  return bit_offsets_[d];
}

Node Node::root(std::uint32_t alpha, bool phi) {
  Node n;
  n.path_.push_back(alpha * 2 + (phi ? 1u : 0u));
  return n;
}

Node Node::from_sequences(const std::vector<std::uint32_t>& eta,
                          const std::vector<std::uint8_t>& phi) {
  if (eta.size() != phi.size() || eta.empty())
    throw DomainError("node sequences must be non-empty and equal length");
  Node n;
  n.path_.reserve(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (phi[i] > 1) throw DomainError("phi entries must be bits");
    n.path_.push_back(eta[i] * 2 + phi[i]);
  }
  return n;
}

Node Node::from_packed(std::vector<std::uint32_t> packed) {
  if (packed.empty()) throw DomainError("node depth must be >= 1");
  Node n;
  n.path_ = std::move(packed);
  return n;
}

Node Node::parent() const {
  if (depth() < 2) throw DomainError("depth-1 node has no parent");
  Node n;
  n.path_.assign(path_.begin(), path_.end() - 1);
  return n;
}

Node Node::sibling() const {
  Node n = *this;
  n.path_.back() ^= 1u;
  return n;
}

Node Node::zeroed() const {
  Node n = *this;
  n.path_.back() &= ~1u;
  return n;
}

Node Node::child(std::uint32_t alpha, bool phi) const {
  Node n = *this;
  n.path_.push_back(alpha * 2 + (phi ? 1u : 0u));
  return n;
}

Node Node::prefix(std::uint32_t d) const {
  if (d < 1 || d > depth()) throw DomainError("prefix depth out of range");
  Node n;
  n.path_.assign(path_.begin(), path_.begin() + d);
  return n;
}

std::string Node::to_string() const {
  std::ostringstream os;
  os << "(<";
  for (std::uint32_t i = 0; i < depth(); ++i)
    os << (i ? "," : "") << branch(i);
  os << ">,<";
  for (std::uint32_t i = 0; i < depth(); ++i)
    os << (i ? "," : "") << (phi(i) ? 1 : 0);
  os << ">)";
  return os.str();
}

bool is_initial_segment(const Node& p, const Node& q) {
  if (p.depth() > q.depth()) return false;
  const auto& pp = p.packed();
  const auto& qp = q.packed();
  return std::equal(pp.begin(), pp.end(), qp.begin());
}

void validate_node(const Truncation& t, const Node& n) {
  if (n.depth() < 1) throw DomainError("node depth must be >= 1");
  if (n.depth() > t.depth())
    throw TruncationError("node depth " + std::to_string(n.depth()) +
                          " exceeds bound " + std::to_string(t.depth()));
  for (std::uint32_t i = 0; i < n.depth(); ++i)
    if (n.branch(i) >= t.kappa())
      throw DomainError("branch index " + std::to_string(n.branch(i)) +
                        " exceeds branching " + std::to_string(t.kappa()));
}

std::pair<Node, Node> children(const Truncation& t, const Node& n,
                               std::uint32_t alpha) {
  if (alpha >= t.kappa())
    throw DomainError("branch index " + std::to_string(alpha) +
                      " exceeds branching " + std::to_string(t.kappa()));
  if (n.depth() >= t.depth())
    throw TruncationError("children of depth-" + std::to_string(n.depth()) +
                          " node exceed depth bound " +
                          std::to_string(t.depth()));
  return {n.child(alpha, false), n.child(alpha, true)};
}

Word::Word(std::vector<Node> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

void Word::insert(Node n) {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), n);
  entries_.insert(it, std::move(n));
}

bool Word::contains(const Node& n) const {
  return std::binary_search(entries_.begin(), entries_.end(), n);
}

std::size_t Word::multiplicity(const Node& n) const {
  auto [lo, hi] = std::equal_range(entries_.begin(), entries_.end(), n);
  return static_cast<std::size_t>(hi - lo);
}

bool Word::erase_one(const Node& n) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n);
  if (it == entries_.end() || *it != n) return false;
  entries_.erase(it);
  return true;
}

Word Word::merged(const Word& other) const {
  Word out;
  out.entries_.resize(entries_.size() + other.entries_.size());
  std::merge(entries_.begin(), entries_.end(), other.entries_.begin(),
             other.entries_.end(), out.entries_.begin());
  return out;
}

std::string Word::to_string() const {
  if (entries_.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < entries_.size();) {
    std::size_t j = i;
    while (j < entries_.size() && entries_[j] == entries_[i]) ++j;
    if (i) os << ", ";
    os << entries_[i].to_string();
    if (j - i > 1) os << "x" << (j - i);
    i = j;
  }
  os << "}";
  return os.str();
}

std::size_t WordHash::operator()(const Word& w) const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& n : w.entries()) {
    mix(n.depth());
    for (auto e : n.packed()) mix(e);
  }
  return static_cast<std::size_t>(h);
}

bool equivalent(const Word& p, const Word& q) { return p == q; }

bool is_reduced(const Word& w) {
  const auto& es = w.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1]) continue;
    const Node& n = es[i];
    if (n.last_phi()) continue;
    if (w.contains(n.sibling())) return false;
  }
  return true;
}

namespace {

// First collapsible sibling pair in entry order, if any: returns the
// phi-0 member of the pair.
const Node* find_collapsible(const Word& w) {
  const auto& es = w.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1]) continue;
    const Node& n = es[i];
    if (n.depth() < 2 || n.last_phi()) continue;
    if (w.contains(n.sibling())) return &es[i];
  }
  return nullptr;
}

}  // namespace

Word reduce_canonical(Word w) {
  while (const Node* n = find_collapsible(w)) {
    Node lo = *n;
    Node hi = lo.sibling();
    Node up = lo.parent();
    w.erase_one(lo);
    w.erase_one(hi);
    w.insert(std::move(up));
  }
  return w;
}

std::vector<Word> one_step_reductions(const Word& w) {
  std::vector<Word> out;
  const auto& es = w.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1]) continue;
    const Node& n = es[i];
    if (n.depth() < 2 || n.last_phi()) continue;
    if (!w.contains(n.sibling())) continue;
    Word next = w;
    next.erase_one(n);
    next.erase_one(n.sibling());
    next.insert(n.parent());
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Word expand_once(const Truncation& t, const Word& w, const Node& n,
                 std::uint32_t alpha) {
  if (!w.contains(n))
    throw DomainError("expand_once: node " + n.to_string() +
                      " does not occur in the word");
  auto [c0, c1] = children(t, n, alpha);
  Word out = w;
  out.erase_one(n);
  out.insert(std::move(c0));
  out.insert(std::move(c1));
  return out;
}

Word multiset_difference(const Word& p, const Word& q) {
  Word out = p;
  for (const auto& n : q.entries()) out.erase_one(n);
  return out;
}

Node node_at_index(const Truncation& t, std::uint64_t index) {
  if (index >= t.node_count(t.depth()))
    throw DomainError("node index out of range");
  std::uint32_t d = 1;
  while (index >= t.node_count(d)) ++d;
  std::uint64_t r = index - (d > 1 ? t.node_count(d - 1) : 0);
  const std::uint64_t two_k = 2ull * t.kappa();
  std::vector<std::uint32_t> path(d);
  for (std::uint32_t i = d; i-- > 0;) {
    path[i] = static_cast<std::uint32_t>(r % two_k);
    r /= two_k;
  }
  return Node::from_packed(std::move(path));
}

std::uint64_t count_words_up_to(std::uint64_t node_count,
                                std::uint32_t size_bound) {
  const std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 total = 1;  // the empty word
  unsigned __int128 c = 1;      // C(n+k-1, k)
  for (std::uint32_t k = 1; k <= size_bound; ++k) {
    c = c * (node_count + k - 1) / k;
    total += c;
    if (total > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(total);
}

std::vector<Node> all_nodes(const Truncation& t, std::uint32_t max_depth,
                            std::uint64_t max_count) {
  if (max_depth > t.depth()) max_depth = t.depth();
  if (t.node_count(max_depth) > max_count)
    throw ResourceError("node enumeration too large: " +
                        std::to_string(t.node_count(max_depth)) + " > " +
                        std::to_string(max_count));
  std::vector<Node> out;
  out.reserve(t.node_count(max_depth));
  std::vector<std::uint32_t> path;
  const std::uint32_t fanout = 2 * t.kappa();
  auto rec = [&](auto&& self) -> void {
    for (std::uint32_t e = 0; e < fanout; ++e) {
      path.push_back(e);
      out.push_back(Node::from_packed(path));
      if (path.size() < max_depth) self(self);
      path.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void enumerate_words_rec(const std::vector<Node>& nodes, std::size_t from,
                         std::uint32_t remaining, Word& acc,
                         std::vector<Word>& out) {
  out.push_back(acc);
  if (remaining == 0) return;
  for (std::size_t i = from; i < nodes.size(); ++i) {
    acc.insert(nodes[i]);
    enumerate_words_rec(nodes, i, remaining - 1, acc, out);
    acc.erase_one(nodes[i]);
  }
}

}  // namespace

std::vector<Word> enumerate_words(const std::vector<Node>& nodes,
                                  std::uint32_t size_bound,
                                  std::uint64_t max_count) {
  const std::uint64_t count = count_words_up_to(nodes.size(), size_bound);
  if (count > max_count)
    throw ResourceError("word enumeration too large: about " +
                        std::to_string(count) + " multisets > " +
                        std::to_string(max_count));
  std::vector<Word> out;
  out.reserve(count);
  Word acc;
  enumerate_words_rec(nodes, 0, size_bound, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Explores every collapse order below w; returns false on divergence.
bool unique_normal_form(const Word& w, const Word& expect,
                        std::unordered_set<Word, WordHash>& seen) {
  if (seen.count(w)) return true;
  seen.insert(w);
  auto nexts = one_step_reductions(w);
  if (nexts.empty()) return w == expect;
  for (const auto& v : nexts)
    if (!unique_normal_form(v, expect, seen)) return false;
  return true;
}

}  // namespace

CheckReport verify_confluence(const Truncation& t,
                              const ConfluenceOptions& opt) {
  CheckReport rep;
  rep.name = "confluence";
  const auto nodes = all_nodes(t, t.depth(), opt.max_words);
  const auto words = enumerate_words(nodes, opt.size_bound, opt.max_words);
  rep.counts["words"] = words.size();
  rep.counts["size_bound"] = opt.size_bound;

  FailureLog failures;
  for_indices(opt.exec, static_cast<std::int64_t>(words.size()),
              [&](std::int64_t i) {
                const Word& w = words[static_cast<std::size_t>(i)];
                const Word canon = reduce_canonical(w);
                if (!one_step_reductions(canon).empty()) {
                  failures.add(i, "canonical form still collapsible for " +
                                      w.to_string());
                  return;
                }
                std::unordered_set<Word, WordHash> seen;
                if (!unique_normal_form(w, canon, seen))
                  failures.add(i, "divergent normal forms for " +
                                      w.to_string());
              });
  rep.merge_failures(failures);
  return rep;
}

}  // namespace latmon
