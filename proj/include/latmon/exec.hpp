#ifndef LATMON_EXEC_HPP
#define LATMON_EXEC_HPP

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace latmon {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Generator derived from (seed, item index): randomized sweeps stay
/// reproducible and independent of iteration order.
inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed + 0x632BE59BD9B4E019ull * (index + 1)));
}

/// Serial is the reference execution path; Parallel runs the same kernel
/// under OpenMP. Both must produce identical reports.
enum class ExecMode { Serial, Parallel };

/// Runs fn(i) for i in [0, n). fn must be safe to call concurrently in
/// Parallel mode and must not depend on iteration order.
template <typename Fn>
void for_indices(ExecMode mode, std::int64_t n, Fn&& fn) {
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  }
}

/// Flat indexing of the (i, j) pairs over n items, i <= j (or i < j
/// without the diagonal), row-major. Lets pair sweeps run off a single
/// index range.
class TriangleIndex {
public:
  TriangleIndex(std::uint64_t n, bool with_diagonal) {
    offsets_.reserve(n + 1);
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      offsets_.push_back(acc);
      acc += (n - i) - (with_diagonal ? 0 : 1);
    }
    offsets_.push_back(acc);
    diagonal_ = with_diagonal;
  }

  std::uint64_t size() const { return offsets_.back(); }

  std::pair<std::uint64_t, std::uint64_t> decode(std::uint64_t k) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
    const std::uint64_t i =
        static_cast<std::uint64_t>(it - offsets_.begin()) - 1;
    const std::uint64_t j = i + (k - offsets_[i]) + (diagonal_ ? 0 : 1);
    return {i, j};
  }

private:
  bool diagonal_ = true;
  std::vector<std::uint64_t> offsets_;
};

/// Failure sink shared by verification workers. Entries carry the item
/// index so the merged output is independent of thread scheduling.
class FailureLog {
public:
  void add(std::int64_t index, std::string text) {
    std::lock_guard<std::mutex> lock(mu_);
    items_.emplace_back(index, std::move(text));
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return items_.size();
  }

  bool empty() const { return size() == 0; }

  /// First `cap` failure texts in index order.
  std::vector<std::string> sorted_texts(std::size_t cap) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto items = items_;
    std::sort(items.begin(), items.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < items.size() && i < cap; ++i)
      out.push_back(items[i].second);
    return out;
  }

private:
  mutable std::mutex mu_;
  std::vector<std::pair<std::int64_t, std::string>> items_;
};

}  // namespace latmon

#endif
