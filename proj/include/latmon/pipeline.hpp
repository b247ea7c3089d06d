#ifndef LATMON_PIPELINE_HPP
#define LATMON_PIPELINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latmon/catalog.hpp"
#include "latmon/embedding.hpp"
#include "latmon/engine.hpp"
#include "latmon/labeling.hpp"
#include "latmon/lattice.hpp"
#include "latmon/report.hpp"

namespace latmon {

struct RunConfig {
  std::string lattice;  // catalog name or path to a lattice JSON file
  std::optional<std::uint32_t> kappa;
  std::optional<std::uint32_t> depth;
  std::uint32_t word_bound = 4;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  bool exhaustive_independence = false;
  ExecMode exec = ExecMode::Parallel;
  bool timings = false;  // stamp wall time into reports (non-deterministic)

  // budgets
  std::uint64_t node_budget = 3'000'000;       // auto depth restriction
  std::uint64_t node_ceiling = 50'000'000;     // hard cap for explicit depth
  std::uint64_t fragment_budget = 250'000;
  std::uint64_t family_work_budget = 400'000'000;  // families x nodes
  std::uint32_t max_ground_bits = 24;
  std::uint32_t projection_bit_limit = 20;
};

/// Everything downstream checks run against. Holds the lattice by value;
/// compacts/labeling point into it.
struct ResolvedRun {
  FiniteLattice lattice;
  std::unique_ptr<CompactSemilattice> compacts;
  std::unique_ptr<Labeling> labeling;
  std::vector<Ideal> ideals;
  Engine engine;
  std::uint32_t kappa = 1;
  std::uint32_t depth = 1;
  bool depth_restricted = false;  // budget lowered the default |C| depth
};

/// Loads the lattice (catalog or file), fills defaults (kappa =
/// required_branching, depth = |C| shrunk to the node budget) and
/// validates overrides. InputError/ConfigError per the CLI exit contract.
ResolvedRun resolve(const RunConfig& cfg);

/// The full verification pipeline; one CheckReport per stage, fixed order.
Report run_verify(const RunConfig& cfg);

/// The embedding artifact: every ideal with its index-node sets and
/// bounded fragment sizes.
nlohmann::ordered_json run_embed(const RunConfig& cfg);

/// Cross-checks the symbolic equality decision against explicit-ground
/// evaluation and canonical-form comparison, and canonical membership
/// against the expansion-search oracle.
Report run_oracle_compare(const RunConfig& cfg);

}  // namespace latmon

#endif
