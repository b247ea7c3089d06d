#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "latmon/pipeline.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitConfigError = 3;

void add_run_options(CLI::App* cmd, latmon::RunConfig* cfg,
                     std::string* report_path, bool* serial) {
  cmd->add_option("--lattice", cfg->lattice,
                  "catalog name or lattice JSON file")
      ->required();
  cmd->add_option("--kappa", cfg->kappa, "branching override");
  cmd->add_option("--depth", cfg->depth, "tree depth override");
  cmd->add_option("--word-bound", cfg->word_bound, "multiset size bound");
  cmd->add_option("--seed", cfg->seed, "seed for randomized sweeps");
  cmd->add_option("--trials", cfg->trials, "randomized sweep size");
  cmd->add_option("--report", *report_path, "write the JSON report here");
  cmd->add_flag("--serial", *serial, "run the serial reference kernels");
  cmd->add_flag("--timings", cfg->timings,
                "stamp wall-clock millis into reports (non-deterministic)");
}

void emit(const nlohmann::ordered_json& j, const std::string& report_path) {
  const std::string text = j.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw latmon::InputError("cannot write report to " + report_path);
  out << text;
}

void summarize(const latmon::Report& rep) {
  for (const auto& c : rep.checks) {
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    for (const auto& w : c.witnesses) std::cerr << "\n       " << w;
    std::cerr << "\n";
  }
}

int cmd_catalog() {
  std::cout << "name      elements  ideals  compacts  required-branching\n";
  for (const auto& name : latmon::catalog_names()) {
    const auto lat = latmon::catalog_lattice(name);
    const latmon::CompactSemilattice c(lat);
    const auto ideals = latmon::ideals_enumerate(c);
    std::printf("%-9s %8u  %6zu  %8u  %18u\n", name.c_str(), lat.size(),
                ideals.size(), c.size(), latmon::required_branching(c));
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "latmon: builds finite lattice-to-transformation-monoid embeddings "
      "and machine-checks their algebraic properties"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "list built-in lattices");

  latmon::RunConfig verify_cfg, embed_cfg, oracle_cfg;
  std::string verify_report, embed_report, oracle_report;
  bool verify_serial = false, embed_serial = false, oracle_serial = false;

  auto* verify = app.add_subcommand("verify", "run the verification pipeline");
  add_run_options(verify, &verify_cfg, &verify_report, &verify_serial);
  verify->add_flag("--exhaustive-independence",
                   verify_cfg.exhaustive_independence,
                   "check all reduced word pairs up to the word bound");

  auto* embed = app.add_subcommand("embed", "emit the embedding artifact");
  add_run_options(embed, &embed_cfg, &embed_report, &embed_serial);

  auto* oracle = app.add_subcommand(
      "oracle-compare", "cross-check the symbolic, explicit-ground and "
                        "expansion-search oracles");
  add_run_options(oracle, &oracle_cfg, &oracle_report, &oracle_serial);

  CLI11_PARSE(app, argc, argv);

  try {
    if (catalog->parsed()) return cmd_catalog();
    if (verify->parsed()) {
      if (verify_serial) verify_cfg.exec = latmon::ExecMode::Serial;
      const latmon::Report rep = latmon::run_verify(verify_cfg);
      emit(rep.to_json(), verify_report);
      summarize(rep);
      return rep.all_pass() ? kExitPass : kExitVerificationFailure;
    }
    if (embed->parsed()) {
      if (embed_serial) embed_cfg.exec = latmon::ExecMode::Serial;
      emit(latmon::run_embed(embed_cfg), embed_report);
      return kExitPass;
    }
    if (oracle->parsed()) {
      if (oracle_serial) oracle_cfg.exec = latmon::ExecMode::Serial;
      const latmon::Report rep = latmon::run_oracle_compare(oracle_cfg);
      emit(rep.to_json(), oracle_report);
      summarize(rep);
      return rep.all_pass() ? kExitPass : kExitVerificationFailure;
    }
  } catch (const latmon::InputError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const latmon::ConfigError& ex) {
    std::cerr << "configuration error: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const latmon::ResourceError& ex) {
    std::cerr << "resource error: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const latmon::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
