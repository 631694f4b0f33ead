// swarmauth: key generation, scenario runs, latency comparison and the
// toy-group oracle from the command line.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swarmauth/error.hpp"
#include "swarmauth/groupauth/dealer.hpp"
#include "swarmauth/groupauth/files.hpp"
#include "swarmauth/latency/model.hpp"
#include "swarmauth/sim/config.hpp"
#include "swarmauth/sim/oracle.hpp"
#include "swarmauth/sim/runner.hpp"

namespace fs = std::filesystem;
using namespace swarmauth;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (auto env = sim::seed_from_env()) return *env;
  throw ConfigError("no --seed given and SWARMAUTH_SEED is not set");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir + ": " + ec.message());
}

int cmd_keygen(std::size_t threshold, std::size_t members, const std::string& group_name,
               std::uint64_t toy_q, const std::optional<std::uint64_t>& seed_flag,
               const std::string& out_dir) {
  if (threshold == 0) throw ConfigError("--threshold must be positive");
  if (members < threshold) throw ConfigError("--members must be at least --threshold");
  algebra::Group group = [&] {
    if (group_name == "curve") return algebra::Group::default_elliptic();
    try {
      return algebra::Group::toy(toy_q);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--toy-q: ") + e.what());
    }
  }();
  Rng rng(resolve_seed(seed_flag));
  groupauth::ControlStation cs(group, threshold, rng);
  std::vector<groupauth::Credential> creds;
  try {
    for (std::size_t i = 0; i < members; ++i) creds.push_back(cs.issue_next());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  ensure_dir(out_dir);
  const fs::path dir(out_dir);
  groupauth::write_file((dir / "group_params.json").string(), groupauth::group_params_to_json(cs.params()) + "\n");
  groupauth::write_file((dir / "credentials.json").string(), groupauth::credentials_to_json(creds) + "\n");
  std::cout << "wrote " << (dir / "group_params.json").string() << " and "
            << (dir / "credentials.json").string() << " (" << members << " members, threshold "
            << threshold << ")\n";
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& trace_path) {
  const sim::ScenarioConfig cfg =
      sim::scenario_config_from_json(groupauth::read_file(config_path), sim::seed_from_env());
  sim::RunResult r = sim::run_scenario(cfg);
  if (!trace_path.empty()) {
    const fs::path parent = fs::path(trace_path).parent_path();
    if (!parent.empty()) ensure_dir(parent.string());
    groupauth::write_file(trace_path, protocol::trace_to_csv(r.trace));
    r.report.trace_path = trace_path;
  }
  std::cout << r.report.to_json() << '\n';
  if (r.report.exit_code == sim::kExitInvariant) {
    std::cerr << "invariant violation: " << r.report.problem << '\n';
  }
  return r.report.exit_code;
}

int cmd_compare(std::size_t max_threshold, std::size_t max_drones, std::size_t swarm_threshold,
                const std::string& latency_path, const std::string& out_dir) {
  latency::LatencyModel model;
  if (!latency_path.empty()) model = latency::latency_model_from_json(groupauth::read_file(latency_path));
  latency::FigureConfig fc{max_threshold, max_drones, swarm_threshold};
  const latency::FigureSet f = latency::emit_figure_curves(fc, model);
  ensure_dir(out_dir);
  const fs::path dir(out_dir);
  groupauth::write_file((dir / "auth_curve.csv").string(), latency::curve_to_csv(f.auth));
  groupauth::write_file((dir / "swarm_curve.csv").string(), latency::curve_to_csv(f.swarm));
  groupauth::write_file((dir / "handover_curve.csv").string(), latency::curve_to_csv(f.handover));
  groupauth::write_file((dir / "crossovers.csv").string(), latency::crossovers_to_csv(f.crossovers));
  std::cout << "nr_auth_ms=" << protocol::format_ms(latency::nr_auth_latency(model)) << '\n'
            << "nr_handover_ms=" << protocol::format_ms(latency::nr_handover_latency(model)) << '\n'
            << "auth=" << f.crossovers.auth << '\n'
            << "handover=" << f.crossovers.handover << '\n'
            << "swarm_n(m=" << f.crossovers.swarm_m << ")=" << f.crossovers.swarm_n << '\n';
  return 0;
}

int cmd_oracle(const std::optional<std::uint64_t>& seed_flag, std::size_t instances) {
  std::uint64_t seed = 1;
  if (seed_flag) seed = *seed_flag;
  else if (auto env = sim::seed_from_env()) seed = *env;
  const sim::OracleReport r = sim::run_oracle_selftest(seed, instances);
  std::cout << r.to_text();
  return r.passed() ? 0 : sim::kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold group authentication for drone swarms: simulator and tools"};
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Issue group parameters and a credential batch");
  std::size_t threshold = 0, members = 0;
  std::string group = "curve";
  std::uint64_t toy_q = 31;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  keygen->add_option("--threshold", threshold, "Threshold m")->required();
  keygen->add_option("--members", members, "Number of credentials to issue")->required();
  keygen->add_option("--group", group, "curve or toy")->check(CLI::IsMember({"curve", "toy"}));
  keygen->add_option("--toy-q", toy_q, "Prime order of the toy group");
  keygen->add_option("--seed", seed, "RNG seed (default: SWARMAUTH_SEED)");
  keygen->add_option("--out", out_dir, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Run one scenario and print its report");
  std::string config_path, trace_path;
  run->add_option("--config", config_path, "Scenario config JSON")->required();
  run->add_option("--trace", trace_path, "Write the trace CSV here");

  auto* compare = app.add_subcommand("compare", "Emit latency curves and crossover table");
  std::size_t max_threshold = 100, max_drones = 200, swarm_threshold = 5;
  std::string latency_path, fig_dir = "figs";
  compare->add_option("--max-threshold", max_threshold, "Largest m on the threshold curves");
  compare->add_option("--max-drones", max_drones, "Largest n on the swarm curve");
  compare->add_option("--swarm-threshold", swarm_threshold, "m used for the swarm curve");
  compare->add_option("--latency", latency_path, "Latency model override JSON");
  compare->add_option("--out", fig_dir, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Check the curve against the toy-group oracle");
  bool selftest = false;
  std::optional<std::uint64_t> oracle_seed;
  std::size_t instances = 1000;
  oracle->add_flag("--selftest", selftest, "Run the built-in oracle suite")->required();
  oracle->add_option("--seed", oracle_seed, "RNG seed (default: SWARMAUTH_SEED or 1)");
  oracle->add_option("--instances", instances, "Random curve-vs-toy instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sim::kExitUsage;
  }

  try {
    if (*keygen) return cmd_keygen(threshold, members, group, toy_q, seed, out_dir);
    if (*run) return cmd_run(config_path, trace_path);
    if (*compare) return cmd_compare(max_threshold, max_drones, swarm_threshold, latency_path, fig_dir);
    if (*oracle) return cmd_oracle(oracle_seed, instances);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sim::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return sim::kExitInvariant;
  }
  return sim::kExitUsage;
}
