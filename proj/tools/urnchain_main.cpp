// Command-line surface for the urn-chain default model: scenario simulation,
// spread calibration, and joint default-count distributions with exact,
// quadrature, and Monte Carlo backends.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "urnchain/calibration.hpp"
#include "urnchain/errors.hpp"
#include "urnchain/oracle.hpp"
#include "urnchain/scenario_io.hpp"
#include "urnchain/simulation.hpp"
#include "urnchain/urn_chain.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitModel = 3;
constexpr int kExitResource = 4;

std::ofstream open_output(const std::string& path) {
  // binary keeps line endings LF everywhere
  std::ofstream out(path, std::ios::binary);
  if (!out) throw urnchain::ParseError("cannot open output file '" + path + "'");
  return out;
}

std::string fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int cmd_simulate(const std::string& config_path, const std::string& schedule_path,
                 const std::string& out_path, double reinforcement) {
  const urnchain::ScenarioConfig config = urnchain::load_scenario_config(config_path);
  const urnchain::DefaultSchedule schedule = urnchain::load_schedule_csv(schedule_path);
  const urnchain::SimulationResult result =
      urnchain::run_scenario(config.sim_groups(reinforcement), schedule);
  std::ofstream out = open_output(out_path);
  result.write_csv(out);
  return 0;
}

int cmd_calibrate(const std::string& config_path, int month) {
  const urnchain::ScenarioConfig config = urnchain::load_scenario_config(config_path);
  std::vector<urnchain::SpreadCurve> curves;
  curves.reserve(config.groups.size());
  for (const auto& g : config.groups) {
    curves.emplace_back(g.one_year_spread, config.monthly_slope);
  }
  const urnchain::IdioVector idio = urnchain::init_chain_from_spreads(curves, month);
  const urnchain::TotalVector totals = urnchain::compose_total(idio);

  std::cout << "group,spread,total_pd,idio_pd\n";
  for (std::size_t i = 0; i < config.groups.size(); ++i) {
    const double gamma = urnchain::spread_at_month(curves[i], month);
    std::cout << config.groups[i].name << ',' << fixed6(gamma) << ',' << fixed6(totals[i]) << ','
              << fixed6(idio[i]) << '\n';
  }
  return 0;
}

struct PmfArgs {
  std::vector<int> sizes;
  std::vector<double> prior_values;
  std::string config_path;
  int month = 0;
  std::string mode = "exact";
  std::string out_path;
  std::uint64_t seed = 1;
  long long replicates = 1'000'000;
  int threads = 1;
  int nodes = 200;
  std::size_t cap = urnchain::kDefaultCellCap;
  double reinforcement = 0.0;
};

int cmd_pmf(const PmfArgs& args) {
  std::vector<int> sizes = args.sizes;
  std::vector<urnchain::BetaParams> priors;

  if (!args.config_path.empty()) {
    const urnchain::ScenarioConfig config = urnchain::load_scenario_config(args.config_path);
    std::vector<urnchain::SpreadCurve> curves;
    for (const auto& g : config.groups) {
      curves.emplace_back(g.one_year_spread, config.monthly_slope);
    }
    const urnchain::IdioVector idio = urnchain::init_chain_from_spreads(curves, args.month);
    for (std::size_t i = 0; i < config.groups.size(); ++i) {
      const double s =
          args.reinforcement > 0.0 ? args.reinforcement : config.groups[i].reinforcement;
      priors.push_back(urnchain::de_finetti_params(urnchain::new_urn(idio[i], 1.0 - idio[i], s)));
    }
    if (sizes.empty()) {
      for (const auto& g : config.groups) sizes.push_back(g.size);
    }
  } else {
    if (args.prior_values.empty() || args.prior_values.size() % 2 != 0) {
      throw urnchain::ParseError("--priors expects pairs: a1,b1[,a2,b2,...]");
    }
    for (std::size_t i = 0; i + 1 < args.prior_values.size(); i += 2) {
      priors.emplace_back(args.prior_values[i], args.prior_values[i + 1]);
    }
  }
  if (sizes.empty()) throw urnchain::ParseError("--sizes is required without --config");
  if (sizes.size() != priors.size()) {
    throw urnchain::ParseError("need exactly one prior per group size");
  }

  auto write_table = [&](const urnchain::PmfTable& table) {
    if (args.out_path.empty()) {
      table.write_csv(std::cout);
    } else {
      std::ofstream out = open_output(args.out_path);
      table.write_csv(out);
    }
  };

  if (args.mode == "exact") {
    write_table(urnchain::joint_pmf_k(sizes, priors, args.cap));
  } else if (args.mode == "quadrature") {
    write_table(urnchain::oracle::quadrature_joint_pmf(sizes, priors, args.nodes));
  } else if (args.mode == "mc") {
    const urnchain::oracle::McJointPmf result =
        urnchain::oracle::mc_joint_pmf(sizes, priors, args.replicates, args.seed, args.threads);
    write_table(result.pmf);
    if (!args.out_path.empty()) {
      std::ofstream report = open_output(args.out_path + ".report.csv");
      result.write_csv(report);
    }
  } else {
    throw urnchain::ParseError("unknown mode '" + args.mode + "' (exact|quadrature|mc)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"urn-chain default model: reinforced-urn credit risk engine"};
  app.require_subcommand(1);

  std::string config_path, schedule_path, out_path;
  double reinforcement = 0.0;
  int month = 0;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the monthly default-count scenario and write the result CSV");
  simulate->add_option("--config", config_path, "scenario config file")->required();
  simulate->add_option("--schedule", schedule_path, "default schedule CSV")->required();
  simulate->add_option("--out", out_path, "output CSV path")->required();
  simulate->add_option("--reinforcement", reinforcement,
                       "override every group's reinforcement with this value");

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Print spread, total PD, and idiosyncratic PD per group as CSV");
  calibrate->add_option("--config", config_path, "scenario config file")->required();
  calibrate->add_option("--month", month, "term-structure month, 0..12")
      ->check(CLI::Range(0, 12));

  PmfArgs pmf_args;
  CLI::App* pmf = app.add_subcommand(
      "pmf", "Joint default-count distribution (exact, quadrature, or Monte Carlo)");
  pmf->add_option("--sizes", pmf_args.sizes, "group sizes, e.g. 3,4")->delimiter(',');
  pmf->add_option("--priors", pmf_args.prior_values,
                  "Beta shape pairs a1,b1[,a2,b2,...], one pair per group")
      ->delimiter(',');
  pmf->add_option("--config", pmf_args.config_path,
                  "derive priors from a scenario config's calibrated chain");
  pmf->add_option("--month", pmf_args.month, "calibration month when using --config")
      ->check(CLI::Range(0, 12));
  pmf->add_option("--mode", pmf_args.mode, "exact|quadrature|mc (default exact)");
  pmf->add_option("--out", pmf_args.out_path, "output CSV path (stdout if omitted)");
  pmf->add_option("--seed", pmf_args.seed, "RNG seed for mc mode");
  pmf->add_option("--replicates", pmf_args.replicates, "mc replicates (>= 1e4)");
  pmf->add_option("--threads", pmf_args.threads, "mc worker threads");
  pmf->add_option("--nodes", pmf_args.nodes, "quadrature nodes per axis");
  pmf->add_option("--cap", pmf_args.cap, "cell cap for exact mode");
  pmf->add_option("--reinforcement", pmf_args.reinforcement,
                  "override reinforcement when using --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(config_path, schedule_path, out_path, reinforcement);
    }
    if (calibrate->parsed()) {
      return cmd_calibrate(config_path, month);
    }
    return cmd_pmf(pmf_args);
  } catch (const urnchain::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const urnchain::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const urnchain::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::invalid_argument& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
