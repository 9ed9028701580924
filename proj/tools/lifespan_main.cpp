#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lifespan/scenario.hpp"
#include "lifespan/specfun.hpp"

namespace {

struct SubcommandArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
};

using Runner = std::vector<std::string> (*)(const lifespan::ScenarioConfig&,
                                            const std::string&);

void add_subcommand(CLI::App& app, const std::string& name, const std::string& help,
                    Runner runner, int& exit_code) {
  auto args = std::make_shared<SubcommandArgs>();
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", args->config, "Scenario config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--set", args->sets,
                  "Override a config field by dotted path, e.g. --set energy.initial_energy_J=0.0116");
  sub->add_option("--out", args->out, "Output directory (default: config output_dir or .)");
  sub->callback([args, runner, &exit_code] {
    try {
      const lifespan::ScenarioConfig cfg = lifespan::load_scenario(args->config, args->sets);
      std::string out_dir = !args->out.empty()
                                ? args->out
                                : (!cfg.output_dir.empty() ? cfg.output_dir : ".");
      for (const std::string& path : runner(cfg, out_dir)) {
        std::printf("wrote %s\n", path.c_str());
      }
      exit_code = 0;
    } catch (const lifespan::ConfigError& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      exit_code = 1;
    } catch (const lifespan::QuadratureError& e) {
      std::fprintf(stderr, "numerical failure: %s (estimate=%.17g, error_bound=%.17g)\n",
                   e.what(), e.estimate(), e.error_bound());
      exit_code = 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "numerical failure: %s\n", e.what());
      exit_code = 2;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lifespan: analytic law of wireless sensor network lifetime, with a Monte Carlo "
      "oracle.\nEnvironment: LIFESPAN_THREADS caps simulation workers."};
  app.require_subcommand(1);
  int exit_code = 0;

  add_subcommand(app, "sensor-ccdf",
                 "Per-sensor survival curves, exact and CLT.\nColumns: tau_hours, "
                 "capacity_packets, rate_per_hour, survival_exact, survival_clt",
                 &lifespan::run_sensor_ccdf, exit_code);
  add_subcommand(app, "network-ccdf",
                 "Single-hop network lifetime ccdf over tau/beta/node sweeps.\nColumns: "
                 "tau_hours, beta, nodes, mu, sigma, ccdf",
                 &lifespan::run_network_ccdf, exit_code);
  add_subcommand(app, "network-pdf",
                 "Single-hop network lifetime density.\nColumns: tau_hours, beta, nodes, "
                 "pdf_per_hour",
                 &lifespan::run_network_pdf, exit_code);
  add_subcommand(app, "multihop-ccdf",
                 "First-ring lifetime ccdf of a multi-hop network over range/tau/beta "
                 "sweeps.\nColumns: tx_range_m, ring_count, q1, tau_hours, beta, ccdf",
                 &lifespan::run_multihop_ccdf, exit_code);
  add_subcommand(app, "simulate",
                 "Monte Carlo lifetime samples and empirical ccdf.\nFiles: "
                 "simulate_samples.csv (rank, lifetime_hours) and simulate_ccdf.csv "
                 "(tau_hours, empirical_ccdf, ci99_lo, ci99_hi)",
                 &lifespan::run_simulate, exit_code);
  add_subcommand(app, "compare",
                 "Analytic ccdf against a fresh simulation.\nColumns: beta, tau_hours, "
                 "analytic_ccdf, empirical_ccdf, deviation, ci99_lo, ci99_hi, inside_ci, "
                 "max_abs_deviation",
                 &lifespan::run_compare, exit_code);
  add_subcommand(app, "predict",
                 "Large-N verdict from the sign of a = 1 - beta - mu.\nColumns: tau_hours, "
                 "beta, mu, a, verdict (ACHIEVES|FAILS|CRITICAL)",
                 &lifespan::run_predict, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are validation errors
  }
  return exit_code;
}
