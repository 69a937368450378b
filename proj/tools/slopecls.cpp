// Benchmark driver: `slopecls table` reproduces the L1 / L2 / Slope comparison
// on synthetic two-class Gaussian data, `slopecls rate` checks how the
// estimation error scales with (k*/n) log(p/k*).
//
// Exit codes: 0 success, 2 configuration error, 3 numerical divergence,
// 1 any other failure (I/O).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slopecls/experiments.hpp"
#include "slopecls/report.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kDivergence = 3;

struct Options {
  slopecls::ExperimentSpec spec;
  int replications = 10;
  std::vector<std::string> methods;
  std::vector<std::string> losses;
  slopecls::RunConfig run;
  std::string out = "-";
  std::string format = "csv";
  std::vector<int> rate_n{200, 400, 800, 1600};
};

template <class Report>
void write(const Report& report, const Options& opt) {
  const auto format = slopecls::parse_format(opt.format);
  if (opt.out == "-") {
    slopecls::emit_report(report, format, std::cout);
  } else {
    slopecls::emit_report(report, format, opt.out);
  }
}

std::vector<slopecls::Method> methods_of(const Options& opt) {
  std::vector<slopecls::Method> out;
  for (const auto& m : opt.methods) out.push_back(slopecls::parse_method(m));
  return out;
}

std::vector<slopecls::LossFamily> losses_of(const Options& opt) {
  std::vector<slopecls::LossFamily> out;
  for (const auto& l : opt.losses) out.push_back(slopecls::parse_task(l));
  return out;
}

void run_table(const Options& opt) {
  const auto report = slopecls::run_table(opt.spec, opt.replications,
                                          methods_of(opt), losses_of(opt),
                                          opt.run);
  write(report, opt);
}

void run_rate(const Options& opt) {
  const auto methods = methods_of(opt);
  const auto losses = losses_of(opt);
  if (methods.size() != 1 || losses.size() != 1) {
    throw std::invalid_argument("rate takes exactly one method and one loss");
  }
  std::vector<slopecls::GridPoint> grid;
  for (int n : opt.rate_n) grid.push_back({n, opt.spec.p, opt.spec.k_star});
  const auto report = slopecls::run_rate_check(
      opt.spec, grid, opt.replications, losses.front(), methods.front(), opt.run);
  write(report, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse linear classification benchmarks (L1, L2, Slope)"};
  app.set_config("--config", "", "Key-value config file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--n", opt.spec.n, "Training samples")->capture_default_str();
  app.add_option("--p", opt.spec.p, "Features")->capture_default_str();
  app.add_option("--k-star", opt.spec.k_star, "Relevant features")
      ->capture_default_str();
  app.add_option("--rho", opt.spec.rho, "Equicorrelation")->capture_default_str();
  app.add_option("--seed", opt.spec.seed, "Master seed")->capture_default_str();
  app.add_option("--val-size", opt.spec.val_size, "Validation samples")
      ->capture_default_str();
  app.add_option("--test-size", opt.spec.test_size, "Test samples")
      ->capture_default_str();
  app.add_option("--replications", opt.replications, "Independent replications")
      ->capture_default_str();
  auto* methods_opt =
      app.add_option("--methods", opt.methods, "Subset of l1,l2,slope")
          ->delimiter(',');
  auto* losses_opt =
      app.add_option("--losses", opt.losses, "Subset of svm,logreg")
          ->delimiter(',');
  app.add_option("--grid-size", opt.run.grid_size, "Points on the eta path")
      ->capture_default_str();
  app.add_option("--tau", opt.run.solver.tau, "Smoothing parameter")
      ->capture_default_str();
  app.add_option("--epsilon", opt.run.solver.epsilon, "Stopping threshold")
      ->capture_default_str();
  app.add_option("--t-max", opt.run.solver.t_max, "Maximum iterations per fit")
      ->capture_default_str();
  app.add_option("--threads", opt.run.threads,
                 "Worker threads over replications (0 = all cores)")
      ->capture_default_str();
  app.add_option("--out", opt.out, "Output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", opt.format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}))
      ->capture_default_str();
  auto* rate_n_opt =
      app.add_option("--rate-n", opt.rate_n, "Sample sizes of the rate grid")
          ->delimiter(',');

  auto* table = app.add_subcommand("table", "L1 / L2 / Slope comparison table");
  auto* rate = app.add_subcommand("rate", "Estimation-error rate check");
  (void)rate_n_opt;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (table->parsed()) {
      if (methods_opt->count() == 0) opt.methods = {"l1", "l2", "slope"};
      if (losses_opt->count() == 0) opt.losses = {"svm", "logreg"};
      run_table(opt);
    } else if (rate->parsed()) {
      if (methods_opt->count() == 0) opt.methods = {"slope"};
      if (losses_opt->count() == 0) opt.losses = {"logreg"};
      run_rate(opt);
    }
  } catch (const slopecls::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return kDivergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
