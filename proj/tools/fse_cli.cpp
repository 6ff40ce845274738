// Command-line front end: conceal, sweep, bench, selfcheck.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fse/bench.hpp"
#include "fse/error.hpp"
#include "fse/extrapolation.hpp"
#include "fse/harness.hpp"
#include "fse/image.hpp"
#include "fse/selfcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  int block = 16;
  int support = 16;
  int stride = 64;
  int fft = 64;
  double rho = 0.8;
  double gamma = 0.2;
  std::uint64_t seed = 0;
  int threads = 1;
};

double to_double(const std::string& s) {
  double v = 0.0;
  return CLI::detail::lexical_cast(s, v) ? v : std::nan("");
}

const auto kOpenUnit = CLI::Validator(
    [](std::string& s) -> std::string {
      const double v = to_double(s);
      return v > 0.0 && v < 1.0 ? "" : "rho must lie in the open range (0, 1)";
    },
    "in (0,1)");

const auto kHalfOpenUnit = CLI::Validator(
    [](std::string& s) -> std::string {
      const double v = to_double(s);
      return v > 0.0 && v <= 1.0 ? "" : "gamma must lie in the range (0, 1]";
    },
    "in (0,1]");

void add_geometry(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--block", o.block, "Side of each square loss block")->check(CLI::PositiveNumber);
  cmd->add_option("--support", o.support, "Width of the support ring")->check(CLI::NonNegativeNumber);
  cmd->add_option("--stride", o.stride, "Distance between neighbouring loss blocks")->check(CLI::PositiveNumber);
  cmd->add_option("--fft", o.fft, "FFT window side")->check(CLI::Range(2, 4096));
  cmd->add_option("--rho", o.rho, "Decay of the weighting function")->check(kOpenUnit);
  cmd->add_option("--gamma", o.gamma, "Orthogonality deficiency compensation")->check(kHalfOpenUnit);
  cmd->add_option("--seed", o.seed, "Seed for the loss-pattern phase");
  cmd->add_option("--threads", o.threads, "Worker threads for block concealment")->check(CLI::PositiveNumber);
}

fse::FseConfig make_config(const CommonOptions& o) {
  fse::FseConfig cfg;
  cfg.fft = {o.fft, o.fft};
  cfg.rho_hat = o.rho;
  cfg.gamma = o.gamma;
  return cfg;
}

fse::LossPattern make_pattern(const fse::Image& img, const CommonOptions& o) {
  return fse::generate_pattern(img.width, img.height, {o.block, o.support, o.stride, o.seed});
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fse::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw fse::Error("failed writing '" + path + "'");
}

std::string format_db(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency selective extrapolation for block-loss concealment"};
  app.require_subcommand(1);

  CommonOptions common;

  // conceal
  auto* conceal = app.add_subcommand("conceal", "Conceal a regular pattern of isolated block losses");
  std::string input, output, report_path, damage_path, algo = "cfse";
  int iters = 100;
  std::optional<int> bf_budget;
  bool timing = false;
  conceal->add_option("--input", input, "Input PGM (P5)")->required()->check(CLI::ExistingFile);
  conceal->add_option("--output", output, "Concealed output PGM")->required();
  conceal->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"cfse", "rfse"}));
  conceal->add_option("--iters", iters, "Iteration count")->check(CLI::PositiveNumber);
  conceal->add_option("--bf", bf_budget, "Basis-function budget (overrides --iters)")->check(CLI::NonNegativeNumber);
  conceal->add_option("--report", report_path, "Write the per-block CSV report here");
  conceal->add_option("--damage", damage_path, "Also write the damaged image here");
  conceal->add_flag("--timing", timing, "Fill the sec_per_block column of the report");
  add_geometry(conceal, common);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "PSNR over selected basis functions for cFSE and rFSE");
  std::string sweep_input, sweep_output;
  std::vector<int> sweep_counts{10, 20, 50, 100, 200, 500};
  bool sweep_timing = false;
  sweep->add_option("--input", sweep_input, "Input PGM (P5)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--output", sweep_output, "CSV report (stdout if omitted)");
  sweep->add_option("--bf-counts", sweep_counts, "Comma-separated basis-function counts")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  sweep->add_flag("--timing", sweep_timing, "Fill the sec_per_block column");
  add_geometry(sweep, common);

  // bench
  auto* bench = app.add_subcommand("bench", "Seconds per block over selected basis functions");
  std::vector<int> bench_counts{0, 10, 20, 50, 100, 200, 500, 1000, 2000};
  int reps = 5;
  std::string bench_output, plot_prefix;
  bench->add_option("--bf-counts", bench_counts, "Comma-separated ascending counts")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--reps", reps, "Repetitions per point (>= 5)")->check(CLI::Range(fse::kMinRepetitions, 1000));
  bench->add_option("--output", bench_output, "CSV output (stdout if omitted)");
  bench->add_option("--plot-prefix", plot_prefix, "Write <prefix>_cfse.dat and <prefix>_rfse.dat");
  add_geometry(bench, common);

  // selfcheck
  auto* selfcheck = app.add_subcommand("selfcheck", "Compare the FFT loops with the spatial oracle");
  int instances = 50;
  selfcheck->add_option("--instances", instances, "Number of random instances")->check(CLI::PositiveNumber);
  selfcheck->add_option("--seed", common.seed, "Seed for the random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*conceal) {
      const fse::Image original = fse::load_image(input);
      const fse::LossPattern pattern = make_pattern(original, common);
      fse::FseConfig cfg = make_config(common);
      cfg.algorithm = fse::parse_algorithm(algo);
      cfg.iterations = iters;
      cfg.basis_functions = bf_budget;
      const fse::Image damaged = fse::apply_damage(original, pattern);
      const fse::ConcealResult result = fse::conceal(damaged, pattern, cfg, {common.support, common.threads});
      fse::save_image(result.image, output);
      if (!damage_path.empty()) fse::save_image(damaged, damage_path);
      const fse::EvalReport report = fse::evaluate(original, result, pattern, cfg);
      if (!report_path.empty()) {
        std::ostringstream csv;
        fse::write_report_csv(csv, std::span(&report, 1), timing);
        write_text(report_path, csv.str());
      }
      std::cout << fse::to_string(cfg.algorithm) << ": " << pattern.blocks.size()
                << " blocks, pooled PSNR " << format_db(report.pooled_psnr_db) << " dB\n";
    } else if (*sweep) {
      const fse::Image original = fse::load_image(sweep_input);
      const fse::LossPattern pattern = make_pattern(original, common);
      const fse::Algorithm algos[] = {fse::Algorithm::cfse, fse::Algorithm::rfse};
      const std::vector<fse::EvalReport> reports =
          fse::run_sweep(original, pattern, make_config(common), sweep_counts, algos, {common.support, common.threads});
      std::ostringstream csv;
      fse::write_report_csv(csv, reports, sweep_timing);
      if (sweep_output.empty()) {
        std::cout << csv.str();
      } else {
        write_text(sweep_output, csv.str());
        for (const auto& r : reports) {
          std::cout << fse::to_string(r.algorithm) << " bf=" << r.bf_count << " pooled PSNR "
                    << format_db(r.pooled_psnr_db) << " dB\n";
        }
      }
    } else if (*bench) {
      const std::vector<fse::BenchRecord> records =
          fse::run_benchmark(make_config(common), bench_counts, reps, common.block, common.support);
      std::ostringstream csv;
      fse::write_bench_csv(csv, records);
      if (bench_output.empty()) {
        std::cout << csv.str();
      } else {
        write_text(bench_output, csv.str());
      }
      if (!plot_prefix.empty()) {
        for (fse::Algorithm a : {fse::Algorithm::cfse, fse::Algorithm::rfse}) {
          std::ostringstream dat;
          fse::write_gnuplot_data(dat, records, a);
          write_text(plot_prefix + "_" + std::string(fse::to_string(a)) + ".dat", dat.str());
        }
      }
      for (const auto& r : records) {
        if (r.unstable) {
          std::cerr << "warning: " << fse::to_string(r.algorithm) << " at " << r.bf_count
                    << " basis functions is unstable (cv " << r.cv << ")\n";
        }
      }
    } else if (*selfcheck) {
      const std::vector<fse::CheckOutcome> outcomes = fse::run_selfcheck(common.seed, instances);
      bool all = true;
      for (const auto& o : outcomes) {
        std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << " (worst " << o.worst << ")";
        if (!o.passed) std::cout << ": " << o.detail;
        std::cout << '\n';
        all = all && o.passed;
      }
      return all ? kExitOk : kExitRuntime;
    }
  } catch (const fse::ParseError& e) {
    std::cerr << "error: malformed image: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const fse::ConfigError& e) {
    std::cerr << "error: invalid configuration: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
