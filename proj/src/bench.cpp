#include "fse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "fse/error.hpp"
#include "fse/harness.hpp"

namespace fse {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Image synthetic_block_image(int width, int height) {
  Image img(width, height);
  const double pi = std::numbers::pi;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double noise =
          static_cast<double>(splitmix64(static_cast<std::uint64_t>(y) * 1315423911ULL + x) % 1000) / 1000.0 - 0.5;
      const double v = 110.0 + 0.6 * x - 0.3 * y + 35.0 * std::sin(2.0 * pi * (x + 0.5 * y) / 23.0) +
                       20.0 * std::cos(2.0 * pi * (0.7 * x - y) / 11.0) + 8.0 * noise;
      img.at(y, x) = to_pixel(v);
    }
  }
  return img;
}

std::vector<BenchRecord> run_benchmark(const FseConfig& config, std::span<const int> bf_counts, int repetitions,
                                       int block, int support_width) {
  if (repetitions < kMinRepetitions) {
    throw ConfigError("benchmark needs at least " + std::to_string(kMinRepetitions) + " repetitions");
  }
  if (!std::is_sorted(bf_counts.begin(), bf_counts.end())) {
    throw ConfigError("basis-function counts must be sorted ascending");
  }
  if (!bf_counts.empty() && bf_counts.front() < 0) throw ConfigError("basis-function counts must be nonnegative");

  const Image img = synthetic_block_image(config.fft.cols, config.fft.rows);
  const int top = (config.fft.rows - block) / 2;
  const int left = (config.fft.cols - block) / 2;
  const LossPattern pattern{{Rect{top, left, block, block}}};
  const ConcealOptions options{support_width, 1};

  std::vector<BenchRecord> records;
  for (int bf : bf_counts) {
    for (Algorithm algo : {Algorithm::cfse, Algorithm::rfse}) {
      FseConfig cfg = config;
      cfg.algorithm = algo;
      cfg.basis_functions = bf;
      conceal(img, pattern, cfg, options);  // warm-up, also creates the FFT plans

      using clock = std::chrono::steady_clock;
      std::vector<double> samples;
      samples.reserve(static_cast<std::size_t>(repetitions));
      for (int rep = 0; rep < repetitions; ++rep) {
        int runs = 0;
        const auto start = clock::now();
        std::chrono::duration<double> elapsed{};
        do {
          conceal(img, pattern, cfg, options);
          ++runs;
          elapsed = clock::now() - start;
        } while (elapsed.count() < 0.01);
        samples.push_back(elapsed.count() / runs);
      }

      const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      var /= static_cast<double>(samples.size() - 1);
      BenchRecord rec;
      rec.algorithm = algo;
      rec.bf_count = bf;
      rec.median_seconds = median(samples);
      rec.min_seconds = *std::min_element(samples.begin(), samples.end());
      rec.repetitions = repetitions;
      rec.cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
      rec.unstable = rec.cv > kMaxStableCv;
      records.push_back(rec);
    }
  }
  return records;
}

double speedup(std::span<const BenchRecord> records, int bf_count) {
  double c = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  for (const BenchRecord& rec : records) {
    if (rec.bf_count != bf_count) continue;
    (rec.algorithm == Algorithm::cfse ? c : r) = rec.median_seconds;
  }
  return r / c;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "algo,bf_count,sec_per_block_median,sec_per_block_min,repetitions\n";
  char buf[160];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.9f,%.9f,%d\n", std::string(to_string(r.algorithm)).c_str(), r.bf_count,
                  r.median_seconds, r.min_seconds, r.repetitions);
    out << buf;
  }
}

void write_gnuplot_data(std::ostream& out, std::span<const BenchRecord> records, Algorithm algorithm) {
  out << "# bf_count sec_per_block_median (" << to_string(algorithm) << ")\n";
  char buf[96];
  for (const BenchRecord& r : records) {
    if (r.algorithm != algorithm) continue;
    std::snprintf(buf, sizeof buf, "%d %.9f\n", r.bf_count, r.median_seconds);
    out << buf;
  }
}

}  // namespace fse
