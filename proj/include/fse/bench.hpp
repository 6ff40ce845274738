#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "fse/extrapolation.hpp"
#include "fse/image.hpp"

namespace fse {

struct BenchRecord {
  Algorithm algorithm = Algorithm::cfse;
  int bf_count = 0;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  int repetitions = 0;
  /// Coefficient of variation of the repetitions.
  double cv = 0.0;
  /// cv above kMaxStableCv.
  bool unstable = false;
};

inline constexpr double kMaxStableCv = 0.20;
inline constexpr int kMinRepetitions = 5;

/// Deterministic textured test image of the given size (smooth gradients,
/// a few oriented sinusoids and hashed noise).
Image synthetic_block_image(int width, int height);

/// Seconds per block for cFSE and rFSE at each basis-function count.
///
/// Every measurement conceals one centred block-sized loss in an FFT-sized
/// synthetic window: both transforms, the iterations and the write-back are
/// timed, image generation is not. A repetition repeats the block until at
/// least ~10 ms have elapsed and reports the mean; the record holds the median
/// and minimum over repetitions. Runs on the calling thread only.
///
/// Throws ConfigError if `bf_counts` is not ascending, contains a negative
/// count, or repetitions < kMinRepetitions.
std::vector<BenchRecord> run_benchmark(const FseConfig& config, std::span<const int> bf_counts, int repetitions,
                                       int block = 16, int support_width = 16);

/// median(rFSE) / median(cFSE) at the given count; NaN if either is missing.
double speedup(std::span<const BenchRecord> records, int bf_count);

/// `algo,bf_count,sec_per_block_median,sec_per_block_min,repetitions`
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);

/// Two-column `bf_count seconds` data for one algorithm, gnuplot-ready.
void write_gnuplot_data(std::ostream& out, std::span<const BenchRecord> records, Algorithm algorithm);

}  // namespace fse
