#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "fse/extrapolation.hpp"
#include "fse/image.hpp"
#include "fse/weighting.hpp"

namespace fse {

/// Loss rectangles in image coordinates (top, left, height, width).
struct LossPattern {
  std::vector<Rect> blocks;
};

struct PatternParams {
  int block = 16;
  int support_width = 16;
  int stride = 64;
  std::uint64_t seed = 0;
};

/// Regular grid of isolated square losses.
///
/// Blocks sit at phase + i*stride on both axes. The phase starts at the support
/// width (so the first ring lies inside the image) and the seed shifts it
/// within [support, stride - block - support]: row phase by seed mod (range+1),
/// column phase by (seed / (range+1)) mod (range+1). Seed 0 gives
/// (support, support). Throws ConfigError if stride < block + 2*support.
LossPattern generate_pattern(int width, int height, const PatternParams& params);

/// Chebyshev gap between two rectangles (0 when they touch or overlap).
int rect_gap(const Rect& a, const Rect& b);

/// True if every block is inside the image and each pair is at least
/// `support_width` samples apart.
bool pattern_is_valid(const LossPattern& pattern, int width, int height, int support_width);

/// Copy of `image` with every loss sample set to zero.
Image apply_damage(const Image& image, const LossPattern& pattern);

struct ConcealOptions {
  int support_width = 16;
  int threads = 1;
};

struct BlockOutcome {
  int selected_basis_functions = 0;
  double seconds = 0.0;
};

struct ConcealResult {
  Image image;
  std::vector<BlockOutcome> blocks;  // same order as pattern.blocks
};

/// Conceals every block of `pattern` independently.
///
/// Each block gets an FFT-sized window centred on it. Inside the window the
/// block is Loss, the surrounding ring is Support and the rest is Padding;
/// ring samples outside the image are Padding too. Loss samples of the input
/// are never read. Re{g} is clamped and rounded into the loss samples; all
/// other pixels are copied unchanged. The result does not depend on the
/// number of threads.
ConcealResult conceal(const Image& image, const LossPattern& pattern, const FseConfig& config,
                      const ConcealOptions& options = {});

/// +infinity when the two images agree on every loss sample.
inline constexpr double kPerfectPsnr = std::numeric_limits<double>::infinity();

/// 10 log10(255^2 / MSE), MSE pooled over the samples inside the given
/// rectangles. Throws ConfigError on size mismatch or when there are no loss
/// samples.
double psnr(const Image& original, const Image& reconstructed, const LossPattern& pattern);

struct BlockReport {
  int index = 0;
  int selected_basis_functions = 0;
  double psnr_db = 0.0;
  double seconds = 0.0;
};

struct EvalReport {
  Algorithm algorithm = Algorithm::cfse;
  /// Requested basis-function budget, or the largest per-block tally when
  /// running on a plain iteration count.
  int bf_count = 0;
  std::vector<BlockReport> blocks;
  double pooled_psnr_db = 0.0;
  double mean_seconds = 0.0;
};

EvalReport evaluate(const Image& original, const ConcealResult& concealed, const LossPattern& pattern,
                    const FseConfig& config);

/// Damages `original` with the pattern, conceals it at every basis-function
/// budget for each algorithm (algorithm-major order) and scores the results.
std::vector<EvalReport> run_sweep(const Image& original, const LossPattern& pattern, const FseConfig& base,
                                  std::span<const int> bf_counts, std::span<const Algorithm> algorithms,
                                  const ConcealOptions& options = {});

/// CSV with header `algo,bf_count,block_index,psnr_db,sec_per_block`, one row
/// per block followed by a `pooled` row per report. With `include_timing`
/// false the timing column is left empty so that reports are reproducible.
void write_report_csv(std::ostream& out, std::span<const EvalReport> reports, bool include_timing);

}  // namespace fse
