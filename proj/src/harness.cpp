#include "fse/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>

#include "fse/error.hpp"

namespace fse {

LossPattern generate_pattern(int width, int height, const PatternParams& params) {
  if (width < 1 || height < 1) throw ConfigError("generate_pattern: image dimensions must be positive");
  if (params.block < 1) throw ConfigError("generate_pattern: block size must be positive");
  if (params.support_width < 0) throw ConfigError("generate_pattern: support width must be nonnegative");
  const int min_stride = params.block + 2 * params.support_width;
  if (params.stride < min_stride) {
    throw ConfigError("stride " + std::to_string(params.stride) + " is too small for isolated losses, need >= " +
                      std::to_string(min_stride) + " (block + 2*support)");
  }
  const std::uint64_t range = static_cast<std::uint64_t>(params.stride - min_stride) + 1;
  const int row_phase = params.support_width + static_cast<int>(params.seed % range);
  const int col_phase = params.support_width + static_cast<int>((params.seed / range) % range);

  LossPattern pattern;
  for (int top = row_phase; top + params.block <= height; top += params.stride) {
    for (int left = col_phase; left + params.block <= width; left += params.stride) {
      pattern.blocks.push_back({top, left, params.block, params.block});
    }
  }
  return pattern;
}

int rect_gap(const Rect& a, const Rect& b) {
  const int gap_rows = std::max({0, b.top - a.bottom(), a.top - b.bottom()});
  const int gap_cols = std::max({0, b.left - a.right(), a.left - b.right()});
  return std::max(gap_rows, gap_cols);
}

bool pattern_is_valid(const LossPattern& pattern, int width, int height, int support_width) {
  const auto& b = pattern.blocks;
  for (const Rect& r : b) {
    if (r.height < 1 || r.width < 1 || r.top < 0 || r.left < 0 || r.bottom() > height || r.right() > width) {
      return false;
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (rect_gap(b[i], b[j]) < support_width) return false;
    }
  }
  return true;
}

Image apply_damage(const Image& image, const LossPattern& pattern) {
  Image out = image;
  for (const Rect& r : pattern.blocks) {
    for (int y = r.top; y < r.bottom(); ++y) {
      for (int x = r.left; x < r.right(); ++x) out.at(y, x) = 0;
    }
  }
  return out;
}

namespace {

BlockOutcome conceal_block(const Image& image, const Rect& block, const FseConfig& config, int support_width,
                           Image& output) {
  const auto start = std::chrono::steady_clock::now();
  const Dims fft = config.fft;
  const int top0 = block.top + block.height / 2 - fft.rows / 2;
  const int left0 = block.left + block.width / 2 - fft.cols / 2;
  const Rect loss{block.top - top0, block.left - left0, block.height, block.width};
  const Rect inside{-top0, -left0, image.height, image.width};
  const AreaMask mask = build_mask(fft, loss, support_width, inside);

  SpatialGrid signal(fft);
  for (int m = 0; m < fft.rows; ++m) {
    for (int n = 0; n < fft.cols; ++n) {
      if (mask(m, n) == Area::Support) signal(m, n) = image.at(top0 + m, left0 + n);
    }
  }
  const ExtrapolationResult result = extrapolate(signal, mask, config);
  for (int y = block.top; y < block.bottom(); ++y) {
    for (int x = block.left; x < block.right(); ++x) {
      output.at(y, x) = to_pixel(result.reconstructed(y - top0, x - left0).real());
    }
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {result.selected_basis_functions, elapsed.count()};
}

}  // namespace

ConcealResult conceal(const Image& image, const LossPattern& pattern, const FseConfig& config,
                      const ConcealOptions& options) {
  config.validate();
  if (!pattern_is_valid(pattern, image.width, image.height, options.support_width)) {
    throw ConfigError("loss pattern leaves the image or blocks are closer than the support width");
  }
  for (const Rect& r : pattern.blocks) {
    if (r.height + 2 * options.support_width > config.fft.rows || r.width + 2 * options.support_width > config.fft.cols) {
      throw ConfigError("block plus support ring does not fit in the " + std::to_string(config.fft.rows) + "x" +
                        std::to_string(config.fft.cols) + " FFT window");
    }
  }

  ConcealResult out{image, std::vector<BlockOutcome>(pattern.blocks.size())};
  const std::size_t count = pattern.blocks.size();
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1,
                                                      std::max<std::size_t>(count, 1));
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out.blocks[i] = conceal_block(image, pattern.blocks[i], config, options.support_width, out.image);
    }
  };

  if (workers == 1) {
    run_range(0, count);
    return out;
  }
  // Blocks write disjoint pixels, so workers need no synchronization.
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        run_range(std::min(count, t * chunk), std::min(count, (t + 1) * chunk));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double psnr(const Image& original, const Image& reconstructed, const LossPattern& pattern) {
  if (original.width != reconstructed.width || original.height != reconstructed.height) {
    throw ConfigError("psnr: image dimensions differ");
  }
  double sse = 0.0;
  std::size_t samples = 0;
  for (const Rect& r : pattern.blocks) {
    for (int y = r.top; y < r.bottom(); ++y) {
      for (int x = r.left; x < r.right(); ++x) {
        const double d = static_cast<double>(original.at(y, x)) - reconstructed.at(y, x);
        sse += d * d;
        ++samples;
      }
    }
  }
  if (samples == 0) throw ConfigError("psnr: pattern contains no loss samples");
  if (sse == 0.0) return kPerfectPsnr;
  const double mse = sse / static_cast<double>(samples);
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

EvalReport evaluate(const Image& original, const ConcealResult& concealed, const LossPattern& pattern,
                    const FseConfig& config) {
  EvalReport report;
  report.algorithm = config.algorithm;
  double total_seconds = 0.0;
  int max_tally = 0;
  for (std::size_t i = 0; i < pattern.blocks.size(); ++i) {
    const BlockOutcome& b = concealed.blocks.at(i);
    const LossPattern single{{pattern.blocks[i]}};
    report.blocks.push_back(
        {static_cast<int>(i), b.selected_basis_functions, psnr(original, concealed.image, single), b.seconds});
    total_seconds += b.seconds;
    max_tally = std::max(max_tally, b.selected_basis_functions);
  }
  report.bf_count = config.basis_functions.value_or(max_tally);
  report.pooled_psnr_db = psnr(original, concealed.image, pattern);
  report.mean_seconds = pattern.blocks.empty() ? 0.0 : total_seconds / static_cast<double>(pattern.blocks.size());
  return report;
}

std::vector<EvalReport> run_sweep(const Image& original, const LossPattern& pattern, const FseConfig& base,
                                  std::span<const int> bf_counts, std::span<const Algorithm> algorithms,
                                  const ConcealOptions& options) {
  const Image damaged = apply_damage(original, pattern);
  std::vector<EvalReport> reports;
  for (Algorithm algo : algorithms) {
    for (int bf : bf_counts) {
      FseConfig cfg = base;
      cfg.algorithm = algo;
      cfg.basis_functions = bf;
      const ConcealResult concealed = conceal(damaged, pattern, cfg, options);
      reports.push_back(evaluate(original, concealed, pattern, cfg));
    }
  }
  return reports;
}

namespace {

std::string format_db(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::string format_seconds(double v, bool include) {
  if (!include) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const EvalReport> reports, bool include_timing) {
  out << "algo,bf_count,block_index,psnr_db,sec_per_block\n";
  for (const EvalReport& r : reports) {
    const std::string_view algo = to_string(r.algorithm);
    for (const BlockReport& b : r.blocks) {
      out << algo << ',' << b.selected_basis_functions << ',' << b.index << ',' << format_db(b.psnr_db) << ','
          << format_seconds(b.seconds, include_timing) << '\n';
    }
    out << algo << ',' << r.bf_count << ",pooled," << format_db(r.pooled_psnr_db) << ','
        << format_seconds(r.mean_seconds, include_timing) << '\n';
  }
}

}  // namespace fse
