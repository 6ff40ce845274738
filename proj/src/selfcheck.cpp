#include "fse/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fse/oracle.hpp"
#include "fse/weighting.hpp"

namespace fse {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int between(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

struct Tally {
  bool ok = true;
  double worst = 0.0;
  std::string first_failure;

  void record(bool pass, double value, const std::string& what) {
    worst = std::max(worst, value);
    if (!pass && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

// sum w * phi_(u,v)^2, the overlap of an atom with its conjugate partner.
Complex pair_overlap(const WeightMatrix& w, Frequency f) {
  const Dims d = w.dims();
  Complex acc = 0.0;
  for (int m = 0; m < d.rows; ++m) {
    for (int n = 0; n < d.cols; ++n) {
      const double phase = 4.0 * std::numbers::pi *
                           (static_cast<double>((f.u * m) % d.rows) / d.rows +
                            static_cast<double>((f.v * n) % d.cols) / d.cols);
      acc += w(m, n) * std::polar(1.0, phase);
    }
  }
  return acc;
}

void compare_traces(const ExtrapolationResult& fast, const ExtrapolationResult& ref, const AreaMask& mask,
                    const std::string& tag, Tally& sequence, Tally& coefficients, Tally& samples) {
  const bool same_length = fast.trace.size() == ref.trace.size();
  sequence.record(same_length, 0.0, tag + ": trace lengths differ");
  const std::size_t n = std::min(fast.trace.size(), ref.trace.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = fast.trace[i];
    const auto& b = ref.trace[i];
    if (!(a.selected == b.selected)) {
      sequence.record(false, 0.0, tag + ": selection differs at iteration " + std::to_string(i + 1));
      return;
    }
    const double scale = std::abs(b.coefficient);
    const double rel = scale > 0.0 ? std::abs(a.coefficient - b.coefficient) / scale : std::abs(a.coefficient);
    coefficients.record(rel <= 1e-9, rel, tag + ": coefficient mismatch at iteration " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < mask.dims().size(); ++i) {
    if (mask[i] != Area::Loss) continue;
    const double diff = std::abs(fast.reconstructed[i].real() - ref.reconstructed[i].real());
    samples.record(diff <= 1e-8, diff, tag + ": loss sample mismatch");
  }
}

// Checks the per-iteration decrease of sum w |r|^2 in `trace` against the
// closed form, and (if `incremental` is given) that the incrementally tracked
// energies agree with the directly computed ones.
void check_energy(const ExtrapolationResult& direct, const ExtrapolationResult* incremental, const WeightMatrix& w,
                  double gamma, bool pair_mode, const std::string& tag, Tally& tally) {
  double w00 = 0.0;
  for (double v : w.values()) w00 += v;
  double prev = direct.initial_energy;
  for (std::size_t i = 0; i < direct.trace.size(); ++i) {
    const IterationRecord& rec = direct.trace[i];
    const Complex p = rec.coefficient / gamma;
    double expected = prev - gamma * (2.0 - gamma) * std::norm(p) * w00;
    if (pair_mode && !rec.self_conjugate) {
      expected = prev - 2.0 * gamma * (2.0 - gamma) * std::norm(p) * w00 +
                 2.0 * (rec.coefficient * rec.coefficient * pair_overlap(w, rec.selected)).real();
    }
    const double rel = prev > 0.0 ? std::abs(rec.residual_energy - expected) / prev : 0.0;
    tally.record(rel <= 1e-9, rel, tag + ": energy identity violated at iteration " + std::to_string(i + 1));
    if (incremental && i < incremental->trace.size()) {
      const double drift = prev > 0.0 ? std::abs(incremental->trace[i].residual_energy - rec.residual_energy) / prev : 0.0;
      tally.record(drift <= 1e-9, drift, tag + ": tracked energy drifts at iteration " + std::to_string(i + 1));
    }
    prev = rec.residual_energy;
  }
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, int max_side, double max_loss, int max_iterations) {
  Rng rng(seed);
  const int rows = rng.between(8, max_side);
  const int cols = rng.between(8, max_side);
  const Dims dims{rows, cols};

  RandomInstance inst{SpatialGrid(dims), AreaMask(dims), FseConfig{}};
  inst.config.fft = dims;
  inst.config.rho_hat = 0.8;
  inst.config.gamma = 0.2;
  inst.config.iterations = rng.between(1, max_iterations);

  for (std::size_t i = 0; i < dims.size(); ++i) inst.signal[i] = 255.0 * rng.uniform();
  for (int m = 0; m < rows; ++m) {
    for (int n = 0; n < cols; ++n) inst.mask.set(m, n, Area::Support);
  }
  const std::size_t budget = static_cast<std::size_t>(max_loss * static_cast<double>(dims.size()));
  if (rng.uniform() < 0.5) {
    // One rectangle, side lengths chosen to stay within the loss budget.
    const int h = rng.between(1, std::max(1, rows / 2));
    const int wmax = std::max<int>(1, std::min<int>(cols / 2, static_cast<int>(budget / h)));
    const int wd = rng.between(1, wmax);
    const int top = rng.between(0, rows - h);
    const int left = rng.between(0, cols - wd);
    for (int m = top; m < top + h; ++m) {
      for (int n = left; n < left + wd; ++n) inst.mask.set(m, n, Area::Loss);
    }
  } else {
    const std::size_t target = static_cast<std::size_t>(rng.uniform() * static_cast<double>(budget)) + 1;
    std::size_t placed = 0;
    while (placed < target) {
      const int m = rng.between(0, rows - 1);
      const int n = rng.between(0, cols - 1);
      if (inst.mask(m, n) == Area::Loss) continue;
      inst.mask.set(m, n, Area::Loss);
      ++placed;
    }
  }
  // Loss samples carry garbage that must not leak into the result.
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (inst.mask[i] == Area::Loss) inst.signal[i] = 0.0;
  }
  return inst;
}

std::vector<CheckOutcome> run_selfcheck(std::uint64_t seed, int instances) {
  Tally seq_c, coef_c, loss_c, seq_r, coef_r, loss_r, energy_c, energy_r, real_r;
  for (int i = 0; i < instances; ++i) {
    const RandomInstance inst = random_instance(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    const std::string tag = "instance " + std::to_string(i);
    const WeightMatrix w = build_weight(inst.mask, inst.config.rho_hat);

    const ExtrapolationResult fc = extrapolate_cfse(inst.signal, inst.mask, inst.config);
    const ExtrapolationResult oc = oracle_extrapolate(inst.signal, inst.mask, inst.config, false);
    compare_traces(fc, oc, inst.mask, tag, seq_c, coef_c, loss_c);
    check_energy(oc, &fc, w, inst.config.gamma, false, tag, energy_c);

    const ExtrapolationResult fr = extrapolate_rfse(inst.signal, inst.mask, inst.config);
    const ExtrapolationResult orr = oracle_extrapolate(inst.signal, inst.mask, inst.config, true);
    compare_traces(fr, orr, inst.mask, tag, seq_r, coef_r, loss_r);
    check_energy(orr, &fr, w, inst.config.gamma, true, tag, energy_r);

    double max_re = 0.0;
    double max_im = 0.0;
    for (const Complex& z : fr.model.samples()) {
      max_re = std::max(max_re, std::abs(z.real()));
      max_im = std::max(max_im, std::abs(z.imag()));
    }
    const double ratio = max_re > 0.0 ? max_im / max_re : max_im;
    real_r.record(ratio <= 1e-8, ratio, tag + ": rFSE model is not real");
  }

  auto outcome = [](std::string name, const Tally& t) {
    return CheckOutcome{std::move(name), t.ok, t.worst, t.first_failure};
  };
  return {
      outcome("cfse selection sequence matches oracle", seq_c),
      outcome("cfse coefficients within 1e-9 relative", coef_c),
      outcome("cfse loss samples within 1e-8 absolute", loss_c),
      outcome("cfse energy identity within 1e-9", energy_c),
      outcome("rfse selection sequence matches pair oracle", seq_r),
      outcome("rfse coefficients within 1e-9 relative", coef_r),
      outcome("rfse loss samples within 1e-8 absolute", loss_r),
      outcome("rfse pair energy identity within 1e-9", energy_r),
      outcome("rfse model imaginary part within 1e-8", real_r),
  };
}

}  // namespace fse
