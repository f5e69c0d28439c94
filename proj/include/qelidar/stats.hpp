#pragma once

// Campaign statistics. Reductions use a fixed-shape pairwise tree so totals
// are bit-identical for any worker count; rms confidence intervals use the
// chi-square law of the error variance at the 4-sigma (99.994%) convention
// via the Wilson-Hilferty quantile approximation.

#include <cstdint>
#include <span>
#include <vector>

namespace qel {

double pairwise_sum(std::span<const double> xs);

struct SampleStats {
  uint64_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double se_mean = 0.0;
};

SampleStats summarize(std::span<const double> xs);

struct RmsStats {
  uint64_t n = 0;
  double rms = 0.0;
  double se = 0.0;    // rms / sqrt(2n)
  double ci_lo = 0.0; // 4-sigma chi-square interval
  double ci_hi = 0.0;
};

// root-mean-square of already-centered errors
RmsStats rms_stats(std::span<const double> errors);

double chi_square_quantile(double dof, double z_score);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace qel
