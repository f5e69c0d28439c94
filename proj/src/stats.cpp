#include "qelidar/stats.hpp"

#include <cmath>

#include "qelidar/errors.hpp"

namespace qel {

double pairwise_sum(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

SampleStats summarize(std::span<const double> xs) {
  SampleStats s;
  s.n = xs.size();
  if (s.n == 0) return s;
  s.mean = pairwise_sum(xs) / static_cast<double>(s.n);
  if (s.n < 2) return s;
  std::vector<double> sq(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - s.mean;
    sq[i] = d * d;
  }
  s.std_dev =
      std::sqrt(pairwise_sum(sq) / static_cast<double>(s.n - 1));
  s.se_mean = s.std_dev / std::sqrt(static_cast<double>(s.n));
  return s;
}

double chi_square_quantile(double dof, double z_score) {
  // Wilson-Hilferty: chi2_p(k) ~ k (1 - 2/(9k) + z sqrt(2/(9k)))^3
  const double a = 2.0 / (9.0 * dof);
  const double t = 1.0 - a + z_score * std::sqrt(a);
  return dof * t * t * t;
}

RmsStats rms_stats(std::span<const double> errors) {
  RmsStats r;
  r.n = errors.size();
  if (r.n == 0) return r;
  std::vector<double> sq(errors.size());
  for (size_t i = 0; i < errors.size(); ++i) sq[i] = errors[i] * errors[i];
  const double mse = pairwise_sum(sq) / static_cast<double>(r.n);
  r.rms = std::sqrt(mse);
  const double n = static_cast<double>(r.n);
  r.se = r.rms / std::sqrt(2.0 * n);
  // n * mse / sigma^2 ~ chi-square(n)
  const double q_hi = chi_square_quantile(n, 4.0);
  const double q_lo = chi_square_quantile(n, -4.0);
  r.ci_lo = r.rms * std::sqrt(n / q_hi);
  r.ci_hi = r.rms * std::sqrt(n / q_lo);
  return r;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::invalid_params, "fit_line: need >= 2 matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  for (size_t i = 0; i < x.size(); ++i) {
    f.max_residual = std::max(
        f.max_residual, std::abs(y[i] - f.slope * x[i] - f.intercept));
  }
  return f;
}

}  // namespace qel
