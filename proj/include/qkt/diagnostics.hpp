// diagnostics.hpp - OTOC, FOTOC, OE time series and growth-rate extraction
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qkt/entropy.hpp"
#include "qkt/kicked_top.hpp"
#include "qkt/types.hpp"

namespace qkt {

struct SeriesMeta {
  double j = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  int ensemble = 1;
  std::uint64_t seed = 0;
  std::string quantity;
};

struct TimeSeries {
  std::vector<int> steps;
  std::vector<double> values;
  SeriesMeta meta;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  int window_first = 0;
  int window_last = 0;
  double residual = 0.0;  // RMS of fit residuals
};

namespace detail {
inline TimeSeries make_series(int n, const std::string& quantity, double j) {
  TimeSeries ts;
  ts.steps.resize(static_cast<std::size_t>(n) + 1);
  std::iota(ts.steps.begin(), ts.steps.end(), 0);
  ts.values.reserve(static_cast<std::size_t>(n) + 1);
  ts.meta.quantity = quantity;
  ts.meta.j = j;
  return ts;
}
}  // namespace detail

// C(t) = -1/2 <psi| [A(t), A(0)]^2 |psi> with A(t) = U^t-dag A U^t. The
// commutator of Hermitian operators is anti-Hermitian, so
// -<B^2> = ||B psi||^2 and the values are real and non-negative by
// construction. A(t) is streamed; only the current operator is kept.
inline TimeSeries otoc(const StateVector& psi, const ComplexMatrix& a,
                       const ComplexMatrix& u, int n) {
  if (n < 1) throw DomainError("otoc: needs at least one step");
  if (u.rows() != u.cols() || a.rows() != a.cols() || u.rows() != a.rows() ||
      psi.size() != u.rows())
    throw DimensionMismatch("otoc: dimensions differ");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw NotHermitian("otoc: A must be Hermitian");

  TimeSeries ts = detail::make_series(n, "otoc", 0.5 * (u.rows() - 1));
  const StateVector a_psi = a * psi;
  ComplexMatrix at = a;
  for (int t = 0; t <= n; ++t) {
    const StateVector w = at * a_psi - a * (at * psi);
    ts.values.push_back(0.5 * w.squaredNorm());
    if (t < n) at = detail::heisenberg_step(u, at);
  }
  return ts;
}

// FOTOC(t) = 1 - |<psi| U^-t W U^t |psi>|^2 with a caller-supplied
// perturbation operator W (lets ensembles share one W).
inline TimeSeries fotoc_with_perturbation(const StateVector& psi,
                                          const ComplexMatrix& w,
                                          const ComplexMatrix& u, int n) {
  if (n < 0) throw DomainError("fotoc: step count must be non-negative");
  if (u.rows() != u.cols() || w.rows() != u.rows() || w.cols() != u.cols() ||
      psi.size() != u.rows())
    throw DimensionMismatch("fotoc: dimensions differ");
  TimeSeries ts = detail::make_series(n, "fotoc", 0.5 * (u.rows() - 1));
  StateVector cur = psi;
  for (int t = 0; t <= n; ++t) {
    const Complex amp = cur.dot(w * cur);
    ts.values.push_back(1.0 - std::min(1.0, std::norm(amp)));
    if (t < n) cur = detail::advance_state(u, cur);
  }
  return ts;
}

// FOTOC with the standard perturbation: a small delta rotation about the
// x axis.
inline TimeSeries fotoc(const StateVector& psi, double delta,
                        const ComplexMatrix& u, int n) {
  if (!std::isfinite(delta)) throw DomainError("fotoc: delta must be finite");
  if (u.rows() != u.cols() || psi.size() != u.rows())
    throw DimensionMismatch("fotoc: dimensions differ");
  const SpinSpace space = SpinSpace::from_dim(static_cast<int>(u.rows()));
  return fotoc_with_perturbation(psi, rotation(space, Axis::x, delta), u, n);
}

// OE of U^t |psi> under a fixed coarse-graining.
inline TimeSeries oe_series(const StateVector& psi, const CoarseGraining& cg,
                            const ComplexMatrix& u, int n) {
  if (n < 0) throw DomainError("oe_series: step count must be non-negative");
  if (u.rows() != u.cols() || psi.size() != u.rows() || cg.dim() != u.rows())
    throw DimensionMismatch("oe_series: dimensions differ");
  TimeSeries ts = detail::make_series(n, "oe", 0.5 * (u.rows() - 1));
  StateVector cur = psi;
  for (int t = 0; t <= n; ++t) {
    ts.values.push_back(observational_entropy(cur, cg).total);
    if (t < n) cur = detail::advance_state(u, cur);
  }
  return ts;
}

// Ordinary least squares y ~ intercept + slope * x.
inline FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DimensionMismatch("linear_fit: x and y must have equal length");
  const std::size_t n = x.size();
  if (n < 2) throw WindowError("linear_fit: needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw WindowError("linear_fit: degenerate abscissa");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.window_first = 0;
  fit.window_last = static_cast<int>(n) - 1;
  return fit;
}

// Least-squares line over (t, log(max_value - values[t])) for t in
// [first, last]. A negative slope is an exponential approach to max_value.
inline FitResult fit_exponential_approach(const TimeSeries& series,
                                          double max_value, int first, int last) {
  const int n = static_cast<int>(series.values.size());
  if (first < 0 || last >= n || first >= last)
    throw WindowError("fit_exponential_approach: window outside series");
  std::vector<double> xs, ys;
  xs.reserve(static_cast<std::size_t>(last - first) + 1);
  ys.reserve(xs.capacity());
  for (int t = first; t <= last; ++t) {
    const double gap = max_value - series.values[static_cast<std::size_t>(t)];
    if (gap <= 0.0)
      throw DomainError("fit_exponential_approach: max_value must exceed all window values");
    xs.push_back(static_cast<double>(series.steps[static_cast<std::size_t>(t)]));
    ys.push_back(std::log(gap));
  }
  FitResult fit = linear_fit(xs, ys);
  fit.window_first = first;
  fit.window_last = last;
  return fit;
}

// Initial OE growth rate: least-squares slope of the series through the
// third time step (steps 0..3). The first kick leaves the J_z block
// probabilities untouched, so a single-step difference would miss most of
// the early growth; the short fit captures it.
inline double lambda_oe(const TimeSeries& series) {
  if (series.values.size() < 4)
    throw WindowError("lambda_oe: series must reach step 3");
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y(series.values.begin(), series.values.begin() + 4);
  return linear_fit(x, y).slope;
}

// OTOC growth rate from C(t) ~ e^{2 lambda t}, taken over the first step
// pair with nonzero values (C(0) vanishes identically).
inline double lambda_q(const TimeSeries& series) {
  if (series.values.size() < 3)
    throw WindowError("lambda_q: series must reach step 2");
  if (series.values[1] <= 0.0 || series.values[2] <= 0.0)
    throw DomainError("lambda_q: values at steps 1 and 2 must be positive");
  return 0.5 * (std::log(series.values[2]) - std::log(series.values[1]));
}

struct TailStats {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  double max_excursion = 0.0;
};

inline TailStats fluctuation_stats(const TimeSeries& series, int tail_start) {
  const int n = static_cast<int>(series.values.size());
  if (tail_start < 0 || tail_start >= n - 1)
    throw WindowError("fluctuation_stats: tail must start before the series end");
  const std::size_t from = static_cast<std::size_t>(tail_start);
  const double count = static_cast<double>(n - tail_start);
  TailStats stats;
  for (std::size_t t = from; t < series.values.size(); ++t) stats.mean += series.values[t];
  stats.mean /= count;
  for (std::size_t t = from; t < series.values.size(); ++t) {
    const double dev = series.values[t] - stats.mean;
    stats.stddev += dev * dev;
    stats.max_excursion = std::max(stats.max_excursion, std::abs(dev));
  }
  stats.stddev = std::sqrt(stats.stddev / count);
  return stats;
}

}  // namespace qkt
