#include "nomahet/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nomahet {

namespace {

// Iteration budget for the series and continued fraction: both need on the
// order of sqrt(a) terms when x is near a, so the cap scales with a.
int gamma_iter_cap(double a) {
  return 500 + static_cast<int>(4.0 * std::sqrt(a));
}

// Series representation of P(a, x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  const int cap = gamma_iter_cap(a);
  for (int n = 0; n < cap; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x) = 1 - P(a, x), for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  const int cap = gamma_iter_cap(a);
  for (int i = 1; i <= cap; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw std::invalid_argument("reg_lower_gamma: need a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double ncx2_cdf(double x, double lambda) {
  if (x <= 0.0) return 0.0;
  if (lambda < 0.0) throw std::invalid_argument("ncx2_cdf: lambda < 0");
  const double y = 0.5 * x;
  if (lambda == 0.0) {
    // Central chi-square with 2 dof.
    return -std::expm1(-y);
  }

  // Poisson mixture sum_j pois(j; lambda/2) * P(j + 1, x/2), expanded
  // outward from the Poisson mode so large noncentralities stay stable.
  // The Erlang terms P(j + 1, y) step via P(j + 1, y) = P(j, y) - pmf(j; y).
  const double half_l = 0.5 * lambda;
  const int mode = static_cast<int>(half_l);
  const double window =
      10.0 * std::sqrt(half_l) + 20.0;  // covers the Poisson mass
  const int j_lo = std::max(0, mode - static_cast<int>(window));
  const int j_hi = mode + static_cast<int>(window) + 1;

  auto log_pmf = [](double mean_v, int j) {
    return -mean_v + j * std::log(mean_v) - std::lgamma(j + 1.0);
  };

  double acc = 0.0;
  double w = std::exp(log_pmf(half_l, j_lo));       // Poisson weight at j
  double erl = reg_lower_gamma(j_lo + 1.0, y);      // P(j + 1, y)
  double pmf_y = std::exp(log_pmf(y, j_lo + 1));    // pmf(j + 1; y)
  for (int j = j_lo; j <= j_hi; ++j) {
    acc += w * erl;
    // advance to j + 1
    w *= half_l / (j + 1.0);
    erl -= pmf_y;
    if (erl < 0.0) erl = 0.0;
    pmf_y *= y / (j + 2.0);
  }
  return std::clamp(acc, 0.0, 1.0);
}

double ncx2_quantile(double p, double lambda) {
  if (p <= 0.0 || p >= 1.0) {
    throw std::invalid_argument("ncx2_quantile: p must be in (0, 1)");
  }
  if (lambda == 0.0) return -2.0 * std::log1p(-p);

  double lo = 0.0;
  double hi = lambda + 2.0 + 20.0 * std::sqrt(2.0 * (2.0 + 2.0 * lambda));
  while (ncx2_cdf(hi, lambda) < p) hi *= 2.0;
  const double width_target = 1e-9 * std::max(1.0, hi);
  while (hi - lo > width_target) {
    const double mid = 0.5 * (lo + hi);
    if (ncx2_cdf(mid, lambda) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nomahet
