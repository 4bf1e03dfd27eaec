#include "curate/analytics/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace curate::analytics {

namespace {

// c[0] + c[1] x + ... + c[k-1] x^(k-1)
template <std::size_t K>
double poly(const double (&c)[K], double x) {
  double r = 0;
  for (std::size_t i = K; i-- > 0;) r = r * x + c[i];
  return r;
}

constexpr double g[] = {-2.273, 0.459};
constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

void check_n(int n) {
  if (n < kSwMinN || n > kSwMaxN)
    throw AnalyticsError("Shapiro-Wilk needs 3..50 samples, got " + std::to_string(n));
}

}  // namespace

std::vector<double> shapiro_wilk_coefficients(int n) {
  check_n(n);
  const int half = n / 2;
  std::vector<double> a(half);  // a[0] pairs the smallest with the largest
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    const boost::math::normal z;
    std::vector<double> m(half);
    double summ2 = 0;
    for (int i = 0; i < half; ++i) {
      m[i] = -boost::math::quantile(z, (i + 1 - 0.375) / (n + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1 / std::sqrt(double(n));
    const double a1 = poly(c1, rsn) + m[0] / ssumm2;
    int first = 1;
    double fac;
    if (n > 5) {
      const double a2 = poly(c2, rsn) + m[1] / ssumm2;
      fac = std::sqrt((summ2 - 2 * m[0] * m[0] - 2 * m[1] * m[1]) / (1 - 2 * a1 * a1 - 2 * a2 * a2));
      a[1] = a2;
      first = 2;
    } else {
      fac = std::sqrt((summ2 - 2 * m[0] * m[0]) / (1 - 2 * a1 * a1));
    }
    a[0] = a1;
    for (int i = first; i < half; ++i) a[i] = m[i] / fac;
  }
  std::vector<double> full(n, 0.0);
  for (int i = 0; i < half; ++i) {
    full[i] = -a[i];
    full[n - 1 - i] = a[i];
  }
  return full;
}

SwReport shapiro_wilk(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  check_n(n);
  std::vector<double> x(samples.begin(), samples.end());
  for (double v : x)
    if (!std::isfinite(v)) throw AnalyticsError("Shapiro-Wilk sample is not finite");
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0)) throw DegenerateError("Shapiro-Wilk: all samples are equal");

  // W is the squared correlation between the sorted data and the
  // coefficients. Computing 1 - W directly keeps precision near W = 1.
  const std::vector<double> a = shapiro_wilk_coefficients(n);
  const double lo = x.front();
  double sa = 0, sx = 0;
  for (int i = 0; i < n; ++i) {
    x[i] = (x[i] - lo) / range;
    sa += a[i];
    sx += x[i];
  }
  sa /= n;
  sx /= n;
  double ssa = 0, ssx = 0, sax = 0;
  for (int i = 0; i < n; ++i) {
    const double da = a[i] - sa, dx = x[i] - sx;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  const double root = std::sqrt(ssa * ssx);
  const double w1 = (root - sax) * (root + sax) / (ssa * ssx);

  SwReport r;
  r.df = n;
  r.w = 1 - w1;
  if (n == 3) {
    r.p = std::max(0.0, 6 / std::numbers::pi * (std::asin(std::sqrt(r.w)) - std::numbers::pi / 3));
    r.p = std::min(r.p, 1.0);
    return r;
  }
  double y = std::log(w1);
  const double ln = std::log(double(n));
  double mu, sigma;
  if (n <= 11) {
    const double gamma = poly(g, double(n));
    if (y >= gamma) {
      r.p = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    mu = poly(c3, double(n));
    sigma = std::exp(poly(c4, double(n)));
  } else {
    mu = poly(c5, ln);
    sigma = std::exp(poly(c6, ln));
  }
  r.p = boost::math::cdf(boost::math::complement(boost::math::normal(mu, sigma), y));
  return r;
}

}  // namespace curate::analytics
