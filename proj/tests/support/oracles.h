#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They deliberately avoid the closed forms implemented in the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <span>

namespace mutclock::oracle {

inline auto ball_volume(int d) -> double {
  // gamma_d by the recursion gamma_d = 2 pi / d * gamma_{d-2}.
  auto v = d % 2 == 0 ? 1.0 : 2.0;
  for (auto j = d % 2 == 0 ? 2 : 3; j <= d; j += 2) { v *= 2.0 * std::numbers::pi / j; }
  return v;
}

// v_k(t) = int_0^t mu_k v_{k-1}(r) gamma_d (alpha (t - r))^d dr with v_0 = N,
// by nested Gauss-Kronrod quadrature.  The integrands are polynomials of low
// degree, so two levels of bisection already reach rounding accuracy.
inline auto v_recursive(int k, double t, int d, double n, double alpha, std::span<const double> mu) -> double {
  if (k == 0) { return n; }
  auto gd = ball_volume(d);
  auto mu_k = mu[static_cast<std::size_t>(k - 1)];
  auto integrand = [&](double r) {
    return mu_k * v_recursive(k - 1, r, d, n, alpha, mu) * gd * std::pow(alpha * (t - r), d);
  };
  if (t <= 0.0) { return 0.0; }
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, t, 2, 1e-12);
}

// P(Exp(a) + Exp(b) <= t) by one-dimensional convolution.
inline auto two_rate_cdf(double a, double b, double t) -> double {
  auto f = [&](double s) { return a * std::exp(-a * s) * -std::expm1(-b * (t - s)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 15, 1e-14);
}

// P(Exp(a) + Exp(b) + Exp(c) <= t), nesting the two-rate convolution.
inline auto three_rate_cdf(double a, double b, double c, double t) -> double {
  auto f = [&](double s) { return a * std::exp(-a * s) * two_rate_cdf(b, c, t - s); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 15, 1e-13);
}

// Erlang(k, 1) CDF from its series.
inline auto erlang_cdf(int k, double t) -> double {
  auto term = 1.0;
  auto sum = 1.0;
  for (auto j = 1; j < k; ++j) {
    term *= t / j;
    sum += term;
  }
  return 1.0 - std::exp(-t) * sum;
}

}  // namespace mutclock::oracle
