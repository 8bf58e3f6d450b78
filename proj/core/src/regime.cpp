#include "mutclock/regime.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mutclock {

namespace {

constexpr auto k_equal_rate_tolerance = 1e-12;

auto symbol(Order o) -> const char* {
  switch (o) {
    case Order::much_less: return "<<";
    case Order::comparable: return "~";
    case Order::much_greater: return ">>";
  }
  return "?";
}

// Factor by which `ratio` clears the nearest threshold of its band.
auto clearance(double ratio, double threshold) -> double {
  auto lr = std::abs(std::log(ratio));
  auto lt = std::log(threshold);
  return std::exp(lr > lt ? lr - lt : lt - lr);
}

struct Walker {
  const std::map<std::string, double>& ratios;
  double threshold;
  Regime_report& report;

  auto decide(const std::string& name) -> Order {
    auto r = ratios.at(name);
    auto o = compare(r, threshold);
    report.path.push_back(name + " " + symbol(o) + " 1");
    report.margin = std::min(report.margin, clearance(r, threshold));
    return o;
  }
};

auto classify_k2(Walker& w) -> Case_id {
  switch (w.decide("r_fix1")) {
    case Order::much_less:  // mu_1 << alpha / N^{(d+1)/d}
      switch (w.decide("r_mu")) {
        case Order::much_greater: return Case_id::k2_case1;  // mu_2 >> mu_1
        case Order::much_less: return Case_id::k2_case2;     // mu_2 << mu_1
        case Order::comparable: return Case_id::k2_case3;
      }
      break;
    case Order::much_greater:  // mu_1 >> alpha / N^{(d+1)/d}
      switch (w.decide("r_beta")) {
        case Order::much_greater: return Case_id::k2_case4;  // mu_2 >> (N mu_1)^{d+1} / alpha^d
        case Order::comparable: return Case_id::k2_case5;
        case Order::much_less:
          switch (w.decide("r_sat")) {
            case Order::much_greater: return Case_id::k2_case6;  // mu_2 >> (mu_1 alpha^d)^{1/(d+1)} / N
            case Order::comparable: return Case_id::k2_case7;
            case Order::much_less: return Case_id::k2_case8;
          }
      }
      break;
    case Order::comparable:  // mu_1 ~ alpha / N^{(d+1)/d}
      switch (w.decide("r_beta")) {
        case Order::much_greater: return Case_id::k2_case9;
        case Order::much_less: return Case_id::k2_case10;
        case Order::comparable: return Case_id::k2_case11;
      }
      break;
  }
  throw std::logic_error("classify: unreachable");
}

}  // namespace

auto compare(double ratio, double threshold) -> Order {
  if (ratio < 1.0 / threshold) { return Order::much_less; }
  if (ratio > threshold) { return Order::much_greater; }
  return Order::comparable;
}

auto to_string(Order o) -> std::string { return symbol(o); }

auto diagnostics(const Model_params& params) -> std::map<std::string, double> {
  params.validate();
  auto n = params.volume;
  auto d = static_cast<double>(params.d);
  auto a_d = std::pow(params.alpha, d);
  auto out = std::map<std::string, double>{};
  auto fix_factor = std::pow(n, (d + 1.0) / d) / params.alpha;
  for (auto i = std::size_t{0}; i != params.mu.size(); ++i) {
    out["r_fix" + std::to_string(i + 1)] = params.mu[i] * fix_factor;
  }
  if (params.k() >= 2) {
    auto mu1 = params.mu[0];
    auto mu2 = params.mu[1];
    out["r_beta"] = mu2 * a_d / std::pow(n * mu1, d + 1.0);
    out["r_sat"] = n * mu2 / std::pow(mu1 * a_d, 1.0 / (d + 1.0));
  }
  if (params.k() == 2) { out["r_mu"] = params.mu[1] / params.mu[0]; }
  return out;
}

auto classify(const Model_params& params, double threshold, const Z_law_options& z_options) -> Regime_report {
  if (!(threshold > 1.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("classify: threshold must be > 1");
  }
  auto report = Regime_report{};
  report.ratios = diagnostics(params);
  report.threshold = threshold;
  report.margin = std::numeric_limits<double>::infinity();
  auto walker = Walker{report.ratios, threshold, report};

  auto k = params.k();
  if (k == 1) {
    report.case_id = Case_id::single_stage;
  } else if (k == 2) {
    report.case_id = classify_k2(walker);
  } else {
    auto [lo, hi] = std::ranges::minmax(params.mu);
    if (hi - lo > k_equal_rate_tolerance * hi) {
      report.reason = "k >= 3 requires equal mutation rates";
      report.margin = 0.0;
      return report;
    }
    switch (walker.decide("r_fix1")) {
      case Order::much_less: report.case_id = Case_id::kk_case1; break;
      case Order::much_greater: report.case_id = Case_id::kk_case2; break;
      case Order::comparable: report.case_id = Case_id::kk_case3; break;
    }
  }
  report.law = law_for_case(*report.case_id, params, z_options);
  report.timescale = report.law->time_scale;
  return report;
}

auto predicted_timescale(const Regime_report& report) -> double {
  if (!report.classified()) { throw std::invalid_argument("predicted_timescale: report is unclassified"); }
  return report.timescale;
}

}  // namespace mutclock
