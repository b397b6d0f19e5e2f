#include <doctest.h>

#include <cmath>
#include <random>

#include "camps/analysis.hpp"

using namespace camps;

namespace {

double chord(int l, int length) {
  return std::log((2.0 * length / M_PI) * std::sin(M_PI * double(l) / length));
}

}  // namespace

TEST_CASE("cut-scan fit is exact on its own model") {
  const int length = 64;
  const double c = 1.0, gamma = 0.5;
  std::vector<std::pair<int, double>> points;
  for (int l = 1; l < length; ++l)
    points.emplace_back(l, (c / 6.0) * chord(l, length) + gamma);
  auto fit = fit_cut_scan(points, length);
  CHECK(fit.central_charge == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fit.slope_err < 1e-10);
  CHECK(fit.form == "cut-scan");
}

TEST_CASE("half-chain fit is exact on its own model") {
  std::vector<std::pair<int, double>> points;
  for (int length : {16, 32, 64, 128})
    points.emplace_back(length, (0.7 / 6.0) * std::log(length / M_PI) + 0.3);
  auto fit = fit_half_chain(points);
  CHECK(fit.central_charge == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("fit errors shrink like one over sqrt of points") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 0.05);
  auto fit_with_n = [&](int n) {
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = double(i) / n;
      y[i] = 2.0 * x[i] + 1.0 + noise(rng);
    }
    return fit_line(x, y).slope_err;
  };
  const double e1 = fit_with_n(200);
  const double e2 = fit_with_n(3200);  // 16x more points -> ~4x smaller
  CHECK(e2 < e1 / 2.5);
  CHECK(e2 > e1 / 6.5);
}

TEST_CASE("boundary margin excludes edge cuts") {
  const int length = 32;
  std::vector<std::pair<int, double>> points;
  for (int l = 1; l < length; ++l) {
    double s = (0.5 / 6.0) * chord(l, length);
    if (l < 4 || l > length - 4) s += 10.0;  // corrupt the edges
    points.emplace_back(l, s);
  }
  auto fit = fit_cut_scan(points, length, 4);
  CHECK(fit.central_charge == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(fit_cut_scan({{1, 0.1}, {2, 0.2}}, 32), ValidationError);
}

TEST_CASE("delta-m2 correlation") {
  std::vector<std::pair<double, double>> exact_prop;
  for (int i = 1; i <= 10; ++i) exact_prop.emplace_back(0.03 * i, 2.5 * 0.03 * i);
  auto corr = delta_m2_correlation(exact_prop);
  CHECK(corr.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(corr.slope_through_origin == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(delta_m2_correlation({{0.1, 0.1}, {0.2, 0.2}}), ValidationError);
  std::vector<std::pair<double, double>> flat(5, {0.0, 0.1});
  CHECK_THROWS_AS(delta_m2_correlation(flat), ValidationError);
}

TEST_CASE("critical point extrapolation") {
  SUBCASE("exact linear peaks") {
    // Peaks at h*(L) = 0.9 + 1.6 / L on a grid; intercept must come back 0.9.
    std::vector<int> lengths = {16, 24, 32, 48};
    std::vector<std::vector<std::pair<double, double>>> curves;
    for (int length : lengths) {
      const double h_star = 0.9 + 1.6 / length;
      std::vector<std::pair<double, double>> curve;
      for (double h = 0.82; h < 1.08; h += 0.02)
        curve.emplace_back(h, std::log(double(length)) *
                                  (1.0 - 3.0 * (h - h_star) * (h - h_star)));
      curves.push_back(curve);
    }
    auto fit = critical_point_estimate(lengths, curves);
    CHECK(fit.h_c == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(!fit.boundary_peak_flag);
    REQUIRE(fit.peaks.size() == 4);
    CHECK(fit.peaks[0].second == doctest::Approx(0.9 + 0.1).epsilon(1e-6));
  }
  SUBCASE("single size is rejected") {
    CHECK_THROWS_AS(critical_point_estimate({32}, {{{0.9, 1.0}, {1.0, 1.1}, {1.1, 1.0}}}),
                    ValidationError);
  }
  SUBCASE("peak on the grid boundary is flagged") {
    std::vector<int> lengths = {16, 24, 32};
    std::vector<std::vector<std::pair<double, double>>> curves(
        3, {{0.8, 1.0}, {0.9, 2.0}, {1.0, 3.0}});
    auto fit = critical_point_estimate(lengths, curves);
    CHECK(fit.boundary_peak_flag);
  }
}

TEST_CASE("cluster dispersion") {
  // 6 pi k / L = pi at k = L/6 with coupling 1: the band top of the dual
  // Ising chain.
  auto top = cluster_dispersion(3, 24, 1.0, 4);
  CHECK(top.lambda == doctest::Approx(2.0).epsilon(1e-12));
  for (int k = 1; k <= 12; ++k) {
    auto p0 = cluster_dispersion(3, 12, 0.0, k);
    CHECK(p0.lambda == doctest::Approx(1.0).epsilon(1e-12));
    auto p1 = cluster_dispersion(1, 12, 0.7, k);
    auto p3 = cluster_dispersion(3, 12, 1.3, k);
    for (const auto& p : {p0, p1, p3}) {
      CHECK(p.u * p.u + p.v * p.v == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.lambda * p.lambda ==
            doctest::Approx(p.epsilon * p.epsilon + p.delta * p.delta).epsilon(1e-12));
      CHECK(p.lambda >= 0.0);
    }
  }
  CHECK_THROWS_AS(cluster_dispersion(2, 12, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(cluster_dispersion(1, 12, 0.5, 0), ValidationError);
}

TEST_CASE("duality predictions") {
  auto v1 = duality_predictions(1, 64);
  CHECK(v1.period == 2);
  CHECK(v1.zero_cuts == std::vector<int>{32});
  CHECK(v1.effective_central_charge == doctest::Approx(0.5));

  auto v3_small = duality_predictions(3, 24);
  CHECK(v3_small.zero_cuts == std::vector<int>({8, 16}));
  auto v3_large = duality_predictions(3, 192);
  CHECK(v3_large.zero_cuts == std::vector<int>{64});
  CHECK(v3_large.effective_central_charge == doctest::Approx(0.5));

  CHECK_THROWS_AS(duality_predictions(1, 63), ValidationError);
  CHECK_THROWS_AS(duality_predictions(3, 64), ValidationError);
}

TEST_CASE("compatible with zero") {
  CHECK(compatible_with_zero(5e-4));
  CHECK(!compatible_with_zero(5e-3));
  CHECK(compatible_with_zero(5e-3, 2e-3));  // raised floor
}
