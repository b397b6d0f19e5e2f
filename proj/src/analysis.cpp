#include "camps/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace camps {

ScalingFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (n != static_cast<int>(y.size())) throw ValidationError("fit_line: size mismatch");
  if (n < 2) throw ValidationError("fit_line: need at least 2 points");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx < 1e-14) throw ValidationError("fit_line: degenerate abscissas");
  ScalingFit fit;
  fit.form = "line";
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - fit.slope * x[i] - fit.intercept;
    ssr += r * r;
    syy += (y[i] - my) * (y[i] - my);
  }
  const double s2 = (n > 2) ? ssr / (n - 2) : 0.0;
  fit.slope_err = std::sqrt(s2 / sxx);
  fit.intercept_err = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  fit.r_squared = (syy > 0) ? 1.0 - ssr / syy : 1.0;
  fit.central_charge = 6.0 * fit.slope;
  fit.central_charge_err = 6.0 * fit.slope_err;
  return fit;
}

ScalingFit fit_cut_scan(const std::vector<std::pair<int, double>>& points, int length,
                        int boundary_margin, int chord_length) {
  if (chord_length == 0) chord_length = length;
  std::vector<double> x, y;
  for (const auto& [l, s] : points) {
    if (l < boundary_margin || l > length - boundary_margin) continue;
    x.push_back(std::log((2.0 * chord_length / M_PI) *
                         std::sin(M_PI * double(l) / double(chord_length))));
    y.push_back(s);
  }
  if (x.size() < 4) throw ValidationError("fit_cut_scan: fewer than 4 usable points");
  ScalingFit fit = fit_line(x, y);
  fit.form = "cut-scan";
  return fit;
}

ScalingFit fit_half_chain(const std::vector<std::pair<int, double>>& points) {
  std::vector<double> x, y;
  for (const auto& [length, s] : points) {
    x.push_back(std::log(double(length) / M_PI));
    y.push_back(s);
  }
  if (x.size() < 2) throw ValidationError("fit_half_chain: need at least 2 points");
  ScalingFit fit = fit_line(x, y);
  fit.form = "half-chain";
  return fit;
}

Correlation delta_m2_correlation(const std::vector<std::pair<double, double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw ValidationError("delta_m2_correlation: need at least 3 points");
  double sxx = 0, sxy = 0, sx = 0, sy = 0;
  for (const auto& [m2, gain] : points) {
    sxx += m2 * m2;
    sxy += m2 * gain;
    sx += m2;
    sy += gain;
  }
  if (sxx < 1e-14) throw ValidationError("delta_m2_correlation: degenerate variance");
  Correlation out;
  out.n_points = n;
  out.slope_through_origin = sxy / sxx;
  const double mx = sx / n, my = sy / n;
  double cxx = 0, cyy = 0, cxy = 0;
  for (const auto& [m2, gain] : points) {
    cxx += (m2 - mx) * (m2 - mx);
    cyy += (gain - my) * (gain - my);
    cxy += (m2 - mx) * (gain - my);
  }
  if (cxx < 1e-14 || cyy < 1e-14)
    throw ValidationError("delta_m2_correlation: degenerate variance");
  out.pearson_r = cxy / std::sqrt(cxx * cyy);
  return out;
}

CriticalPointFit critical_point_estimate(
    const std::vector<int>& lengths,
    const std::vector<std::vector<std::pair<double, double>>>& curves) {
  if (lengths.size() < 3)
    throw ValidationError("critical_point_estimate: need at least 3 sizes");
  if (lengths.size() != curves.size())
    throw ValidationError("critical_point_estimate: size mismatch");
  CriticalPointFit out;
  std::vector<double> inv_l, peak_h;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const auto& curve = curves[i];
    if (curve.size() < 3)
      throw ValidationError("critical_point_estimate: grid too coarse");
    const double norm = std::log(double(lengths[i]));
    int imax = 0;
    for (std::size_t j = 1; j < curve.size(); ++j)
      if (curve[j].second / norm > curve[imax].second / norm) imax = int(j);
    double h_star;
    if (imax == 0 || imax + 1 == int(curve.size())) {
      out.boundary_peak_flag = true;
      h_star = curve[imax].first;
    } else {
      // Vertex of the parabola through the three points around the maximum.
      const double x0 = curve[imax - 1].first, x1 = curve[imax].first,
                   x2 = curve[imax + 1].first;
      const double y0 = curve[imax - 1].second / norm, y1 = curve[imax].second / norm,
                   y2 = curve[imax + 1].second / norm;
      const double num = (y0 - y1) * (x2 - x1) * (x2 - x1) -
                         (y2 - y1) * (x1 - x0) * (x1 - x0);
      const double den = (y0 - y1) * (x2 - x1) + (y2 - y1) * (x1 - x0);
      h_star = (std::abs(den) < 1e-14) ? x1 : x1 + 0.5 * num / den;
      h_star = std::clamp(h_star, x0, x2);
    }
    out.peaks.emplace_back(lengths[i], h_star);
    inv_l.push_back(1.0 / double(lengths[i]));
    peak_h.push_back(h_star);
  }
  ScalingFit fit = fit_line(inv_l, peak_h);
  out.h_c = fit.intercept;
  out.h_c_err = fit.intercept_err;
  return out;
}

DispersionPoint cluster_dispersion(int variant, int length, double coupling, int k) {
  if (k < 1 || k > length) throw ValidationError("cluster_dispersion: k out of range");
  if (variant != 1 && variant != 3)
    throw ValidationError("cluster_dispersion: variant must be 1 or 3");
  const double a = 2.0 * M_PI * double(k) / double(length);
  DispersionPoint p;
  p.k = k;
  if (variant == 3) {
    p.epsilon = std::cos(2 * a) - coupling * std::cos(a);
    p.delta = std::sin(2 * a) + coupling * std::sin(a);
    p.lambda = std::sqrt(1.0 + coupling * coupling - 2.0 * coupling * std::cos(3 * a));
  } else {
    p.epsilon = std::cos(2 * a) - coupling;
    p.delta = std::sin(2 * a);
    p.lambda = std::sqrt(1.0 + coupling * coupling - 2.0 * coupling * std::cos(2 * a));
  }
  // Normalized Bogoliubov amplitudes; at a gapless mode the ratio is taken
  // as zero.
  const double ratio = (p.lambda > 1e-12) ? p.epsilon / p.lambda : 0.0;
  p.u = std::sqrt(0.5 * (1.0 + ratio));
  p.v = -std::copysign(std::sqrt(0.5 * (1.0 - ratio)), p.delta);
  return p;
}

DualityPrediction duality_predictions(int variant, int length) {
  DualityPrediction out;
  if (variant == 1) {
    if (length % 2 != 0)
      throw ValidationError("duality_predictions: variant 1 needs even L");
    out.period = 2;
    out.zero_cuts = {length / 2};
    out.effective_central_charge = 1.0 / 2.0;  // c = 1 parent
    out.note = "two decoupled Ising chains; zero cut at L/2";
  } else if (variant == 3) {
    if (length % 3 != 0)
      throw ValidationError("duality_predictions: variant 3 needs L divisible by 3");
    out.period = 3;
    out.zero_cuts = {length / 3};
    // The 2L/3 cut needs a three-site transformation; two-site sweeps reach
    // it only on short chains.
    if (length <= 24) out.zero_cuts.push_back(2 * length / 3);
    out.effective_central_charge = 1.5 / 3.0;  // c = 3/2 parent
    out.note = "three decoupled Ising chains; zero cut at L/3 (2L/3 on short chains)";
  } else {
    throw ValidationError("duality_predictions: variant must be 1 or 3");
  }
  return out;
}

bool compatible_with_zero(double smee, double entropy_floor) {
  return smee < std::max(1e-3, 3.0 * entropy_floor);
}

}  // namespace camps
