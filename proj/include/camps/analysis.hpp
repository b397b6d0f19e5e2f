#pragma once

#include <string>
#include <utility>
#include <vector>

#include "camps/common.hpp"

namespace camps {

struct ScalingFit {
  double slope = 0.0, intercept = 0.0;
  double slope_err = 0.0, intercept_err = 0.0;
  double central_charge = 0.0, central_charge_err = 0.0;  // 6 * slope
  double r_squared = 0.0;
  int n_points = 0;
  std::string form;  // "cut-scan" | "half-chain" | "line"
};

// Plain least squares y = a x + b with standard errors from the residuals.
ScalingFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Entropy-vs-cut fit in the chord variable x = ln((2L/pi) sin(pi l / L)).
// Points are (l, S); cuts within `boundary_margin` of either end are
// dropped. chord_length defaults to `length` but can differ when the data
// follow a shorter effective chain.
ScalingFit fit_cut_scan(const std::vector<std::pair<int, double>>& points, int length,
                        int boundary_margin = 4, int chord_length = 0);

// Half-chain entropy versus system size, x = ln(L/pi); points are (L, S).
ScalingFit fit_half_chain(const std::vector<std::pair<int, double>>& points);

struct Correlation {
  double slope_through_origin = 0.0;  // C in y ~ C x
  double pearson_r = 0.0;
  int n_points = 0;
};

// Proportionality between the entropy gain and the magic density over a
// parameter scan; points are (m2, gain).
Correlation delta_m2_correlation(const std::vector<std::pair<double, double>>& points);

struct CriticalPointFit {
  double h_c = 0.0, h_c_err = 0.0;
  std::vector<std::pair<int, double>> peaks;  // (L, interpolated peak position)
  bool boundary_peak_flag = false;
};

// Peak of S/ln L per system size (local quadratic interpolation around the
// grid maximum), then a linear extrapolation of the peak position in 1/L.
// curves[i] belongs to lengths[i] and lists (h, S_halfchain) on a grid.
CriticalPointFit critical_point_estimate(
    const std::vector<int>& lengths,
    const std::vector<std::vector<std::pair<double, double>>>& curves);

struct DispersionPoint {
  int k = 0;
  double lambda = 0.0;   // single-mode energy
  double epsilon = 0.0;  // real part of the Bogoliubov coupling
  double delta = 0.0;    // imaginary part
  double u = 0.0, v = 0.0;
};

// Free-fermion dispersion of the cluster chains. Variant 3 couples at
// distance one (ansatz angle 2 pi k / L), variant 1 on-site; in both cases
// lambda^2 = epsilon^2 + delta^2 and u^2 + v^2 = 1.
DispersionPoint cluster_dispersion(int variant, int length, double coupling, int k);

struct DualityPrediction {
  int period = 0;                        // p
  std::vector<int> zero_cuts;            // cuts where the protocol can reach zero
  double effective_central_charge = 0.0; // c / p of the parent model
  std::string note;
};

// Expected disentangled-profile features of the critical cluster chains.
DualityPrediction duality_predictions(int variant, int length);

// Operational "compatible with zero" for disentangled entropies.
bool compatible_with_zero(double smee, double entropy_floor = 0.0);

}  // namespace camps
