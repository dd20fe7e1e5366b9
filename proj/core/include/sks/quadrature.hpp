#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace sks {

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1]. Abscissae are listed
/// from the outermost inward; index 7 is the centre. Gauss points sit at the
/// odd indices and the centre.
struct GaussKronrod15 {
  static constexpr std::array<double, 8> abscissae = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> kronrod_weights = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  /// Weights for abscissae[1], [3], [5] and the centre.
  static constexpr std::array<double, 4> gauss_weights = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct QuadratureOptions {
  std::size_t max_intervals = 2000;
  int max_depth = 50;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

/// Adaptive Gauss-Kronrod on [a, b]. Stops when the summed |K15 - G7|
/// estimates fall below abs_tol; throws NonConvergenceError when the interval
/// budget or depth limit is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& integrand,
                                    double a, double b, double abs_tol,
                                    const QuadratureOptions& options = {});

/// Integral over (0, inf) of an integrand bounded by C e^{-t}. Substitutes
/// u = e^{-t}, which maps the half-line to (0, 1] with a bounded integrand,
/// then integrates adaptively.
QuadratureResult integrate_halfline(const std::function<double(double)>& integrand,
                                    double abs_tol, const QuadratureOptions& options = {});

}  // namespace sks
