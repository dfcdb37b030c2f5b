#pragma once

#include <functional>

namespace ellperc {

inline constexpr double kQuadratureRelTol = 1e-8;

/// Adaptive Gauss-Kronrod integral of f over [a, b]; either bound may be
/// infinite. Throws QuadratureError when the error estimate stays above
/// rel_tol * |result| + abs_floor after the subdivision cap.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = kQuadratureRelTol, double abs_floor = 0.0);

}  // namespace ellperc
