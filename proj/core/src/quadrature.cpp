#include "ellperc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "ellperc/errors.hpp"

namespace ellperc {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_floor) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr unsigned kMaxDepth = 30;
    double error = 0.0;
    double result = 0.0;
    try {
        result = gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, rel_tol, &error);
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(result) || error > rel_tol * std::abs(result) + abs_floor) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not reach relative tolerance "
            << rel_tol << " (estimate " << result << ", error " << error << ")";
        throw QuadratureError(msg.str());
    }
    return result;
}

}  // namespace ellperc
