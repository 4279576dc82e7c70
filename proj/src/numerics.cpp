#include "skyplanner/numerics.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "skyplanner/errors.hpp"

namespace skyplanner::numerics {

Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   double rel_tol, unsigned max_depth) {
    if (a == b) return {0.0, 0.0};
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0.0;
    double l1 = 0.0;
    // Boost's tolerance is relative to the L1 norm; the absolute floor is
    // checked afterwards against the returned error estimate.
    const double value = Rule::integrate(f, a, b, max_depth, rel_tol, &error, &l1);
    const double allowed = std::max(abs_tol, rel_tol * std::max(std::abs(value), l1));
    if (!std::isfinite(value) || error > allowed * 10.0) {
        throw NumericIntegrationError("adaptive quadrature did not converge", a, b, value, error);
    }
    return {value, error};
}

}  // namespace skyplanner::numerics
