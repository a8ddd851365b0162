#include "antibunch/analytic.hpp"

#include <cmath>
#include <numbers>

namespace antibunch {

namespace {

double sinc_sq(double t) {
    if (std::abs(t) < 1e-12) return 1.0;
    const double s = std::sin(t) / t;
    return s * s;
}

}  // namespace

double coincidence_rate_ideal(double x1, double x2, const ExperimentGeometry& g) {
    const double arg = 2.0 * std::numbers::pi * g.slit_separation * (x2 - x1) /
                       (g.wavelength * g.slit_to_detector);
    return 1.0 - std::cos(arg + (std::numbers::pi - g.waveplate_phase));
}

double singles_envelope(double x, const ExperimentGeometry& g) {
    const double u1 = (x - 0.5 * g.slit_separation) / g.slit_to_detector;
    const double u2 = (x + 0.5 * g.slit_separation) / g.slit_to_detector;
    const double c = std::numbers::pi * g.slit_width / g.wavelength;
    return 0.5 * sinc_sq(c * u1) + 0.5 * sinc_sq(c * u2);
}

}  // namespace antibunch
