#include "antibunch/rng.hpp"

#include <cmath>
#include <numbers>

namespace antibunch {

double SplitMix64::standard_normal() {
    const double u1 = u01_open();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t SplitMix64::poisson(double mu) {
    if (!(mu > 0.0)) return 0;
    if (mu < 10.0) {
        // Knuth: multiply uniforms until the product drops below e^-mu.
        const double limit = std::exp(-mu);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= u01_open();
        } while (p > limit);
        return k - 1;
    }
    const double z = standard_normal();
    const double v = std::floor(mu + std::sqrt(mu) * z + 0.5);
    return v <= 0.0 ? 0 : static_cast<std::int64_t>(v);
}

}  // namespace antibunch
