// geometry.hpp — physical parameters of the setup, derived quantities,
// sample grids and config file round-tripping.
#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace antibunch {

/// Raised on any configuration problem. kind() identifies the contract that
/// was broken; key() names the offending field where that makes sense.
class ConfigError : public std::runtime_error {
public:
    enum class Kind { Parse, MissingKey, UnknownKey, Invariant };

    ConfigError(Kind kind, std::string key, const std::string& message)
        : std::runtime_error(message), kind_(kind), key_(std::move(key)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& key() const noexcept { return key_; }

private:
    Kind kind_;
    std::string key_;
};

/// All physical constants of the two-photon double-slit experiment, SI units.
/// The transverse model is 1-D in x; detector_slit_height is carried as
/// metadata only (y is integrated out).
struct ExperimentGeometry {
    double wavelength = 702e-9;             // down-converted wavelength [m]
    double slit_width = 0.20e-3;            // clear width a of each slit [m]
    double slit_separation = 0.40e-3;       // center-to-center distance d [m]
    double slit_to_detector = 0.70;         // optical path z to detectors [m]
    double detector_slit_width = 0.20e-3;   // detector entrance slit width [m]
    double detector_slit_height = 3.0e-3;   // detector entrance slit height [m]
    double coincidence_window = 10e-9;      // coincidence resolving time [s]
    double waveplate_phase = std::numbers::pi;  // exchange-branch phase [rad]
    double pump_correlation_width = 0.0;    // width of the xi1+xi2 correlation [m]

    /// k = 2*pi/lambda [1/m].
    double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

    /// Throws ConfigError{Invariant} when any field is out of range.
    void validate() const;
};

/// The experiment's published values.
ExperimentGeometry default_geometry();

/// Fringe period of the coincidence pattern, lambda*z/d [m].
double fringe_period(const ExperimentGeometry& g);

/// Parse a flat key-value document ("key = value" lines, '#' comments).
/// All nine keys are required; unknown keys are rejected.
ExperimentGeometry load_config(std::string_view text);

/// Inverse of load_config: emits decimal strings that parse back to the
/// exact same doubles.
std::string serialize_config(const ExperimentGeometry& g);

ExperimentGeometry load_config_file(const std::string& path);

/// Uniform sample grid over a closed interval, endpoints included.
struct Grid1D {
    double min = 0.0;
    double max = 0.0;
    int samples = 0;

    Grid1D() = default;
    Grid1D(double min_, double max_, int samples_);

    double step() const { return (max - min) / (samples - 1); }
    double position(int i) const { return min + i * step(); }
    std::vector<double> positions() const;
};

}  // namespace antibunch
