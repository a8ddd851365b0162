// montecarlo.hpp — synthetic counting data for the scan protocols: expected
// count rates from a correlation map and seeded Poisson sampling.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "antibunch/wave.hpp"

namespace antibunch {

/// Count-rate calibration. Detector efficiencies are folded into the two
/// singles scale factors (they need not match).
struct RateModel {
    double peak_coincidence_rate = 0.5;  // [counts/s] at the fringe maximum
    double singles_rate_1 = 2000.0;      // [counts/s] scale for detector 1
    double singles_rate_2 = 1600.0;      // [counts/s] scale for detector 2
    double accidental_window = 10e-9;    // coincidence resolving time [s]
};

enum class ScanMode {
    Scan1Fix2,        // D2 fixed, D1 scanned
    Scan2Fix1,        // D1 fixed, D2 scanned
    JointEqual,       // both scanned together, x1 = x2
    Scan1Fix2Offset,  // D2 parked off-axis, D1 scanned
};

const char* to_string(ScanMode mode);
ScanMode scan_mode_from_string(const std::string& name);

struct ScanPlan {
    ScanMode mode = ScanMode::Scan1Fix2;
    double fixed_position = 0.0;     // [m]; ignored for JointEqual
    std::vector<double> positions;   // scanned coordinate, strictly increasing [m]
    double dwell_time = 1000.0;      // [s] per position
    std::uint64_t seed = 0;

    void validate() const;
    /// (x1, x2) pair realized at scan step i.
    std::pair<double, double> coordinates(size_t i) const;
};

struct ScanRow {
    double x1 = 0.0;
    double x2 = 0.0;
    std::int64_t singles1 = 0;
    std::int64_t singles2 = 0;
    std::int64_t coincidences = 0;
};

struct ScanResult {
    ScanPlan plan;
    std::vector<ScanRow> rows;
};

/// Expected detection rates per scan position [counts/s].
struct ExpectedRates {
    std::vector<double> singles1;
    std::vector<double> singles2;
    std::vector<double> coincidence;
};

/// coincidence = peak_rate * Gamma(x1,x2)/Gamma_max + singles1 * singles2 * window;
/// singles_i = singles_rate_i * envelope(x_i). Gamma is interpolated
/// bilinearly; every scan position must fall inside its grid.
ExpectedRates expected_rates(const ScanPlan& plan, const CorrelationMap& gamma,
                             const std::function<double(double)>& envelope,
                             const RateModel& rates);

/// Draws one Poisson count per position and channel, mean rate * dwell_time.
/// Each draw uses an independent generator seeded with
/// derive_seed(plan.seed, 3*i + channel), so the result is a pure function of
/// (plan, rates) and identical for any execution order.
ScanResult simulate_scan(const ScanPlan& plan, const ExpectedRates& rates);

/// The four published scan protocols: "fig4" (D2 at 0), "fig5" (D1 at 0),
/// "fig6" (x1 = x2), "fig7" (D2 at -0.55 mm); positions -1.5..1.5 mm in
/// 0.05 mm steps.
ScanPlan figure_plan(const std::string& figure, std::uint64_t seed, double dwell_time);

/// Comma-separated rows x1,x2,singles1,singles2,coincidences with a header
/// line, preceded by one comment line echoing mode, seed and dwell time.
void write_scan_csv(const ScanResult& scan, std::ostream& out);
ScanResult read_scan_csv(std::istream& in);

}  // namespace antibunch
