// wave.hpp — numerical biphoton model: aperture construction, Fresnel
// propagation of the position-anticorrelated pair, fourth-order correlation
// map, marginal intensity, and the detector-window convolution.
#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "antibunch/geometry.hpp"

namespace antibunch {

/// Transmission function of the birefringent double slit, sampled on a grid
/// over the aperture coordinate xi. |t| is 1 inside the two clear apertures,
/// 0 elsewhere, 0.5 on nodes that land exactly on a slit edge. branch_phase
/// is the relative phase between the two pair-exchange branches (photon 1
/// through the upper vs the lower slit); the waveplates contribute only
/// through this number.
struct ApertureFunction {
    Grid1D grid;
    std::vector<std::complex<double>> amplitude;
    double branch_phase = 0.0;
};

/// Samples the double slit on `grid`. The grid must cover
/// [-(d+a), +(d+a)] and resolve the slit width with step <= a/20.
ApertureFunction build_aperture(const ExperimentGeometry& g, const Grid1D& grid);

/// Two-photon amplitude Psi(x1, x2) on a shared detector grid, row-major:
/// values[i * n + j] = Psi(x_i, x_j).
struct BiphotonAmplitude {
    Grid1D grid;
    std::vector<std::complex<double>> values;

    std::complex<double> at(int i, int j) const {
        return values[static_cast<size_t>(i) * static_cast<size_t>(grid.samples) +
                      static_cast<size_t>(j)];
    }
};

/// Propagates the pair from the aperture to the detector plane.
///
/// For pump_correlation_width = 0 the pair is created at perfectly
/// anticorrelated points (xi, -xi) and
///
///   Psi(x1,x2) ~ sum_xi t(xi) t(-xi) B(xi) exp[i k ((x1-xi)^2 + (x2+xi)^2) / 2z]
///
/// with B(xi) = 1 for xi > 0 and e^{i branch_phase} for xi < 0. For
/// pump_correlation_width w > 0 the anticorrelation is relaxed to a
/// normalized Gaussian kernel of width w over xi1 + xi2 (double sum).
/// The result is scaled so that max |Psi|^2 over the grid is 1.
///
/// Every element is accumulated over xi in a fixed order, so results are
/// identical for any thread count; the serial variant runs the same kernel
/// without OpenMP and produces bit-identical output.
BiphotonAmplitude propagate_biphoton(const ApertureFunction& ap, const ExperimentGeometry& g,
                                     const Grid1D& out);
BiphotonAmplitude propagate_biphoton_serial(const ApertureFunction& ap,
                                            const ExperimentGeometry& g, const Grid1D& out);

/// Nonnegative correlation samples Gamma(x1, x2), row-major like
/// BiphotonAmplitude, with optional per-cell Monte Carlo standard errors.
struct CorrelationMap {
    Grid1D grid;
    std::vector<double> values;
    std::vector<double> stderrs;  // empty when no sampling error applies

    double at(int i, int j) const {
        return values[static_cast<size_t>(i) * static_cast<size_t>(grid.samples) +
                      static_cast<size_t>(j)];
    }
    double stderr_at(int i, int j) const {
        return stderrs[static_cast<size_t>(i) * static_cast<size_t>(grid.samples) +
                       static_cast<size_t>(j)];
    }
    bool has_stderr() const { return !stderrs.empty(); }
};

/// Gamma = |Psi|^2.
CorrelationMap gamma_from_amplitude(const BiphotonAmplitude& psi);

/// Row sums of Gamma times the grid step: the singles profile at x1 with the
/// other detector integrated out.
std::vector<double> marginal_intensity(const CorrelationMap& gamma);

/// 2-D convolution with the separable rectangular detector window of width
/// detector_slit_width in both coordinates, renormalized to max 1. A window
/// no wider than one grid step degenerates to the identity; otherwise the
/// grid must resolve the window with step <= width/4. Standard errors do not
/// survive the averaging and are dropped.
CorrelationMap detector_convolve(const CorrelationMap& gamma, const ExperimentGeometry& g);

/// Builds a map by sampling f(x1, x2) on the grid (no standard errors).
CorrelationMap map_from_function(const Grid1D& grid,
                                 const std::function<double(double, double)>& f);

/// Comma-separated serialization: header row of x2 grid values, then one row
/// per x1 (leading x1 value, then Gamma values).
void write_correlation_csv(const CorrelationMap& map, std::ostream& out,
                           bool write_stderr = false);
CorrelationMap read_correlation_csv(std::istream& in);

}  // namespace antibunch
