// analytic.hpp — closed-form ideal model of the coincidence fringes and the
// fringeless singles envelope.
#pragma once

#include "antibunch/geometry.hpp"

namespace antibunch {

/// Ideal coincidence rate for point detectors at x1, x2, dimensionless in
/// [0, 2] with mean 1 over a fringe period:
///
///   1 - cos(2 pi d (x2 - x1) / (lambda z) + (pi - phi))
///
/// phi = waveplate_phase. phi = pi gives the antibunched pattern (zero at
/// x1 = x2); phi = 0 gives the bunched control pattern 1 + cos(...).
double coincidence_rate_ideal(double x1, double x2, const ExperimentGeometry& g);

/// Singles envelope at detector position x: the incoherent sum of the two
/// single-slit diffraction envelopes,
///   1/2 sinc^2(pi a u1 / lambda) + 1/2 sinc^2(pi a u2 / lambda),
/// u_i the direction sine from slit i's center to x at distance z.
/// Strictly positive, mirror-symmetric, and free of any component at the
/// fringe period.
double singles_envelope(double x, const ExperimentGeometry& g);

}  // namespace antibunch
