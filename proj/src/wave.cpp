#include "antibunch/wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace antibunch {

namespace {

constexpr double kEdgeTol = 1e-9;  // relative to grid step

double slit_transmission(double xi, double a, double d, double step) {
    for (double center : {+0.5 * d, -0.5 * d}) {
        const double dist = std::abs(xi - center);
        if (std::abs(dist - 0.5 * a) <= kEdgeTol * step) return 0.5;  // edge node
        if (dist < 0.5 * a) return 1.0;
    }
    return 0.0;
}

// One output row of the exchange-sum amplitude. Shared by the parallel and
// serial drivers; noinline so both run the exact same machine code and the
// output is bit-identical either way.
__attribute__((noinline)) void amplitude_row(
    int i, int n, const std::complex<double>* unit, const std::complex<double>* coeff, int m,
    const std::complex<double>* prefactor, std::complex<double>* scratch,
    std::complex<double>* out_row) {
    const std::complex<double>* ui = unit + static_cast<size_t>(i) * static_cast<size_t>(m);
    for (int l = 0; l < m; ++l) scratch[l] = coeff[l] * ui[l];
    for (int j = 0; j < n; ++j) {
        const std::complex<double>* uj = unit + static_cast<size_t>(j) * static_cast<size_t>(m);
        std::complex<double> acc{0.0, 0.0};
        for (int l = 0; l < m; ++l) acc += scratch[l] * std::conj(uj[l]);
        out_row[j] = prefactor[i] * prefactor[j] * acc;
    }
}

// One output row of the finite-pump-width double sum.
__attribute__((noinline)) void amplitude_row_pumped(
    int i, int n, const double* xo, const double* xi_s, const std::complex<double>* tb, int m,
    double k, double z, double wp, std::complex<double>* out_row) {
    const double x1 = xo[i];
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * wp);
    const double cutoff = 6.0 * wp;
    for (int j = 0; j < n; ++j) {
        const double x2 = xo[j];
        std::complex<double> acc{0.0, 0.0};
        for (int a = 0; a < m; ++a) {
            const double lo = -xi_s[a] - cutoff;
            const double hi = -xi_s[a] + cutoff;
            const double* first = std::lower_bound(xi_s, xi_s + m, lo);
            const double* last = std::upper_bound(xi_s, xi_s + m, hi);
            for (const double* pb = first; pb != last; ++pb) {
                const int b = static_cast<int>(pb - xi_s);
                const double s = xi_s[a] + xi_s[b];
                const double gauss = norm * std::exp(-0.5 * s * s / (wp * wp));
                const double d1 = x1 - xi_s[a];
                const double d2 = x2 - xi_s[b];
                const double phase = k * (d1 * d1 + d2 * d2) / (2.0 * z);
                acc += tb[a] * std::abs(tb[b]) * gauss * std::polar(1.0, phase);
            }
        }
        out_row[j] = acc;
    }
}

void normalize_to_unit_peak(std::vector<std::complex<double>>& values) {
    double max_sq = 0.0;
    for (const auto& v : values) max_sq = std::max(max_sq, std::norm(v));
    if (max_sq > 0.0) {
        const double scale = 1.0 / std::sqrt(max_sq);
        for (auto& v : values) v *= scale;
    }
}

BiphotonAmplitude propagate_impl(const ApertureFunction& ap, const ExperimentGeometry& g,
                                 const Grid1D& out, bool parallel) {
    const int n = out.samples;
    const int na = ap.grid.samples;
    const double k = g.wavenumber();
    const double z = g.slit_to_detector;
    const double h = ap.grid.step();

    if (std::max(std::abs(out.min), std::abs(out.max)) > 0.05 * z) {
        throw std::invalid_argument("detector grid extends beyond the paraxial regime");
    }

    BiphotonAmplitude psi;
    psi.grid = out;
    psi.values.assign(static_cast<size_t>(n) * static_cast<size_t>(n), {0.0, 0.0});
    const auto xo = out.positions();

    if (g.pump_correlation_width > 0.0) {
        const double wp = g.pump_correlation_width;
        if (wp < 3.0 * h) {
            throw std::invalid_argument(
                "aperture grid too coarse to resolve pump_correlation_width");
        }
        // support of t alone; branch phase follows the sign of photon 1's slit
        std::vector<double> xi_s;
        std::vector<std::complex<double>> tb;
        const std::complex<double> branch = std::polar(1.0, ap.branch_phase);
        for (int j = 0; j < na; ++j) {
            if (std::abs(ap.amplitude[static_cast<size_t>(j)]) == 0.0) continue;
            const double xi = ap.grid.position(j);
            xi_s.push_back(xi);
            tb.push_back(ap.amplitude[static_cast<size_t>(j)] * (xi < 0.0 ? branch : 1.0));
        }
        const int m = static_cast<int>(xi_s.size());
        const double h2 = h * h;
#pragma omp parallel for schedule(static) if (parallel)
        for (int i = 0; i < n; ++i) {
            amplitude_row_pumped(i, n, xo.data(), xi_s.data(), tb.data(), m, k, z, wp,
                                 psi.values.data() + static_cast<size_t>(i) * n);
        }
        for (auto& v : psi.values) v *= h2;
        normalize_to_unit_peak(psi.values);
        return psi;
    }

    // ideal anticorrelation: single sum over xi with the mirrored sample
    if (std::abs(ap.grid.min + ap.grid.max) > kEdgeTol * h) {
        throw std::invalid_argument(
            "aperture grid must be symmetric about zero for the anticorrelated pair");
    }
    const std::complex<double> branch = std::polar(1.0, ap.branch_phase);
    std::vector<double> xi_s;
    std::vector<std::complex<double>> coeff;  // t(xi) t(-xi) B(xi) e^{i k xi^2 / z} h
    for (int j = 0; j < na; ++j) {
        const auto t1 = ap.amplitude[static_cast<size_t>(j)];
        const auto t2 = ap.amplitude[static_cast<size_t>(na - 1 - j)];
        if (std::abs(t1) == 0.0 || std::abs(t2) == 0.0) continue;
        const double xi = ap.grid.position(j);
        std::complex<double> c = t1 * t2 * (xi < 0.0 ? branch : 1.0) * h;
        c *= std::polar(1.0, k * xi * xi / z);
        xi_s.push_back(xi);
        coeff.push_back(c);
    }
    const int m = static_cast<int>(xi_s.size());

    // unit[x][l] = exp(-i k xi_l x / z); prefactor[x] = exp(i k x^2 / 2z)
    std::vector<std::complex<double>> unit(static_cast<size_t>(n) * static_cast<size_t>(m));
    std::vector<std::complex<double>> prefactor(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        prefactor[static_cast<size_t>(i)] = std::polar(1.0, k * xo[i] * xo[i] / (2.0 * z));
        for (int l = 0; l < m; ++l) {
            unit[static_cast<size_t>(i) * m + l] = std::polar(1.0, -k * xi_s[l] * xo[i] / z);
        }
    }

    std::vector<std::complex<double>> scratch_all(
        static_cast<size_t>(parallel ? n : 1) * static_cast<size_t>(std::max(m, 1)));
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i) {
        std::complex<double>* scratch =
            scratch_all.data() + (parallel ? static_cast<size_t>(i) * m : 0);
        amplitude_row(i, n, unit.data(), coeff.data(), m, prefactor.data(), scratch,
                      psi.values.data() + static_cast<size_t>(i) * n);
    }

    normalize_to_unit_peak(psi.values);
    return psi;
}

}  // namespace

ApertureFunction build_aperture(const ExperimentGeometry& g, const Grid1D& grid) {
    const double a = g.slit_width;
    const double d = g.slit_separation;
    const double h = grid.step();
    if (h > a / 20.0 * (1.0 + kEdgeTol)) {
        throw std::invalid_argument("aperture grid too coarse: need step <= slit_width/20");
    }
    if (grid.min > -(d + a) || grid.max < (d + a)) {
        throw std::invalid_argument("aperture grid too narrow: must span [-(d+a), d+a]");
    }
    ApertureFunction ap;
    ap.grid = grid;
    ap.branch_phase = g.waveplate_phase;
    ap.amplitude.resize(static_cast<size_t>(grid.samples));
    for (int j = 0; j < grid.samples; ++j) {
        ap.amplitude[static_cast<size_t>(j)] = slit_transmission(grid.position(j), a, d, h);
    }
    return ap;
}

BiphotonAmplitude propagate_biphoton(const ApertureFunction& ap, const ExperimentGeometry& g,
                                     const Grid1D& out) {
    return propagate_impl(ap, g, out, true);
}

BiphotonAmplitude propagate_biphoton_serial(const ApertureFunction& ap,
                                            const ExperimentGeometry& g, const Grid1D& out) {
    return propagate_impl(ap, g, out, false);
}

CorrelationMap gamma_from_amplitude(const BiphotonAmplitude& psi) {
    CorrelationMap map;
    map.grid = psi.grid;
    map.values.resize(psi.values.size());
    for (size_t i = 0; i < psi.values.size(); ++i) map.values[i] = std::norm(psi.values[i]);
    return map;
}

std::vector<double> marginal_intensity(const CorrelationMap& gamma) {
    const int n = gamma.grid.samples;
    const double h = gamma.grid.step();
    std::vector<double> profile(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += gamma.at(i, j);
        profile[static_cast<size_t>(i)] = acc * h;
    }
    return profile;
}

CorrelationMap detector_convolve(const CorrelationMap& gamma, const ExperimentGeometry& g) {
    const double width = g.detector_slit_width;
    const double h = gamma.grid.step();
    const int n = gamma.grid.samples;

    if (width <= h * (1.0 + 1e-12)) {
        // window narrower than one cell: identity
        CorrelationMap out = gamma;
        return out;
    }
    if (h > width / 4.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("grid step too coarse for the detector window");
    }

    // fractional-endpoint rectangle: weight = cell overlap with [-w/2, w/2]
    const double half = 0.5 * width;
    const int reach = static_cast<int>(std::floor(half / h + 0.5 + kEdgeTol));
    std::vector<double> w(static_cast<size_t>(2 * reach + 1), 0.0);
    for (int mo = -reach; mo <= reach; ++mo) {
        const double lo = std::max(mo * h - 0.5 * h, -half);
        const double hi = std::min(mo * h + 0.5 * h, half);
        w[static_cast<size_t>(mo + reach)] = std::max(0.0, (hi - lo) / h);
    }

    auto pass = [&](const std::vector<double>& in, bool along_rows) {
        std::vector<double> out(in.size(), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0.0, wsum = 0.0;
                for (int mo = -reach; mo <= reach; ++mo) {
                    const int jj = j + mo;
                    if (jj < 0 || jj >= n) continue;
                    const double wm = w[static_cast<size_t>(mo + reach)];
                    const size_t idx = along_rows
                                           ? static_cast<size_t>(i) * n + static_cast<size_t>(jj)
                                           : static_cast<size_t>(jj) * n + static_cast<size_t>(i);
                    acc += wm * in[idx];
                    wsum += wm;
                }
                const size_t oidx = along_rows ? static_cast<size_t>(i) * n + static_cast<size_t>(j)
                                               : static_cast<size_t>(j) * n + static_cast<size_t>(i);
                out[oidx] = acc / wsum;
            }
        }
        return out;
    };

    CorrelationMap out;
    out.grid = gamma.grid;
    out.values = pass(pass(gamma.values, true), false);
    const double peak = *std::max_element(out.values.begin(), out.values.end());
    if (peak > 0.0) {
        for (auto& v : out.values) v /= peak;
    }
    return out;
}

CorrelationMap map_from_function(const Grid1D& grid,
                                 const std::function<double(double, double)>& f) {
    CorrelationMap map;
    map.grid = grid;
    const int n = grid.samples;
    map.values.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            map.values[static_cast<size_t>(i) * n + j] = f(grid.position(i), grid.position(j));
        }
    }
    return map;
}

void write_correlation_csv(const CorrelationMap& map, std::ostream& out, bool write_stderr) {
    const int n = map.grid.samples;
    const std::vector<double>& vals = write_stderr ? map.stderrs : map.values;
    if (write_stderr && !map.has_stderr()) {
        throw std::invalid_argument("correlation map carries no standard errors");
    }
    char buf[64];
    out << "x1";
    for (int j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", map.grid.position(j));
        out << ',' << buf;
    }
    out << '\n';
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", map.grid.position(i));
        out << buf;
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g",
                          vals[static_cast<size_t>(i) * n + static_cast<size_t>(j)]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

CorrelationMap read_correlation_csv(std::istream& in) {
    std::string line;
    std::vector<double> x2;
    // header
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        break;
    }
    if (line.empty()) throw std::runtime_error("correlation map file is empty");
    {
        size_t p = line.find(',');
        if (p == std::string::npos || line.substr(0, p) != "x1") {
            throw std::runtime_error("correlation map header must start with 'x1'");
        }
        size_t start = p + 1;
        while (start <= line.size()) {
            size_t q = line.find(',', start);
            std::string tok = line.substr(start, q == std::string::npos ? std::string::npos : q - start);
            x2.push_back(std::stod(tok));
            if (q == std::string::npos) break;
            start = q + 1;
        }
    }
    const int n = static_cast<int>(x2.size());
    if (n < 2) throw std::runtime_error("correlation map needs at least 2 columns");

    CorrelationMap map;
    map.values.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    std::vector<double> x1;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        size_t start = 0;
        int col = -1;
        while (start <= line.size()) {
            size_t q = line.find(',', start);
            std::string tok = line.substr(start, q == std::string::npos ? std::string::npos : q - start);
            if (col == -1) {
                x1.push_back(std::stod(tok));
            } else {
                map.values.push_back(std::stod(tok));
            }
            ++col;
            if (q == std::string::npos) break;
            start = q + 1;
        }
        if (col != n) throw std::runtime_error("correlation map row has wrong column count");
    }
    if (static_cast<int>(x1.size()) != n) {
        throw std::runtime_error("correlation map must be square (x1 rows == x2 columns)");
    }
    map.grid = Grid1D(x2.front(), x2.back(), n);
    return map;
}

}  // namespace antibunch
