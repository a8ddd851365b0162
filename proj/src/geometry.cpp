#include "antibunch/geometry.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace antibunch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct FieldDesc {
    const char* name;
    double ExperimentGeometry::* member;
};

constexpr std::array<FieldDesc, 9> kFields = {{
    {"wavelength", &ExperimentGeometry::wavelength},
    {"slit_width", &ExperimentGeometry::slit_width},
    {"slit_separation", &ExperimentGeometry::slit_separation},
    {"slit_to_detector", &ExperimentGeometry::slit_to_detector},
    {"detector_slit_width", &ExperimentGeometry::detector_slit_width},
    {"detector_slit_height", &ExperimentGeometry::detector_slit_height},
    {"coincidence_window", &ExperimentGeometry::coincidence_window},
    {"waveplate_phase", &ExperimentGeometry::waveplate_phase},
    {"pump_correlation_width", &ExperimentGeometry::pump_correlation_width},
}};

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(ConfigError::Kind::Invariant, name,
                          std::string(name) + " must be strictly positive");
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

void ExperimentGeometry::validate() const {
    require_positive(wavelength, "wavelength");
    require_positive(slit_width, "slit_width");
    require_positive(slit_separation, "slit_separation");
    require_positive(slit_to_detector, "slit_to_detector");
    require_positive(detector_slit_width, "detector_slit_width");
    require_positive(detector_slit_height, "detector_slit_height");
    require_positive(coincidence_window, "coincidence_window");
    if (!(pump_correlation_width >= 0.0) || !std::isfinite(pump_correlation_width)) {
        throw ConfigError(ConfigError::Kind::Invariant, "pump_correlation_width",
                          "pump_correlation_width must be >= 0");
    }
    if (!(slit_separation > slit_width)) {
        throw ConfigError(ConfigError::Kind::Invariant, "slit_separation",
                          "slit_separation must exceed slit_width (slits must not overlap)");
    }
    if (!(waveplate_phase >= 0.0) || !(waveplate_phase < two_pi)) {
        throw ConfigError(ConfigError::Kind::Invariant, "waveplate_phase",
                          "waveplate_phase must lie in [0, 2*pi)");
    }
}

ExperimentGeometry default_geometry() {
    return ExperimentGeometry{};
}

double fringe_period(const ExperimentGeometry& g) {
    return g.wavelength * g.slit_to_detector / g.slit_separation;
}

ExperimentGeometry load_config(std::string_view text) {
    std::map<std::string, double, std::less<>> seen;
    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(ConfigError::Kind::Parse, "",
                              "line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string_view val = trim(line.substr(eq + 1));

        bool known = false;
        for (const auto& f : kFields) known = known || key == f.name;
        if (!known) {
            throw ConfigError(ConfigError::Kind::UnknownKey, key,
                              "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (seen.count(key)) {
            throw ConfigError(ConfigError::Kind::Parse, key,
                              "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }

        double parsed = 0.0;
        const char* b = val.data();
        const char* e = val.data() + val.size();
        auto [p, ec] = std::from_chars(b, e, parsed);
        if (ec != std::errc() || p != e) {
            throw ConfigError(ConfigError::Kind::Parse, key,
                              "line " + std::to_string(lineno) + ": bad numeric value for '" + key + "'");
        }
        seen.emplace(std::move(key), parsed);
    }

    ExperimentGeometry g;
    for (const auto& f : kFields) {
        auto it = seen.find(f.name);
        if (it == seen.end()) {
            throw ConfigError(ConfigError::Kind::MissingKey, f.name,
                              std::string("missing key '") + f.name + "'");
        }
        g.*(f.member) = it->second;
    }
    g.validate();
    return g;
}

std::string serialize_config(const ExperimentGeometry& g) {
    std::string out;
    char buf[64];
    for (const auto& f : kFields) {
        std::snprintf(buf, sizeof(buf), "%.17g", g.*(f.member));
        out += f.name;
        out += " = ";
        out += buf;
        out += '\n';
    }
    return out;
}

ExperimentGeometry load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(ConfigError::Kind::Parse, "", "cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

Grid1D::Grid1D(double min_, double max_, int samples_) : min(min_), max(max_), samples(samples_) {
    if (!(min < max)) throw std::invalid_argument("Grid1D: min must be < max");
    if (samples < 2) throw std::invalid_argument("Grid1D: need at least 2 samples");
}

std::vector<double> Grid1D::positions() const {
    std::vector<double> xs(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) xs[static_cast<size_t>(i)] = position(i);
    return xs;
}

}  // namespace antibunch
