#include "sedh/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sedh {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_double(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected a number, got '" + v + "'");
    }
}

long long parse_int(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError(line, key, "expected true/false, got '" + v + "'");
}

Vec3 parse_vec3(int line, const std::string& key, const std::string& v) {
    std::istringstream in(v);
    Vec3 out;
    if (!(in >> out.x >> out.y >> out.z)) {
        throw ConfigError(line, key, "expected three numbers, got '" + v + "'");
    }
    std::string rest;
    if (in >> rest) throw ConfigError(line, key, "trailing characters after vector");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z); }

}  // namespace

FileConfig parse_config(const std::string& text) {
    FileConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash_pos = raw.find('#');
        if (hash_pos != std::string::npos) raw = raw.substr(0, hash_pos);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, line, "expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, key, "empty key");
        if (value.empty()) throw ConfigError(line_no, key, "empty value");

        RunConfig& r = cfg.run;
        if (key == "z") r.z = parse_double(line_no, key, value);
        else if (key == "alpha") r.alpha = parse_double(line_no, key, value);
        else if (key == "grid_n") r.grid_n = parse_double(line_no, key, value);
        else if (key == "omega_max") r.omega_max = parse_double(line_no, key, value);
        else if (key == "cutoff_multiplier") r.cutoff_multiplier = parse_double(line_no, key, value);
        else if (key == "period_update_threshold") r.period_update_threshold = parse_double(line_no, key, value);
        else if (key == "steps_per_orbit") r.steps_per_orbit = static_cast<int>(parse_int(line_no, key, value));
        else if (key == "samples_per_mode_period") r.samples_per_mode_period = parse_double(line_no, key, value);
        else if (key == "window_edge_fraction") r.window_edge_fraction = parse_double(line_no, key, value);
        else if (key == "push_threshold") r.push_threshold = parse_double(line_no, key, value);
        else if (key == "push_target") r.push_target = parse_double(line_no, key, value);
        else if (key == "ionisation_threshold") r.ionisation_threshold = parse_double(line_no, key, value);
        else if (key == "t_end") r.t_end = parse_double(line_no, key, value);
        else if (key == "singularity_floor") r.singularity_floor = parse_double(line_no, key, value);
        else if (key == "seed") r.seed = static_cast<std::uint64_t>(parse_int(line_no, key, value));
        else if (key == "sample_stride") r.sample_stride = static_cast<int>(parse_int(line_no, key, value));
        else if (key == "checkpoint_interval") r.checkpoint_interval = parse_double(line_no, key, value);
        else if (key == "ensemble") r.ensemble = static_cast<int>(parse_int(line_no, key, value));
        else if (key == "r0") r.r0 = parse_vec3(line_no, key, value);
        else if (key == "v0") r.v0 = parse_vec3(line_no, key, value);
        else if (key == "spin0") r.spin0 = parse_vec3(line_no, key, value);
        else if (key == "enable_damping") r.toggles.damping = parse_bool(line_no, key, value);
        else if (key == "enable_noise") r.toggles.noise = parse_bool(line_no, key, value);
        else if (key == "enable_magnetic") r.toggles.magnetic = parse_bool(line_no, key, value);
        else if (key == "enable_p4") r.toggles.p4 = parse_bool(line_no, key, value);
        else if (key == "enable_spin_orbit") r.toggles.spin_orbit = parse_bool(line_no, key, value);
        else if (key == "out_dir") cfg.out_dir = value;
        else throw ConfigError(line_no, key, "unknown key");
    }
    try {
        cfg.run.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(0, "validate", err.what());
    }
    return cfg;
}

FileConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string canonical_config_text(const FileConfig& cfg) {
    const RunConfig& r = cfg.run;
    std::ostringstream out;
    out << "z = " << fmt(r.z) << "\n";
    out << "alpha = " << fmt(r.alpha) << "\n";
    out << "grid_n = " << fmt(r.grid_n) << "\n";
    out << "omega_max = " << fmt(r.omega_max) << "\n";
    out << "cutoff_multiplier = " << fmt(r.cutoff_multiplier) << "\n";
    out << "period_update_threshold = " << fmt(r.period_update_threshold) << "\n";
    out << "steps_per_orbit = " << r.steps_per_orbit << "\n";
    out << "samples_per_mode_period = " << fmt(r.samples_per_mode_period) << "\n";
    out << "window_edge_fraction = " << fmt(r.window_edge_fraction) << "\n";
    out << "push_threshold = " << fmt(r.push_threshold) << "\n";
    out << "push_target = " << fmt(r.push_target) << "\n";
    out << "ionisation_threshold = " << fmt(r.ionisation_threshold) << "\n";
    out << "t_end = " << fmt(r.t_end) << "\n";
    out << "singularity_floor = " << fmt(r.singularity_floor) << "\n";
    out << "seed = " << r.seed << "\n";
    out << "sample_stride = " << r.sample_stride << "\n";
    out << "checkpoint_interval = " << fmt(r.checkpoint_interval) << "\n";
    out << "ensemble = " << r.ensemble << "\n";
    out << "r0 = " << fmt(r.r0) << "\n";
    out << "v0 = " << fmt(r.v0) << "\n";
    if (r.spin0) out << "spin0 = " << fmt(*r.spin0) << "\n";
    out << "enable_damping = " << (r.toggles.damping ? "true" : "false") << "\n";
    out << "enable_noise = " << (r.toggles.noise ? "true" : "false") << "\n";
    out << "enable_magnetic = " << (r.toggles.magnetic ? "true" : "false") << "\n";
    out << "enable_p4 = " << (r.toggles.p4 ? "true" : "false") << "\n";
    out << "enable_spin_orbit = " << (r.toggles.spin_orbit ? "true" : "false") << "\n";
    if (!cfg.out_dir.empty()) out << "out_dir = " << cfg.out_dir << "\n";
    return out.str();
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace sedh
