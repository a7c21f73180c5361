#include "darboux/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "darboux/errors.hpp"

namespace darboux {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_double17(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& field) {
    double v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw ConfigError("field " + field + ": cannot parse number '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& field) {
    long v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("field " + field + ": cannot parse integer '" + s + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, field));
    }
    if (out.empty()) throw ConfigError("field " + field + ": empty list");
    return out;
}

void RunConfig::validate() const {
    if (grid_n < 2) throw ConfigError("field grid: count must be >= 2");
    if (!(tol > 0.0)) throw ConfigError("field tol: must be > 0");
    if (bins < 1) throw ConfigError("field bins: must be >= 1");
    if (paths < 1) throw ConfigError("field paths: must be >= 1");
    if (!(dt > 0.0)) throw ConfigError("field dt: must be > 0");
    for (double t : t_values) {
        if (!(t > 0.0)) throw ConfigError("field t: values must be > 0");
    }
    if (command != "density" && command != "verify" && command != "simulate" &&
        command != "catalog") {
        throw ConfigError("field command: unknown command '" + command + "'");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" +
                              line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "command") cfg.command = val;
        else if (key == "example") cfg.example = val;
        else if (key == "suite") cfg.suite = val;
        else if (key == "gamma") cfg.gamma = parse_double(val, "gamma");
        else if (key == "t") cfg.t_values = parse_double_list(val, "t");
        else if (key == "grid") {
            const size_t c1 = val.find(':');
            const size_t c2 = val.rfind(':');
            if (c1 == std::string::npos || c2 == c1) {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": field grid: expected lo:hi:n, got '" + val + "'");
            }
            cfg.grid_lo = parse_double(val.substr(0, c1), "grid");
            cfg.grid_hi = parse_double(val.substr(c1 + 1, c2 - c1 - 1), "grid");
            cfg.grid_n = static_cast<int>(parse_long(val.substr(c2 + 1), "grid"));
        } else if (key == "tol") cfg.tol = parse_double(val, "tol");
        else if (key == "paths") cfg.paths = parse_long(val, "paths");
        else if (key == "dt") cfg.dt = parse_double(val, "dt");
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(val, "seed"));
        else if (key == "bins") cfg.bins = static_cast<int>(parse_long(val, "bins"));
        else if (key == "x0") cfg.x0 = parse_double(val, "x0");
        else if (key == "out") cfg.out_path = val;
        else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
    std::string out;
    out += "command=" + cfg.command + "\n";
    if (!cfg.example.empty()) out += "example=" + cfg.example + "\n";
    if (!cfg.suite.empty()) out += "suite=" + cfg.suite + "\n";
    if (!std::isnan(cfg.gamma)) out += "gamma=" + format_double(cfg.gamma) + "\n";
    out += "t=";
    for (size_t i = 0; i < cfg.t_values.size(); ++i) {
        if (i) out += ",";
        out += format_double(cfg.t_values[i]);
    }
    out += "\n";
    out += "grid=" + format_double(cfg.grid_lo) + ":" + format_double(cfg.grid_hi) + ":" +
           std::to_string(cfg.grid_n) + "\n";
    out += "tol=" + format_double(cfg.tol) + "\n";
    out += "paths=" + std::to_string(cfg.paths) + "\n";
    out += "dt=" + format_double(cfg.dt) + "\n";
    out += "seed=" + std::to_string(cfg.seed) + "\n";
    out += "bins=" + std::to_string(cfg.bins) + "\n";
    if (!std::isnan(cfg.x0)) out += "x0=" + format_double(cfg.x0) + "\n";
    if (!cfg.out_path.empty()) out += "out=" + cfg.out_path + "\n";
    return out;
}

bool config_equal(const RunConfig& a, const RunConfig& b) {
    auto deq = [](double x, double y) {
        return (std::isnan(x) && std::isnan(y)) || x == y;
    };
    if (a.t_values.size() != b.t_values.size()) return false;
    for (size_t i = 0; i < a.t_values.size(); ++i) {
        if (!deq(a.t_values[i], b.t_values[i])) return false;
    }
    return a.command == b.command && a.example == b.example && a.suite == b.suite &&
           deq(a.gamma, b.gamma) && deq(a.grid_lo, b.grid_lo) && deq(a.grid_hi, b.grid_hi) &&
           a.grid_n == b.grid_n && deq(a.tol, b.tol) && a.paths == b.paths && deq(a.dt, b.dt) &&
           a.seed == b.seed && a.bins == b.bins && deq(a.x0, b.x0) && a.out_path == b.out_path;
}

}  // namespace darboux
