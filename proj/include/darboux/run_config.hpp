#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace darboux {

// Flat key=value run configuration; command-line flags override file
// values. parse_config(emit_config(cfg)) reproduces cfg exactly.
struct RunConfig {
    std::string command = "density";  // density | verify | simulate | catalog
    std::string example;              // catalog id or registered preset
    std::string suite;                // verify only
    double gamma = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> t_values = {1.0};
    double grid_lo = -2.0;
    double grid_hi = 2.0;
    int grid_n = 9;
    double tol = 1e-6;
    long paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 12345;
    int bins = 20;
    double x0 = std::numeric_limits<double>::quiet_NaN();
    std::string out_path;

    void validate() const;  // grid_n >= 2, tol > 0, ...
};

bool config_equal(const RunConfig& a, const RunConfig& b);  // NaN-tolerant

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string emit_config(const RunConfig& cfg);

// Shortest round-trip decimal form (config files) and 17-significant-digit
// form (CSV output); both locale-independent.
std::string format_double(double v);
std::string format_double17(double v);

std::vector<double> parse_double_list(const std::string& text, const std::string& field);

}  // namespace darboux
