#pragma once

#include <string>
#include <vector>

#include "darboux/catalog.hpp"
#include "darboux/montecarlo.hpp"

namespace darboux {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct CheckOptions {
    std::string example;  // restrict to one catalog id; empty = all applicable
    double gamma = 0.5;   // used when the suite touches e3
    long mc_paths = 100000;
    double mc_dt = 1e-3;
    std::uint64_t mc_seed = 12345;
};

// Named suites: invariance, theorem48, duality, intertwine, spectral,
// lemma51, appendixA, mc, excessive, corollary52, negativity.
// Throws UnknownSuite for anything else.
std::vector<CheckResult> run_suite(const std::string& suite, const CheckOptions& opts = {});

const std::vector<std::string>& suite_names();

bool all_passed(const std::vector<CheckResult>& results);

// Models a suite iterates over: the five ids with e3 at the options'
// gamma (or at {0.5, 1, 3} when expand_gamma is set).
std::vector<ExampleModel> models_for(const CheckOptions& opts, bool expand_gamma = false);

}  // namespace darboux
