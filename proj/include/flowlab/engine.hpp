#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace flowlab::engine {

// configuration errors exit with code 1, numerical guard failures with 2
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Config = nlohmann::ordered_json;

Config default_config();

// applies a --set override: dotted path, value parsed as JSON when possible
void apply_override(Config& cfg, const std::string& key_eq_value);

// runs the configured experiment, writing its artifacts under out_dir;
// returns the summary that was written to summary.json
Config run(const Config& cfg, const std::string& out_dir);

// two-column series for external plotting: t vs a, t vs b, t vs a/b-1 and the
// log-scale companion of the aspect defect
void emit_plotdata(const std::string& out_dir, const std::vector<double>& t,
                   const std::vector<double>& a, const std::vector<double>& b);

// worker cap honoring FLOWLAB_THREADS
int worker_count(int jobs);

}  // namespace flowlab::engine
