#pragma once

#include <string>
#include <vector>

#include "acoustics/params.hpp"
#include "acoustics/timestep.hpp"

namespace acoustics {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Initial data: a named analytic profile with amplitude, or a field CSV.
struct InitialSpec {
    std::string profile = "sine";  // sine | bump | zero | file
    double amplitude = 0.01;
    std::string file;  // used when profile == "file"

    friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

/// One batch run, as read from a config file.
struct RunConfig {
    std::string model = "W";
    PhysicalParams phys{1.0, 0.1, 1.0, 0.0};
    int dim = 1;
    int n = 64;
    double length = 1.0;
    StepperConfig stepper{1e-3, 0.1, 0.5, 1e-10, 2000};
    InitialSpec psi0{};
    InitialSpec psi1{"zero", 0.0, ""};
    std::string psi2 = "consistent";  // consistent | file
    std::string psi2_file;
    int observer_stride = 1;
    bool record_energy = true;
    bool record_snapshots = false;
    std::string out_dir = "out";
    // Study presets.
    std::vector<double> study_a_values{0.1, 0.05, 0.025, 0.0125};
    std::vector<int> mms_levels{64, 128, 256};
    double mms_amplitude = 0.01;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the key-value / [section] format. Unknown keys raise ConfigError
/// in strict mode and are collected as warnings otherwise. Every numeric
/// field is validated against the module preconditions at parse time.
RunConfig parse_config(const std::string& text, bool strict = true,
                       std::vector<std::string>* warnings = nullptr);

RunConfig load_config(const std::string& path, bool strict = true,
                      std::vector<std::string>* warnings = nullptr);

/// Canonical rendering; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& c);

/// Full cross-field validation (also called by parse_config).
void validate(const RunConfig& c);

/// Materialises the initial fields on the configured grid.
Grid make_grid(const RunConfig& c);
Field make_initial_field(const InitialSpec& spec, const Grid& g);

}  // namespace acoustics
