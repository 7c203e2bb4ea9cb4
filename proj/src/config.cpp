#include "acoustics/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "acoustics/csvio.hpp"

namespace acoustics {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, const std::string& key, int line) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected a number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_number(v, key, line);
    const int i = static_cast<int>(std::llround(x));
    if (x != i)
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected an integer, got '" + v + "'");
    return i;
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "': expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, const std::string& key, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), key, line));
    if (out.empty())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': empty list");
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, bool strict,
                       std::vector<std::string>* warnings) {
    RunConfig c;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;

    using Setter = std::function<void(const std::string&, int)>;
    const std::map<std::string, Setter> setters = {
        {"model", [&](const std::string& v, int) { c.model = v; }},
        {"physical.c0", [&](const std::string& v, int l) { c.phys.c0 = parse_number(v, "c0", l); }},
        {"physical.nu_lambda",
         [&](const std::string& v, int l) { c.phys.nu_lambda = parse_number(v, "nu_lambda", l); }},
        {"physical.b_over_a",
         [&](const std::string& v, int l) { c.phys.b_over_a = parse_number(v, "b_over_a", l); }},
        {"physical.a", [&](const std::string& v, int l) { c.phys.a = parse_number(v, "a", l); }},
        {"grid.dim", [&](const std::string& v, int l) { c.dim = parse_int(v, "dim", l); }},
        {"grid.n", [&](const std::string& v, int l) { c.n = parse_int(v, "n", l); }},
        {"grid.length",
         [&](const std::string& v, int l) { c.length = parse_number(v, "length", l); }},
        {"stepper.dt", [&](const std::string& v, int l) { c.stepper.dt = parse_number(v, "dt", l); }},
        {"stepper.t_end",
         [&](const std::string& v, int l) { c.stepper.t_end = parse_number(v, "t_end", l); }},
        {"stepper.theta",
         [&](const std::string& v, int l) { c.stepper.theta = parse_number(v, "theta", l); }},
        {"stepper.linear_solver_tol",
         [&](const std::string& v, int l) {
             c.stepper.linear_solver_tol = parse_number(v, "linear_solver_tol", l);
         }},
        {"stepper.max_linear_iters",
         [&](const std::string& v, int l) {
             c.stepper.max_linear_iters = parse_int(v, "max_linear_iters", l);
         }},
        {"initial.psi0_profile", [&](const std::string& v, int) { c.psi0.profile = v; }},
        {"initial.psi0_amplitude",
         [&](const std::string& v, int l) { c.psi0.amplitude = parse_number(v, "psi0_amplitude", l); }},
        {"initial.psi0_file", [&](const std::string& v, int) { c.psi0.file = v; }},
        {"initial.psi1_profile", [&](const std::string& v, int) { c.psi1.profile = v; }},
        {"initial.psi1_amplitude",
         [&](const std::string& v, int l) { c.psi1.amplitude = parse_number(v, "psi1_amplitude", l); }},
        {"initial.psi1_file", [&](const std::string& v, int) { c.psi1.file = v; }},
        {"initial.psi2", [&](const std::string& v, int) { c.psi2 = v; }},
        {"initial.psi2_file", [&](const std::string& v, int) { c.psi2_file = v; }},
        {"observers.stride",
         [&](const std::string& v, int l) { c.observer_stride = parse_int(v, "stride", l); }},
        {"observers.energy",
         [&](const std::string& v, int l) { c.record_energy = parse_bool(v, "energy", l); }},
        {"observers.snapshots",
         [&](const std::string& v, int l) { c.record_snapshots = parse_bool(v, "snapshots", l); }},
        {"output.dir", [&](const std::string& v, int) { c.out_dir = v; }},
        {"study.a_values",
         [&](const std::string& v, int l) { c.study_a_values = parse_list(v, "a_values", l); }},
        {"mms.levels",
         [&](const std::string& v, int l) {
             c.mms_levels.clear();
             for (double x : parse_list(v, "levels", l))
                 c.mms_levels.push_back(static_cast<int>(std::llround(x)));
         }},
        {"mms.amplitude",
         [&](const std::string& v, int l) { c.mms_amplitude = parse_number(v, "amplitude", l); }},
    };

    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section '" +
                                  t + "'");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                              t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        const auto it = setters.find(full);
        if (it == setters.end()) {
            if (strict)
                throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + full +
                                  "'");
            if (warnings) warnings->push_back("ignoring unknown key '" + full + "'");
            continue;
        }
        it->second(value, lineno);
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path, bool strict,
                      std::vector<std::string>* warnings) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), strict, warnings);
}

namespace {

void render_initial(std::ostream& os, const char* prefix, const InitialSpec& s) {
    os << prefix << "_profile = " << s.profile << '\n';
    os << prefix << "_amplitude = " << format_double(s.amplitude) << '\n';
    if (!s.file.empty()) os << prefix << "_file = " << s.file << '\n';
}

}  // namespace

std::string render_config(const RunConfig& c) {
    std::ostringstream os;
    os << "# run config v1\n";
    os << "model = " << c.model << '\n';
    os << "[physical]\n";
    os << "c0 = " << format_double(c.phys.c0) << '\n';
    os << "nu_lambda = " << format_double(c.phys.nu_lambda) << '\n';
    os << "b_over_a = " << format_double(c.phys.b_over_a) << '\n';
    os << "a = " << format_double(c.phys.a) << '\n';
    os << "[grid]\n";
    os << "dim = " << c.dim << '\n';
    os << "n = " << c.n << '\n';
    os << "length = " << format_double(c.length) << '\n';
    os << "[stepper]\n";
    os << "dt = " << format_double(c.stepper.dt) << '\n';
    os << "t_end = " << format_double(c.stepper.t_end) << '\n';
    os << "theta = " << format_double(c.stepper.theta) << '\n';
    os << "linear_solver_tol = " << format_double(c.stepper.linear_solver_tol) << '\n';
    os << "max_linear_iters = " << c.stepper.max_linear_iters << '\n';
    os << "[initial]\n";
    render_initial(os, "psi0", c.psi0);
    render_initial(os, "psi1", c.psi1);
    os << "psi2 = " << c.psi2 << '\n';
    if (!c.psi2_file.empty()) os << "psi2_file = " << c.psi2_file << '\n';
    os << "[observers]\n";
    os << "stride = " << c.observer_stride << '\n';
    os << "energy = " << (c.record_energy ? "true" : "false") << '\n';
    os << "snapshots = " << (c.record_snapshots ? "true" : "false") << '\n';
    os << "[output]\n";
    os << "dir = " << c.out_dir << '\n';
    os << "[study]\n";
    os << "a_values = ";
    for (std::size_t k = 0; k < c.study_a_values.size(); ++k)
        os << (k ? "," : "") << format_double(c.study_a_values[k]);
    os << '\n';
    os << "[mms]\n";
    os << "levels = ";
    for (std::size_t k = 0; k < c.mms_levels.size(); ++k)
        os << (k ? "," : "") << c.mms_levels[k];
    os << '\n';
    os << "amplitude = " << format_double(c.mms_amplitude) << '\n';
    return os.str();
}

void validate(const RunConfig& c) {
    const ModelId m = model_from_name(c.model);  // throws on unknown name
    try {
        validate_model_params(m, c.phys);
        Grid probe(c.dim, c.n, c.length);
        validate(c.stepper);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    auto check_profile = [](const InitialSpec& s, const char* which) {
        if (s.profile != "sine" && s.profile != "bump" && s.profile != "zero" &&
            s.profile != "file")
            throw ConfigError(std::string(which) +
                              ": profile must be sine, bump, zero or file (got '" +
                              s.profile + "')");
        if (s.profile == "file") {
            if (s.file.empty())
                throw ConfigError(std::string(which) + ": profile 'file' needs a file path");
            if (!std::filesystem::exists(s.file))
                throw ConfigError(std::string(which) + ": file '" + s.file +
                                  "' does not exist");
        }
        if (!std::isfinite(s.amplitude))
            throw ConfigError(std::string(which) + ": amplitude must be finite");
    };
    check_profile(c.psi0, "psi0");
    check_profile(c.psi1, "psi1");
    if (c.psi2 != "consistent" && c.psi2 != "file")
        throw ConfigError("psi2 must be 'consistent' or 'file' (got '" + c.psi2 + "')");
    if (c.psi2 == "file") {
        if (c.psi2_file.empty()) throw ConfigError("psi2 = file needs psi2_file");
        if (!std::filesystem::exists(c.psi2_file))
            throw ConfigError("psi2_file '" + c.psi2_file + "' does not exist");
    }
    if (c.observer_stride < 1) throw ConfigError("observers.stride must be >= 1");
    for (std::size_t k = 0; k + 1 < c.study_a_values.size(); ++k)
        if (!(c.study_a_values[k] > c.study_a_values[k + 1]))
            throw ConfigError("study.a_values must be strictly decreasing");
    for (double a : c.study_a_values)
        if (!(a >= 0.0)) throw ConfigError("study.a_values must be >= 0");
    if (c.mms_levels.size() < 2) throw ConfigError("mms.levels needs at least two entries");
    for (int n : c.mms_levels)
        if (n < 3) throw ConfigError("mms.levels entries must be >= 3");
}

Grid make_grid(const RunConfig& c) { return Grid(c.dim, c.n, c.length); }

Field make_initial_field(const InitialSpec& spec, const Grid& g) {
    if (spec.profile == "zero") return Field(g);
    if (spec.profile == "sine") {
        return Field::sample(g, [&](double x, double y) {
            const double px = std::sin(M_PI * x / g.length);
            return spec.amplitude * (g.dim == 1 ? px : px * std::sin(M_PI * y / g.length));
        });
    }
    if (spec.profile == "bump") {
        // Polynomial bump supported on the middle half of each axis.
        auto bump1 = [&](double x) {
            const double s = (x - 0.5 * g.length) / (0.25 * g.length);
            const double w = 1.0 - s * s;
            return w > 0.0 ? w * w * w : 0.0;
        };
        return Field::sample(g, [&](double x, double y) {
            return spec.amplitude * (g.dim == 1 ? bump1(x) : bump1(x) * bump1(y));
        });
    }
    if (spec.profile == "file") return read_field_file(spec.file, g);
    throw ConfigError("unknown initial profile '" + spec.profile + "'");
}

}  // namespace acoustics
