#include "acoustics/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "acoustics/analysis.hpp"
#include "acoustics/csvio.hpp"

namespace acoustics {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_summary(const std::string& out_dir, const json& summary) {
    std::ofstream os(fs::path(out_dir) / "summary.json");
    os << summary.dump(2) << '\n';
}

void prepare_dir(const std::string& out_dir) { fs::create_directories(out_dir); }

std::string snapshot_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "psi_%06zu.csv", k);
    return buf;
}

struct InitialData {
    Field psi0;
    Field psi1;
    Field psi2;  // only meaningful for third-order models
};

InitialData build_initial(const RunConfig& c, const Grid& g, const ModelId& m) {
    InitialData d{make_initial_field(c.psi0, g), make_initial_field(c.psi1, g), Field(g)};
    if (!m.requires_a_zero) {
        if (c.psi2 == "file") {
            d.psi2 = read_field_file(c.psi2_file, g);
        } else {
            PhysicalParams p0 = c.phys;
            p0.a = 0.0;
            d.psi2 = consistency_complete(d.psi1.grid == g ? d.psi0 : d.psi0, d.psi1,
                                          compute_betas(p0, m.sigma0, m.sigma));
        }
    }
    return d;
}

double field_max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

int cmd_simulate(const RunConfig& c, const std::string& out_dir, json& summary) {
    prepare_dir(out_dir);
    const ModelId m = model_from_name(c.model);
    const Grid g = make_grid(c);
    const Betas b = compute_betas(c.phys, m);
    const InitialData init = build_initial(c, g, m);

    Observers obs;
    obs.state_stride = c.observer_stride;
    obs.energy_stride = c.observer_stride;
    obs.record_states = true;
    obs.record_energy = c.record_energy;

    summary["schema_version"] = 1;
    summary["subcommand"] = "simulate";
    summary["model"] = m.name;

    std::vector<EnergyReport> energy;
    std::vector<double> times;
    std::vector<Field> psi_series;
    Field psi_final(g), psi_t_final(g), psi_tt_final(g);
    bool have_tt = false;
    double alpha_min = 1.0, alpha_max = 1.0;
    std::vector<std::string> warnings;
    try {
        if (m.requires_a_zero) {
            const Trajectory2 traj =
                run_limit(State2{init.psi0, init.psi1, 0.0}, b, c.stepper, obs);
            times = traj.times;
            alpha_min = traj.alpha_min;
            alpha_max = traj.alpha_max;
            warnings = traj.warnings;
            for (const auto& s : traj.states) psi_series.push_back(s.psi);
            if (c.record_energy) {
                double accum = 0.0;
                EnergyReport prev;
                for (std::size_t k = 0; k < traj.states.size(); ++k) {
                    const State2& s = traj.states[k];
                    const State3 s3{s.psi, s.psi_t, accel_limit(s, b), s.time};
                    EnergyReport row = energy_report(s3, b);
                    if (k > 0)
                        accum += 0.5 * (row.E2_instant + prev.E2_instant) * (row.t - prev.t);
                    row.E2_accum = accum;
                    energy.push_back(row);
                    prev = row;
                }
            }
            const State2& last = traj.states.back();
            psi_final = last.psi;
            psi_t_final = last.psi_t;
        } else {
            const Trajectory3 traj =
                run_general(State3{init.psi0, init.psi1, init.psi2, 0.0}, b, c.stepper, obs);
            times = traj.times;
            energy = traj.energy;
            alpha_min = traj.alpha_min;
            alpha_max = traj.alpha_max;
            warnings = traj.warnings;
            for (const auto& s : traj.states) psi_series.push_back(s.psi);
            const State3& last = traj.states.back();
            psi_final = last.psi;
            psi_t_final = last.psi_t;
            psi_tt_final = last.psi_tt;
            have_tt = true;
        }
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }

    if (!energy.empty()) {
        std::ofstream os(fs::path(out_dir) / "energy.csv");
        write_energy_csv(os, energy);
    }
    write_field_file((fs::path(out_dir) / "psi_final.csv").string(), psi_final);
    write_field_file((fs::path(out_dir) / "psi_t_final.csv").string(), psi_t_final);
    if (have_tt)
        write_field_file((fs::path(out_dir) / "psi_tt_final.csv").string(), psi_tt_final);
    if (c.record_snapshots) {
        for (std::size_t k = 0; k < psi_series.size(); ++k)
            write_field_file((fs::path(out_dir) / snapshot_name(k)).string(), psi_series[k]);
    }

    summary["pass"] = true;
    summary["alpha_min"] = alpha_min;
    summary["alpha_max"] = alpha_max;
    summary["samples"] = times.size();
    summary["t_final"] = times.back();
    summary["warnings"] = warnings;
    write_summary(out_dir, summary);
    return 0;
}

int cmd_limit_study(const RunConfig& c, const std::string& out_dir, json& summary) {
    prepare_dir(out_dir);
    const ModelId m = model_from_name(c.model);
    const Grid g = make_grid(c);
    const Field psi0 = make_initial_field(c.psi0, g);
    const Field psi1 = make_initial_field(c.psi1, g);

    summary["schema_version"] = 1;
    summary["subcommand"] = "limit-study";
    summary["sigma"] = m.sigma;
    summary["sigma0"] = m.sigma0;

    LimitStudyResult res;
    try {
        res = limit_study(psi0, psi1, m.sigma, m.sigma0, c.study_a_values, c.phys, c.stepper);
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }

    {
        std::ofstream os(fs::path(out_dir) / "limit_study.csv");
        os << "# limit-study v1\n";
        os << "a,error_psi,error_psi_t,observed_order_psi,observed_order_psi_t\n";
        for (std::size_t k = 0; k < res.a_values.size(); ++k) {
            os << format_double(res.a_values[k]) << ',' << format_double(res.err_psi[k])
               << ',' << format_double(res.err_psi_t[k]) << ',';
            os << (k < res.orders_psi.size() ? format_double(res.orders_psi[k]) : "");
            os << ',';
            os << (k < res.orders_psi_t.size() ? format_double(res.orders_psi_t[k]) : "");
            os << '\n';
        }
    }

    bool monotone = true;
    for (std::size_t k = 0; k + 1 < res.err_psi.size(); ++k) {
        if (!(res.err_psi[k] > res.err_psi[k + 1])) monotone = false;
        if (!(res.err_psi_t[k] > res.err_psi_t[k + 1])) monotone = false;
    }
    summary["pass"] = monotone;
    summary["a_values"] = res.a_values;
    summary["error_psi"] = res.err_psi;
    summary["error_psi_t"] = res.err_psi_t;
    summary["observed_order_psi"] = res.orders_psi;
    summary["observed_order_psi_t"] = res.orders_psi_t;
    summary["alpha_min"] = res.alpha_min;
    summary["alpha_max"] = res.alpha_max;
    write_summary(out_dir, summary);
    return monotone ? 0 : 1;
}

int cmd_hierarchy(const RunConfig& c, const std::string& out_dir, json& summary) {
    prepare_dir(out_dir);
    const Grid g = make_grid(c);
    const Field psi0 = make_initial_field(c.psi0, g);
    const Field psi1 = make_initial_field(c.psi1, g);

    summary["schema_version"] = 1;
    summary["subcommand"] = "hierarchy";

    std::vector<PairDistance> dists;
    try {
        PhysicalParams p0 = c.phys;
        p0.a = 0.0;
        const ModelId m = model_from_name(c.model);
        const Field psi2 =
            consistency_complete(psi0, psi1, compute_betas(p0, m.sigma0, m.sigma));
        dists = hierarchy_compare(psi0, psi1, psi2, c.phys, c.stepper);
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }

    {
        std::ofstream os(fs::path(out_dir) / "hierarchy.csv");
        os << "# hierarchy v1\n";
        os << "model_a,model_b,dist_psi,dist_psi_t\n";
        for (const auto& d : dists) {
            os << d.model_a << ',' << d.model_b << ',' << format_double(d.dist_psi) << ','
               << format_double(d.dist_psi_t) << '\n';
        }
    }
    summary["pass"] = true;
    json rows = json::array();
    for (const auto& d : dists) {
        rows.push_back({{"model_a", d.model_a},
                        {"model_b", d.model_b},
                        {"dist_psi", d.dist_psi},
                        {"dist_psi_t", d.dist_psi_t}});
    }
    summary["pairs"] = rows;
    write_summary(out_dir, summary);
    return 0;
}

int cmd_constants(const RunConfig& c, const std::string& out_dir, unsigned seed,
                  json& summary) {
    prepare_dir(out_dir);
    summary["schema_version"] = 1;
    summary["subcommand"] = "constants";
    try {
        const Grid g = make_grid(c);
        const ConstantsEstimate est = estimate_constants(g, seed);
        const ModelId m = model_from_name(c.model);
        const Betas b = compute_betas(c.phys, m);
        const double T = c.stepper.t_end;
        summary["lambda_min"] = est.lambda_min;
        summary["C_PF"] = est.C_PF;
        summary["C_L4"] = est.C_L4;
        summary["C_L6"] = est.C_L6;
        summary["C_Linf"] = est.C_Linf;
        summary["C_Delta"] = est.C_Delta;
        summary["C0"] = constant_C0(est, b);
        summary["C1"] = constant_C1(est, b);
        summary["C2"] = constant_C2(est, b);
        summary["C3"] = constant_C3(b);
        summary["C4"] = constant_C4(est, b, T);
        std::ofstream os(fs::path(out_dir) / "constants.csv");
        os << "# constants v1\n";
        os << "name,value\n";
        for (const char* key : {"lambda_min", "C_PF", "C_L4", "C_L6", "C_Linf", "C_Delta",
                                "C0", "C1", "C2", "C3", "C4"}) {
            os << key << ',' << format_double(summary[key].get<double>()) << '\n';
        }
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }
    summary["pass"] = true;
    write_summary(out_dir, summary);
    return 0;
}

int cmd_mms(const RunConfig& c, const std::string& out_dir, json& summary) {
    prepare_dir(out_dir);
    summary["schema_version"] = 1;
    summary["subcommand"] = "mms";
    MmsResult res;
    try {
        const ModelId m = model_from_name(c.model);
        MmsProblem prob;
        prob.amplitude = c.mms_amplitude;
        res = mms_convergence(m, c.phys, prob, c.mms_levels, c.stepper.dt, c.stepper.t_end,
                              c.dim);
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }
    {
        std::ofstream os(fs::path(out_dir) / "mms.csv");
        os << "# mms v1\n";
        os << "n,error,observed_order\n";
        for (std::size_t k = 0; k < res.errors.size(); ++k) {
            os << res.n_levels[k] << ',' << format_double(res.errors[k]) << ',';
            if (k > 0 && k - 1 < res.orders.size()) os << format_double(res.orders[k - 1]);
            os << '\n';
        }
    }
    bool pass = !res.flagged;
    for (double o : res.orders)
        if (!(o >= 1.8 && o <= 2.2)) pass = false;
    summary["pass"] = pass;
    summary["errors"] = res.errors;
    summary["orders"] = res.orders;
    summary["flagged"] = res.flagged;
    if (res.flagged) summary["flag_reason"] = res.flag_reason;
    write_summary(out_dir, summary);
    return pass ? 0 : 1;
}

int cmd_check_consistency(const RunConfig& c, const std::string& out_dir, json& summary) {
    prepare_dir(out_dir);
    summary["schema_version"] = 1;
    summary["subcommand"] = "check-consistency";
    try {
        const ModelId m = model_from_name(c.model);
        const Grid g = make_grid(c);
        const Field psi0 = make_initial_field(c.psi0, g);
        const Field psi1 = make_initial_field(c.psi1, g);
        PhysicalParams p0 = c.phys;
        p0.a = 0.0;
        const Betas b0 = compute_betas(p0, m.sigma0, m.sigma);
        const Field psi2 = consistency_complete(psi0, psi1, b0);
        const Field F = residual_F(State3{psi0, psi1, psi2, 0.0}, b0);

        const double scale = field_max_abs(psi2) +
                             b0.beta1_limit * field_max_abs(laplacian(psi1)) +
                             b0.beta3 * field_max_abs(laplacian(psi0)) + 1e-300;
        const double worst = field_max_abs(F);
        const bool pass = worst <= 1e-12 * scale;

        write_field_file((fs::path(out_dir) / "psi2.csv").string(), psi2);
        summary["pass"] = pass;
        summary["residual_max"] = worst;
        summary["scale"] = scale;
        write_summary(out_dir, summary);
        return pass ? 0 : 1;
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = e.what();
        write_summary(out_dir, summary);
        return 1;
    }
}

}  // namespace acoustics
