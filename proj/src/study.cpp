#include "acoustics/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace acoustics {

Field consistency_complete(const Field& psi0, const Field& psi1, const Betas& b,
                           double degeneracy_floor) {
    if (!(psi0.grid == psi1.grid))
        throw std::invalid_argument("psi0 and psi1 live on different grids");
    if (b.beta2 != 0.0 || b.beta4 != 0.0)
        throw std::domain_error("consistency condition needs a limit coefficient set (a = 0)");
    const Field lap1 = laplacian(psi1);
    const Field lap0 = laplacian(psi0);
    Field cross(psi0.grid);
    if (b.beta6 != 0.0) cross = grad_dot(gradient(psi1), gradient(psi0));
    Field psi2(psi0.grid);
    for (std::size_t k = 0; k < psi2.size(); ++k) {
        const double denom = 1.0 + b.beta5 * psi1.values[k];
        if (denom <= degeneracy_floor) {
            throw DegeneracyError("consistency condition degenerate: 1 + beta5 psi1 = " +
                                  std::to_string(denom));
        }
        psi2.values[k] = (b.beta1_limit * lap1.values[k] + b.beta3 * lap0.values[k] -
                          2.0 * b.beta6 * cross.values[k]) /
                         denom;
    }
    return psi2;
}

namespace {

/// (psi, psi_t) series extracted from either trajectory type.
struct Series {
    std::vector<double> times;
    std::vector<const Field*> psi;
    std::vector<const Field*> psi_t;
};

Series series_of(const Trajectory3& t) {
    Series s;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        s.times.push_back(t.times[k]);
        s.psi.push_back(&t.states[k].psi);
        s.psi_t.push_back(&t.states[k].psi_t);
    }
    return s;
}

Series series_of(const Trajectory2& t) {
    Series s;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        s.times.push_back(t.times[k]);
        s.psi.push_back(&t.states[k].psi);
        s.psi_t.push_back(&t.states[k].psi_t);
    }
    return s;
}

double h1_proxy_norm(const Field& f) {
    const GradField g = gradient(f);
    return std::sqrt(inner(f, f) + inner_grad(g, g));
}

struct SeriesDistance {
    double psi = 0.0;    // sup_t, H1 proxy
    double psi_t = 0.0;  // sup_t, L2
    double psi_l2 = 0.0;
};

SeriesDistance series_distance(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.times.size(), b.times.size());
    if (n == 0) throw std::invalid_argument("empty trajectory comparison");
    SeriesDistance d;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(a.times[k] - b.times[k]) > 1e-9)
            throw std::invalid_argument("trajectory sample times do not match");
        const Field dpsi = *a.psi[k] - *b.psi[k];
        const Field dv = *a.psi_t[k] - *b.psi_t[k];
        d.psi = std::max(d.psi, h1_proxy_norm(dpsi));
        d.psi_l2 = std::max(d.psi_l2, norm_l2(dpsi));
        d.psi_t = std::max(d.psi_t, norm_l2(dv));
    }
    return d;
}

}  // namespace

LimitStudyResult limit_study(const Field& psi0, const Field& psi1, int sigma, int sigma0,
                             std::span<const double> a_values,
                             const PhysicalParams& p_base, const StepperConfig& cfg) {
    if (a_values.empty()) throw std::invalid_argument("limit_study: no a values");
    for (std::size_t k = 0; k + 1 < a_values.size(); ++k) {
        if (!(a_values[k] > a_values[k + 1]))
            throw std::invalid_argument("a_values must be strictly decreasing");
    }
    PhysicalParams p0 = p_base;
    p0.a = 0.0;
    const Betas betas0 = compute_betas(p0, sigma0, sigma);
    const Field psi2 = consistency_complete(psi0, psi1, betas0);

    LimitStudyResult out;
    out.a_values.assign(a_values.begin(), a_values.end());

    // Limit reference, integrated at dt/4 and sampled on the coarse grid of
    // comparison times.
    StepperConfig cfg_ref = cfg;
    cfg_ref.dt = cfg.dt / 4.0;
    Observers obs_ref;
    obs_ref.state_stride = 4;
    obs_ref.record_energy = false;
    const Trajectory2 ref =
        run_limit(State2{psi0, psi1, 0.0}, betas0, cfg_ref, obs_ref);
    const Series ref_series = series_of(ref);
    out.alpha_min = ref.alpha_min;
    out.alpha_max = ref.alpha_max;

    Observers obs;
    obs.state_stride = 1;
    obs.record_energy = true;
    for (double a : a_values) {
        SeriesDistance d;
        if (a == 0.0) {
            // Same model on both sides; nothing to integrate twice.
            d = SeriesDistance{};
        } else {
            PhysicalParams pa = p_base;
            pa.a = a;
            const Betas betas_a = compute_betas(pa, sigma0, sigma);
            const Trajectory3 run =
                run_general(State3{psi0, psi1, psi2, 0.0}, betas_a, cfg, obs);
            d = series_distance(series_of(run), ref_series);
            out.alpha_min = std::min(out.alpha_min, run.alpha_min);
            out.alpha_max = std::max(out.alpha_max, run.alpha_max);
            out.sup_e1 = std::max(out.sup_e1, run.sup_e1);
        }
        out.err_psi.push_back(d.psi);
        out.err_psi_t.push_back(d.psi_t);
    }
    for (std::size_t k = 0; k + 1 < out.err_psi.size(); ++k) {
        auto order = [](double e0, double e1) {
            return (e0 > 0.0 && e1 > 0.0) ? std::log2(e0 / e1)
                                          : std::numeric_limits<double>::quiet_NaN();
        };
        out.orders_psi.push_back(order(out.err_psi[k], out.err_psi[k + 1]));
        out.orders_psi_t.push_back(order(out.err_psi_t[k], out.err_psi_t[k + 1]));
    }
    return out;
}

std::vector<PairDistance> hierarchy_compare(const Field& psi0, const Field& psi1,
                                            const Field& psi2, const PhysicalParams& p,
                                            const StepperConfig& cfg) {
    validate(p);
    if (!(p.a > 0.0))
        throw std::domain_error("hierarchy comparison needs a > 0 for the third-order models");
    PhysicalParams pl = p;
    pl.a = 0.0;

    Observers obs;
    obs.state_stride = 1;
    obs.record_energy = false;

    std::map<std::string, Series> series;
    std::vector<Trajectory3> runs3;
    std::vector<Trajectory2> runs2;
    runs3.reserve(4);
    runs2.reserve(2);
    for (const ModelId& m : model_catalog()) {
        if (m.requires_a_zero) {
            const Betas b = compute_betas(pl, m.sigma0, m.sigma);
            runs2.push_back(run_limit(State2{psi0, psi1, 0.0}, b, cfg, obs));
            series[m.name] = series_of(runs2.back());
        } else {
            const Betas b = compute_betas(p, m.sigma0, m.sigma);
            runs3.push_back(run_general(State3{psi0, psi1, psi2, 0.0}, b, cfg, obs));
            series[m.name] = series_of(runs3.back());
        }
    }

    static const std::pair<const char*, const char*> adjacent[] = {
        {"BJK", "BJW"}, {"BJK", "BCK"}, {"BJW", "BCW"}, {"BCK", "BCW"},
        {"BCK", "K"},   {"BCW", "W"},   {"K", "W"},
    };
    std::vector<PairDistance> out;
    for (const auto& [na, nb] : adjacent) {
        const SeriesDistance d = series_distance(series.at(na), series.at(nb));
        out.push_back(PairDistance{na, nb, d.psi_l2, d.psi_t});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Manufactured solution: psi = A * prod_j sin(pi x_j / L) * (1 + t^2/2)
// ---------------------------------------------------------------------------

namespace {

struct MmsFields {
    Grid grid;
    double amplitude;
    double lam;  // continuum eigenvalue of -Laplacian for the product mode

    explicit MmsFields(const Grid& g, double a)
        : grid(g), amplitude(a),
          lam(g.dim * (M_PI / g.length) * (M_PI / g.length)) {}

    static double g_of(double t) { return 1.0 + 0.5 * t * t; }
    static double g1(double t) { return t; }
    static double g2(double) { return 1.0; }

    double u(double x, double y) const {
        const double px = std::sin(M_PI * x / grid.length);
        return grid.dim == 1 ? px : px * std::sin(M_PI * y / grid.length);
    }
    double grad_u_sq(double x, double y) const {
        const double w = M_PI / grid.length;
        const double sx = std::sin(w * x), cx = std::cos(w * x);
        if (grid.dim == 1) return w * w * cx * cx;
        const double sy = std::sin(w * y), cy = std::cos(w * y);
        return w * w * (cx * cx * sy * sy + sx * sx * cy * cy);
    }

    Field psi_at(double t) const {
        const double s = amplitude * g_of(t);
        return Field::sample(grid, [&](double x, double y) { return s * u(x, y); });
    }
    Field psi_t_at(double t) const {
        const double s = amplitude * g1(t);
        return Field::sample(grid, [&](double x, double y) { return s * u(x, y); });
    }
    Field psi_tt_at(double t) const {
        const double s = amplitude * g2(t);
        return Field::sample(grid, [&](double x, double y) { return s * u(x, y); });
    }
};

}  // namespace

double MmsErrors::level() const { return std::max({err_psi, err_psi_t, err_psi_tt}); }

MmsErrors mms_error_level_general(const Betas& b, const MmsProblem& mms, const Grid& g,
                                  const StepperConfig& cfg) {
    const MmsFields exact(g, mms.amplitude);
    ModelOptions opts;
    if (mms.linearized) opts.beta5_override = 0.0;
    const double beta5 = mms.linearized ? 0.0 : b.beta5;
    const double beta6 = mms.linearized ? 0.0 : b.beta6;
    const double A = mms.amplitude, lam = exact.lam;

    opts.source = [exact, b, beta5, beta6, A, lam](double x, double y, double t) {
        const double u = exact.u(x, y);
        const double gu2 = exact.grad_u_sq(x, y);
        const double g1 = MmsFields::g1(t), g2 = MmsFields::g2(t),
                     gf = MmsFields::g_of(t);
        const double linear =
            A * u * (b.beta1 * lam * g2 + (b.beta2 * lam * lam + b.beta3 * lam) * g1 +
                     b.beta4 * lam * lam * gf);
        const double r = beta5 * A * A * u * u * g2 * g2 +
                         2.0 * beta6 * A * A * gu2 * (g2 * gf + g1 * g1);
        return linear + r;  // alpha * psi_ttt vanishes: g''' = 0
    };
    Observers obs;
    obs.state_stride = 1;
    obs.record_energy = false;
    State3 init{exact.psi_at(0.0), exact.psi_t_at(0.0), exact.psi_tt_at(0.0), 0.0};
    const Trajectory3 traj = run_general(init, b, cfg, obs, opts);
    MmsErrors err;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double t = traj.times[k];
        err.err_psi = std::max(err.err_psi, norm_l2(traj.states[k].psi - exact.psi_at(t)));
        err.err_psi_t =
            std::max(err.err_psi_t, norm_l2(traj.states[k].psi_t - exact.psi_t_at(t)));
        err.err_psi_tt =
            std::max(err.err_psi_tt, norm_l2(traj.states[k].psi_tt - exact.psi_tt_at(t)));
    }
    return err;
}

MmsErrors mms_error_level_limit(const Betas& b, const MmsProblem& mms, const Grid& g,
                                const StepperConfig& cfg) {
    const MmsFields exact(g, mms.amplitude);
    ModelOptions opts;
    if (mms.linearized) opts.beta5_override = 0.0;
    const double beta5 = mms.linearized ? 0.0 : b.beta5;
    const double beta6 = mms.linearized ? 0.0 : b.beta6;
    const double A = mms.amplitude, lam = exact.lam;

    opts.source = [exact, b, beta5, beta6, A, lam](double x, double y, double t) {
        const double u = exact.u(x, y);
        const double gu2 = exact.grad_u_sq(x, y);
        const double g1 = MmsFields::g1(t), g2 = MmsFields::g2(t),
                     gf = MmsFields::g_of(t);
        return A * u * g2 * (1.0 + beta5 * A * u * g1) +
               b.beta1_limit * lam * A * u * g1 + b.beta3 * lam * A * u * gf +
               2.0 * beta6 * A * A * gu2 * g1 * gf;
    };
    Observers obs;
    obs.state_stride = 1;
    obs.record_energy = false;
    State2 init{exact.psi_at(0.0), exact.psi_t_at(0.0), 0.0};
    const Trajectory2 traj = run_limit(init, b, cfg, obs, opts);
    MmsErrors err;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double t = traj.times[k];
        err.err_psi = std::max(err.err_psi, norm_l2(traj.states[k].psi - exact.psi_at(t)));
        err.err_psi_t =
            std::max(err.err_psi_t, norm_l2(traj.states[k].psi_t - exact.psi_t_at(t)));
    }
    return err;
}

MmsErrors mms_error_level(const ModelId& model, const PhysicalParams& p,
                          const MmsProblem& mms, const Grid& g,
                          const StepperConfig& cfg) {
    validate_model_params(model, p);
    const Betas b = compute_betas(p, model);
    return model.requires_a_zero ? mms_error_level_limit(b, mms, g, cfg)
                                 : mms_error_level_general(b, mms, g, cfg);
}

MmsResult mms_convergence(const ModelId& model, const PhysicalParams& p,
                          const MmsProblem& mms, std::span<const int> n_levels,
                          double dt0, double t_end, int dim) {
    if (n_levels.size() < 2)
        throw std::invalid_argument("mms_convergence needs at least two refinement levels");
    MmsResult out;
    double dt = dt0;
    for (int n : n_levels) {
        const Grid g(dim, n, 1.0);
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        out.n_levels.push_back(n);
        out.errors.push_back(mms_error_level(model, p, mms, g, cfg).err_psi);
        dt /= 2.0;
    }
    const double scale = std::abs(mms.amplitude);
    for (std::size_t k = 0; k + 1 < out.errors.size(); ++k) {
        const double e0 = out.errors[k], e1 = out.errors[k + 1];
        if (e0 <= 1e-14 * std::max(scale, 1e-300) || e1 <= 1e-14 * std::max(scale, 1e-300)) {
            out.flagged = true;
            out.flag_reason = "error at or below round-off; order undefined";
            out.orders.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        if (e1 >= e0) {
            out.flagged = true;
            out.flag_reason = "errors do not decrease under refinement";
        }
        out.orders.push_back(std::log2(e0 / e1));
    }
    return out;
}

double small_data_amplitude(const Grid& g, const PhysicalParams& p, int sigma, int sigma0,
                            const ConstantsEstimate& c) {
    const Betas b = compute_betas(p, sigma0, sigma);
    PhysicalParams p0 = p;
    p0.a = 0.0;
    const Betas b0 = compute_betas(p0, sigma0, sigma);

    // Unit-amplitude sine data with psi1 = 0: the initial higher-order energy
    // is exactly quadratic in the amplitude.
    const Field psi0 = Field::sample(g, [&](double x, double y) {
        const double px = std::sin(M_PI * x / g.length);
        return g.dim == 1 ? px : px * std::sin(M_PI * y / g.length);
    });
    const Field psi1(g);
    const Field psi2 = consistency_complete(psi0, psi1, b0);
    const EnergyReport rep = energy_report(State3{psi0, psi1, psi2, 0.0}, b);
    const double e1_unit = rep.E1;
    const double c0 = constant_C0(c, b);
    if (e1_unit <= 0.0 || c0 <= 0.0)
        throw std::domain_error("small_data_amplitude: degenerate certificate inputs");
    // C0 * 2 * E1(0) <= 1/24 with E1(0) = A^2 * e1_unit.
    return std::sqrt(1.0 / (24.0 * 2.0 * c0 * e1_unit));
}

}  // namespace acoustics
