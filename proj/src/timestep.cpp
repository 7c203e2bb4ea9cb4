#include "acoustics/timestep.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <stdexcept>

#include "acoustics/analysis.hpp"

namespace acoustics {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

SpMat neg_laplacian_matrix(const Grid& g) {
    const double ih2 = 1.0 / (g.h * g.h);
    const int n = g.n;
    std::vector<Eigen::Triplet<double>> trips;
    if (g.dim == 1) {
        trips.reserve(3 * n);
        for (int i = 0; i < n; ++i) {
            trips.emplace_back(i, i, 2.0 * ih2);
            if (i > 0) trips.emplace_back(i, i - 1, -ih2);
            if (i + 1 < n) trips.emplace_back(i, i + 1, -ih2);
        }
    } else {
        trips.reserve(5 * g.size());
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const int k = static_cast<int>(g.index(i, j));
                trips.emplace_back(k, k, 4.0 * ih2);
                if (i > 0) trips.emplace_back(k, k - 1, -ih2);
                if (i + 1 < n) trips.emplace_back(k, k + 1, -ih2);
                if (j > 0) trips.emplace_back(k, k - n, -ih2);
                if (j + 1 < n) trips.emplace_back(k, k + n, -ih2);
            }
        }
    }
    SpMat m(static_cast<int>(g.size()), static_cast<int>(g.size()));
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

Vec to_vec(const Field& f) {
    return Eigen::Map<const Vec>(f.values.data(), static_cast<Eigen::Index>(f.size()));
}

Field to_field(const Grid& g, const Vec& v) {
    Field f(g);
    Eigen::Map<Vec>(f.values.data(), v.size()) = v;
    return f;
}

Field eval_source(const Grid& g, const std::function<double(double, double, double)>& f,
                  double t) {
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) out.values[i] = f(g.coord(i), 0.0, t);
    } else {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                out.values[g.index(i, j)] = f(g.coord(i), g.coord(j), t);
    }
    return out;
}

/// Shared per-step solve machinery: A = diag(alpha*) + K with fixed K.
struct ImplicitSolve {
    SpMat stiffness;             // K, compressed, diagonal structurally present
    SpMat system;                // K + diag(alpha*), pattern identical to K
    std::vector<int> diag_pos;   // position of each diagonal entry in the value array
    bool use_direct = true;
    Eigen::SimplicialLDLT<SpMat> direct;
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg;
    bool pattern_ready = false;

    void init(SpMat k, const StepperConfig& cfg) {
        stiffness = std::move(k);
        stiffness.makeCompressed();
        system = stiffness;
        use_direct = stiffness.rows() <= kDirectSolverLimit;
        cg.setTolerance(cfg.linear_solver_tol);
        cg.setMaxIterations(cfg.max_linear_iters);
        diag_pos.assign(stiffness.outerSize(), -1);
        for (int col = 0; col < stiffness.outerSize(); ++col) {
            for (SpMat::InnerIterator it(system, col); it; ++it) {
                if (it.row() == col) {
                    diag_pos[col] = static_cast<int>(&it.valueRef() - system.valuePtr());
                    break;
                }
            }
            if (diag_pos[col] < 0)
                throw SolverError("system matrix lacks a diagonal entry");
        }
    }

    Vec solve(const Vec& alpha_star, const Vec& rhs) {
        std::copy(stiffness.valuePtr(), stiffness.valuePtr() + stiffness.nonZeros(),
                  system.valuePtr());
        for (int col = 0; col < system.outerSize(); ++col)
            system.valuePtr()[diag_pos[col]] += alpha_star[col];
        if (use_direct) {
            if (!pattern_ready) {
                direct.analyzePattern(system);
                pattern_ready = true;
            }
            direct.factorize(system);
            if (direct.info() != Eigen::Success)
                throw SolverError("sparse factorization failed");
            return direct.solve(rhs);
        }
        cg.compute(system);
        Vec x = cg.solve(rhs);
        if (cg.info() != Eigen::Success) {
            throw SolverError("iterative solve did not converge (residual " +
                              std::to_string(cg.error()) + ")");
        }
        return x;
    }
};

Field extrapolate(const Field& now, const Field& prev, double theta) {
    Field out(now.grid);
    for (std::size_t k = 0; k < out.size(); ++k)
        out.values[k] = now.values[k] + theta * (now.values[k] - prev.values[k]);
    return out;
}

}  // namespace

void validate(const StepperConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::domain_error("dt must be > 0");
    if (!(cfg.t_end >= 0.0)) throw std::domain_error("t_end must be >= 0");
    if (!(cfg.theta >= 0.5 && cfg.theta <= 1.0))
        throw std::domain_error("theta must lie in [1/2, 1]");
    if (!(cfg.linear_solver_tol > 0.0))
        throw std::domain_error("linear_solver_tol must be > 0");
    if (cfg.max_linear_iters < 1) throw std::domain_error("max_linear_iters must be >= 1");
}

// ---------------------------------------------------------------------------
// GeneralStepper
// ---------------------------------------------------------------------------

struct GeneralStepper::Impl {
    Grid grid;
    Betas betas;
    StepperConfig cfg;
    ModelOptions opts;
    ImplicitSolve solver;
    State3 state;
    State3 prev;
    bool have_prev = false;
    double alpha_min = 1.0, alpha_max = 1.0;

    Impl(const Grid& g, const Betas& b, const StepperConfig& c, const ModelOptions& o)
        : grid(g), betas(b), cfg(c), opts(o) {
        validate(cfg);
        const double dt = cfg.dt, th = cfg.theta;
        const SpMat L = neg_laplacian_matrix(g);
        const double c1 = dt * th * b.beta1 + dt * dt * th * th * b.beta3;
        const double c2 = dt * dt * th * th * b.beta2 + dt * dt * dt * th * th * th * b.beta4;
        SpMat k = c1 * L;
        if (c2 != 0.0) {
            const SpMat LL = (L * L).pruned();
            k = k + c2 * LL;
        }
        solver.init(std::move(k), cfg);
    }

    void reset(const State3& initial) {
        if (!(initial.psi.grid == grid))
            throw std::invalid_argument("initial state grid does not match stepper grid");
        state = initial;
        have_prev = false;
        const double beta5 = opts.beta5_override.value_or(betas.beta5);
        double smin = 1.0 + beta5 * field_min(initial.psi_t);
        double smax = 1.0 + beta5 * field_max(initial.psi_t);
        if (beta5 < 0.0) std::swap(smin, smax);
        alpha_min = smin;
        alpha_max = smax;
    }

    State3 do_step() {
        const double dt = cfg.dt, th = cfg.theta;
        const double beta5 = opts.beta5_override.value_or(betas.beta5);

        State3 star;
        if (have_prev) {
            star.psi = extrapolate(state.psi, prev.psi, th);
            star.psi_t = extrapolate(state.psi_t, prev.psi_t, th);
            star.psi_tt = extrapolate(state.psi_tt, prev.psi_tt, th);
        } else {
            // Bootstrap from the prescribed data alone: Taylor predictor with
            // the acceleration supplied by the equation itself.
            star.psi = state.psi;
            axpy(th * dt, state.psi_t, star.psi);
            star.psi_t = state.psi_t;
            axpy(th * dt, state.psi_tt, star.psi_t);
            star.psi_tt = state.psi_tt;
            axpy(th * dt, accel_general(state, betas, opts), star.psi_tt);
        }
        star.time = state.time + th * dt;

        const NonlinearTerms nt = nonlinear_terms(star, betas, opts);
        const double amin = field_min(nt.alpha);
        const double amax = field_max(nt.alpha);
        alpha_min = std::min(alpha_min, amin);
        alpha_max = std::max(alpha_max, amax);
        if (amin <= opts.degeneracy_floor) {
            throw DegeneracyError("alpha degenerate: min(alpha) = " + std::to_string(amin) +
                                  " at t = " + std::to_string(star.time));
        }

        // Known parts of the theta-averages once the new acceleration is
        // factored out:
        //   theta-avg v   = v_tilde + dt th^2 w_new
        //   theta-avg psi = psi_tilde + dt^2 th^3 w_new
        Field v_tilde = state.psi_t;
        axpy(dt * th * (1.0 - th), state.psi_tt, v_tilde);
        Field psi_tilde = state.psi;
        axpy(dt * th, state.psi_t, psi_tilde);
        axpy(dt * dt * th * th * (1.0 - th), state.psi_tt, psi_tilde);

        const Field lap_w = laplacian(state.psi_tt);
        const Field lap_vt = laplacian(v_tilde);
        const Field bilap_vt = laplacian(lap_vt);
        const Field bilap_pt = bilaplacian(psi_tilde);

        Field rhs(grid);
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            rhs.values[k] = nt.alpha.values[k] * state.psi_tt.values[k] +
                            dt * (betas.beta1 * (1.0 - th) * lap_w.values[k] -
                                  betas.beta2 * bilap_vt.values[k] +
                                  betas.beta3 * lap_vt.values[k] -
                                  betas.beta4 * bilap_pt.values[k] - nt.r.values[k]);
        }
        if (opts.source) {
            const Field f0 = eval_source(grid, opts.source, state.time);
            const Field f1 = eval_source(grid, opts.source, state.time + dt);
            for (std::size_t k = 0; k < rhs.size(); ++k)
                rhs.values[k] += dt * (th * f1.values[k] + (1.0 - th) * f0.values[k]);
        }

        const Vec w_new = solver.solve(to_vec(nt.alpha), to_vec(rhs));

        State3 next;
        next.psi_tt = to_field(grid, w_new);
        next.psi_t = state.psi_t;
        axpy(dt * (1.0 - th), state.psi_tt, next.psi_t);
        axpy(dt * th, next.psi_tt, next.psi_t);
        next.psi = state.psi;
        axpy(dt * (1.0 - th), state.psi_t, next.psi);
        axpy(dt * th, next.psi_t, next.psi);
        next.time = state.time + dt;

        // Track alpha at the accepted state as well.
        double smin = 1.0 + beta5 * field_min(next.psi_t);
        double smax = 1.0 + beta5 * field_max(next.psi_t);
        if (beta5 < 0.0) std::swap(smin, smax);
        alpha_min = std::min(alpha_min, smin);
        alpha_max = std::max(alpha_max, smax);

        prev = std::move(state);
        have_prev = true;
        state = next;
        return state;
    }
};

GeneralStepper::GeneralStepper(const Grid& g, const Betas& b, const StepperConfig& cfg,
                               const ModelOptions& opts)
    : impl_(std::make_unique<Impl>(g, b, cfg, opts)) {}
GeneralStepper::~GeneralStepper() = default;
GeneralStepper::GeneralStepper(GeneralStepper&&) noexcept = default;
GeneralStepper& GeneralStepper::operator=(GeneralStepper&&) noexcept = default;
void GeneralStepper::reset(const State3& initial) { impl_->reset(initial); }
State3 GeneralStepper::step() { return impl_->do_step(); }
const State3& GeneralStepper::current() const { return impl_->state; }
double GeneralStepper::last_alpha_min() const { return impl_->alpha_min; }
double GeneralStepper::last_alpha_max() const { return impl_->alpha_max; }

// ---------------------------------------------------------------------------
// LimitStepper
// ---------------------------------------------------------------------------

struct LimitStepper::Impl {
    Grid grid;
    Betas betas;
    StepperConfig cfg;
    ModelOptions opts;
    ImplicitSolve solver;
    State2 state;
    State2 prev;
    bool have_prev = false;
    double alpha_min = 1.0, alpha_max = 1.0;

    Impl(const Grid& g, const Betas& b, const StepperConfig& c, const ModelOptions& o)
        : grid(g), betas(b), cfg(c), opts(o) {
        validate(cfg);
        const double dt = cfg.dt, th = cfg.theta;
        const SpMat L = neg_laplacian_matrix(g);
        const double c1 = dt * th * b.beta1_limit + dt * dt * th * th * b.beta3;
        solver.init(c1 * L, cfg);
    }

    void reset(const State2& initial) {
        if (!(initial.psi.grid == grid))
            throw std::invalid_argument("initial state grid does not match stepper grid");
        state = initial;
        have_prev = false;
        const double beta5 = opts.beta5_override.value_or(betas.beta5);
        double smin = 1.0 + beta5 * field_min(initial.psi_t);
        double smax = 1.0 + beta5 * field_max(initial.psi_t);
        if (beta5 < 0.0) std::swap(smin, smax);
        alpha_min = smin;
        alpha_max = smax;
    }

    State2 do_step() {
        const double dt = cfg.dt, th = cfg.theta;
        const double beta5 = opts.beta5_override.value_or(betas.beta5);

        State2 star;
        if (have_prev) {
            star.psi = extrapolate(state.psi, prev.psi, th);
            star.psi_t = extrapolate(state.psi_t, prev.psi_t, th);
        } else {
            star.psi = state.psi;
            axpy(th * dt, state.psi_t, star.psi);
            star.psi_t = state.psi_t;
            axpy(th * dt, accel_limit(state, betas, opts), star.psi_t);
        }

        Field alpha_star(grid);
        for (std::size_t k = 0; k < alpha_star.size(); ++k)
            alpha_star.values[k] = 1.0 + beta5 * star.psi_t.values[k];
        const double amin = field_min(alpha_star);
        const double amax = field_max(alpha_star);
        alpha_min = std::min(alpha_min, amin);
        alpha_max = std::max(alpha_max, amax);
        if (amin <= opts.degeneracy_floor) {
            throw DegeneracyError("alpha degenerate: min(alpha) = " + std::to_string(amin) +
                                  " at t = " + std::to_string(state.time + th * dt));
        }
        Field q_star(grid);
        if (betas.beta6 != 0.0) q_star = grad_dot(gradient(star.psi_t), gradient(star.psi));

        Field psi_tilde = state.psi;
        axpy(dt * th * (1.0 - th), state.psi_t, psi_tilde);
        const Field lap_v = laplacian(state.psi_t);
        const Field lap_pt = laplacian(psi_tilde);

        Field rhs(grid);
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            rhs.values[k] = alpha_star.values[k] * state.psi_t.values[k] +
                            dt * (betas.beta1_limit * (1.0 - th) * lap_v.values[k] +
                                  betas.beta3 * lap_pt.values[k] -
                                  2.0 * betas.beta6 * q_star.values[k]);
        }
        if (opts.source) {
            const Field f0 = eval_source(grid, opts.source, state.time);
            const Field f1 = eval_source(grid, opts.source, state.time + dt);
            for (std::size_t k = 0; k < rhs.size(); ++k)
                rhs.values[k] += dt * (th * f1.values[k] + (1.0 - th) * f0.values[k]);
        }

        const Vec v_new = solver.solve(to_vec(alpha_star), to_vec(rhs));

        State2 next;
        next.psi_t = to_field(grid, v_new);
        next.psi = state.psi;
        axpy(dt * (1.0 - th), state.psi_t, next.psi);
        axpy(dt * th, next.psi_t, next.psi);
        next.time = state.time + dt;

        double smin = 1.0 + beta5 * field_min(next.psi_t);
        double smax = 1.0 + beta5 * field_max(next.psi_t);
        if (beta5 < 0.0) std::swap(smin, smax);
        alpha_min = std::min(alpha_min, smin);
        alpha_max = std::max(alpha_max, smax);

        prev = std::move(state);
        have_prev = true;
        state = next;
        return state;
    }
};

LimitStepper::LimitStepper(const Grid& g, const Betas& b, const StepperConfig& cfg,
                           const ModelOptions& opts)
    : impl_(std::make_unique<Impl>(g, b, cfg, opts)) {}
LimitStepper::~LimitStepper() = default;
LimitStepper::LimitStepper(LimitStepper&&) noexcept = default;
LimitStepper& LimitStepper::operator=(LimitStepper&&) noexcept = default;
void LimitStepper::reset(const State2& initial) { impl_->reset(initial); }
State2 LimitStepper::step() { return impl_->do_step(); }
const State2& LimitStepper::current() const { return impl_->state; }
double LimitStepper::last_alpha_min() const { return impl_->alpha_min; }
double LimitStepper::last_alpha_max() const { return impl_->alpha_max; }

State3 step_general(const State3& s, const Betas& b, const StepperConfig& cfg,
                    const ModelOptions& opts) {
    GeneralStepper st(s.psi.grid, b, cfg, opts);
    st.reset(s);
    return st.step();
}

State2 step_limit(const State2& s, const Betas& b, const StepperConfig& cfg,
                  const ModelOptions& opts) {
    LimitStepper st(s.psi.grid, b, cfg, opts);
    st.reset(s);
    return st.step();
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

namespace {

int step_count(const StepperConfig& cfg) {
    const double raw = cfg.t_end / cfg.dt;
    const int n = static_cast<int>(std::llround(raw));
    if (std::abs(raw - n) > 1e-9 * std::max(1.0, raw)) {
        throw std::domain_error("t_end must be an integer multiple of dt");
    }
    return n;
}

}  // namespace

Trajectory3 run_general(const State3& initial, const Betas& b, const StepperConfig& cfg,
                        const Observers& obs, const ModelOptions& opts) {
    validate(cfg);
    const int nsteps = step_count(cfg);
    Trajectory3 traj;
    GeneralStepper stepper(initial.psi.grid, b, cfg, opts);
    stepper.reset(initial);

    const double lam_est = explicit_part_eigenvalue_estimate(initial, b, opts);
    if (cfg.dt * lam_est > 2.0) {
        traj.warnings.push_back("dt * explicit-part eigenvalue estimate = " +
                                std::to_string(cfg.dt * lam_est) + " exceeds 2");
    }

    double e2_accum = 0.0;
    EnergyReport prev_row;
    auto record = [&](const State3& s, bool force) {
        const int k = static_cast<int>(std::llround(s.time / cfg.dt));
        if (obs.record_states && (force || k % obs.state_stride == 0)) {
            traj.times.push_back(s.time);
            traj.states.push_back(s);
        }
        if (obs.record_energy && (force || k % obs.energy_stride == 0)) {
            EnergyReport row = energy_report(s, b, opts.degeneracy_floor);
            if (!traj.energy.empty()) {
                e2_accum += 0.5 * (row.E2_instant + prev_row.E2_instant) *
                            (row.t - prev_row.t);
            }
            row.E2_accum = e2_accum;
            traj.energy.push_back(row);
            traj.sup_e1 = std::max(traj.sup_e1, row.E1);
            prev_row = row;
        }
    };

    record(initial, true);
    for (int k = 1; k <= nsteps; ++k) {
        const State3& s = stepper.step();
        record(s, k == nsteps);
    }
    traj.alpha_min = stepper.last_alpha_min();
    traj.alpha_max = stepper.last_alpha_max();
    return traj;
}

Trajectory2 run_limit(const State2& initial, const Betas& b, const StepperConfig& cfg,
                      const Observers& obs, const ModelOptions& opts) {
    validate(cfg);
    const int nsteps = step_count(cfg);
    Trajectory2 traj;
    LimitStepper stepper(initial.psi.grid, b, cfg, opts);
    stepper.reset(initial);

    const State3 probe{initial.psi, initial.psi_t, accel_limit(initial, b, opts), 0.0};
    const double lam_est = explicit_part_eigenvalue_estimate(probe, b, opts);
    if (cfg.dt * lam_est > 2.0) {
        traj.warnings.push_back("dt * explicit-part eigenvalue estimate = " +
                                std::to_string(cfg.dt * lam_est) + " exceeds 2");
    }

    auto record = [&](const State2& s, bool force) {
        const int k = static_cast<int>(std::llround(s.time / cfg.dt));
        if (obs.record_states && (force || k % obs.state_stride == 0)) {
            traj.times.push_back(s.time);
            traj.states.push_back(s);
        }
    };

    record(initial, true);
    for (int k = 1; k <= nsteps; ++k) {
        const State2& s = stepper.step();
        record(s, k == nsteps);
    }
    traj.alpha_min = stepper.last_alpha_min();
    traj.alpha_max = stepper.last_alpha_max();
    return traj;
}

double explicit_part_eigenvalue_estimate(const State3& s, const Betas& b,
                                         const ModelOptions& opts) {
    // Linearisation of the frozen nonlinearity r with respect to the
    // acceleration: w -> (2 beta5 w* w + 2 beta6 grad w . grad psi*) / alpha*.
    const NonlinearTerms nt = nonlinear_terms(s, b, opts);
    const double beta5 = opts.beta5_override.value_or(b.beta5);
    const GradField gpsi = gradient(s.psi);
    Field v(s.psi.grid);
    for (std::size_t k = 0; k < v.size(); ++k)
        v.values[k] = std::sin(0.37 * static_cast<double>(k + 1));  // fixed seed vector
    double lambda = 0.0;
    for (int it = 0; it < 12; ++it) {
        const double nrm = norm_l2(v);
        if (nrm == 0.0) return 0.0;
        for (auto& x : v.values) x /= nrm;
        const GradField gv = gradient(v);
        const Field cross = grad_dot(gv, gpsi);
        Field next(v.grid);
        for (std::size_t k = 0; k < next.size(); ++k) {
            next.values[k] = (2.0 * beta5 * s.psi_tt.values[k] * v.values[k] +
                              2.0 * b.beta6 * cross.values[k]) /
                             nt.alpha.values[k];
        }
        lambda = norm_l2(next);
        v = std::move(next);
    }
    return lambda;
}

}  // namespace acoustics
