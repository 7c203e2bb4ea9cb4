// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// criteria hold. Desk scale, 1D, fully deterministic.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "acoustics/analysis.hpp"
#include "acoustics/commands.hpp"
#include "acoustics/csvio.hpp"
#include "acoustics/study.hpp"
#include "acoustics/timestep.hpp"
#include "oracles.hpp"

using namespace acoustics;
namespace fs = std::filesystem;

namespace {

const PhysicalParams kBase{1.0, 0.2, 3.0, 0.0};  // a set per use

int g_failures = 0;

void report(int criterion, const char* label, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %-24s %s\n", pass ? "PASS" : "FAIL", criterion, label,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

Field sine_mode(const Grid& g, double amp) {
    return Field::sample(g, [&](double x, double y) {
        const double px = std::sin(M_PI * x / g.length);
        return amp * (g.dim == 1 ? px : px * std::sin(M_PI * y / g.length));
    });
}

PhysicalParams with_a(double a) {
    PhysicalParams p = kBase;
    p.a = a;
    return p;
}

// ---------------------------------------------------------------------------
// 1. Coefficient algebra
// ---------------------------------------------------------------------------
void criterion_1() {
    bool pass = true;
    std::string detail;

    // Rational inputs: every displayed special value must be reproduced with
    // zero tolerance.
    PhysicalParams p{2.0, 0.25, 3.0, 0.5};  // c0^2 = 4
    const Betas b1 = compute_betas(p, 1, 1);
    const Betas b0 = compute_betas(p, 0, 0);
    pass &= b1.beta5 == 0.75;                      // beta5(1) = (B/A)/c0^2
    pass &= b0.beta5 == 1.25;                      // beta5(0) = (2+B/A)/c0^2
    pass &= b1.beta2 == 0.5 * 4.0 * 0.25;          // a(1+B/A) nuLambda
    pass &= b0.beta2 == 0.5 * (0.25 + 0.5 * 3.0);  // a(nuLambda + a B/A)
    pass &= b1.beta4 == 0.5 * 4.0 * 4.0;           // a(1+B/A) c0^2
    pass &= b0.beta4 == 0.5 * 4.0;                 // a c0^2
    pass &= b1.beta0 == 0.25 / 4.0;                // nuLambda/c0^2
    pass &= b0.beta0 == (0.25 + 0.5 * 3.0) / 4.0;  // (nuLambda + a B/A)/c0^2
    pass &= b1.beta1 == 0.5 * 4.0 + 0.25;
    pass &= b1.beta6 == 1.0 && b0.beta6 == 0.0;
    if (!pass) detail = "displayed special values not exact; ";

    PhysicalParams p0 = p;
    p0.a = 0.0;
    for (int s0 : {0, 1}) {
        for (int s : {0, 1}) {
            const Betas bb = compute_betas(p0, s0, s);
            pass &= bb.beta2 == 0.0 && bb.beta4 == 0.0;
            pass &= bb.beta1 == 0.25 && bb.beta0 == 0.0625;
        }
    }

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto log_draw = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        PhysicalParams q;
        q.c0 = log_draw(0.1, 10.0);
        q.nu_lambda = log_draw(1e-3, 10.0);
        q.b_over_a = log_draw(0.1, 20.0);
        q.a = log_draw(1e-6, 10.0);
        const Betas bb = compute_betas(q, trial % 2, (trial / 2) % 2);
        worst = std::max(worst, std::abs(bb.beta0 * bb.beta4 - bb.beta2) / bb.beta2);
    }
    pass &= worst <= 1e-14;
    report(1, "coefficient algebra", pass,
           detail + fmt("max |beta0*beta4 - beta2|/beta2 = %.2e over 1000 draws", worst));
}

// ---------------------------------------------------------------------------
// 2. Operator identities
// ---------------------------------------------------------------------------
void criterion_2() {
    std::mt19937 rng(7);
    const Grid g(1, 48, 1.0);
    bool bitwise = true;
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = oracles::random_field(g, rng);
        const Field a = bilaplacian(f);
        const Field b = laplacian(laplacian(f));
        for (std::size_t k = 0; k < f.size(); ++k) bitwise &= a.values[k] == b.values[k];
    }
    const Grid g2(2, 12, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const Field f = oracles::random_field(g2, rng);
        const Field a = bilaplacian(f);
        const Field b = laplacian(laplacian(f));
        for (std::size_t k = 0; k < f.size(); ++k) bitwise &= a.values[k] == b.values[k];
    }

    const Betas betas = compute_betas(with_a(0.05), 1, 1);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Field f1 = oracles::random_field(g, rng);
        const Field f2 = oracles::random_field(g, rng);
        const Field f3 = oracles::random_field(g, rng);
        const Field f4 = oracles::random_field(g, rng);
        worst = std::max(worst, factorization_check(betas, f1, f2, f3, f4));
    }
    const bool pass = bitwise && worst <= 1e-12;
    report(2, "operator identities", pass,
           fmt("bilaplacian bitwise=%s; factorization max rel = %.2e over 100 tuples",
               bitwise ? "yes" : "NO", worst));
}

// ---------------------------------------------------------------------------
// 3. Scheme verification (MMS orders + dense expm oracle)
// ---------------------------------------------------------------------------
void criterion_3() {
    const std::vector<int> levels{64, 128, 256};
    MmsProblem prob;
    prob.amplitude = 0.02;

    const MmsResult bjk =
        mms_convergence(model_from_name("BJK"), with_a(0.05), prob, levels, 0.01, 0.4, 1);
    const MmsResult k =
        mms_convergence(model_from_name("K"), with_a(0.0), prob, levels, 0.01, 0.4, 1);
    bool orders_ok = !bjk.flagged && !k.flagged;
    for (double o : bjk.orders) orders_ok &= o >= 1.8 && o <= 2.2;
    for (double o : k.orders) orders_ok &= o >= 1.8 && o <= 2.2;

    // Dense matrix-exponential oracle at n = 32, linearized runs.
    const Grid g(1, 32, 1.0);
    const Betas bgen = compute_betas(with_a(0.05), 1, 0);
    const Betas blim = compute_betas(with_a(0.0), 1, 0);
    ModelOptions lin;
    lin.beta5_override = 0.0;
    const Field psi0 = sine_mode(g, 0.3);
    const Field psi1 = Field::sample(
        g, [](double x, double) { return 0.1 * std::sin(2.0 * M_PI * x); });
    const Field psi2 = sine_mode(g, -0.2);
    const double T = 0.4;

    const Eigen::MatrixXd M3 = oracles::companion_general(g, bgen);
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::VectorXd u0(3 * n);
    u0 << oracles::to_vec(psi0), oracles::to_vec(psi1), oracles::to_vec(psi2);
    const Eigen::VectorXd uT3 = oracles::expm_solution(M3, u0, T);

    const Eigen::MatrixXd M2 = oracles::companion_limit(g, blim);
    Eigen::VectorXd v0(2 * n);
    v0 << oracles::to_vec(psi0), oracles::to_vec(psi1);
    const Eigen::VectorXd uT2 = oracles::expm_solution(M2, v0, T);

    Observers quiet;
    quiet.record_energy = false;
    quiet.state_stride = 1 << 20;
    std::vector<double> c3, c2;
    for (double dt : {0.02, 0.01, 0.005}) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = T;
        const Trajectory3 t3 =
            run_general(State3{psi0, psi1, psi2, 0.0}, bgen, cfg, quiet, lin);
        Eigen::VectorXd u(3 * n);
        u << oracles::to_vec(t3.states.back().psi), oracles::to_vec(t3.states.back().psi_t),
            oracles::to_vec(t3.states.back().psi_tt);
        c3.push_back((u - uT3).norm() / (dt * dt));

        const Trajectory2 t2 = run_limit(State2{psi0, psi1, 0.0}, blim, cfg, quiet, lin);
        Eigen::VectorXd v(2 * n);
        v << oracles::to_vec(t2.states.back().psi), oracles::to_vec(t2.states.back().psi_t);
        c2.push_back((v - uT2).norm() / (dt * dt));
    }
    auto spread = [](const std::vector<double>& c) {
        return *std::max_element(c.begin(), c.end()) /
               *std::min_element(c.begin(), c.end());
    };
    const bool expm_ok = spread(c3) <= 4.0 && spread(c2) <= 4.0;

    std::ostringstream os;
    os << "BJK orders";
    for (double o : bjk.orders) os << ' ' << fmt("%.2f", o);
    os << ", K orders";
    for (double o : k.orders) os << ' ' << fmt("%.2f", o);
    os << fmt("; expm const spread %.2f / %.2f", spread(c3), spread(c2));
    report(3, "scheme verification", orders_ok && expm_ok, os.str());
}

// ---------------------------------------------------------------------------
// 4-6 and 8 share runs; the harness carries their trajectories.
// ---------------------------------------------------------------------------
struct SharedRuns {
    // criterion 4
    double worst_F = 0.0;
    double mms_level = 0.0;
    double k_gap_psi = 0.0, k_gap_psi_t = 0.0;
    // criterion 5: per column
    std::vector<LimitStudyResult> columns;
    // criterion 6 bookkeeping
    double c0_ebar1 = 0.0;  // certificate product C0 * Ebar1
    double alpha_min = 1.0, alpha_max = 1.0;
    // criterion 8 material: recorded (psi, psi_t) series of every run
    std::vector<std::vector<Field>> psi_series;
    std::vector<std::vector<Field>> psi_t_series;
    double t_end = 0.0;
    double amplitude = 0.0;
};

SharedRuns make_shared_runs() {
    SharedRuns out;
    const Grid g(1, 96, 1.0);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    out.t_end = cfg.t_end;

    // Small-data preset: amplitude certified by C0 * (2 E1(0)) <= 1/24,
    // taken as the more restrictive of the two nonlinearity branches.
    const ConstantsEstimate est = estimate_constants(g, 12345, 100);
    const double amp_k = small_data_amplitude(g, with_a(0.1), 1, 1, est);
    const double amp_w = small_data_amplitude(g, with_a(0.1), 0, 1, est);
    out.amplitude = 0.98 * std::min(amp_k, amp_w);  // margin below the certificate

    const Betas bk = compute_betas(with_a(0.1), 1, 1);
    const Betas bw = compute_betas(with_a(0.1), 1, 0);
    {
        const Field psi0 = sine_mode(g, out.amplitude);
        const Field psi1(g);
        const Betas b0k = compute_betas(with_a(0.0), 1, 1);
        const Field psi2 = consistency_complete(psi0, psi1, b0k);
        const EnergyReport e0 = energy_report(State3{psi0, psi1, psi2, 0.0}, b0k);
        out.c0_ebar1 =
            std::max(constant_C0(est, bk), constant_C0(est, bw)) * 2.0 * e0.E1;
    }

    // Criterion 4: third-order integrator with a = 0 coefficients vs the
    // limit integrator, consistent data.
    {
        const Betas b0 = compute_betas(with_a(0.0), 1, 1);
        const Field psi0 = sine_mode(g, out.amplitude);
        const Field psi1(g);
        const Field psi2 = consistency_complete(psi0, psi1, b0);
        Observers obs;  // stride-1 states + energy
        const Trajectory3 t3 = run_general(State3{psi0, psi1, psi2, 0.0}, b0, cfg, obs);
        const Trajectory2 t2 = run_limit(State2{psi0, psi1, 0.0}, b0, cfg, obs);
        for (const auto& s : t3.states)
            out.worst_F = std::max(out.worst_F, norm_l2(residual_F(s, b0)));
        for (std::size_t k = 0; k < t3.states.size(); ++k) {
            out.k_gap_psi =
                std::max(out.k_gap_psi, norm_l2(t3.states[k].psi - t2.states[k].psi));
            out.k_gap_psi_t =
                std::max(out.k_gap_psi_t, norm_l2(t3.states[k].psi_t - t2.states[k].psi_t));
        }
        MmsProblem prob;
        prob.amplitude = out.amplitude;
        out.mms_level = mms_error_level_general(b0, prob, g, cfg).level();
        out.alpha_min = std::min({out.alpha_min, t3.alpha_min, t2.alpha_min});
        out.alpha_max = std::max({out.alpha_max, t3.alpha_max, t2.alpha_max});

        auto& ps3 = out.psi_series.emplace_back();
        auto& vs3 = out.psi_t_series.emplace_back();
        for (const auto& s : t3.states) {
            ps3.push_back(s.psi);
            vs3.push_back(s.psi_t);
        }
        auto& ps2 = out.psi_series.emplace_back();
        auto& vs2 = out.psi_t_series.emplace_back();
        for (const auto& s : t2.states) {
            ps2.push_back(s.psi);
            vs2.push_back(s.psi_t);
        }
    }

    // Criterion 5: both hierarchy columns over the prescribed a sequence,
    // following the table's vanishing-a arrows (BCK -> K, BCW -> W). The
    // sigma0 = 1 variants are unusable here: with consistent data their
    // linear part coincides with the limit model for every a (the heat
    // factor propagates F = 0), leaving no O(a) difference to measure.
    const std::vector<double> a_values{0.1, 0.05, 0.025, 0.0125};
    const int sigma0 = 0;
    for (int sigma : {1, 0}) {
        const Field psi0 = sine_mode(g, out.amplitude);
        const Field psi1(g);
        out.columns.push_back(limit_study(psi0, psi1, sigma, sigma0, a_values, kBase, cfg));
        const LimitStudyResult& res = out.columns.back();
        out.alpha_min = std::min(out.alpha_min, res.alpha_min);
        out.alpha_max = std::max(out.alpha_max, res.alpha_max);

        // Re-run each member for the Gronwall material.
        const Betas b0 = compute_betas(with_a(0.0), sigma0, sigma);
        const Field psi2 = consistency_complete(psi0, psi1, b0);
        Observers obs;
        obs.record_energy = false;
        for (double a : a_values) {
            const Betas ba = compute_betas(with_a(a), sigma0, sigma);
            const Trajectory3 t3 = run_general(State3{psi0, psi1, psi2, 0.0}, ba, cfg, obs);
            auto& ps = out.psi_series.emplace_back();
            auto& vs = out.psi_t_series.emplace_back();
            for (const auto& s : t3.states) {
                ps.push_back(s.psi);
                vs.push_back(s.psi_t);
            }
        }
        const Trajectory2 t2 = run_limit(State2{psi0, psi1, 0.0}, b0, cfg, obs);
        auto& ps = out.psi_series.emplace_back();
        auto& vs = out.psi_t_series.emplace_back();
        for (const auto& s : t2.states) {
            ps.push_back(s.psi);
            vs.push_back(s.psi_t);
        }
    }
    return out;
}

void criterion_4(const SharedRuns& sr) {
    const double bound = 10.0 * sr.mms_level;
    const bool pass =
        sr.worst_F <= bound && sr.k_gap_psi <= bound && sr.k_gap_psi_t <= bound;
    report(4, "consistency/equivalence", pass,
           fmt("max||F|| = %.2e, K-gap psi = %.2e, psi_t = %.2e, bound 10*mms = %.2e",
               sr.worst_F, sr.k_gap_psi, sr.k_gap_psi_t, bound));
}

void criterion_5(const SharedRuns& sr) {
    bool pass = true;
    std::ostringstream os;
    const char* names[2] = {"BCK->K", "BCW->W"};
    for (std::size_t c = 0; c < sr.columns.size(); ++c) {
        const LimitStudyResult& res = sr.columns[c];
        bool dec = true;
        for (std::size_t k = 0; k + 1 < res.err_psi.size(); ++k) {
            dec &= res.err_psi[k] > res.err_psi[k + 1];
            dec &= res.err_psi_t[k] > res.err_psi_t[k + 1];
        }
        const double factor_psi = res.err_psi.front() / res.err_psi.back();
        const double factor_psi_t = res.err_psi_t.front() / res.err_psi_t.back();
        pass &= dec && factor_psi >= 4.0 && factor_psi_t >= 4.0;
        os << names[c]
           << fmt(": decrease=%s factors %.1f/%.1f orders", dec ? "yes" : "NO",
                  factor_psi, factor_psi_t);
        for (double o : res.orders_psi) os << ' ' << fmt("%.2f", o);
        os << "; ";
    }
    report(5, "vanishing-a limit", pass, os.str());
}

void criterion_6(const SharedRuns& sr) {
    const bool cert = sr.c0_ebar1 <= 1.0 / 24.0;
    const bool bounds = sr.alpha_min >= 0.5 && sr.alpha_max <= 1.5;
    report(6, "non-degeneracy", cert && bounds,
           fmt("C0*Ebar1 = %.3e (<= 1/24: %s); alpha in [%.4f, %.4f] over all runs",
               sr.c0_ebar1, cert ? "yes" : "NO", sr.alpha_min, sr.alpha_max));
}

void criterion_7() {
    const Grid g(1, 96, 1.0);
    const Field psi0 = sine_mode(g, 0.004);
    const Field psi1(g);

    // Linearized small run: residual order >= 1.8 under dt halving.
    Betas blin = compute_betas(with_a(0.05), 1, 0);
    blin.beta5 = 0.0;
    ModelOptions lin;
    lin.beta5_override = 0.0;
    Betas b0lin = compute_betas(with_a(0.0), 1, 0);
    b0lin.beta5 = 0.0;
    const Field psi2_lin = consistency_complete(psi0, psi1, b0lin);
    auto lin_residual = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.2;
        const Trajectory3 traj =
            run_general(State3{psi0, psi1, psi2_lin, 0.0}, blin, cfg, Observers{}, lin);
        return energy_identity_residual(traj.states, dt, blin);
    };
    const double r1 = lin_residual(0.004);
    const double r2 = lin_residual(0.002);
    const double order = std::log2(r1 / r2);

    // Nonlinear small run at the finest level: residual <= 1e-4 of the
    // run's energy scale.
    const Betas b = compute_betas(with_a(0.05), 1, 1);
    const Betas b0 = compute_betas(with_a(0.0), 1, 1);
    const Field psi2 = consistency_complete(psi0, psi1, b0);
    StepperConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 0.2;
    const Trajectory3 traj = run_general(State3{psi0, psi1, psi2, 0.0}, b, cfg);
    double scale = 0.0;
    const double res = energy_identity_residual(traj.states, cfg.dt, b, &scale);
    const bool pass = order >= 1.8 && res <= 1e-4 * scale;
    report(7, "energy identity", pass,
           fmt("linearized order %.2f (res %.2e -> %.2e); nonlinear res/scale = %.2e",
               order, r1, r2, res / scale));
}

void criterion_8(const SharedRuns& sr) {
    bool pass = true;
    int checked = 0;
    for (const auto* series : {&sr.psi_series, &sr.psi_t_series}) {
        for (const auto& fields : *series) {
            pass &= gronwall_check(fields, sr.t_end);
            ++checked;
        }
    }
    // Constructed violation: an oscillation the sampling cannot see.
    const Grid g(1, 32, 1.0);
    std::vector<Field> violation;
    for (int k = 0; k <= 10; ++k)
        violation.push_back(k % 2 == 0 ? Field(g) : sine_mode(g, 50.0));
    const bool caught = !gronwall_check(violation, 1.0);
    pass &= caught;
    report(8, "gronwall check", pass,
           fmt("%d trajectory fields verified; constructed violation %s", checked,
               caught ? "detected" : "MISSED"));
}

void criterion_9() {
    const Grid g(1, 512, 1.0);
    const ConstantsEstimate est = estimate_constants(g, 12345, 100);
    const double cpf_want = std::sqrt(1.0 + 1.0 / (M_PI * M_PI));
    const double cpf_err = std::abs(est.C_PF - cpf_want) / cpf_want;

    const Field s = sine_mode(g, 1.0);
    const GradField gs = gradient(s);
    const Field ls = laplacian(s);
    const double ratio =
        std::sqrt(inner(s, s) + inner_grad(gs, gs) + inner(ls, ls)) / norm_l2(ls);
    const double ratio_want =
        std::sqrt(1.0 + M_PI * M_PI + std::pow(M_PI, 4)) / (M_PI * M_PI);
    const double ratio_err = std::abs(ratio - ratio_want) / ratio_want;

    // smallness_M vs an independent transcription on 10 fixed tuples.
    double worst_m = 0.0;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        ConstantsEstimate c;
        c.C_PF = u(rng);
        c.C_L4 = u(rng);
        c.C_L6 = u(rng);
        c.C_Linf = u(rng);
        c.C_Delta = u(rng);
        const PhysicalParams p{u(rng) + 0.5, u(rng), u(rng) + 0.5, 0.25 * u(rng)};
        const Betas b = compute_betas(p, trial % 2, (trial / 2) % 2);
        const double nlap = u(rng), nglap = u(rng), e0 = 0.01 * u(rng),
                     e1 = 0.01 * u(rng), T = u(rng);
        const double got = smallness_M(c, b, nlap, nglap, e0, e1, T);
        const double C0 = std::pow(c.C_Delta * c.C_Linf * b.beta5, 2) / b.beta3;
        const double C2 = 54.0 * std::pow(c.C_PF, 4) * std::pow(c.C_L4, 4) * b.beta6 *
                          b.beta6 / b.beta1;
        const double C3 = 3.0 / b.beta3;
        const double C4 = c.C_Delta * c.C_Linf * b.beta5 / std::sqrt(b.beta1) *
                          std::max({8.0 * std::sqrt(6.0),
                                    24.0 * std::sqrt(b.beta2) / b.beta0,
                                    24.0 * std::sqrt(6.0) / b.beta0 * std::sqrt(T)});
        const double want =
            c.C_PF * c.C_PF * c.C_L4 * c.C_L4 * b.beta5 / b.beta1 * std::sqrt(e0) +
            C0 * e1 + C2 / b.beta1 * (nlap * nlap + C3 * T * T * e1) +
            C4 * (0.5 * nglap + std::sqrt(e1));
        worst_m = std::max(worst_m, std::abs(got - want) / want);
    }
    const bool pass = cpf_err < 0.01 && ratio_err < 0.01 && worst_m <= 1e-12;
    report(9, "constants", pass,
           fmt("C_PF err %.2e, C_Delta ratio err %.2e, M oracle err %.2e", cpf_err,
               ratio_err, worst_m));
}

void criterion_10() {
    const std::string cfg_text =
        "model = BJK\n[physical]\nnu_lambda = 0.2\nb_over_a = 3\na = 0.05\n"
        "[grid]\nn = 48\n[stepper]\ndt = 0.002\nt_end = 0.05\n"
        "[initial]\npsi0_amplitude = 0.003\n[observers]\nsnapshots = true\n";
    const RunConfig cfg = parse_config(cfg_text);
    const fs::path base = fs::temp_directory_path() / "acoustics_acceptance_det";
    fs::remove_all(base);
    nlohmann::json s1, s2;
    const int rc1 = cmd_simulate(cfg, (base / "run1").string(), s1);
    const int rc2 = cmd_simulate(cfg, (base / "run2").string(), s2);
    bool pass = rc1 == 0 && rc2 == 0;
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(base / "run1")) {
        if (entry.path().extension() != ".csv") continue;
        std::ifstream a(entry.path(), std::ios::binary);
        std::ifstream b(base / "run2" / entry.path().filename(), std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        pass &= b.good() && sa.str() == sb.str();
        ++compared;
    }
    pass &= compared >= 3;
    report(10, "determinism", pass, fmt("%d CSV files byte-identical across runs", compared));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    const SharedRuns sr = make_shared_runs();
    criterion_4(sr);
    criterion_5(sr);
    criterion_6(sr);
    criterion_7();
    criterion_8(sr);
    criterion_9();
    criterion_10();
    std::printf("%s (%d criterion(s) failed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
