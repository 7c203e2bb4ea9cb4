#include "acoustics/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace acoustics {

namespace {

Field alpha_field(const Field& phi_t, double beta5, double floor, double t) {
    Field alpha(phi_t.grid);
    for (std::size_t k = 0; k < alpha.size(); ++k)
        alpha.values[k] = 1.0 + beta5 * phi_t.values[k];
    const double amin = field_min(alpha);
    if (amin <= floor) {
        throw DegeneracyError("alpha degenerate: min(alpha) = " + std::to_string(amin) +
                              " at t = " + std::to_string(t));
    }
    return alpha;
}

double weighted_norm_sq(const Field& f, const Field& weight) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        s += weight.values[k] * f.values[k] * f.values[k];
    const double w = f.grid.dim == 1 ? f.grid.h : f.grid.h * f.grid.h;
    return w * s;
}

double weighted_grad_norm_sq(const GradField& gf, const Field& weight) {
    double s = 0.0;
    for (int d = 0; d < gf.grid.dim; ++d)
        for (std::size_t k = 0; k < gf.comp[d].size(); ++k)
            s += weight.values[k] * gf.comp[d][k] * gf.comp[d][k];
    const double w = gf.grid.dim == 1 ? gf.grid.h : gf.grid.h * gf.grid.h;
    return w * s;
}

}  // namespace

EnergyReport energy_report(const State3& s, const Field& phi_t_for_alpha, const Betas& b,
                           double degeneracy_floor) {
    const Field alpha = alpha_field(phi_t_for_alpha, b.beta5, degeneracy_floor, s.time);
    Field inv_alpha(alpha.grid);
    for (std::size_t k = 0; k < alpha.size(); ++k)
        inv_alpha.values[k] = 1.0 / alpha.values[k];

    EnergyReport rep;
    rep.t = s.time;
    rep.alpha_min = field_min(alpha);
    rep.alpha_max = field_max(alpha);

    const Field lap_t = laplacian(s.psi_t);
    rep.E01 = weighted_norm_sq(s.psi_tt, alpha);
    rep.E02 = inner(lap_t, lap_t);
    rep.E03 = sbp_grad_norm_sq(s.psi_t);
    rep.E0 = 0.5 * rep.E01 + 0.25 * b.beta2 * rep.E02 + 0.5 * b.beta3 * rep.E03;

    rep.E11 = sbp_grad_norm_sq(s.psi_tt);
    rep.E12 = b.beta2 != 0.0 ? weighted_grad_norm_sq(gradient(lap_t), inv_alpha) : 0.0;
    rep.E13 = weighted_norm_sq(lap_t, inv_alpha);
    rep.E1 = 0.5 * rep.E11 + 0.25 * b.beta2 * rep.E12 + 0.5 * b.beta3 * rep.E13;

    rep.E20 = weighted_norm_sq(laplacian(s.psi_tt), inv_alpha);
    rep.E2_instant = 0.25 * b.beta1 * rep.E20;
    return rep;
}

EnergyReport energy_report(const State3& s, const Betas& b, double degeneracy_floor) {
    return energy_report(s, s.psi_t, b, degeneracy_floor);
}

AlphaBounds alpha_bounds(std::span<const EnergyReport> rows) {
    if (rows.empty()) throw std::invalid_argument("alpha_bounds: empty trajectory");
    AlphaBounds out;
    out.alpha_min = rows[0].alpha_min;
    out.alpha_max = rows[0].alpha_max;
    for (const auto& r : rows) {
        out.alpha_min = std::min(out.alpha_min, r.alpha_min);
        out.alpha_max = std::max(out.alpha_max, r.alpha_max);
    }
    out.pass = out.alpha_min >= 0.5 && out.alpha_max <= 1.5;
    return out;
}

namespace {

struct NormRatios {
    double l4_h1, l6_h1, linf_h2, h2_lap;
};

NormRatios norm_ratios(const Field& f) {
    const double wq = f.grid.dim == 1 ? f.grid.h : f.grid.h * f.grid.h;
    double s2 = 0.0, s4 = 0.0, s6 = 0.0, smax = 0.0;
    for (double v : f.values) {
        const double v2 = v * v;
        s2 += v2;
        s4 += v2 * v2;
        s6 += v2 * v2 * v2;
        smax = std::max(smax, std::abs(v));
    }
    const double l2 = std::sqrt(wq * s2);
    const double l4 = std::pow(wq * s4, 0.25);
    const double l6 = std::pow(wq * s6, 1.0 / 6.0);
    const GradField gf = gradient(f);
    const double grad2 = inner_grad(gf, gf);
    const Field lap = laplacian(f);
    const double lap2 = inner(lap, lap);
    const double h1 = std::sqrt(l2 * l2 + grad2);
    const double h2 = std::sqrt(l2 * l2 + grad2 + lap2);
    NormRatios r{};
    r.l4_h1 = h1 > 0.0 ? l4 / h1 : 0.0;
    r.l6_h1 = h1 > 0.0 ? l6 / h1 : 0.0;
    r.linf_h2 = h2 > 0.0 ? smax / h2 : 0.0;
    r.h2_lap = lap2 > 0.0 ? h2 / std::sqrt(lap2) : 0.0;
    return r;
}

}  // namespace

ConstantsEstimate estimate_constants(const Grid& g, unsigned seed, int n_random) {
    const std::size_t n = g.size();
    if (n > 4096)
        throw std::domain_error("grid too large for the dense eigen stage (size > 4096)");

    // Dense negative Laplacian, assembled from the stencil.
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    const double ih2 = 1.0 / (g.h * g.h);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            L(i, i) = 2.0 * ih2;
            if (i > 0) L(i, i - 1) = -ih2;
            if (i + 1 < g.n) L(i, i + 1) = -ih2;
        }
    } else {
        for (int j = 0; j < g.n; ++j) {
            for (int i = 0; i < g.n; ++i) {
                const auto k = static_cast<Eigen::Index>(g.index(i, j));
                L(k, k) = 4.0 * ih2;
                if (i > 0) L(k, k - 1) = -ih2;
                if (i + 1 < g.n) L(k, k + 1) = -ih2;
                if (j > 0) L(k, k - g.n) = -ih2;
                if (j + 1 < g.n) L(k, k + g.n) = -ih2;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("eigen decomposition failed");

    ConstantsEstimate est;
    est.lambda_min = eig.eigenvalues()(0);
    est.C_PF = std::sqrt(1.0 + 1.0 / est.lambda_min);

    auto absorb = [&est](const Field& f) {
        const NormRatios r = norm_ratios(f);
        est.C_L4 = std::max(est.C_L4, r.l4_h1);
        est.C_L6 = std::max(est.C_L6, r.l6_h1);
        est.C_Linf = std::max(est.C_Linf, r.linf_h2);
        est.C_Delta = std::max(est.C_Delta, r.h2_lap);
    };

    Field f(g);
    for (Eigen::Index c = 0; c < eig.eigenvectors().cols(); ++c) {
        for (std::size_t k = 0; k < n; ++k)
            f.values[k] = eig.eigenvectors()(static_cast<Eigen::Index>(k), c);
        absorb(f);
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int s = 0; s < n_random; ++s) {
        for (std::size_t k = 0; k < n; ++k) f.values[k] = dist(rng);
        absorb(f);
    }
    return est;
}

double constant_C0(const ConstantsEstimate& c, const Betas& b) {
    const double t = c.C_Delta * c.C_Linf * b.beta5;
    return t * t / b.beta3;
}

double constant_C1(const ConstantsEstimate& c, const Betas& b) {
    const double p4 = std::pow(c.C_PF, 4) * std::pow(c.C_L4, 4);
    return 12.0 * p4 * (b.beta5 * b.beta5 + 9.0 * b.beta6 * b.beta6 / (b.beta3 * b.beta3));
}

double constant_C2(const ConstantsEstimate& c, const Betas& b) {
    const double p4 = std::pow(c.C_PF, 4) * std::pow(c.C_L4, 4);
    return 54.0 * p4 * b.beta6 * b.beta6 / b.beta1;
}

double constant_C3(const Betas& b) { return 3.0 / b.beta3; }

double constant_C4(const ConstantsEstimate& c, const Betas& b, double T) {
    const double m1 = 8.0 * std::sqrt(6.0);
    const double m2 = 24.0 * std::sqrt(b.beta2) / b.beta0;
    const double m3 = 24.0 * std::sqrt(6.0) / b.beta0 * std::sqrt(T);
    return c.C_Delta * c.C_Linf * b.beta5 / std::sqrt(b.beta1) *
           std::max({m1, m2, m3});
}

double smallness_M(const ConstantsEstimate& c, const Betas& b, double norm_lap_psi0,
                   double norm_grad_lap_psi0, double ebar0, double ebar1, double T) {
    if (!(ebar0 >= 0.0 && ebar1 >= 0.0 && T >= 0.0 && norm_lap_psi0 >= 0.0 &&
          norm_grad_lap_psi0 >= 0.0)) {
        throw std::domain_error("smallness_M: inputs must be non-negative");
    }
    const double t1 =
        c.C_PF * c.C_PF * c.C_L4 * c.C_L4 * b.beta5 / b.beta1 * std::sqrt(ebar0);
    const double t2 = constant_C0(c, b) * ebar1;
    const double t3 = constant_C2(c, b) / b.beta1 *
                      (norm_lap_psi0 * norm_lap_psi0 + constant_C3(b) * T * T * ebar1);
    const double t4 =
        constant_C4(c, b, T) * (0.5 * norm_grad_lap_psi0 + std::sqrt(ebar1));
    return t1 + t2 + t3 + t4;
}

bool gronwall_check(std::span<const Field> samples, double T, double* margin) {
    const std::size_t n = samples.size();
    if (n < 3) throw std::invalid_argument("gronwall_check needs >= 3 samples");
    if (!(T > 0.0)) throw std::invalid_argument("T must be > 0");
    const double dt = T / static_cast<double>(n - 1);
    const Grid& g = samples[0].grid;

    // Central-difference time derivative, constant-extrapolated at the ends.
    std::vector<double> deriv_sq(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        Field d(g);
        for (std::size_t m = 0; m < d.size(); ++m)
            d.values[m] = (samples[k + 1].values[m] - samples[k - 1].values[m]) / (2.0 * dt);
        deriv_sq[k] = inner(d, d);
    }
    deriv_sq[0] = deriv_sq[1];
    deriv_sq[n - 1] = deriv_sq[n - 2];

    double max_second = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        Field d2(g);
        for (std::size_t m = 0; m < d2.size(); ++m)
            d2.values[m] = (samples[k + 1].values[m] - 2.0 * samples[k].values[m] +
                            samples[k - 1].values[m]) /
                           (dt * dt);
        max_second = std::max(max_second, norm_l2(d2));
    }
    const double slack = 5.0 * dt * dt * max_second;

    const double phi0_sq = inner(samples[0], samples[0]);
    double integral = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t k = 1; k < n; ++k) {
        integral += 0.5 * (deriv_sq[k] + deriv_sq[k - 1]) * dt;
        const double lhs = inner(samples[k], samples[k]);
        const double rhs = 3.0 * phi0_sq + 3.0 * T * integral + slack;
        min_margin = std::min(min_margin, rhs - lhs);
        if (lhs > rhs) ok = false;
    }
    if (margin) *margin = min_margin;
    return ok;
}

double energy_identity_residual(std::span<const State3> samples, double dt, const Betas& b,
                                double* scale) {
    if (samples.size() < 2)
        throw std::invalid_argument("energy identity needs >= 2 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");

    const std::size_t n = samples.size();
    std::vector<double> e0_tilde(n), grad_tt_sq(n), lap_t_sq(n), coupling(n), r_term(n);
    for (std::size_t k = 0; k < n; ++k) {
        const State3& s = samples[k];
        const NonlinearTerms nt = nonlinear_terms(s, b);
        const Field lap_t = laplacian(s.psi_t);
        const Field lap = laplacian(s.psi);
        e0_tilde[k] = 0.5 * weighted_norm_sq(s.psi_tt, nt.alpha) +
                      0.5 * b.beta2 * inner(lap_t, lap_t) +
                      0.5 * b.beta3 * sbp_grad_norm_sq(s.psi_t);
        grad_tt_sq[k] = sbp_grad_norm_sq(s.psi_tt);
        lap_t_sq[k] = inner(lap_t, lap_t);
        coupling[k] = inner(lap_t, lap);
        // <r - (1/2) d_t alpha psi_tt, psi_tt> with d_t alpha = beta5 psi_tt.
        double s_r = 0.0;
        for (std::size_t m = 0; m < nt.r.size(); ++m) {
            const double w = s.psi_tt.values[m];
            s_r += (nt.r.values[m] - 0.5 * b.beta5 * w * w) * w;
        }
        const double wq = s.psi.grid.dim == 1 ? s.psi.grid.h : s.psi.grid.h * s.psi.grid.h;
        r_term[k] = wq * s_r;
    }

    double i_grad = 0.0, i_lap = 0.0, i_r = 0.0;
    double worst = 0.0, lhs_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            i_grad += 0.5 * (grad_tt_sq[k] + grad_tt_sq[k - 1]) * dt;
            i_lap += 0.5 * (lap_t_sq[k] + lap_t_sq[k - 1]) * dt;
            i_r += 0.5 * (r_term[k] + r_term[k - 1]) * dt;
        }
        const double lhs = e0_tilde[k] + b.beta1 * i_grad;
        const double rhs = e0_tilde[0] + b.beta4 * coupling[0] - b.beta4 * coupling[k] +
                           b.beta4 * i_lap - i_r;
        worst = std::max(worst, std::abs(lhs - rhs));
        lhs_scale = std::max(lhs_scale, std::abs(lhs));
    }
    if (scale) *scale = lhs_scale;
    return worst;
}

double energy_identity2_residual(std::span<const State3> samples, double dt,
                                 const Betas& b, double* scale) {
    if (samples.size() < 2)
        throw std::invalid_argument("energy identity needs >= 2 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");

    const std::size_t n = samples.size();
    const Grid& grid = samples[0].psi.grid;
    const double wq = grid.dim == 1 ? grid.h : grid.h * grid.h;

    std::vector<double> e1_tilde(n), e2_tilde(n), grad_lap_t_sq(n), coupling(n);
    std::vector<double> r_term(n), q1(n), q2(n), q3(n), q4(n), q5(n);
    for (std::size_t k = 0; k < n; ++k) {
        const State3& s = samples[k];
        const NonlinearTerms nt = nonlinear_terms(s, b);
        Field inv_alpha(grid);
        for (std::size_t m = 0; m < inv_alpha.size(); ++m)
            inv_alpha.values[m] = 1.0 / nt.alpha.values[m];

        const Field lap_t = laplacian(s.psi_t);
        const Field lap_tt = laplacian(s.psi_tt);
        const GradField g_lap_t = gradient(lap_t);
        const GradField g_lap = gradient(laplacian(s.psi));
        const GradField g_t = gradient(s.psi_t);

        e1_tilde[k] = 0.5 * sbp_grad_norm_sq(s.psi_tt) +
                      0.5 * b.beta2 * weighted_grad_norm_sq(g_lap_t, inv_alpha) +
                      0.5 * b.beta3 * weighted_norm_sq(lap_t, inv_alpha);
        e2_tilde[k] = b.beta1 * weighted_norm_sq(lap_tt, inv_alpha);
        grad_lap_t_sq[k] = weighted_grad_norm_sq(g_lap_t, inv_alpha);

        double c = 0.0, rt = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
        for (std::size_t m = 0; m < inv_alpha.size(); ++m) {
            const double ia = inv_alpha.values[m];
            const double ia2 = ia * ia;
            double gg = 0.0, g_lt_t = 0.0, g_lt_l = 0.0, g_t_l = 0.0;
            for (int d = 0; d < grid.dim; ++d) {
                gg += g_lap_t.comp[d][m] * g_lap.comp[d][m];
                g_lt_t += g_lap_t.comp[d][m] * g_t.comp[d][m];
                g_lt_l += g_lap_t.comp[d][m] * g_lap_t.comp[d][m];
                g_t_l += g_t.comp[d][m] * g_lap.comp[d][m];
            }
            c += ia * gg;
            rt += ia * nt.r.values[m] * lap_tt.values[m];
            a1 += ia2 * lap_tt.values[m] * g_lt_t;
            a2 += ia2 * s.psi_tt.values[m] * g_lt_l;
            a3 += ia2 * s.psi_tt.values[m] * lap_t.values[m] * lap_t.values[m];
            a4 += ia2 * lap_tt.values[m] * g_t_l;
            a5 += ia2 * s.psi_tt.values[m] * gg;
        }
        coupling[k] = wq * c;
        r_term[k] = wq * rt;
        q1[k] = wq * a1;
        q2[k] = wq * a2;
        q3[k] = wq * a3;
        q4[k] = wq * a4;
        q5[k] = wq * a5;
    }

    double i_e2 = 0.0, i_glt = 0.0, i_r = 0.0, i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0,
           i5 = 0.0;
    double worst = 0.0, lhs_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            auto trapz = [&](const std::vector<double>& f) {
                return 0.5 * (f[k] + f[k - 1]) * dt;
            };
            i_e2 += trapz(e2_tilde);
            i_glt += trapz(grad_lap_t_sq);
            i_r += trapz(r_term);
            i1 += trapz(q1);
            i2 += trapz(q2);
            i3 += trapz(q3);
            i4 += trapz(q4);
            i5 += trapz(q5);
        }
        const double lhs = e1_tilde[k] + i_e2;
        const double rhs = e1_tilde[0] + b.beta4 * coupling[0] - b.beta4 * coupling[k] +
                           b.beta4 * i_glt + i_r + b.beta2 * b.beta5 * i1 -
                           0.5 * b.beta2 * b.beta5 * i2 - 0.5 * b.beta3 * b.beta5 * i3 +
                           b.beta4 * b.beta5 * i4 - b.beta4 * b.beta5 * i5;
        worst = std::max(worst, std::abs(lhs - rhs));
        lhs_scale = std::max(lhs_scale, std::abs(lhs));
    }
    if (scale) *scale = lhs_scale;
    return worst;
}

}  // namespace acoustics
