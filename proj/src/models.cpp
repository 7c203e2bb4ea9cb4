#include "acoustics/models.hpp"

#include <cmath>
#include <string>

namespace acoustics {

namespace {

double effective_beta5(const Betas& b, const ModelOptions& opts) {
    return opts.beta5_override.value_or(b.beta5);
}

void check_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("state fields live on different grids");
}

}  // namespace

NonlinearTerms nonlinear_terms(const State3& s, const Betas& b, const ModelOptions& opts) {
    check_same_grid(s.psi.grid, s.psi_t.grid);
    check_same_grid(s.psi.grid, s.psi_tt.grid);
    const double beta5 = effective_beta5(b, opts);
    NonlinearTerms out{Field(s.psi.grid), Field(s.psi.grid)};
    for (std::size_t k = 0; k < out.alpha.size(); ++k)
        out.alpha.values[k] = 1.0 + beta5 * s.psi_t.values[k];
    for (std::size_t k = 0; k < out.r.size(); ++k)
        out.r.values[k] = beta5 * s.psi_tt.values[k] * s.psi_tt.values[k];
    if (b.beta6 != 0.0) {
        const GradField gpsi = gradient(s.psi);
        const GradField gpsi_t = gradient(s.psi_t);
        const GradField gpsi_tt = gradient(s.psi_tt);
        const Field cross = grad_dot(gpsi_tt, gpsi);
        const Field self = grad_dot(gpsi_t, gpsi_t);
        for (std::size_t k = 0; k < out.r.size(); ++k)
            out.r.values[k] += 2.0 * b.beta6 * (cross.values[k] + self.values[k]);
    }
    return out;
}

Field accel_general(const State3& s, const Betas& b, const ModelOptions& opts) {
    const NonlinearTerms nt = nonlinear_terms(s, b, opts);
    const double amin = field_min(nt.alpha);
    if (amin <= opts.degeneracy_floor) {
        throw DegeneracyError("alpha degenerate: min(alpha) = " + std::to_string(amin) +
                              " at t = " + std::to_string(s.time));
    }
    const Field lap_tt = laplacian(s.psi_tt);
    const Field lap_t = laplacian(s.psi_t);
    const Field bilap_t = laplacian(lap_t);
    const Field bilap = bilaplacian(s.psi);
    Field out(s.psi.grid);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double num = b.beta1 * lap_tt.values[k] - b.beta2 * bilap_t.values[k] +
                     b.beta3 * lap_t.values[k] - b.beta4 * bilap.values[k] -
                     nt.r.values[k];
        if (opts.source) {
            const Grid& g = s.psi.grid;
            const int i = static_cast<int>(k) % g.n;
            const int j = static_cast<int>(k) / g.n;
            num += opts.source(g.coord(i), g.dim == 2 ? g.coord(j) : 0.0, s.time);
        }
        out.values[k] = num / nt.alpha.values[k];
    }
    return out;
}

Field accel_limit(const State2& s, const Betas& b, const ModelOptions& opts) {
    check_same_grid(s.psi.grid, s.psi_t.grid);
    const double beta5 = effective_beta5(b, opts);
    Field alpha(s.psi.grid);
    for (std::size_t k = 0; k < alpha.size(); ++k)
        alpha.values[k] = 1.0 + beta5 * s.psi_t.values[k];
    const double amin = field_min(alpha);
    if (amin <= opts.degeneracy_floor) {
        throw DegeneracyError("alpha degenerate: min(alpha) = " + std::to_string(amin) +
                              " at t = " + std::to_string(s.time));
    }
    const Field lap_t = laplacian(s.psi_t);
    const Field lap = laplacian(s.psi);
    Field q(s.psi.grid);
    if (b.beta6 != 0.0) q = grad_dot(gradient(s.psi_t), gradient(s.psi));
    Field out(s.psi.grid);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double num = b.beta1_limit * lap_t.values[k] + b.beta3 * lap.values[k] -
                     2.0 * b.beta6 * q.values[k];
        if (opts.source) {
            const Grid& g = s.psi.grid;
            const int i = static_cast<int>(k) % g.n;
            const int j = static_cast<int>(k) / g.n;
            num += opts.source(g.coord(i), g.dim == 2 ? g.coord(j) : 0.0, s.time);
        }
        out.values[k] = num / alpha.values[k];
    }
    return out;
}

Field residual_F(const State3& s, const Betas& b) {
    check_same_grid(s.psi.grid, s.psi_t.grid);
    check_same_grid(s.psi.grid, s.psi_tt.grid);
    const Field lap_t = laplacian(s.psi_t);
    const Field lap = laplacian(s.psi);
    Field q(s.psi.grid);
    if (b.beta6 != 0.0) q = grad_dot(gradient(s.psi_t), gradient(s.psi));
    Field out(s.psi.grid);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.values[k] = s.psi_tt.values[k] - b.beta1_limit * lap_t.values[k] -
                        b.beta3 * lap.values[k] +
                        b.beta5 * s.psi_tt.values[k] * s.psi_t.values[k] +
                        2.0 * b.beta6 * q.values[k];
    }
    return out;
}

double dF_identity_residual(std::span<const State3> samples, double dt, const Betas& b) {
    if (samples.size() < 3)
        throw std::invalid_argument("dF identity needs >= 3 equispaced samples");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    double worst = 0.0;
    const double d_beta1 = b.beta1 - b.beta1_limit;
    for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        const Field f_prev = residual_F(samples[k - 1], b);
        const Field f_next = residual_F(samples[k + 1], b);
        const Field lap_tt = laplacian(samples[k].psi_tt);
        const Field bilap_t = bilaplacian(samples[k].psi_t);
        const Field bilap = bilaplacian(samples[k].psi);
        Field diff(f_prev.grid);
        for (std::size_t m = 0; m < diff.size(); ++m) {
            const double dF = (f_next.values[m] - f_prev.values[m]) / (2.0 * dt);
            const double rhs = d_beta1 * lap_tt.values[m] - b.beta2 * bilap_t.values[m] -
                               b.beta4 * bilap.values[m];
            diff.values[m] = dF - rhs;
        }
        worst = std::max(worst, norm_l2(diff));
    }
    return worst;
}

double factorization_check(const Betas& b, const Field& psi, const Field& psi_t,
                           const Field& psi_tt, const Field& psi_ttt) {
    if (b.sigma0 != 1) {
        throw std::invalid_argument(
            "factorization check supports the sigma0 = 1 coefficient family only");
    }
    check_same_grid(psi.grid, psi_t.grid);
    check_same_grid(psi.grid, psi_tt.grid);
    check_same_grid(psi.grid, psi_ttt.grid);

    // Expanded linear operator on the slot tuple.
    const Field lap_tt = laplacian(psi_tt);
    const Field lap_t = laplacian(psi_t);
    const Field bilap_t = laplacian(lap_t);
    const Field bilap = bilaplacian(psi);
    Field expanded(psi.grid);
    for (std::size_t k = 0; k < expanded.size(); ++k) {
        expanded.values[k] = psi_ttt.values[k] - b.beta1 * lap_tt.values[k] +
                             b.beta2 * bilap_t.values[k] - b.beta3 * lap_t.values[k] +
                             b.beta4 * bilap.values[k];
    }

    // Composed heat-after-wave form: the wave expression W = psi_tt
    // - nu_lambda lap psi_t - c0^2 lap psi, time-shifted once for d_t W and
    // diffused for the heat factor. Scalars recovered from the coefficients:
    // heat coefficient a(1+B/A) = beta4/beta3, damping nu_lambda = beta0*beta3.
    const double heat_coeff = b.beta4 / b.beta3;
    const double damping = b.beta0 * b.beta3;
    Field wave(psi.grid);
    Field wave_dt(psi.grid);
    const Field lap_psi = laplacian(psi);
    for (std::size_t k = 0; k < wave.size(); ++k) {
        wave.values[k] =
            psi_tt.values[k] - damping * lap_t.values[k] - b.beta3 * lap_psi.values[k];
        wave_dt.values[k] =
            psi_ttt.values[k] - damping * lap_tt.values[k] - b.beta3 * lap_t.values[k];
    }
    const Field lap_wave = laplacian(wave);
    Field composed(psi.grid);
    for (std::size_t k = 0; k < composed.size(); ++k)
        composed.values[k] = wave_dt.values[k] - heat_coeff * lap_wave.values[k];

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < composed.size(); ++k) {
        const double d = expanded.values[k] - composed.values[k];
        num += d * d;
        den += std::max(expanded.values[k] * expanded.values[k],
                        composed.values[k] * composed.values[k]);
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

}  // namespace acoustics
