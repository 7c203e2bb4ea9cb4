#include "acoustics/params.hpp"

#include <cmath>
#include <stdexcept>

namespace acoustics {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(field) + " must be > 0 (got " +
                                std::to_string(v) + ")");
    }
}

}  // namespace

void validate(const PhysicalParams& p) {
    require_positive(p.c0, "c0");
    require_positive(p.nu_lambda, "nu_lambda");
    require_positive(p.b_over_a, "b_over_a");
    if (!(p.a >= 0.0) || !std::isfinite(p.a)) {
        throw std::domain_error("a must be >= 0 (got " + std::to_string(p.a) + ")");
    }
}

PhysicalParams from_fluid(double mu, double mu_b, double rho0, double pr, double c0,
                          double b_over_a) {
    require_positive(mu, "mu");
    require_positive(mu_b, "mu_b");
    require_positive(rho0, "rho0");
    require_positive(pr, "pr");
    require_positive(c0, "c0");
    require_positive(b_over_a, "b_over_a");
    const double nu = mu / rho0;
    const double lambda = mu_b / mu + 4.0 / 3.0;
    PhysicalParams p;
    p.c0 = c0;
    p.nu_lambda = nu * lambda;
    p.b_over_a = b_over_a;
    p.a = nu / pr;
    return p;
}

const std::vector<ModelId>& model_catalog() {
    static const std::vector<ModelId> catalog = {
        {"BJK", 1, 1, false}, {"BCK", 0, 1, false}, {"K", 1, 1, true},
        {"BJW", 1, 0, false}, {"BCW", 0, 0, false}, {"W", 1, 0, true},
    };
    return catalog;
}

ModelId model_from_name(std::string_view name) {
    for (const auto& m : model_catalog()) {
        if (m.name == name) return m;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected BJK, BCK, K, BJW, BCW or W)");
}

void validate_model_params(const ModelId& m, const PhysicalParams& p) {
    validate(p);
    if (m.requires_a_zero && p.a != 0.0) {
        throw std::domain_error(m.name + " requires a = 0 (got a = " +
                                std::to_string(p.a) + ")");
    }
    if (!m.requires_a_zero && p.a == 0.0) {
        throw std::domain_error(m.name + " requires a > 0; use K or W for a = 0");
    }
}

Betas compute_betas(const PhysicalParams& p, int sigma0, int sigma) {
    validate(p);
    if (sigma0 != 0 && sigma0 != 1) throw std::domain_error("sigma0 must be 0 or 1");
    if (sigma != 0 && sigma != 1) throw std::domain_error("sigma must be 0 or 1");

    const double q = p.b_over_a;
    const double nl = p.nu_lambda;
    const double c2 = p.c0 * p.c0;
    const double a = p.a;

    Betas b;
    b.sigma0 = sigma0;
    b.sigma = sigma;
    b.beta1 = a * (1.0 + q) + nl;
    b.beta3 = c2;
    b.beta5 = (2.0 * (1 - sigma) + q) / c2;
    b.beta6 = sigma;
    b.beta1_limit = nl;
    if (sigma0 == 1) {
        b.beta2 = a * (1.0 + q) * nl;
        b.beta4 = a * (1.0 + q) * c2;
        b.beta0 = nl / c2;
    } else {
        b.beta2 = a * (nl + a * q);
        b.beta4 = a * c2;
        b.beta0 = (nl + a * q) / c2;
    }
    return b;
}

}  // namespace acoustics
