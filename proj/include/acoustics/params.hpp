#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace acoustics {

/// Fluid constants entering the damped wave models. All equations depend on
/// the medium only through c0, nu_lambda, b_over_a and the thermal
/// conductivity a; the raw fluid constants (viscosities, density, Prandtl
/// number) enter once, in from_fluid().
struct PhysicalParams {
    double c0 = 1.0;         // speed of sound, > 0
    double nu_lambda = 0.1;  // combined diffusivity nu*Lambda, > 0
    double b_over_a = 1.0;   // parameter of nonlinearity B/A, > 0
    double a = 0.0;          // thermal conductivity, >= 0 (0 selects the limit models)

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

/// Throws std::domain_error naming the offending field.
void validate(const PhysicalParams& p);

/// Derives PhysicalParams from raw fluid constants:
///   nu = mu/rho0, Lambda = mu_b/mu + 4/3, a = nu/Pr.
PhysicalParams from_fluid(double mu, double mu_b, double rho0, double pr,
                          double c0, double b_over_a);

/// One of the six models. The switching variables select the nonlinearity
/// type (sigma: 1 Kuznetsov-type, 0 Westervelt-type) and the coefficient
/// family (sigma0: 1 Brunnhuber-Jordan, 0 Blackstock-Crighton).
struct ModelId {
    std::string name;  // BJK, BCK, K, BJW, BCW, W
    int sigma0 = 1;
    int sigma = 1;
    bool requires_a_zero = false;
};

const std::vector<ModelId>& model_catalog();
ModelId model_from_name(std::string_view name);  // throws std::invalid_argument

/// Rejects a == 0 for the third-order models and a > 0 for K/W.
void validate_model_params(const ModelId& m, const PhysicalParams& p);

/// Unified coefficient set of the damped wave hierarchy.
/// beta0 is stored in closed form (never as beta2/beta4, which is 0/0 at
/// a = 0); beta1_limit is the a -> 0 value of beta1 and is what the
/// second-order limit models and the consistency condition use.
struct Betas {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
    double beta4 = 0.0;
    double beta5 = 0.0;
    double beta6 = 0.0;
    double beta1_limit = 0.0;
    int sigma0 = 1;
    int sigma = 1;
};

/// Evaluates the coefficient set for given switching variables. The sigma0
/// branches use the algebraically reduced forms, so beta0*beta4 == beta2
/// holds to round-off and a = 0 yields the limit values exactly.
Betas compute_betas(const PhysicalParams& p, int sigma0, int sigma);

inline Betas compute_betas(const PhysicalParams& p, const ModelId& m) {
    return compute_betas(p, m.sigma0, m.sigma);
}

}  // namespace acoustics
