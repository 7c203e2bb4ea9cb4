#pragma once

#include <span>

#include "acoustics/analysis_types.hpp"
#include "acoustics/models.hpp"

namespace acoustics {

/// Energy components of a third-order state. alpha is built from
/// phi_t_for_alpha (the self-energy passes s.psi_t); weighted norms use
/// pointwise sqrt(alpha) and 1/sqrt(alpha). Unweighted gradient norms use
/// the summation-by-parts face gradient so the integrated identity closes
/// exactly in space. E2_accum is left at 0.
EnergyReport energy_report(const State3& s, const Field& phi_t_for_alpha, const Betas& b,
                           double degeneracy_floor = kAlphaFloor);
EnergyReport energy_report(const State3& s, const Betas& b,
                           double degeneracy_floor = kAlphaFloor);

struct AlphaBounds {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    bool pass = false;  // alpha_min >= 1/2 and alpha_max <= 3/2
};

/// Aggregates recorded alpha extrema; throws std::invalid_argument on an
/// empty trajectory.
AlphaBounds alpha_bounds(std::span<const EnergyReport> rows);

/// Dense-eigenbasis estimation of the embedding constants: C_PF from the
/// ground eigenvalue, the norm-ratio constants as maxima over the full
/// Dirichlet eigenbasis plus n_random seeded random fields. Requires
/// grid.size() <= 4096 for the dense stage.
ConstantsEstimate estimate_constants(const Grid& g, unsigned seed = 12345,
                                     int n_random = 100);

// Derived constants of the a priori estimates.
double constant_C0(const ConstantsEstimate& c, const Betas& b);
double constant_C1(const ConstantsEstimate& c, const Betas& b);
double constant_C2(const ConstantsEstimate& c, const Betas& b);
double constant_C3(const Betas& b);
double constant_C4(const ConstantsEstimate& c, const Betas& b, double T);

/// Four-term smallness quantity governing the small-data regime:
///   (C_PF^2 C_L4^2 beta5 / beta1) sqrt(ebar0)
/// + ((C_Delta C_Linf beta5)^2 / beta3) ebar1
/// + (C2 / beta1) (||lap psi0||^2 + C3 T^2 ebar1)
/// + C4 (||grad lap psi0|| / 2 + sqrt(ebar1)).
double smallness_M(const ConstantsEstimate& c, const Betas& b, double norm_lap_psi0,
                   double norm_grad_lap_psi0, double ebar0, double ebar1, double T);

/// Checks ||phi(t)||^2 <= 3 ||phi(0)||^2 + 3 T int_0^t ||d_t phi||^2 at every
/// sample time, with d_t phi by central differences (constant-extrapolated
/// at the ends) and a discretization slack of
/// 5 dt^2 max_k || second difference / dt^2 ||. Throws on < 3 samples.
/// When margin is non-null it receives min over t of (rhs - lhs).
bool gronwall_check(std::span<const Field> samples, double T, double* margin = nullptr);

/// Max absolute residual of the integrated first testing identity along a
/// stride-1 third-order trajectory (self-consistent alpha, phi = psi), with
/// trapezoid quadrature for the time integrals. O(dt^2) for smooth runs.
/// When scale is non-null it receives the magnitude of the identity's
/// left-hand side, for relative assessment.
double energy_identity_residual(std::span<const State3> samples, double dt,
                                const Betas& b, double* scale = nullptr);

/// Residual of the second (higher-order) testing identity, diagnostic only:
/// the weighted gradients of 1/alpha admit several discrete closures near
/// the boundary, so no tolerance is contracted. Nodal central gradients are
/// used inside the weighted norms and the R(t) terms.
double energy_identity2_residual(std::span<const State3> samples, double dt,
                                 const Betas& b, double* scale = nullptr);

}  // namespace acoustics
