#pragma once

namespace acoustics {

/// Instantaneous energy functionals and their basic components.
///   E0 = E01/2 + (beta2/4) E02 + (beta3/2) E03
///   E1 = E11/2 + (beta2/4) E12 + (beta3/2) E13
///   E2_instant = (beta1/4) E20
/// E2_accum carries the running time integral of E2 and is filled by the
/// trajectory recorder.
struct EnergyReport {
    double t = 0.0;
    double E0 = 0.0, E1 = 0.0;
    double E2_instant = 0.0, E2_accum = 0.0;
    double E01 = 0.0, E02 = 0.0, E03 = 0.0;
    double E11 = 0.0, E12 = 0.0, E13 = 0.0;
    double E20 = 0.0;
    double alpha_min = 1.0, alpha_max = 1.0;
};

/// Discrete estimates of the Poincare and embedding constants plus the
/// ground eigenvalue of the negative Laplacian they derive from. The ratio
/// maxima are lower estimates of the true suprema (finite candidate family).
struct ConstantsEstimate {
    double lambda_min = 0.0;
    double C_PF = 0.0;
    double C_L4 = 0.0;
    double C_L6 = 0.0;
    double C_Linf = 0.0;
    double C_Delta = 0.0;
};

}  // namespace acoustics
