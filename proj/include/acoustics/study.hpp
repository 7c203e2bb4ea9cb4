#pragma once

#include <span>
#include <string>
#include <vector>

#include "acoustics/analysis.hpp"
#include "acoustics/timestep.hpp"

namespace acoustics {

/// Completes (psi0, psi1) to a consistent triple:
///   psi2 = (beta1_limit lap psi1 + beta3 lap psi0 - 2 beta6 grad psi1 . grad psi0)
///          / (1 + beta5 psi1),
/// the root of the second-order residual F. b must be a limit coefficient
/// set (beta2 == beta4 == 0); anything else is rejected.
Field consistency_complete(const Field& psi0, const Field& psi1, const Betas& b,
                           double degeneracy_floor = kAlphaFloor);

struct LimitStudyResult {
    std::vector<double> a_values;     // strictly decreasing
    std::vector<double> err_psi;      // sup_t H1-proxy error of psi
    std::vector<double> err_psi_t;    // sup_t L2 error of d_t psi
    std::vector<double> orders_psi;   // successive log2 ratios
    std::vector<double> orders_psi_t;
    double alpha_min = 1.0, alpha_max = 1.0;  // over all runs involved
    double sup_e1 = 0.0;
};

/// Runs the third-order model for each a against the limit model reference
/// (computed once at dt/4) on shared consistent initial data; records
/// sup-in-time errors of (psi, d_t psi) and observed orders. An a-value of
/// exactly 0 runs the limit model on both sides.
LimitStudyResult limit_study(const Field& psi0, const Field& psi1, int sigma, int sigma0,
                             std::span<const double> a_values,
                             const PhysicalParams& p_base, const StepperConfig& cfg);

struct PairDistance {
    std::string model_a;
    std::string model_b;
    double dist_psi = 0.0;    // sup_t L2
    double dist_psi_t = 0.0;  // sup_t L2
};

/// Runs all six models on identical data (the four third-order ones with
/// p.a, K/W with a = 0) and reports sup-in-time L2 distances between each
/// adjacent pair of the hierarchy.
std::vector<PairDistance> hierarchy_compare(const Field& psi0, const Field& psi1,
                                            const Field& psi2, const PhysicalParams& p,
                                            const StepperConfig& cfg);

/// Manufactured solution psi = amplitude * prod_j sin(pi x_j / L) * (1 + t^2/2)
/// with the matching source term.
struct MmsProblem {
    double amplitude = 0.01;
    bool linearized = false;  // beta5 := 0, beta6 := 0 (test-only override)
};

struct MmsErrors {
    double err_psi = 0.0;     // sup_t L2
    double err_psi_t = 0.0;
    double err_psi_tt = 0.0;  // third-order runs only
    double level() const;     // max of the recorded component errors
};

/// Error of one run of the given model against the manufactured solution.
MmsErrors mms_error_level(const ModelId& model, const PhysicalParams& p,
                          const MmsProblem& mms, const Grid& g,
                          const StepperConfig& cfg);

/// Same, for an explicit coefficient set: the third-order integrator with
/// arbitrary betas (including a = 0 sets) and the second-order limit one.
MmsErrors mms_error_level_general(const Betas& b, const MmsProblem& mms, const Grid& g,
                                  const StepperConfig& cfg);
MmsErrors mms_error_level_limit(const Betas& b, const MmsProblem& mms, const Grid& g,
                                const StepperConfig& cfg);

struct MmsResult {
    std::vector<int> n_levels;
    std::vector<double> errors;  // sup_t L2 of psi per level
    std::vector<double> orders;  // successive log2 ratios
    bool flagged = false;        // degenerate errors or non-monotone decrease
    std::string flag_reason;
};

/// Refinement study: level k runs with n_levels[k] interior points and
/// dt0 / 2^k. Needs >= 2 levels.
MmsResult mms_convergence(const ModelId& model, const PhysicalParams& p,
                          const MmsProblem& mms, std::span<const int> n_levels,
                          double dt0, double t_end, int dim = 1);

/// Largest profile amplitude for which the small-data certificate
/// C0 * (2 E1(0)) <= 1/24 holds for sine data (psi1 = 0, psi2 completed
/// consistently). Solved by bisection on the amplitude.
double small_data_amplitude(const Grid& g, const PhysicalParams& p, int sigma, int sigma0,
                            const ConstantsEstimate& c);

}  // namespace acoustics
