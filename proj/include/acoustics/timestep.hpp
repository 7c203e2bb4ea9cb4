#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "acoustics/analysis_types.hpp"
#include "acoustics/models.hpp"

namespace acoustics {

/// Unknown count above which the per-step solve switches from a direct
/// sparse factorization to a preconditioned conjugate-gradient solve.
inline constexpr int kDirectSolverLimit = 20000;

struct StepperConfig {
    double dt = 1e-3;               // > 0
    double t_end = 0.1;             // >= 0
    double theta = 0.5;             // implicitness weight in [1/2, 1]
    double linear_solver_tol = 1e-10;
    int max_linear_iters = 2000;

    friend bool operator==(const StepperConfig&, const StepperConfig&) = default;
};

void validate(const StepperConfig& cfg);

struct Observers {
    int state_stride = 1;    // record every k-th step (initial/final always kept)
    int energy_stride = 1;
    bool record_states = true;
    bool record_energy = true;  // third-order runs only
};

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<EnergyReport> energy;  // empty unless recorded (State3 runs)
    double alpha_min = std::numeric_limits<double>::infinity();
    double alpha_max = -std::numeric_limits<double>::infinity();
    double sup_e1 = 0.0;  // max recorded E1 (State3 runs with energy on)
    std::vector<std::string> warnings;
};

using Trajectory3 = Trajectory<State3>;
using Trajectory2 = Trajectory<State2>;

/// Advances the third-order system. Linear spatial terms go through the
/// theta-method; alpha and r are frozen at a state extrapolated from the two
/// most recent steps to t_n + theta*dt (the first step reuses the prescribed
/// initial data). One SPD sparse solve per step; the matrix is reassembled
/// each step because the alpha* diagonal varies.
class GeneralStepper {
  public:
    GeneralStepper(const Grid& g, const Betas& b, const StepperConfig& cfg,
                   const ModelOptions& opts = {});
    ~GeneralStepper();
    GeneralStepper(GeneralStepper&&) noexcept;
    GeneralStepper& operator=(GeneralStepper&&) noexcept;

    void reset(const State3& initial);
    State3 step();                    // advances the internal state by dt
    const State3& current() const;
    double last_alpha_min() const;
    double last_alpha_max() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Same scheme on the second-order limit system.
class LimitStepper {
  public:
    LimitStepper(const Grid& g, const Betas& b, const StepperConfig& cfg,
                 const ModelOptions& opts = {});
    ~LimitStepper();
    LimitStepper(LimitStepper&&) noexcept;
    LimitStepper& operator=(LimitStepper&&) noexcept;

    void reset(const State2& initial);
    State2 step();
    const State2& current() const;
    double last_alpha_min() const;
    double last_alpha_max() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Single bootstrap step (predictor = the given state twice).
State3 step_general(const State3& s, const Betas& b, const StepperConfig& cfg,
                    const ModelOptions& opts = {});
State2 step_limit(const State2& s, const Betas& b, const StepperConfig& cfg,
                  const ModelOptions& opts = {});

Trajectory3 run_general(const State3& initial, const Betas& b, const StepperConfig& cfg,
                        const Observers& obs = {}, const ModelOptions& opts = {});
Trajectory2 run_limit(const State2& initial, const Betas& b, const StepperConfig& cfg,
                      const Observers& obs = {}, const ModelOptions& opts = {});

/// Power-iteration estimate of the spectral radius of the explicitly frozen
/// nonlinear coupling, linearised at the given state. A run warns when
/// dt * estimate exceeds 2.
double explicit_part_eigenvalue_estimate(const State3& s, const Betas& b,
                                         const ModelOptions& opts = {});

}  // namespace acoustics
