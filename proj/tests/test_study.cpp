#include <doctest.h>

#include <cmath>
#include <vector>

#include "acoustics/study.hpp"
#include "oracles.hpp"

using namespace acoustics;

namespace {

const PhysicalParams kParams{1.0, 0.1, 2.0, 0.05};

Field sine_mode(const Grid& g, double amp = 1.0) {
    return Field::sample(g, [&](double x, double y) {
        const double px = std::sin(M_PI * x / g.length);
        return amp * (g.dim == 1 ? px : px * std::sin(M_PI * y / g.length));
    });
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("consistency_complete: trivial data and the eigenfunction case") {
    const Grid g(1, 64, 1.0);
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const Betas b = compute_betas(p0, 1, 1);

    const Field zero(g);
    CHECK(max_abs(consistency_complete(zero, zero, b)) == 0.0);

    // psi1 = 0: psi2 = beta3 lap psi0, which is -beta3 mu_h sin on the mode.
    const Field psi0 = sine_mode(g, 0.7);
    const Field psi2 = consistency_complete(psi0, zero, b);
    const double mu = stencil_eigenvalue_1d(g);
    for (std::size_t k = 0; k < psi2.size(); ++k)
        CHECK(psi2.values[k] ==
              doctest::Approx(-b.beta3 * mu * psi0.values[k]).epsilon(1e-10));
}

TEST_CASE("consistency_complete roots the residual and ignores sigma0") {
    const Grid g(1, 48, 1.0);
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const Betas b1 = compute_betas(p0, 1, 1);
    const Betas b0 = compute_betas(p0, 0, 1);
    const Field psi0 = Field::sample(g, [](double x, double) {
        return 0.03 * std::sin(M_PI * x) + 0.01 * std::sin(2.0 * M_PI * x);
    });
    const Field psi1 = sine_mode(g, 0.02);

    const Field psi2 = consistency_complete(psi0, psi1, b1);
    const Field psi2_alt = consistency_complete(psi0, psi1, b0);
    for (std::size_t k = 0; k < psi2.size(); ++k)
        CHECK(psi2.values[k] == psi2_alt.values[k]);

    const Field f = residual_F(State3{psi0, psi1, psi2, 0.0}, b1);
    const double scale = max_abs(psi2) + b1.beta3 * max_abs(laplacian(psi0)) +
                         b1.beta1_limit * max_abs(laplacian(psi1));
    CHECK(max_abs(f) <= 1e-12 * scale);
}

TEST_CASE("consistency_complete preconditions") {
    const Grid g(1, 16, 1.0);
    const Betas with_a = compute_betas(kParams, 1, 1);
    CHECK_THROWS_AS(consistency_complete(Field(g), Field(g), with_a), std::domain_error);

    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const Betas b = compute_betas(p0, 1, 1);
    Field bad(g);
    for (auto& v : bad.values) v = -1.0 / b.beta5;
    CHECK_THROWS_AS(consistency_complete(Field(g), bad, b), DegeneracyError);
}

TEST_CASE("limit_study: degenerate a = 0 input gives zero errors") {
    const Grid g(1, 24, 1.0);
    const Field psi0 = sine_mode(g, 0.005);
    const Field psi1(g);
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.05;
    const std::vector<double> a_values{0.0};
    const LimitStudyResult res = limit_study(psi0, psi1, 1, 1, a_values, kParams, cfg);
    REQUIRE(res.err_psi.size() == 1);
    CHECK(res.err_psi[0] == 0.0);
    CHECK(res.err_psi_t[0] == 0.0);
}

TEST_CASE("limit_study errors shrink with a") {
    const Grid g(1, 48, 1.0);
    const Field psi0 = sine_mode(g, 0.005);
    const Field psi1(g);
    StepperConfig cfg;
    cfg.dt = 0.002;
    cfg.t_end = 0.1;
    const std::vector<double> a_values{0.1, 0.05, 0.025};
    const LimitStudyResult res = limit_study(psi0, psi1, 1, 1, a_values, kParams, cfg);
    REQUIRE(res.err_psi.size() == 3);
    CHECK(res.err_psi[0] > res.err_psi[1]);
    CHECK(res.err_psi[1] > res.err_psi[2]);
    CHECK(res.err_psi_t[0] > res.err_psi_t[1]);
    CHECK(res.err_psi_t[1] > res.err_psi_t[2]);
    CHECK(res.orders_psi.size() == 2);
    CHECK(res.alpha_min >= 0.5);
    CHECK(res.alpha_max <= 1.5);

    const std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(limit_study(psi0, psi1, 1, 1, bad, kParams, cfg),
                    std::invalid_argument);
}

TEST_CASE("hierarchy_compare: zero data collapses all distances") {
    const Grid g(1, 24, 1.0);
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.05;
    const auto dists = hierarchy_compare(Field(g), Field(g), Field(g), kParams, cfg);
    CHECK(dists.size() == 7);
    for (const auto& d : dists) {
        CHECK(d.dist_psi == 0.0);
        CHECK(d.dist_psi_t == 0.0);
    }
}

TEST_CASE("hierarchy_compare: BJK/BCK coefficient gap in the a = nuLambda regime") {
    // With a = nuLambda the two coefficient families share beta2 exactly and
    // differ only through beta4(1) - beta4(0) = a (B/A) c0^2.
    PhysicalParams p = kParams;
    p.a = p.nu_lambda;
    const Betas bj = compute_betas(p, 1, 1);
    const Betas bc = compute_betas(p, 0, 1);
    CHECK(bj.beta1 == bc.beta1);
    CHECK(bj.beta2 == doctest::Approx(bc.beta2).epsilon(1e-14));
    CHECK(bj.beta4 - bc.beta4 ==
          doctest::Approx(p.a * p.b_over_a * p.c0 * p.c0).epsilon(1e-14));
}

TEST_CASE("hierarchy_compare: K-W distance tracks the local nonlinearity size") {
    const Grid g(1, 32, 1.0);
    StepperConfig cfg;
    cfg.dt = 0.005;
    cfg.t_end = 0.1;
    auto kw_distance = [&](double amp) {
        const Field psi0 = sine_mode(g, amp);
        const Field psi1(g);
        PhysicalParams p0 = kParams;
        p0.a = 0.0;
        const Field psi2 = consistency_complete(psi0, psi1, compute_betas(p0, 1, 1));
        const auto dists = hierarchy_compare(psi0, psi1, psi2, kParams, cfg);
        for (const auto& d : dists)
            if (d.model_a == "K" && d.model_b == "W") return d.dist_psi_t;
        return -1.0;
    };
    const double d1 = kw_distance(0.02);
    const double d2 = kw_distance(0.01);
    CHECK(d1 > 0.0);
    // The models differ in quadratic terms, so halving the amplitude should
    // shrink the distance roughly fourfold.
    CHECK(d1 / d2 > 2.0);
    CHECK(d1 / d2 < 8.0);
}

TEST_CASE("general integrator at a = 0 coefficients tracks the limit integrator") {
    const Grid g(1, 48, 1.0);
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const Betas b0 = compute_betas(p0, 1, 1);
    const Field psi0 = sine_mode(g, 0.005);
    const Field psi1(g);
    const Field psi2 = consistency_complete(psi0, psi1, b0);
    StepperConfig cfg;
    cfg.dt = 0.002;
    cfg.t_end = 0.1;
    Observers obs;
    obs.record_energy = false;
    const Trajectory3 t3 = run_general(State3{psi0, psi1, psi2, 0.0}, b0, cfg, obs);
    const Trajectory2 t2 = run_limit(State2{psi0, psi1, 0.0}, b0, cfg, obs);
    double dist = 0.0;
    for (std::size_t k = 0; k < t3.states.size(); ++k)
        dist = std::max(dist, norm_l2(t3.states[k].psi - t2.states[k].psi));
    CHECK(dist < 1e-6);  // pure time-integration difference, O(dt^2) scale
    double worst_f = 0.0;
    for (const auto& s : t3.states) worst_f = std::max(worst_f, norm_l2(residual_F(s, b0)));
    CHECK(worst_f < 1e-5);
}

TEST_CASE("mms_convergence: preconditions and degenerate flags") {
    const ModelId k_model = model_from_name("K");
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const std::vector<int> one_level{32};
    MmsProblem prob;
    CHECK_THROWS_AS(mms_convergence(k_model, p0, prob, one_level, 0.01, 0.1, 1),
                    std::invalid_argument);

    MmsProblem zero_prob;
    zero_prob.amplitude = 0.0;  // exact solution in the kernel
    const std::vector<int> levels{15, 31};
    const MmsResult res = mms_convergence(k_model, p0, zero_prob, levels, 0.01, 0.05, 1);
    CHECK(res.flagged);
}

TEST_CASE("mms_convergence reaches second order on the limit model") {
    const ModelId k_model = model_from_name("K");
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    MmsProblem prob;
    prob.amplitude = 0.05;
    const std::vector<int> levels{31, 63};
    const MmsResult res = mms_convergence(k_model, p0, prob, levels, 0.01, 0.2, 1);
    REQUIRE(res.orders.size() == 1);
    CHECK_FALSE(res.flagged);
    CHECK(res.orders[0] == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("spatial order in isolation: fine dt, h halving") {
    // dt fixed well below the spatial error level; n 31 -> 63 halves h.
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    MmsProblem prob;
    prob.amplitude = 0.05;
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    const double e1 = mms_error_level(model_from_name("K"), p0, prob,
                                      Grid(1, 31, 1.0), cfg).err_psi;
    const double e2 = mms_error_level(model_from_name("K"), p0, prob,
                                      Grid(1, 63, 1.0), cfg).err_psi;
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("mms_convergence on a 2D grid") {
    MmsProblem prob;
    prob.amplitude = 0.02;
    const std::vector<int> levels{12, 25};  // h exactly halves: 1/13 -> 1/26
    const MmsResult bjk = mms_convergence(model_from_name("BJK"), kParams, prob, levels,
                                          0.02, 0.2, 2);
    REQUIRE(bjk.orders.size() == 1);
    CHECK_FALSE(bjk.flagged);
    CHECK(bjk.orders[0] == doctest::Approx(2.0).epsilon(0.25));

    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const MmsResult w = mms_convergence(model_from_name("W"), p0, prob, levels,
                                        0.02, 0.2, 2);
    REQUIRE(w.orders.size() == 1);
    CHECK_FALSE(w.flagged);
    CHECK(w.orders[0] == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("small_data_amplitude certifies the alpha bounds") {
    const Grid g(1, 64, 1.0);
    const ConstantsEstimate c = estimate_constants(g, 7, 25);
    const double amp = small_data_amplitude(g, kParams, 1, 1, c);
    CHECK(amp > 0.0);

    const Betas b = compute_betas(kParams, 1, 1);
    PhysicalParams p0 = kParams;
    p0.a = 0.0;
    const Field psi0 = sine_mode(g, amp);
    const Field psi1(g);
    const Field psi2 = consistency_complete(psi0, psi1, compute_betas(p0, 1, 1));
    const EnergyReport rep = energy_report(State3{psi0, psi1, psi2, 0.0}, b);
    CHECK(constant_C0(c, b) * 2.0 * rep.E1 <= 1.0 / 24.0 * (1.0 + 1e-9));
}
