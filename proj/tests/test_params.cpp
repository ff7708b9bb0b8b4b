#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "ccs/errors.hpp"
#include "ccs/params.hpp"
#include "ccs/steady_state.hpp"
#include "support.hpp"

using namespace ccs;
using ccs::testing::all_ones;

TEST_CASE("validate_params accepts the identity case") {
    const ModelParams p = validate_params(all_ones());
    CHECK(p.d1 == 1.0);
    CHECK(p.gamma == 1.0);
}

TEST_CASE("validate_params rejects nonpositive fields by name") {
    ModelParams p = all_ones();
    p.mu1 = 0.0;
    try {
        validate_params(p);
        FAIL("expected InvalidParameters");
    } catch (const InvalidParameters& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].field == "mu1");
        CHECK(e.issues()[0].kind == ParamIssue::Kind::Nonpositive);
    }

    p = all_ones();
    p.chi2 = -0.5;
    try {
        validate_params(p);
        FAIL("expected InvalidParameters");
    } catch (const InvalidParameters& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].field == "chi2");
    }
}

TEST_CASE("validate_params lists every offending field") {
    ModelParams p = all_ones();
    p.d2 = -1.0;
    p.alpha = std::numeric_limits<double>::quiet_NaN();
    p.beta = std::numeric_limits<double>::infinity();
    try {
        validate_params(p);
        FAIL("expected InvalidParameters");
    } catch (const InvalidParameters& e) {
        REQUIRE(e.issues().size() == 3);
        CHECK(e.issues()[0].field == "d2");
        CHECK(e.issues()[1].field == "alpha");
        CHECK(e.issues()[1].kind == ParamIssue::Kind::Nonfinite);
        CHECK(e.issues()[2].field == "beta");
        CHECK(e.issues()[2].kind == ParamIssue::Kind::Nonfinite);
    }
}

TEST_CASE("classify_regime: coexistence closed form") {
    ModelParams p = all_ones();
    p.a1 = p.a2 = 0.5;
    const SteadyState s = classify_regime(p);
    CHECK(s.regime == Regime::Coexistence);
    CHECK(s.u_star == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.v_star == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.w_star == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK_FALSE(s.mirrored);
}

TEST_CASE("classify_regime: exclusion and boundary targets") {
    ModelParams p = all_ones();
    p.a1 = 2.0;
    p.a2 = 0.5;
    p.beta = 2.0;
    p.gamma = 4.0;
    SteadyState s = classify_regime(p);
    CHECK(s.regime == Regime::Exclusion);
    CHECK(s.u_star == 0.0);
    CHECK(s.v_star == 1.0);
    CHECK(s.w_star == doctest::Approx(0.5).epsilon(1e-15));

    p = all_ones();
    p.a1 = 1.0;
    p.a2 = 0.3;
    s = classify_regime(p);
    CHECK(s.regime == Regime::AlgebraicBoundary);
    CHECK(s.u_star == 0.0);
    CHECK(s.v_star == 1.0);
    CHECK(s.w_star == 1.0);
}

TEST_CASE("classify_regime: open case carries no target") {
    ModelParams p = all_ones();
    p.a1 = 1.5;
    p.a2 = 1.0;
    const SteadyState s = classify_regime(p);
    CHECK(s.regime == Regime::OpenCase);
    CHECK_FALSE(s.has_target());
    CHECK(std::isnan(s.u_star));
}

TEST_CASE("classify_regime: mirrored orientation for a2 >= 1 > a1") {
    ModelParams p = all_ones();
    p.a1 = 0.4;
    p.a2 = 1.5;
    p.alpha = 3.0;
    p.gamma = 2.0;
    const SteadyState s = classify_regime(p);
    CHECK(s.regime == Regime::Exclusion);
    CHECK(s.mirrored);
    CHECK(s.u_star == 1.0);
    CHECK(s.v_star == 0.0);
    CHECK(s.w_star == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("steady identity alpha u* + beta v* = gamma w* in every regime") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const ModelParams p = ccs::testing::random_params(rng, 0.1, 10.0);
        const SteadyState s = classify_regime(p);
        if (!s.has_target()) continue;
        const double defect =
            std::abs(p.alpha * s.u_star + p.beta * s.v_star - p.gamma * s.w_star);
        const double scale = std::abs(p.gamma * s.w_star) + 1.0;
        CHECK(defect <= 1e-14 * scale);
    }
}

TEST_CASE("classify_regime is pure: equal inputs give bitwise-equal outputs") {
    ModelParams p = all_ones();
    p.a1 = 0.37;
    p.a2 = 0.81;
    const SteadyState s1 = classify_regime(p);
    const SteadyState s2 = classify_regime(p);
    CHECK(std::memcmp(&s1.u_star, &s2.u_star, sizeof(double)) == 0);
    CHECK(std::memcmp(&s1.v_star, &s2.v_star, sizeof(double)) == 0);
    CHECK(std::memcmp(&s1.w_star, &s2.w_star, sizeof(double)) == 0);
}

TEST_CASE("coexistence triple approaches the boundary triple as a1 -> 1-") {
    ModelParams p = all_ones();
    p.a1 = 1.0 - 1e-8;
    p.a2 = 0.3;
    const SteadyState near = classify_regime(p);
    p.a1 = 1.0;
    const SteadyState boundary = classify_regime(p);
    CHECK(near.regime == Regime::Coexistence);
    CHECK(boundary.regime == Regime::AlgebraicBoundary);
    CHECK(std::abs(near.u_star - boundary.u_star) <= 1e-6);
    CHECK(std::abs(near.v_star - boundary.v_star) <= 1e-6);
    CHECK(std::abs(near.w_star - boundary.w_star) <= 1e-6);
}
