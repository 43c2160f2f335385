#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "iotrisk/error.hpp"
#include "iotrisk/risk.hpp"
#include "oracles.hpp"

namespace iotrisk {
namespace {

RiskScenario scenario(std::string id, double p, double x, std::optional<std::string> origin = std::nullopt) {
    RiskScenario s;
    s.id = std::move(id);
    s.probability = p;
    s.consequence = x;
    s.origin_component = std::move(origin);
    return s;
}

TEST(ScenarioRisk, Product) {
    EXPECT_DOUBLE_EQ(scenario_risk(scenario("a", 0.5, 200)), 100.0);
    EXPECT_DOUBLE_EQ(scenario_risk(scenario("a", 0.0, 1e6)), 0.0);
    EXPECT_DOUBLE_EQ(scenario_risk(scenario("a", 1.0, 42)), 42.0);
}

TEST(ExpectedLoss, SumOverScenarios) {
    EXPECT_DOUBLE_EQ(expected_loss(RiskRegister{}), 0.0);
    RiskRegister reg({scenario("a", 0.3, 10), scenario("b", 0.5, 20)});
    EXPECT_NEAR(expected_loss(reg), 13.0, 1e-12);
    RiskRegister scaled({scenario("a", 0.3, 70), scenario("b", 0.5, 140)});
    EXPECT_NEAR(expected_loss(scaled), 7.0 * expected_loss(reg), 1e-9);
}

TEST(RiskRegister, RejectsInvalidScenarios) {
    EXPECT_THROW(RiskRegister({scenario("a", 1.5, 10)}), Error);
    EXPECT_THROW(RiskRegister({scenario("a", -0.1, 10)}), Error);
    EXPECT_THROW(RiskRegister({scenario("a", 0.5, -1)}), Error);
    EXPECT_THROW(RiskRegister({scenario("a", 0.5, 1), scenario("a", 0.5, 1)}), Error);
}

ExploitabilityFactors factors(AccessComplexity ac, RequiredPrivileges pr, PublicExploit pe, AttackVector av,
                              PatchState ps) {
    return {ac, pr, pe, av, ps};
}

TEST(DeriveWeight, PublicSmartDeviceWithExploitToolIsCritical) {
    EXPECT_EQ(derive_weight(factors(AccessComplexity::low, RequiredPrivileges::none, PublicExploit::weaponized,
                                    AttackVector::remote, PatchState::unpatched)),
              3);
}

TEST(DeriveWeight, BackEndServerNeedingExpertiseIsModerate) {
    // Internal network access and significant expertise; the patch state is
    // not stated, so both the local and adjacent readings are checked with
    // no patch applied.
    for (auto vector : {AttackVector::local, AttackVector::adjacent}) {
        EXPECT_EQ(derive_weight(factors(AccessComplexity::high, RequiredPrivileges::admin, PublicExploit::none, vector,
                                        PatchState::unpatched)),
                  1);
    }
}

TEST(DeriveWeight, MostBenignIsZero) {
    EXPECT_EQ(derive_weight(factors(AccessComplexity::high, RequiredPrivileges::admin, PublicExploit::none,
                                    AttackVector::physical, PatchState::patched)),
              0);
}

template <typename F>
void for_each_factor_combination(F&& f) {
    for (int ac = 0; ac < 2; ++ac)
        for (int pr = 0; pr < 3; ++pr)
            for (int pe = 0; pe < 3; ++pe)
                for (int av = 0; av < 4; ++av)
                    for (int ps = 0; ps < 3; ++ps)
                        f(ExploitabilityFactors{static_cast<AccessComplexity>(ac), static_cast<RequiredPrivileges>(pr),
                                                static_cast<PublicExploit>(pe), static_cast<AttackVector>(av),
                                                static_cast<PatchState>(ps)});
}

TEST(DeriveWeight, MonotoneOverAllCombinations) {
    int combinations = 0;
    for_each_factor_combination([&](const ExploitabilityFactors& f) {
        ++combinations;
        const int w = derive_weight(f);
        EXPECT_GE(w, 0);
        EXPECT_LE(w, 3);
        auto worse = f;
        if (f.access_complexity == AccessComplexity::high) {
            worse = f;
            worse.access_complexity = AccessComplexity::low;
            EXPECT_GE(derive_weight(worse), w);
        }
        if (static_cast<int>(f.required_privileges) < 2) {
            worse = f;
            worse.required_privileges = static_cast<RequiredPrivileges>(static_cast<int>(f.required_privileges) + 1);
            EXPECT_GE(derive_weight(worse), w);
        }
        if (static_cast<int>(f.public_exploit) < 2) {
            worse = f;
            worse.public_exploit = static_cast<PublicExploit>(static_cast<int>(f.public_exploit) + 1);
            EXPECT_GE(derive_weight(worse), w);
        }
        if (static_cast<int>(f.attack_vector) < 3) {
            worse = f;
            worse.attack_vector = static_cast<AttackVector>(static_cast<int>(f.attack_vector) + 1);
            EXPECT_GE(derive_weight(worse), w);
        }
        if (static_cast<int>(f.patch_state) < 2) {
            worse = f;
            worse.patch_state = static_cast<PatchState>(static_cast<int>(f.patch_state) + 1);
            EXPECT_GE(derive_weight(worse), w);
        }
    });
    EXPECT_EQ(combinations, 216);
}

TEST(DeriveWeight, AllLevelsReachable) {
    std::set<int> seen;
    for_each_factor_combination([&](const ExploitabilityFactors& f) { seen.insert(derive_weight(f)); });
    EXPECT_EQ(seen, (std::set<int>{0, 1, 2, 3}));
}

TEST(WeightRubric, RejectsNonMonotoneTables) {
    WeightRubric rubric;
    EXPECT_NO_THROW(validate(rubric));
    rubric.attack_vector = {1.0, 0.5, 0.5, 1.0};
    EXPECT_THROW(validate(rubric), Error);
    rubric = {};
    rubric.patch_state = {0.0, 0.5, 1.5};
    EXPECT_THROW(validate(rubric), Error);
}

TEST(DependencyBump, Rubric) {
    EXPECT_EQ(dependency_bump(2, 0.6), 3);
    EXPECT_EQ(dependency_bump(3, 1.0), 3);
    EXPECT_EQ(dependency_bump(1, 0.1), 1);
    EXPECT_EQ(dependency_bump(1, 0.5), 2);
    EXPECT_EQ(dependency_bump(1, 0.6, 0.7), 1);
    EXPECT_THROW(dependency_bump(4, 0.1), Error);
    EXPECT_THROW(dependency_bump(1, 1.1), Error);
}

TEST(DependencyBump, NeverDecreasesAndMonotoneInProportion) {
    for (int w = 0; w <= 3; ++w) {
        int previous = w;
        for (int step = 0; step <= 100; ++step) {
            int bumped = dependency_bump(w, step / 100.0);
            EXPECT_GE(bumped, w);
            EXPECT_LE(bumped, 3);
            EXPECT_GE(bumped, previous);
            previous = bumped;
        }
    }
}

ImpactReport report_at(std::string origin, std::uint64_t fd, std::uint64_t denominator) {
    ImpactReport r;
    r.origin = origin;
    r.seeds = {origin};
    r.fd = fd;
    r.denominator = denominator;
    return r;
}

TEST(DependencyAdjustedRisk, ScalesByProportion) {
    EXPECT_DOUBLE_EQ(dependency_adjusted_risk(scenario("s", 1.0, 100, "D"), report_at("D", 5, 5)), 100.0);
    EXPECT_DOUBLE_EQ(dependency_adjusted_risk(scenario("s", 0.5, 200, "D"),
                                              impact_proportion(testing::five_node_graph(), "D")),
                     60.0);
    EXPECT_DOUBLE_EQ(dependency_adjusted_risk(scenario("s", 0.7, 900, "D"), report_at("D", 0, 5)), 0.0);
}

TEST(DependencyAdjustedRisk, OriginMismatch) {
    try {
        dependency_adjusted_risk(scenario("s", 1.0, 100, "C"), report_at("D", 1, 5));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OriginMismatch);
    }
    EXPECT_THROW(dependency_adjusted_risk(scenario("s", 1.0, 100), report_at("D", 1, 5)), Error);
}

TEST(DependencyAdjustedRisk, NeverExceedsScenarioRisk) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        auto s = scenario("s", unit(rng), 1000 * unit(rng), "o");
        std::uint64_t den = 1 + rng() % 20;
        auto r = report_at("o", rng() % (den + 1), den);
        EXPECT_LE(dependency_adjusted_risk(s, r), scenario_risk(s));
    }
}

TEST(MonteCarlo, DegenerateRegisters) {
    auto certain = monte_carlo(RiskRegister({scenario("a", 1.0, 100)}), {1000, 3, 0.95, 1});
    EXPECT_EQ(certain.mean_loss, 100.0);
    EXPECT_EQ(certain.value_at_risk, 100.0);
    EXPECT_EQ(certain.min_loss, 100.0);
    EXPECT_EQ(certain.max_loss, 100.0);

    auto never = monte_carlo(RiskRegister({scenario("a", 0.0, 100)}), {1000, 3, 0.95, 1});
    EXPECT_EQ(never.mean_loss, 0.0);
    EXPECT_EQ(never.value_at_risk, 0.0);
    EXPECT_EQ(never.max_loss, 0.0);

    auto empty = monte_carlo(RiskRegister{}, {10, 3, 0.5, 1});
    EXPECT_EQ(empty.max_loss, 0.0);
}

TEST(MonteCarlo, ConvergesToExpectedLoss) {
    RiskRegister reg({scenario("a", 0.3, 10), scenario("b", 0.5, 20)});
    const double sigma = std::sqrt(0.3 * 0.7 * 100 + 0.5 * 0.5 * 400);  // 11
    const std::uint64_t trials = 100000;
    auto summary = monte_carlo(reg, {trials, 12345, 0.95, 0});
    EXPECT_LE(std::abs(summary.mean_loss - 13.0), 4 * sigma / std::sqrt(double(trials)));
    EXPECT_LE(summary.min_loss, summary.mean_loss);
    EXPECT_LE(summary.mean_loss, summary.max_loss);
    // Loss support is {0, 10, 20, 30}; P(30) = 0.15 so the 95% quantile is 30.
    EXPECT_EQ(summary.value_at_risk, 30.0);
}

TEST(MonteCarlo, StatisticalAcceptanceOverSeeds) {
    RiskRegister reg({scenario("a", 0.3, 10), scenario("b", 0.5, 20)});
    const double sigma = 11.0;
    const std::uint64_t trials = 2000;
    int outside = 0;
    const int runs = 300;
    for (int seed = 0; seed < runs; ++seed) {
        auto s = monte_carlo(reg, {trials, static_cast<std::uint64_t>(seed), 0.9, 1});
        outside += std::abs(s.mean_loss - 13.0) > 4 * sigma / std::sqrt(double(trials)) ? 1 : 0;
    }
    EXPECT_LT(outside, runs / 100 + 1);
}

TEST(MonteCarlo, IdenticalAcrossWorkerCounts) {
    RiskRegister reg({scenario("a", 0.3, 10), scenario("b", 0.5, 20), scenario("c", 0.01, 5000)});
    auto one = monte_carlo(reg, {50001, 99, 0.99, 1});
    for (unsigned workers : {2u, 3u, 8u, 0u}) {
        EXPECT_EQ(one, monte_carlo(reg, {50001, 99, 0.99, workers}));
    }
    EXPECT_EQ(simulate_losses(reg, 1000, 7, 1), simulate_losses(reg, 1000, 7, 5));
    EXPECT_NE(simulate_losses(reg, 1000, 7, 1), simulate_losses(reg, 1000, 8, 1));
}

TEST(MonteCarlo, NearestRankQuantile) {
    // Losses are 100 with probability 0.5 and 0 otherwise; the nearest-rank
    // quantile must match the sorted simulated sample directly.
    RiskRegister reg({scenario("a", 0.5, 100)});
    auto losses = simulate_losses(reg, 10, 4, 1);
    std::sort(losses.begin(), losses.end());
    for (double alpha : {0.1, 0.25, 0.5, 0.55, 0.9, 0.95}) {
        auto s = monte_carlo(reg, {10, 4, alpha, 1});
        std::size_t rank = static_cast<std::size_t>(std::ceil(alpha * 10 - 1e-9));
        EXPECT_EQ(s.value_at_risk, losses[rank - 1]) << alpha;
    }
}

TEST(MonteCarlo, RejectsBadOptions) {
    RiskRegister reg({scenario("a", 0.5, 1)});
    try {
        monte_carlo(reg, {0, 1, 0.95, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroTrials);
    }
    for (double alpha : {0.0, 1.0, 1.5, -0.2}) {
        try {
            monte_carlo(reg, {10, 1, alpha, 1});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidAlpha);
        }
    }
}

}  // namespace
}  // namespace iotrisk
