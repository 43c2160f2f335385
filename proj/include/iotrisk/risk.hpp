#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotrisk/metrics.hpp"

namespace iotrisk {

enum class RiskCategory { ethical, privacy, security, technical, interoperability, safety };

std::string_view to_string(RiskCategory category);
std::optional<RiskCategory> parse_risk_category(std::string_view text);

// One undesirable event: description, likelihood and monetary consequence.
struct RiskScenario {
    std::string id;
    std::string description;
    double probability = 0.0;
    double consequence = 0.0;
    std::optional<std::string> origin_component;
    std::optional<std::string> vulnerability_id;
    RiskCategory category = RiskCategory::security;
    // Opaque labels such as a principle or area-of-focus code.
    std::vector<std::string> tags;
    // Stakeholder answers for the triage policy; these override derived values.
    std::map<std::string, std::string> triage;

    bool operator==(const RiskScenario&) const = default;
};

// Throws InvalidArgument when probability is outside [0,1], consequence is
// negative or not finite, or the id is empty.
void validate(const RiskScenario& scenario);

class RiskRegister {
public:
    RiskRegister() = default;
    // Validates every scenario; throws InvalidArgument on duplicate ids.
    explicit RiskRegister(std::vector<RiskScenario> scenarios);

    const std::vector<RiskScenario>& scenarios() const noexcept { return scenarios_; }
    std::size_t size() const noexcept { return scenarios_.size(); }
    bool empty() const noexcept { return scenarios_.empty(); }
    const RiskScenario* find(std::string_view id) const;

    bool operator==(const RiskRegister&) const = default;

private:
    std::vector<RiskScenario> scenarios_;
};

// Severity orderings run from most benign to most exploitable.
enum class AccessComplexity { high, low };
enum class RequiredPrivileges { admin, user, none };
enum class PublicExploit { none, proof_of_concept, weaponized };
enum class AttackVector { physical, local, adjacent, remote };
enum class PatchState { patched, mitigation_available, unpatched };

std::string_view to_string(AccessComplexity value);
std::string_view to_string(RequiredPrivileges value);
std::string_view to_string(PublicExploit value);
std::string_view to_string(AttackVector value);
std::string_view to_string(PatchState value);

std::optional<AccessComplexity> parse_access_complexity(std::string_view text);
std::optional<RequiredPrivileges> parse_required_privileges(std::string_view text);
std::optional<PublicExploit> parse_public_exploit(std::string_view text);
std::optional<AttackVector> parse_attack_vector(std::string_view text);
std::optional<PatchState> parse_patch_state(std::string_view text);

struct ExploitabilityFactors {
    AccessComplexity access_complexity = AccessComplexity::high;
    RequiredPrivileges required_privileges = RequiredPrivileges::admin;
    PublicExploit public_exploit = PublicExploit::none;
    AttackVector attack_vector = AttackVector::physical;
    PatchState patch_state = PatchState::patched;

    bool operator==(const ExploitabilityFactors&) const = default;
};

// Severity subscore per factor level, indexed by the enum's ordinal.
// weight = floor(3 * mean(subscores) + 0.5), clamped to 0..3.
struct WeightRubric {
    std::array<double, 2> access_complexity{0.0, 1.0};
    std::array<double, 3> required_privileges{0.0, 0.5, 1.0};
    std::array<double, 3> public_exploit{0.0, 0.5, 1.0};
    std::array<double, 4> attack_vector{0.0, 0.33, 0.66, 1.0};
    std::array<double, 3> patch_state{0.0, 0.5, 1.0};

    bool operator==(const WeightRubric&) const = default;
};

// Throws InvalidArgument unless every subscore lies in [0,1] and is
// non-decreasing along its severity ordering.
void validate(const WeightRubric& rubric);

int derive_weight(const ExploitabilityFactors& factors, const WeightRubric& rubric = {});

struct VulnerabilityRecord {
    std::string id;
    std::string summary;
    ExploitabilityFactors factors;
    int weight = 0;
    // Cleared when VEX statements rule the record out on every component
    // that carries it.
    bool active = true;
    // Components on which VEX declared the vulnerability not exploitable.
    std::vector<std::string> inactive_products;

    bool active_on(std::string_view component) const;

    bool operator==(const VulnerabilityRecord&) const = default;
};

VulnerabilityRecord make_vulnerability(std::string id, std::string summary, ExploitabilityFactors factors,
                                       const WeightRubric& rubric = {});

double scenario_risk(const RiskScenario& scenario) noexcept;
double expected_loss(const RiskRegister& register_) noexcept;

// Raises a weight by one level (capped at 3) when the cascade proportion
// reaches `threshold`.
int dependency_bump(int weight, double proportion, double threshold = 0.5);

// probability * consequence * proportion. Throws OriginMismatch when the
// report does not originate at the scenario's component.
double dependency_adjusted_risk(const RiskScenario& scenario, const ImpactReport& report);

struct LossDistributionSummary {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean_loss = 0.0;
    double value_at_risk = 0.0;
    double alpha = 0.95;
    double min_loss = 0.0;
    double max_loss = 0.0;

    bool operator==(const LossDistributionSummary&) const = default;
};

struct MonteCarloOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double alpha = 0.95;
    unsigned workers = 0;  // 0 picks the hardware concurrency
};

// Independent Bernoulli occurrence per scenario per trial. Every trial
// draws from its own counter-derived stream, so the summary is identical
// for any worker count. Throws ZeroTrials or InvalidAlpha.
LossDistributionSummary monte_carlo(const RiskRegister& register_, const MonteCarloOptions& options);

// Simulated per-trial losses, in trial order.
std::vector<double> simulate_losses(const RiskRegister& register_, std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers = 0);

}  // namespace iotrisk
