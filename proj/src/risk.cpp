#include "iotrisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "iotrisk/error.hpp"

namespace iotrisk {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view text, const std::array<std::string_view, N>& names) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) {
            return static_cast<Enum>(i);
        }
    }
    return std::nullopt;
}

constexpr std::array<std::string_view, 6> kCategoryNames{"ethical",   "privacy",          "security",
                                                         "technical", "interoperability", "safety"};
constexpr std::array<std::string_view, 2> kComplexityNames{"high", "low"};
constexpr std::array<std::string_view, 3> kPrivilegeNames{"admin", "user", "none"};
constexpr std::array<std::string_view, 3> kExploitNames{"none", "proof_of_concept", "weaponized"};
constexpr std::array<std::string_view, 4> kVectorNames{"physical", "local", "adjacent", "remote"};
constexpr std::array<std::string_view, 3> kPatchNames{"patched", "mitigation_available", "unpatched"};

template <std::size_t N>
bool monotone_unit(const std::array<double, N>& scores) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
            return false;
        }
        if (i > 0 && scores[i] < scores[i - 1]) {
            return false;
        }
    }
    return true;
}

template <typename Enum, std::size_t N>
double subscore(const std::array<double, N>& scores, Enum value) {
    return scores[static_cast<std::size_t>(value)];
}

}  // namespace

std::string_view to_string(RiskCategory category) { return kCategoryNames[static_cast<std::size_t>(category)]; }
std::optional<RiskCategory> parse_risk_category(std::string_view text) {
    return lookup<RiskCategory>(text, kCategoryNames);
}

std::string_view to_string(AccessComplexity value) { return kComplexityNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(RequiredPrivileges value) { return kPrivilegeNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(PublicExploit value) { return kExploitNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(AttackVector value) { return kVectorNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(PatchState value) { return kPatchNames[static_cast<std::size_t>(value)]; }

std::optional<AccessComplexity> parse_access_complexity(std::string_view text) {
    return lookup<AccessComplexity>(text, kComplexityNames);
}
std::optional<RequiredPrivileges> parse_required_privileges(std::string_view text) {
    return lookup<RequiredPrivileges>(text, kPrivilegeNames);
}
std::optional<PublicExploit> parse_public_exploit(std::string_view text) {
    return lookup<PublicExploit>(text, kExploitNames);
}
std::optional<AttackVector> parse_attack_vector(std::string_view text) {
    return lookup<AttackVector>(text, kVectorNames);
}
std::optional<PatchState> parse_patch_state(std::string_view text) { return lookup<PatchState>(text, kPatchNames); }

void validate(const RiskScenario& scenario) {
    if (scenario.id.empty()) {
        throw Error(ErrorCode::InvalidArgument, "scenario id must not be empty");
    }
    if (!(scenario.probability >= 0.0 && scenario.probability <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "scenario '" + scenario.id + "' probability must lie in [0, 1]");
    }
    if (!(scenario.consequence >= 0.0) || !std::isfinite(scenario.consequence)) {
        throw Error(ErrorCode::InvalidArgument,
                    "scenario '" + scenario.id + "' consequence must be a finite non-negative amount");
    }
}

RiskRegister::RiskRegister(std::vector<RiskScenario> scenarios) : scenarios_(std::move(scenarios)) {
    std::set<std::string_view> ids;
    for (const auto& scenario : scenarios_) {
        validate(scenario);
        if (!ids.insert(scenario.id).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate scenario id '" + scenario.id + "'");
        }
    }
}

const RiskScenario* RiskRegister::find(std::string_view id) const {
    auto it = std::find_if(scenarios_.begin(), scenarios_.end(), [&](const auto& s) { return s.id == id; });
    return it == scenarios_.end() ? nullptr : &*it;
}

void validate(const WeightRubric& rubric) {
    bool ok = monotone_unit(rubric.access_complexity) && monotone_unit(rubric.required_privileges) &&
              monotone_unit(rubric.public_exploit) && monotone_unit(rubric.attack_vector) &&
              monotone_unit(rubric.patch_state);
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument,
                    "rubric subscores must lie in [0, 1] and not decrease with severity");
    }
}

int derive_weight(const ExploitabilityFactors& factors, const WeightRubric& rubric) {
    const double sum = subscore(rubric.access_complexity, factors.access_complexity) +
                       subscore(rubric.required_privileges, factors.required_privileges) +
                       subscore(rubric.public_exploit, factors.public_exploit) +
                       subscore(rubric.attack_vector, factors.attack_vector) +
                       subscore(rubric.patch_state, factors.patch_state);
    const auto weight = static_cast<int>(std::floor(3.0 * (sum / 5.0) + 0.5));
    return std::clamp(weight, 0, 3);
}

bool VulnerabilityRecord::active_on(std::string_view component) const {
    return active && std::find(inactive_products.begin(), inactive_products.end(), component) ==
                         inactive_products.end();
}

VulnerabilityRecord make_vulnerability(std::string id, std::string summary, ExploitabilityFactors factors,
                                       const WeightRubric& rubric) {
    VulnerabilityRecord record;
    record.id = std::move(id);
    record.summary = std::move(summary);
    record.factors = factors;
    record.weight = derive_weight(factors, rubric);
    return record;
}

double scenario_risk(const RiskScenario& scenario) noexcept { return scenario.probability * scenario.consequence; }

double expected_loss(const RiskRegister& register_) noexcept {
    double total = 0.0;
    for (const auto& scenario : register_.scenarios()) {
        total += scenario_risk(scenario);
    }
    return total;
}

int dependency_bump(int weight, double proportion, double threshold) {
    if (weight < 0 || weight > 3) {
        throw Error(ErrorCode::InvalidArgument, "weight must lie in 0..3");
    }
    if (!(proportion >= 0.0 && proportion <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "proportion must lie in [0, 1]");
    }
    return proportion >= threshold ? std::min(3, weight + 1) : weight;
}

double dependency_adjusted_risk(const RiskScenario& scenario, const ImpactReport& report) {
    if (!scenario.origin_component || *scenario.origin_component != report.origin) {
        throw Error(ErrorCode::OriginMismatch, "scenario '" + scenario.id + "' does not originate at '" +
                                                   report.origin + "'");
    }
    return scenario_risk(scenario) * report.proportion().value();
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 stream keyed by (seed, trial).
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) : state_(mix64(seed ^ mix64(trial + kGolden))) {}

    double uniform() {
        state_ += kGolden;
        return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

double trial_loss(const RiskRegister& register_, std::uint64_t seed, std::uint64_t trial) {
    TrialStream stream(seed, trial);
    double loss = 0.0;
    for (const auto& scenario : register_.scenarios()) {
        if (stream.uniform() < scenario.probability) {
            loss += scenario.consequence;
        }
    }
    return loss;
}

}  // namespace

std::vector<double> simulate_losses(const RiskRegister& register_, std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers) {
    std::vector<double> losses(trials, 0.0);
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        for (auto t = begin; t < end; ++t) {
            losses[t] = trial_loss(register_, seed, t);
        }
    };
    if (workers <= 1) {
        run(0, trials);
        return losses;
    }
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (std::uint64_t begin = 0; begin < trials; begin += chunk) {
            pool.emplace_back(run, begin, std::min(trials, begin + chunk));
        }
    }
    return losses;
}

LossDistributionSummary monte_carlo(const RiskRegister& register_, const MonteCarloOptions& options) {
    if (options.trials == 0) {
        throw Error(ErrorCode::ZeroTrials, "trials must be at least 1");
    }
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw Error(ErrorCode::InvalidAlpha, "alpha must lie strictly between 0 and 1");
    }
    auto losses = simulate_losses(register_, options.trials, options.seed, options.workers);

    LossDistributionSummary summary;
    summary.trials = options.trials;
    summary.seed = options.seed;
    summary.alpha = options.alpha;

    // Sequential reduction in trial order keeps the sum bit-stable.
    double total = 0.0;
    for (double loss : losses) {
        total += loss;
    }
    summary.mean_loss = total / static_cast<double>(options.trials);

    std::sort(losses.begin(), losses.end());
    summary.min_loss = losses.front();
    summary.max_loss = losses.back();

    // Nearest rank: the ceil(alpha * trials)-th smallest loss.
    const double position = options.alpha * static_cast<double>(options.trials);
    const double nearest = std::round(position);
    auto rank = static_cast<std::uint64_t>(std::abs(position - nearest) < 1e-9 ? nearest : std::ceil(position));
    rank = std::clamp<std::uint64_t>(rank, 1, options.trials);
    summary.value_at_risk = losses[rank - 1];

    // Guard against rounding putting the mean a hair outside [min, max].
    summary.mean_loss = std::clamp(summary.mean_loss, summary.min_loss, summary.max_loss);
    return summary;
}

}  // namespace iotrisk
