#include "default_policy.hpp"
#include "iotrisk/model_io.hpp"
#include "iotrisk/prioritization.hpp"

namespace iotrisk {

const DecisionTreePolicy& default_policy() {
    static const DecisionTreePolicy policy = parse_policy(detail::kDefaultPolicyJson);
    return policy;
}

}  // namespace iotrisk
