#pragma once

#include "confspace/report.hpp"
#include "confspace/scenario.hpp"

#include <string>
#include <string_view>

namespace confspace {

enum class Suite { identities, measures, examples, inner, audit, all };

std::string to_string(Suite s);
/// Throws std::invalid_argument for unknown names.
Suite suite_from_string(std::string_view name);

// Fixed thresholds for checks whose tolerance is not a scenario setting.
inline constexpr double kExactTolerance = 1e-12;      // "identically" claims and exact charts
inline constexpr double kDifferenceTolerance = 1e-6;  // central-difference Jacobian of X

Report run_suite(const Scenario& scenario, Suite suite);

} // namespace confspace
