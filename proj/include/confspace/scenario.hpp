#pragma once

#include "confspace/conformal.hpp"
#include "confspace/inner_space.hpp"
#include "confspace/quadrature.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace confspace {

/// A scenario that failed to load; `field()` names the offending entry.
class ScenarioError : public Error {
public:
    ScenarioError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class ChartExactness { unspecified, exact, non_exact };

struct Tolerances {
    double identity = 1e-10;
    double quadrature = 1e-8;
};

/// A closed-form value the inner-product suite must reproduce.
struct InnerExpectation {
    std::string kind; // inner | norm | distance
    std::string x;
    std::string y;    // unused for norm
    double value = 0.0;
};

struct Scenario {
    std::string name;
    std::string description;
    ConformalSystem system;
    QuadratureRule rule;
    std::vector<VectorFieldElement> corpus;
    Tolerances tolerances;
    ChartExactness exactness = ChartExactness::unspecified;
    std::vector<InnerExpectation> inner_expectations;
    std::vector<std::string> expected_violations; // check ids allowed to fail
    std::string designated_suite = "all";
    std::vector<Vector> sample_set;               // interior points first, then corners

    std::size_t dimension() const noexcept { return system.dimension(); }
    const VectorFieldElement& field(const std::string& label) const;
    /// The first `count` interior points of the validation set.
    std::vector<Vector> interior_samples(std::size_t count = 100) const;
};

inline constexpr std::size_t kInteriorSamples = 128;

Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Re-checks the geometric invariants on the scenario's sample set: Lorentzian
/// signature and det g < 0, non-singular x~, f > 0 and finite lambda > 0.
void validate_scenario(const Scenario& scenario);

/// A path that exists, or the bundled fixture with that name.
std::filesystem::path resolve_scenario(const std::string& name_or_path);
std::vector<std::string> list_fixtures();
std::filesystem::path fixture_directory();

} // namespace confspace
