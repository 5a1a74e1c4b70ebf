#include "confspace/inner_space.hpp"

#include <doctest.h>

#include <cmath>

using namespace confspace;

namespace {

ConformalSystem minkowski() {
    return ConformalSystem(MetricField::from_strings({{"-1", "0"}, {"0", "1"}}), CoordinateMap::identity(2),
                           ScaleChoice::preset(ScalePreset::unit), {0.0, 0.0}, BoxDomain::unit(2));
}

const auto e0 = VectorFieldElement::from_strings("e0", {"1", "0"});
const auto e1 = VectorFieldElement::from_strings("e1", {"0", "1"});
const auto null_v = VectorFieldElement::from_strings("null", {"1", "1"});
const auto ramp = VectorFieldElement::from_strings("ramp", {"x0", "0"});

} // namespace

TEST_CASE("closed-form values on flat space") {
    const ConformalSystem sys = minkowski();
    const InnerProductSpace space(sys, QuadratureRule{});
    CHECK(space.inner(e0, e0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(space.norm(e1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(space.norm(null_v) == 0.0);
    CHECK(space.inner(e0, ramp) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(space.norm(ramp) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
    CHECK(space.distance(e0, ramp) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
    CHECK(space.distance(e0, e1) == 0.0);
    CHECK(space.measure() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(inner(sys, e0, ramp, QuadratureRule{}) == space.inner(e0, ramp));
    CHECK(norm(sys, ramp, QuadratureRule{}) == space.norm(ramp));
    CHECK(distance(sys, e0, ramp, QuadratureRule{}) == space.distance(e0, ramp));
}

TEST_CASE("scale factor enters through Q and the weight") {
    // x~ = (2 x0, x1) gives lambda^2 = 2; the weight is constant so <e0,e0> = 2.
    const ConformalSystem sys(MetricField::from_strings({{"-1", "0"}, {"0", "1"}}),
                              CoordinateMap::from_strings({"2*x0", "x1"}), ScaleChoice::preset(ScalePreset::unit),
                              {0.0, 0.0}, BoxDomain::unit(2));
    CHECK(inner(sys, e0, e0, QuadratureRule{}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("symmetry is exact") {
    const InnerProductSpace space(minkowski(), QuadratureRule{});
    const auto mix = VectorFieldElement::from_strings("mix", {"sin(3*x1)", "x0*x1 - 0.2"});
    CHECK(space.inner(mix, ramp) == space.inner(ramp, mix));
    CHECK(space.inner(mix, e1) == space.inner(e1, mix));
}

TEST_CASE("field element algebra") {
    const auto z = VectorFieldElement::zero(2);
    CHECK(z.label == "zero");
    const std::vector<double> p{0.25, 0.5};
    CHECK(ramp.scaled(-2.0).components[0].evaluate(p) == -0.5);
    CHECK(e0.minus(ramp).components[0].evaluate(p) == 0.75);
}

TEST_CASE("axiom audit on flat space") {
    const AuditReport a = axiom_audit(minkowski(), {e0, e1, null_v, ramp}, QuadratureRule{});
    for (const char* held : {"symmetry", "nonnegativity", "homogeneity", "point_identity"}) {
        CAPTURE(held);
        CHECK(a.at(held).verdict == AxiomVerdict::held);
        CHECK(a.at(held).max_violation <= kAuditTolerance);
    }
    const AxiomRecord& def = a.at("definiteness");
    CHECK(def.verdict == AxiomVerdict::violated);
    REQUIRE(def.witness);
    CHECK(def.witness->fields == std::vector<std::string>{"null", "zero"});
    CHECK(a.at("bilinearity").verdict == AxiomVerdict::violated);
    CHECK(a.at("cauchy_schwarz").verdict == AxiomVerdict::violated);

    for (std::size_t i = 1; i < a.axioms.size(); ++i) CHECK(a.axioms[i - 1].axiom < a.axioms[i].axiom);
    CHECK_THROWS(axiom_audit(minkowski(), {e0, e1}, QuadratureRule{}));
    CHECK(to_string(AxiomVerdict::not_applicable) == "not-applicable");
}
