// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance            run all twelve criteria
//   acceptance N          run criterion N only
//
// Exit status is 0 iff every selected criterion passes.

#include "confspace/measures.hpp"
#include "confspace/scenario.hpp"
#include "confspace/suites.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace confspace;

namespace {

// Pinned tolerances.
constexpr double kCompositionTol = 1e-10;
constexpr double kRoundTripTol = 1e-10;
constexpr double kLambdaOneTol = 1e-12;
constexpr double kCanonicalValueTol = 1e-10;
constexpr double kFlatMeasureTol = 1e-10;
constexpr double kDetFormulaTol = 1e-10;
constexpr double kOracleTol = 1e-9;
constexpr double kConstantExactTol = 1e-12;
constexpr double kInnerTol = 1e-10;
constexpr double kAxiomTol = 1e-12;
constexpr double kPolynomialTol = 1e-12;
constexpr std::size_t kSimpsonPanels = 100000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Scenario fixture(const std::string& name) { return load_scenario(resolve_scenario(name)); }

double max_over(const std::vector<Vector>& pts, const std::function<double(const Vector&)>& f) {
    double m = 0.0;
    for (const auto& p : pts) m = std::max(m, f(p));
    return m;
}

Outcome composition() {
    double worst = 0.0;
    std::string where;
    for (const auto& name : list_fixtures()) {
        const Scenario s = fixture(name);
        const double d = max_over(s.interior_samples(100),
                                  [&](const Vector& p) { return composition_identity_defect(s.system, p); });
        if (d >= worst) {
            worst = d;
            where = name;
        }
    }
    return {worst <= kCompositionTol, "max defect " + num(worst) + " (" + where + ") <= " + num(kCompositionTol)};
}

Outcome round_trip() {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> coef(0.2, 2.0), slope(-1.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        nlohmann::json doc;
        doc["name"] = "random_" + std::to_string(i);
        doc["dimension"] = d;
        nlohmann::json metric = nlohmann::json::array();
        for (std::size_t r = 0; r < d; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < d; ++c) {
                std::string e = "0";
                if (r == c) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%s%.6f*exp(%.6f*x%zu)", r == 0 ? "-" : "", coef(rng), slope(rng),
                                  (r + 1) % d);
                    e = buf;
                }
                row.push_back(e);
            }
            metric.push_back(row);
        }
        doc["metric"] = metric;
        nlohmann::json map = nlohmann::json::array();
        for (std::size_t a = 0; a < d; ++a) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%.6f*x%zu + 0.1*x%zu^2", coef(rng), a, (a + 1) % d);
            map.push_back(buf);
        }
        doc["diffeomorphism"] = map;
        char f[128];
        std::snprintf(f, sizeof f, "%.6f*exp(%.6f*x0) + %.6f", coef(rng), slope(rng), coef(rng));
        doc["scale"] = {{"preset", "custom"}, {"f", f}};
        doc["domain"] = {{"lower", std::vector<double>(d, 0.0)}, {"upper", std::vector<double>(d, 1.0)}};
        const Scenario s = scenario_from_json(doc);
        worst = std::max(worst, max_over(s.interior_samples(100), [&](const Vector& p) {
            const LocalGeometry lg = s.system.local(p);
            const double lambda = scale_factor_from(lg.f, lg.metric_det, lg.jacobian_det, d);
            return std::abs(f_from_lambda(lambda, lg.metric_det, lg.jacobian_det, d) - lg.f) / lg.f;
        }));
    }
    return {worst <= kRoundTripTol, "100 scenarios, max rel error " + num(worst) + " <= " + num(kRoundTripTol)};
}

Outcome lambda_one() {
    const Scenario s = fixture("lambda_one_preset");
    double lam = 0.0, q = 0.0;
    for (const auto& p : s.sample_set) {
        lam = std::max(lam, std::abs(scale_factor(s.system, p) - 1.0));
        const Matrix Q = conformal_metric(s.system, p);
        const Matrix g = s.system.metric().evaluate(p);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) q = std::max(q, std::abs(Q(i, j) - g(i, j)));
    }
    return {lam <= kLambdaOneTol && q <= kLambdaOneTol,
            "max|lambda-1| " + num(lam) + ", max|Q-g| " + num(q) + " <= " + num(kLambdaOneTol)};
}

Outcome canonical_measure() {
    bool identical = true;
    std::size_t checked = 0;
    for (const auto& name : list_fixtures()) {
        const Scenario s = fixture(name);
        if (s.system.scale().kind() != ScalePreset::unit) continue;
        ++checked;
        identical = identical && conformal_volume(s.system, s.rule) ==
                                     riemann_volume(s.system.metric(), s.system.domain(), s.rule);
    }
    const Scenario c = fixture("curved_exp");
    const double err = std::abs(conformal_volume(c.system, c.rule) - (std::exp(1.0) - 1.0));
    return {identical && checked > 0 && err <= kCanonicalValueTol,
            std::to_string(checked) + " unit fixtures bit-identical: " + (identical ? "yes" : "no") +
                "; curved_exp |V-(e-1)| " + num(err) + " <= " + num(kCanonicalValueTol)};
}

Outcome flat_measure() {
    const Scenario s = fixture("flat_measure");
    const double v = conformal_volume(s.system, s.rule);
    const double box = s.system.domain().volume();
    const double err = std::abs(v - box);
    return {err <= kFlatMeasureTol, "conformal volume " + num(v) + " vs box " + num(box) + ", |diff| " + num(err) +
                                        " <= " + num(kFlatMeasureTol) +
                                        "; with f=|g|^-1/2 the density is |g|^1/4, flat only when |g|=1"};
}

Outcome det_formula() {
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& name : list_fixtures()) {
        const Scenario s = fixture(name);
        if (s.system.scale().kind() != ScalePreset::unit) continue;
        ++checked;
        worst = std::max(worst, max_over(s.sample_set, [&](const Vector& p) {
            const LocalGeometry lg = s.system.local(p);
            const double expect = -lg.jacobian_det * lg.jacobian_det;
            return std::abs(det(conformal_metric(s.system, p)) - expect) / std::abs(expect);
        }));
    }
    return {checked > 0 && worst <= kDetFormulaTol,
            std::to_string(checked) + " unit fixtures, max rel error " + num(worst) + " <= " + num(kDetFormulaTol)};
}

Outcome conditions() {
    const Scenario s = fixture("minkowski_scaled_conditions");
    const MeasureConditionReport r = measure_condition_check(s.system, s.rule, kAxiomTol, s.tolerances.quadrature);
    const bool ok = r.sqrt_condition_held && r.matches_riemann && !r.det_condition_held && !r.matches_box;
    return {ok, std::string("sqrt condition ") + (r.sqrt_condition_held ? "held" : "violated") +
                    ", measure = riemann " + (r.matches_riemann ? "yes" : "no") + "; det condition " +
                    (r.det_condition_held ? "held" : "violated") + ", measure = box " + (r.matches_box ? "yes" : "no") +
                    " (conformal " + num(r.conformal) + ", riemann " + num(r.riemann) + ", box " + num(r.box) + ")"};
}

Outcome oracle_agreement() {
    const Scenario s = fixture("exp_scale");
    double closed_err = 0.0, simpson_err = 0.0;
    for (const auto& p : s.interior_samples(20)) {
        const Vector x = build_X(s.system, p);
        const double closed = (1 - std::exp(-p[0])) / p[0];
        const double simpson =
            oracle::simpson([&](double t) { return std::exp(-t * p[0]); }, 0.0, 1.0, kSimpsonPanels);
        for (std::size_t mu = 0; mu < 2; ++mu) {
            closed_err = std::max(closed_err, std::abs(x[mu] - p[mu] * closed));
            simpson_err = std::max(simpson_err, std::abs(x[mu] - p[mu] * simpson));
        }
    }
    return {closed_err <= kOracleTol && simpson_err <= kOracleTol,
            "20 points, closed form " + num(closed_err) + ", Simpson " + num(simpson_err) + " <= " + num(kOracleTol)};
}

Outcome path_dependence() {
    const Scenario p = fixture("pathdep_probe");
    const double nonexact =
        max_over(p.interior_samples(100), [&](const Vector& q) { return exactness_defect(p.system, q).max; });
    const double floor = 10.0 * p.tolerances.identity;
    double constant = 0.0;
    for (const char* name : {"minkowski_unit", "minkowski_scaled", "minkowski_scaled_conditions", "lambda_one_preset"}) {
        const Scenario s = fixture(name);
        constant = std::max(constant, max_over(s.interior_samples(100), [&](const Vector& q) {
                                return exactness_defect(s.system, q).max;
                            }));
    }
    return {nonexact > floor && constant <= kConstantExactTol,
            "pathdep defect " + num(nonexact) + " > " + num(floor) + "; constant-lambda defect " + num(constant) +
                " <= " + num(kConstantExactTol)};
}

Outcome audit() {
    const Scenario s = fixture("minkowski_unit");
    const InnerProductSpace space(s.system, s.rule);
    const double e1 = std::abs(space.inner(s.field("e0"), s.field("e0")) - 1.0);
    const double e2 = std::abs(space.norm(s.field("null")));
    const double e3 = std::abs(space.inner(s.field("e0"), s.field("ramp")) - 0.5);
    const double value_err = std::max({e1, e2, e3});

    const AuditReport a = axiom_audit(s.system, s.corpus, s.rule);
    bool held = true;
    for (const char* axiom : {"symmetry", "nonnegativity", "homogeneity", "point_identity"})
        held = held && a.at(axiom).verdict == AxiomVerdict::held && a.at(axiom).max_violation <= kAxiomTol;
    const AxiomRecord& def = a.at("definiteness");
    const bool null_witness = def.verdict == AxiomVerdict::violated && def.witness &&
                              std::find(def.witness->fields.begin(), def.witness->fields.end(), "null") !=
                                  def.witness->fields.end();
    std::string witness = def.witness ? def.witness->fields.at(0) + "," + def.witness->fields.at(1) : "none";
    return {value_err <= kInnerTol && held && null_witness,
            "values max error " + num(value_err) + " <= " + num(kInnerTol) + "; four axioms held: " +
                (held ? "yes" : "no") + "; definiteness " + to_string(def.verdict) + " witness (" + witness + ")"};
}

Outcome polynomial_exactness() {
    double worst = 0.0;
    for (std::size_t n : {2u, 4u, 8u}) {
        const QuadratureRule rule{QuadratureKind::gauss_legendre, n};
        const int top = static_cast<int>(2 * n - 1);
        for (int a = 0; a <= top; ++a) {
            const double exact1 = 1.0 / (a + 1);
            const double got1 =
                integrate([&](std::span<const double> x) { return std::pow(x[0], a); }, BoxDomain::unit(1), rule);
            worst = std::max(worst, std::abs(got1 - exact1));
            for (int b = 0; b <= top; ++b) {
                const double got2 = integrate(
                    [&](std::span<const double> x) { return std::pow(x[0], a) * std::pow(x[1], b); },
                    BoxDomain::unit(2), rule);
                worst = std::max(worst, std::abs(got2 - exact1 / (b + 1)));
            }
        }
    }
    return {worst <= kPolynomialTol, "n in {2,4,8}, D in {1,2}, max abs error " + num(worst) + " <= " +
                                         num(kPolynomialTol)};
}

std::string capture(const std::string& args) {
    const std::string cmd = std::string(CONFSPACE_CLI) + " " + args + " > acceptance_run.json 2>/dev/null";
    if (std::system(cmd.c_str()) == -1) return {};
    std::ifstream in("acceptance_run.json", std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    std::size_t compared = 0, identical = 0;
    for (const auto& name : list_fixtures()) {
        const std::string a = capture("check " + name + " --format json");
        const std::string b = capture("check " + name + " --format json");
        ++compared;
        if (!a.empty() && a == b) ++identical;
    }
    return {compared > 0 && identical == compared,
            std::to_string(identical) + "/" + std::to_string(compared) + " fixtures byte-identical across two runs"};
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"composition identity on every fixture", composition},
    {"scale factor round trip", round_trip},
    {"lambda = 1 preset", lambda_one},
    {"canonical measure", canonical_measure},
    {"flat measure", flat_measure},
    {"determinant formula", det_formula},
    {"measure conditions", conditions},
    {"X against oracles", oracle_agreement},
    {"path dependence", path_dependence},
    {"inner product audit", audit},
    {"quadrature exactness", polynomial_exactness},
    {"determinism", determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::size_t first = 1, last = std::size(kCriteria);
    if (argc > 1) {
        first = last = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
        if (first < 1 || first > std::size(kCriteria)) {
            std::fprintf(stderr, "usage: acceptance [1-%zu]\n", std::size(kCriteria));
            return 2;
        }
    }
    int failures = 0;
    for (std::size_t i = first; i <= last; ++i) {
        Outcome o;
        try {
            o = kCriteria[i - 1].run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %2zu %s  %s: %s\n", i, o.pass ? "PASS" : "FAIL", kCriteria[i - 1].name,
                    o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
