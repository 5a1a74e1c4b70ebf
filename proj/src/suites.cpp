#include "confspace/suites.hpp"

#include "confspace/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

namespace confspace {

std::string to_string(Suite s) {
    switch (s) {
    case Suite::identities: return "identities";
    case Suite::measures: return "measures";
    case Suite::examples: return "examples";
    case Suite::inner: return "inner";
    case Suite::audit: return "audit";
    case Suite::all: return "all";
    }
    return "?";
}

Suite suite_from_string(std::string_view name) {
    for (auto s : {Suite::identities, Suite::measures, Suite::examples, Suite::inner, Suite::audit, Suite::all})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

namespace {

double relative(double a, double b) {
    const double scale = std::abs(b);
    return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

class SuiteRunner {
public:
    explicit SuiteRunner(const Scenario& s) : s_(s), sys_(s.system), d_(static_cast<double>(s.dimension())) {}

    Report run(Suite suite) {
        report_.scenario = s_.name;
        report_.suite = to_string(suite);
        if (suite == Suite::identities || suite == Suite::all) identities();
        if (suite == Suite::measures || suite == Suite::all) measures();
        if (suite == Suite::examples || suite == Suite::all) examples();
        if (suite == Suite::inner || suite == Suite::all) inner();
        if (suite == Suite::audit || suite == Suite::all) audit();
        return std::move(report_);
    }

private:
    // Runs `body`; an exception turns into a failed record for that check.
    void check(const std::string& id, const std::string& equation, const std::function<CheckRecord()>& body) {
        CheckRecord r;
        try {
            r = body();
        } catch (const std::exception& e) {
            r = CheckRecord{};
            r.verdict = Verdict::fail;
            r.note = e.what();
        }
        r.id = id;
        r.equation = equation;
        if (r.verdict == Verdict::fail &&
            std::find(s_.expected_violations.begin(), s_.expected_violations.end(), id) !=
                s_.expected_violations.end())
            r.verdict = Verdict::expected_violation;
        report_.records.push_back(std::move(r));
    }

    static CheckRecord bounded(double defect, double tol, std::vector<std::pair<std::string, double>> values = {}) {
        CheckRecord r;
        r.defect = defect;
        r.tolerance = tol;
        r.values = std::move(values);
        r.verdict = defect <= tol ? Verdict::pass : Verdict::fail;
        return r;
    }

    double max_over_samples(const std::function<double(const Vector&)>& f) const {
        double m = 0.0;
        for (const auto& p : s_.interior_samples()) m = std::max(m, f(p));
        return m;
    }

    void identities() {
        const double tol = s_.tolerances.identity;

        check("scale_factor", "Eq.(7)", [&] {
            double lo = INFINITY, hi = 0.0;
            for (const auto& p : s_.interior_samples()) {
                const double l = scale_factor(sys_, p);
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
            CheckRecord r;
            r.values = {{"lambda_min", lo}, {"lambda_max", hi}};
            r.verdict = lo > 0.0 && std::isfinite(hi) ? Verdict::pass : Verdict::fail;
            return r;
        });

        check("round_trip", "Eq.(6)", [&] {
            return bounded(max_over_samples([&](const Vector& p) {
                               const LocalGeometry lg = sys_.local(p);
                               return relative(f_from_lambda(lg.lambda, lg.metric_det, lg.jacobian_det,
                                                             s_.dimension()),
                                               lg.f);
                           }),
                           tol);
        });

        check("det_Q", "Eq.(12b)", [&] {
            return bounded(max_over_samples([&](const Vector& p) {
                               const LocalGeometry lg = sys_.local(p);
                               const Matrix q = (lg.lambda * lg.lambda) * lg.metric;
                               return relative(det(q), std::pow(lg.lambda, 2.0 * d_) * lg.metric_det);
                           }),
                           tol);
        });

        check("signature_Q", "Eq.(12a)", [&] {
            double bad = 0.0;
            for (const auto& p : s_.interior_samples())
                if (!signature(conformal_metric(sys_, p)).lorentzian()) bad += 1.0;
            return bounded(bad, 0.0, {{"points", static_cast<double>(s_.interior_samples().size())}});
        });

        check("jacobian_identity", "Eq.(13)", [&] {
            return bounded(max_over_samples([&](const Vector& p) { return jacobian_identity_defect(sys_, p); }),
                           tol);
        });

        check("composition", "Eq.(14)", [&] {
            return bounded(
                max_over_samples([&](const Vector& p) { return composition_identity_defect(sys_, p); }), tol,
                {{"points", static_cast<double>(s_.interior_samples().size())}});
        });

        check("jacobian_sign", "Eq.(14)", [&] {
            double positive = 0.0, negative = 0.0;
            for (const auto& p : s_.interior_samples())
                (composition_factors(sys_, p).jacobian_sign > 0.0 ? positive : negative) += 1.0;
            CheckRecord r;
            r.values = {{"positive", positive}, {"negative", negative}};
            r.note = "identities are checked on absolute values; signs reported here";
            return r;
        });

        check("exactness", "Eq.(8)", [&] {
            const double defect =
                max_over_samples([&](const Vector& q) { return exactness_defect(sys_, q).max; });
            return classify_exactness(defect, kExactTolerance, 10.0 * tol,
                                      "straight path vs axis path for X");
        });

        check("jacobian_X", "Eq.(11a)", [&] {
            const double h = 1e-5 * sys_.domain().diagonal();
            double defect = 0.0;
            double used = 0.0;
            for (const auto& p : s_.interior_samples()) {
                bool inside = true;
                for (std::size_t a = 0; a < p.size(); ++a)
                    inside = inside && p[a] - h >= sys_.domain().lower()[a] && p[a] + h <= sys_.domain().upper()[a];
                if (!inside) continue;
                defect = std::max(defect, jacobian_X_defect(sys_, p));
                used += 1.0;
            }
            CheckRecord r = classify_exactness(defect, kDifferenceTolerance, kDifferenceTolerance,
                                               "finite-difference dX/dx vs lambda^-1 identity");
            r.values.push_back({"points", used});
            return r;
        });
    }

    // Exact charts must stay at or below `exact_tol`; non-exact ones must
    // exceed `non_exact_floor`; unspecified ones are reported only.
    CheckRecord classify_exactness(double defect, double exact_tol, double non_exact_floor,
                                   const std::string& what) const {
        CheckRecord r;
        r.defect = defect;
        r.note = what;
        switch (s_.exactness) {
        case ChartExactness::exact:
            r.tolerance = exact_tol;
            r.verdict = defect <= exact_tol ? Verdict::pass : Verdict::fail;
            break;
        case ChartExactness::non_exact:
            r.values = {{"lower_bound", non_exact_floor}};
            r.verdict = defect > non_exact_floor ? Verdict::pass : Verdict::fail;
            r.note += " (expected non-exact)";
            break;
        case ChartExactness::unspecified:
            r.verdict = Verdict::info;
            break;
        }
        return r;
    }

    void measures() {
        check("riemann_volume", "Eq.(3)", [&] {
            const double v = riemann_volume(sys_.metric(), sys_.domain(), s_.rule);
            CheckRecord r;
            r.values = {{"value", v}};
            r.verdict = v > 0.0 ? Verdict::pass : Verdict::fail;
            return r;
        });

        check("conformal_volume", "Eq.(16)", [&] {
            const double direct = conformal_volume(sys_, s_.rule);
            const double via = conformal_volume_via_metric(sys_, s_.rule);
            CheckRecord r = bounded(relative(via, direct), s_.tolerances.identity,
                                    {{"direct", direct}, {"via_metric", via}, {"box", sys_.domain().volume()}});
            if (!(direct > 0.0)) r.verdict = Verdict::fail;
            return r;
        });
    }

    void examples() {
        const double tol = s_.tolerances.identity;
        switch (sys_.scale().kind()) {
        case ScalePreset::unit:
            check("canonical_measure", "Eq.(18)", [&] {
                const double c = conformal_volume(sys_, s_.rule);
                const double r = riemann_volume(sys_.metric(), sys_.domain(), s_.rule);
                CheckRecord rec = bounded(std::abs(c - r), 0.0, {{"conformal", c}, {"riemann", r}});
                rec.note = "same integrand and nodes: must agree bit for bit";
                return rec;
            });
            check("det_Q_unit", "Eq.(19)", [&] {
                return bounded(max_over_samples([&](const Vector& p) {
                                   const LocalGeometry lg = sys_.local(p);
                                   const double expect = -lg.jacobian_det * lg.jacobian_det;
                                   return relative(det(conformal_metric(sys_, p)), expect);
                               }),
                               tol);
            });
            break;

        case ScalePreset::inverse_sqrt_det:
            check("flat_measure", "Eq.(21)", [&] {
                const double c = conformal_volume(sys_, s_.rule);
                const double box = sys_.domain().volume();
                return bounded(relative(c, box), s_.tolerances.quadrature, {{"conformal", c}, {"box", box}});
            });
            check("reduced_measure", "Eq.(16)", [&] {
                // With f = |g|^-1/2 the reduced integrand |f g|^1/2 is |g|^1/4.
                const double c = conformal_volume(sys_, s_.rule);
                const double quarter = integrate(
                    [&](std::span<const double> x) {
                        return std::pow(std::abs(det(sys_.metric().evaluate(x))), 0.25);
                    },
                    sys_.domain(), s_.rule);
                return bounded(relative(c, quarter), tol, {{"conformal", c}, {"quarter_power", quarter}});
            });
            check("det_Q_inverse_sqrt", "Eq.(22)", [&] {
                return bounded(max_over_samples([&](const Vector& p) {
                                   const LocalGeometry lg = sys_.local(p);
                                   const double expect = -lg.jacobian_det * lg.jacobian_det /
                                                         std::sqrt(std::abs(lg.metric_det));
                                   return relative(det(conformal_metric(sys_, p)), expect);
                               }),
                               tol);
            });
            break;

        case ScalePreset::lambda_one:
            check("lambda_one", "Eq.(23)", [&] {
                double worst = 0.0;
                for (const auto& p : s_.sample_set) worst = std::max(worst, std::abs(scale_factor(sys_, p) - 1.0));
                return bounded(worst, kExactTolerance);
            });
            check("Q_equals_g", "Eq.(23)", [&] {
                double worst = 0.0;
                for (const auto& p : s_.sample_set) {
                    const Matrix q = conformal_metric(sys_, p);
                    const Matrix g = sys_.metric().evaluate(p);
                    for (std::size_t i = 0; i < q.size(); ++i)
                        for (std::size_t j = 0; j < q.size(); ++j) worst = std::max(worst, std::abs(q(i, j) - g(i, j)));
                }
                return bounded(worst, kExactTolerance);
            });
            check("lambda_one_measure", "Eq.(24)", [&] {
                const double c = conformal_volume(sys_, s_.rule);
                const double direct = unit_scale_volume(sys_, s_.rule);
                return bounded(relative(c, direct), tol, {{"conformal", c}, {"direct", direct}});
            });
            condition_checks();
            break;

        case ScalePreset::custom:
            check("preset", "Eq.(6)", [&] {
                CheckRecord r;
                r.note = "custom f: no preset-specific identities";
                return r;
            });
            break;
        }
    }

    void condition_checks() {
        MeasureConditionReport mc;
        try {
            mc = measure_condition_check(sys_, s_.rule, kExactTolerance, s_.tolerances.quadrature);
        } catch (const std::exception& e) {
            const std::string message = e.what();
            check("conditions", "Eq.(25)", [&]() -> CheckRecord { throw Error(message); });
            return;
        }
        auto condition = [&](const char* id, const char* eq, double defect, bool held, bool matches,
                             const char* measure, double target) {
            check(id, eq, [&] {
                CheckRecord r;
                r.defect = defect;
                r.tolerance = kExactTolerance;
                r.values = {{"held", held ? 1.0 : 0.0},
                            {"measure_matches", matches ? 1.0 : 0.0},
                            {"conformal", mc.conformal},
                            {measure, target}};
                r.note = held ? "condition held" : "condition violated";
                r.verdict = Verdict::info;
                return r;
            });
            check(std::string(id) + "_consistency", eq, [&] {
                CheckRecord r;
                r.values = {{"held", held ? 1.0 : 0.0}, {"measure_matches", matches ? 1.0 : 0.0}};
                r.verdict = held && !matches ? Verdict::fail : Verdict::pass;
                r.note = "condition implies the measure equality";
                return r;
            });
        };
        condition("condition_sqrt", "Eq.(25)", mc.sqrt_condition_defect, mc.sqrt_condition_held,
                  mc.matches_riemann, "riemann", mc.riemann);
        condition("condition_det", "Eq.(26)", mc.det_condition_defect, mc.det_condition_held, mc.matches_box,
                  "box", mc.box);
    }

    void inner() {
        if (s_.corpus.empty()) {
            check("inner", "Eq.(27a)", [] {
                CheckRecord r;
                r.note = "no field corpus";
                return r;
            });
            return;
        }
        std::optional<InnerProductSpace> space;
        check("inner_space", "Eq.(27a)", [&] {
            space.emplace(sys_, s_.rule);
            CheckRecord r;
            r.values = {{"measure", space->measure()}, {"nodes", static_cast<double>(space->nodes())}};
            r.verdict = Verdict::pass;
            return r;
        });
        if (!space) return;

        for (const auto& e : s_.inner_expectations) {
            const std::string id = e.kind + "(" + e.x + (e.kind == "norm" ? "" : "," + e.y) + ")";
            const std::string eq = e.kind == "inner" ? "Eq.(27a)" : e.kind == "norm" ? "Eq.(27b)" : "Eq.(27c)";
            check(id, eq, [&] {
                const auto& x = s_.field(e.x);
                double v = 0.0;
                if (e.kind == "inner")
                    v = space->inner(x, s_.field(e.y));
                else if (e.kind == "norm")
                    v = space->norm(x);
                else
                    v = space->distance(x, s_.field(e.y));
                return bounded(std::abs(v - e.value), s_.tolerances.identity, {{"computed", v}, {"expected", e.value}});
            });
        }

        check("inner_symmetry", "Eq.(27a)", [&] {
            std::vector<FieldSamples> samples;
            for (const auto& f : s_.corpus) samples.push_back(space->sample(f));
            double worst = 0.0;
            for (std::size_t i = 0; i < samples.size(); ++i)
                for (std::size_t j = i + 1; j < samples.size(); ++j)
                    worst = std::max(worst,
                                     std::abs(space->inner(samples[i], samples[j]) - space->inner(samples[j], samples[i])));
            return bounded(worst, 0.0);
        });
    }

    void audit() {
        if (s_.corpus.size() < 3) {
            check("audit", "Eq.(27)", [] {
                CheckRecord r;
                r.note = "not-applicable: the audit needs at least three corpus fields";
                return r;
            });
            return;
        }
        AuditReport a;
        try {
            a = axiom_audit(sys_, s_.corpus, s_.rule);
        } catch (const std::exception& e) {
            const std::string message = e.what();
            check("audit", "Eq.(27)", [&]() -> CheckRecord { throw Error(message); });
            return;
        }
        for (const auto& rec : a.axioms) {
            const bool metric_claim = rec.axiom == "cauchy_schwarz" || rec.axiom == "triangle";
            check("audit." + rec.axiom, metric_claim ? "Sec.5" : "Eq.(27)", [&] {
                CheckRecord r;
                r.defect = rec.max_violation;
                r.tolerance = kAuditTolerance;
                r.values = {{"probes", static_cast<double>(rec.probes)},
                            {"violations", static_cast<double>(rec.violations)}};
                r.note = to_string(rec.verdict);
                if (rec.witness) {
                    std::string fields;
                    for (const auto& f : rec.witness->fields) fields += (fields.empty() ? "" : ", ") + f;
                    r.note += "; witness (" + fields + "): " + rec.witness->note;
                    if (rec.axiom == "homogeneity") r.values.push_back({"witness_scalar", rec.witness->scalar});
                    for (std::size_t k = 0; k < rec.witness->values.size(); ++k)
                        r.values.push_back({"witness_" + std::to_string(k), rec.witness->values[k]});
                }
                r.verdict = rec.verdict == AxiomVerdict::held       ? Verdict::pass
                            : rec.verdict == AxiomVerdict::violated ? Verdict::fail
                                                                     : Verdict::info;
                return r;
            });
        }
    }

    const Scenario& s_;
    const ConformalSystem& sys_;
    double d_;
    Report report_;
};

} // namespace

Report run_suite(const Scenario& scenario, Suite suite) { return SuiteRunner(scenario).run(suite); }

} // namespace confspace
