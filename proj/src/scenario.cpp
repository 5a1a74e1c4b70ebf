#include "confspace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace confspace {

using nlohmann::json;

namespace {

std::string point_text(std::span<const double> p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ScenarioError(key, "missing");
    return doc.at(key);
}

Expression parse_field(const json& value, std::size_t dimension, const std::string& field) {
    if (!value.is_string()) throw ScenarioError(field, "expected an expression string");
    try {
        return parse(value.get<std::string>(), dimension);
    } catch (const ParseError& e) {
        throw ScenarioError(field, e.what());
    }
}

Vector parse_vector(const json& value, std::size_t dimension, const std::string& field) {
    if (!value.is_array() || value.size() != dimension)
        throw ScenarioError(field, "expected an array of " + std::to_string(dimension) + " numbers");
    Vector v;
    for (const auto& x : value) {
        if (!x.is_number()) throw ScenarioError(field, "expected numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

MetricField parse_metric(const json& value, std::size_t d) {
    if (!value.is_array() || value.size() != d)
        throw ScenarioError("metric", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " grid");
    std::vector<std::vector<Expression>> grid;
    for (std::size_t mu = 0; mu < d; ++mu) {
        const auto& row = value[mu];
        if (!row.is_array() || row.size() != d)
            throw ScenarioError("metric", "row " + std::to_string(mu) + " must have " + std::to_string(d) +
                                              " entries");
        std::vector<Expression> r;
        for (std::size_t nu = 0; nu < d; ++nu)
            r.push_back(parse_field(row[nu], d, "metric[" + std::to_string(mu) + "][" + std::to_string(nu) + "]"));
        grid.push_back(std::move(r));
    }
    try {
        return MetricField::from_grid(grid);
    } catch (const PreconditionError& e) {
        throw ScenarioError("metric", e.what());
    }
}

ScaleChoice parse_scale(const json& value, std::size_t d) {
    if (!value.is_object()) throw ScenarioError("scale", "expected an object with a preset");
    ScalePreset preset;
    try {
        preset = scale_preset_from_string(require(value, "preset").get<std::string>());
    } catch (const PreconditionError& e) {
        throw ScenarioError("scale.preset", e.what());
    }
    if (preset != ScalePreset::custom) {
        if (value.contains("f")) throw ScenarioError("scale.f", "only allowed with the custom preset");
        return ScaleChoice::preset(preset);
    }
    if (!value.contains("f")) throw ScenarioError("scale.f", "custom preset requires an expression");
    return ScaleChoice::custom(parse_field(value.at("f"), d, "scale.f"));
}

bool singular(const Matrix& j, double det_j) {
    double scale = 1.0;
    for (std::size_t r = 0; r < j.size(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < j.size(); ++c) row += j(r, c) * j(r, c);
        scale *= std::sqrt(row);
    }
    return !std::isfinite(det_j) || std::abs(det_j) <= 1e-12 * scale;
}

} // namespace

const VectorFieldElement& Scenario::field(const std::string& label) const {
    for (const auto& f : corpus)
        if (f.label == label) return f;
    throw ScenarioError("field_corpus", "no field labelled '" + label + "'");
}

std::vector<Vector> Scenario::interior_samples(std::size_t count) const {
    const std::size_t n = std::min({count, kInteriorSamples, sample_set.size()});
    return {sample_set.begin(), sample_set.begin() + static_cast<std::ptrdiff_t>(n)};
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ScenarioError("document", "expected a JSON object");

    const std::string name = require(doc, "name").get<std::string>();
    const json& dim = require(doc, "dimension");
    if (!dim.is_number_integer() || dim.get<long long>() < 1 ||
        dim.get<long long>() > static_cast<long long>(kMaxDimension))
        throw ScenarioError("dimension", "must be an integer in 1.." + std::to_string(kMaxDimension));
    const auto d = static_cast<std::size_t>(dim.get<long long>());

    MetricField g = parse_metric(require(doc, "metric"), d);

    const json& diffeo = require(doc, "diffeomorphism");
    if (!diffeo.is_array() || diffeo.size() != d)
        throw ScenarioError("diffeomorphism", "expected " + std::to_string(d) + " expressions");
    std::vector<Expression> components;
    for (std::size_t i = 0; i < d; ++i)
        components.push_back(parse_field(diffeo[i], d, "diffeomorphism[" + std::to_string(i) + "]"));

    ScaleChoice scale = parse_scale(require(doc, "scale"), d);

    const json& dom = require(doc, "domain");
    Vector lower = parse_vector(require(dom, "lower"), d, "domain.lower");
    Vector upper = parse_vector(require(dom, "upper"), d, "domain.upper");
    std::optional<BoxDomain> box;
    try {
        box.emplace(std::move(lower), std::move(upper));
    } catch (const PreconditionError& e) {
        throw ScenarioError("domain", e.what());
    }

    Vector base = doc.contains("base_point") ? parse_vector(doc.at("base_point"), d, "base_point") : box->lower();
    if (!box->contains(base)) throw ScenarioError("base_point", "lies outside the domain");

    QuadratureRule rule = QuadratureRule::default_for(d);
    if (doc.contains("quadrature")) {
        const json& q = doc.at("quadrature");
        try {
            if (q.contains("kind")) rule.kind = quadrature_kind_from_string(q.at("kind").get<std::string>());
        } catch (const PreconditionError& e) {
            throw ScenarioError("quadrature.kind", e.what());
        }
        if (q.contains("order")) {
            const auto order = q.at("order").get<long long>();
            if (order < 1 || order > 64) throw ScenarioError("quadrature.order", "must be in 1..64");
            rule.order = static_cast<std::size_t>(order);
        }
    }

    Scenario s{name,
               doc.value("description", std::string{}),
               ConformalSystem(std::move(g), CoordinateMap(std::move(components)), std::move(scale),
                               std::move(base), *box),
               rule,
               {},
               {},
               ChartExactness::unspecified,
               {},
               {},
               doc.value("designated_suite", std::string("all")),
               {}};

    if (doc.contains("field_corpus")) {
        for (const auto& entry : doc.at("field_corpus")) {
            const std::string label = require(entry, "label").get<std::string>();
            const json& comps = require(entry, "components");
            if (!comps.is_array() || comps.size() != d)
                throw ScenarioError("field_corpus." + label, "expected " + std::to_string(d) + " components");
            VectorFieldElement e{label, {}};
            for (std::size_t i = 0; i < d; ++i)
                e.components.push_back(parse_field(comps[i], d, "field_corpus." + label));
            s.corpus.push_back(std::move(e));
        }
    }

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        s.tolerances.identity = t.value("identity_tol", s.tolerances.identity);
        s.tolerances.quadrature = t.value("quad_tol", s.tolerances.quadrature);
        if (!(s.tolerances.identity > 0.0) || !(s.tolerances.quadrature > 0.0))
            throw ScenarioError("tolerances", "must be positive");
    }

    if (doc.contains("chart_exactness")) {
        const auto e = doc.at("chart_exactness").get<std::string>();
        if (e == "exact")
            s.exactness = ChartExactness::exact;
        else if (e == "non_exact")
            s.exactness = ChartExactness::non_exact;
        else
            throw ScenarioError("chart_exactness", "expected 'exact' or 'non_exact'");
    }

    if (doc.contains("inner_expectations")) {
        for (const auto& e : doc.at("inner_expectations")) {
            InnerExpectation x{require(e, "kind").get<std::string>(), require(e, "x").get<std::string>(),
                               e.value("y", std::string{}), require(e, "value").get<double>()};
            if (x.kind != "inner" && x.kind != "norm" && x.kind != "distance")
                throw ScenarioError("inner_expectations", "unknown kind '" + x.kind + "'");
            s.field(x.x);
            if (x.kind != "norm") s.field(x.y);
            s.inner_expectations.push_back(std::move(x));
        }
    }

    if (doc.contains("expected_violations"))
        s.expected_violations = doc.at("expected_violations").get<std::vector<std::string>>();

    s.sample_set = sample_points(s.system.domain(), s.name, kInteriorSamples);
    validate_scenario(s);
    return s;
}

void validate_scenario(const Scenario& s) {
    const ConformalSystem& sys = s.system;
    const std::size_t d = s.dimension();
    for (const Vector& p : s.sample_set) {
        const std::string at = " at point " + point_text(p);
        Matrix g;
        try {
            g = sys.metric().evaluate(p);
        } catch (const EvaluationError& e) {
            throw ScenarioError("metric", e.what() + at);
        }
        Signature sig;
        try {
            sig = signature(g);
        } catch (const ConvergenceError& e) {
            throw ScenarioError("metric", e.what() + at);
        }
        if (!sig.lorentzian() || sig.positive != d - 1)
            throw ScenarioError("metric", "signature (" + std::to_string(sig.positive) + "," +
                                              std::to_string(sig.negative) + "," + std::to_string(sig.zero) +
                                              ") is not (d,1,0)" + at);
        if (!(det(g) < 0.0)) throw ScenarioError("metric", "det g >= 0" + at);

        Matrix j;
        try {
            j = jacobian(sys.map_tilde(), p);
        } catch (const EvaluationError& e) {
            throw ScenarioError("diffeomorphism", e.what() + at);
        }
        if (singular(j, det(j))) throw ScenarioError("diffeomorphism", "singular Jacobian" + at);

        try {
            const LocalGeometry lg = sys.local(p);
            if (!(lg.lambda > 0.0) || !std::isfinite(lg.lambda))
                throw ScenarioError("scale", "scale factor not positive and finite" + at);
        } catch (const EvaluationError& e) {
            throw ScenarioError("scale.f", e.what() + at);
        } catch (const PreconditionError& e) {
            throw ScenarioError("scale", std::string(e.what()));
        }
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("file", "cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ScenarioError("file", "malformed document '" + path.string() + "': " + e.what());
    }
    try {
        return scenario_from_json(doc);
    } catch (const json::exception& e) {
        throw ScenarioError("document", e.what());
    }
}

std::filesystem::path fixture_directory() { return CONFSPACE_FIXTURE_DIR; }

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    const std::filesystem::path p(name_or_path);
    if (std::filesystem::is_regular_file(p)) return p;
    const auto fixture = fixture_directory() / (name_or_path + ".json");
    if (std::filesystem::is_regular_file(fixture)) return fixture;
    throw ScenarioError("file", "no such scenario file or fixture '" + name_or_path + "'");
}

std::vector<std::string> list_fixtures() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(fixture_directory()))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace confspace
