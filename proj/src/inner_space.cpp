#include "confspace/inner_space.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

namespace confspace {

VectorFieldElement VectorFieldElement::from_strings(std::string label,
                                                    const std::vector<std::string>& components) {
    VectorFieldElement e{std::move(label), {}};
    for (const auto& s : components) e.components.push_back(parse(s, components.size()));
    return e;
}

VectorFieldElement VectorFieldElement::zero(std::size_t dimension) {
    VectorFieldElement e{"zero", {}};
    for (std::size_t i = 0; i < dimension; ++i) e.components.push_back(Expression::number(0.0, dimension));
    return e;
}

VectorFieldElement VectorFieldElement::scaled(double c) const {
    VectorFieldElement e{label + "*" + std::to_string(c), {}};
    for (const auto& comp : components) e.components.push_back(Expression::number(c, dimension()) * comp);
    return e;
}

VectorFieldElement VectorFieldElement::minus(const VectorFieldElement& other) const {
    if (other.dimension() != dimension()) throw PreconditionError("field dimension mismatch");
    VectorFieldElement e{label + "-" + other.label, {}};
    for (std::size_t i = 0; i < components.size(); ++i)
        e.components.push_back(components[i] - other.components[i]);
    return e;
}

InnerProductSpace::InnerProductSpace(const ConformalSystem& sys, const QuadratureRule& rule)
    : dimension_(sys.dimension()), grid_(make_grid(sys.domain(), rule)) {
    const std::size_t d = dimension_;
    weights_.resize(grid_.size());
    conformal_.resize(grid_.size() * d * d);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        LocalGeometry lg;
        try {
            lg = sys.local(grid_.node(i));
        } catch (const std::exception& e) {
            const auto node = grid_.node(i);
            throw IntegrationError(e.what(), Vector(node.begin(), node.end()));
        }
        weights_[i] = grid_.weights[i] * std::sqrt(std::abs(lg.f * lg.metric_det));
        const double scale = lg.lambda * lg.lambda;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) conformal_[i * d * d + r * d + c] = scale * lg.metric(r, c);
    }
    denominator_ = pairwise_sum(weights_);
    if (!(denominator_ > 0.0)) throw PreconditionError("measure of the domain is not positive");
}

FieldSamples InnerProductSpace::sample(const VectorFieldElement& field) const {
    if (field.dimension() != dimension_) throw PreconditionError("field dimension mismatch");
    FieldSamples s(grid_.size() * dimension_);
    for (std::size_t i = 0; i < grid_.size(); ++i)
        for (std::size_t mu = 0; mu < dimension_; ++mu) {
            try {
                s[i * dimension_ + mu] = field.components[mu].evaluate(grid_.node(i));
            } catch (const std::exception& e) {
                const auto node = grid_.node(i);
                throw IntegrationError(field.label + ": " + e.what(), Vector(node.begin(), node.end()));
            }
        }
    return s;
}

double InnerProductSpace::inner(const FieldSamples& x, const FieldSamples& y) const {
    const std::size_t d = dimension_;
    Vector terms(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const double* q = &conformal_[i * d * d];
        const double* a = &x[i * d];
        const double* b = &y[i * d];
        // Written so that swapping x and y leaves every operation unchanged.
        double s = 0.0;
        for (std::size_t mu = 0; mu < d; ++mu) {
            s += q[mu * d + mu] * (a[mu] * b[mu]);
            for (std::size_t nu = mu + 1; nu < d; ++nu) s += q[mu * d + nu] * (a[mu] * b[nu] + a[nu] * b[mu]);
        }
        terms[i] = weights_[i] * std::abs(s);
    }
    return pairwise_sum(terms) / denominator_;
}

double InnerProductSpace::norm(const FieldSamples& x) const { return std::sqrt(inner(x, x)); }

double InnerProductSpace::distance(const FieldSamples& x, const FieldSamples& y) const {
    FieldSamples diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    return norm(diff);
}

double InnerProductSpace::inner(const VectorFieldElement& x, const VectorFieldElement& y) const {
    return inner(sample(x), sample(y));
}

double InnerProductSpace::norm(const VectorFieldElement& x) const { return norm(sample(x)); }

double InnerProductSpace::distance(const VectorFieldElement& x, const VectorFieldElement& y) const {
    return norm(sample(x.minus(y)));
}

double inner(const ConformalSystem& sys, const VectorFieldElement& x, const VectorFieldElement& y,
             const QuadratureRule& rule) {
    return InnerProductSpace(sys, rule).inner(x, y);
}

double norm(const ConformalSystem& sys, const VectorFieldElement& x, const QuadratureRule& rule) {
    return InnerProductSpace(sys, rule).norm(x);
}

double distance(const ConformalSystem& sys, const VectorFieldElement& x, const VectorFieldElement& y,
                const QuadratureRule& rule) {
    return InnerProductSpace(sys, rule).distance(x, y);
}

std::string to_string(AxiomVerdict v) {
    switch (v) {
    case AxiomVerdict::held: return "held";
    case AxiomVerdict::violated: return "violated";
    case AxiomVerdict::not_applicable: return "not-applicable";
    }
    return "?";
}

const AxiomRecord& AuditReport::at(std::string_view axiom) const {
    for (const auto& a : axioms)
        if (a.axiom == axiom) return a;
    throw std::out_of_range("no audit record for axiom '" + std::string(axiom) + "'");
}

namespace {

class Tally {
public:
    explicit Tally(std::string axiom) { rec_.axiom = std::move(axiom); }

    // `excess` > 0 is a violation.
    void probe(double excess, const std::function<Witness()>& witness) {
        ++rec_.probes;
        if (excess > 0.0) {
            ++rec_.violations;
            rec_.max_violation = std::max(rec_.max_violation, excess);
            if (!rec_.witness) rec_.witness = witness();
        }
    }

    AxiomRecord finish() {
        rec_.verdict = rec_.probes == 0       ? AxiomVerdict::not_applicable
                       : rec_.violations == 0 ? AxiomVerdict::held
                                              : AxiomVerdict::violated;
        return rec_;
    }

private:
    AxiomRecord rec_;
};

double tolerance(double scale) { return kAuditTolerance * std::max(1.0, std::abs(scale)); }

} // namespace

AuditReport axiom_audit(const ConformalSystem& sys, const std::vector<VectorFieldElement>& corpus,
                        const QuadratureRule& rule) {
    if (corpus.size() < 3) throw PreconditionError("axiom audit needs at least three fields");

    const InnerProductSpace space(sys, rule);
    std::vector<VectorFieldElement> fields = corpus;
    fields.push_back(VectorFieldElement::zero(sys.dimension()));
    const std::size_t n = fields.size();
    const std::size_t zero = n - 1;

    std::vector<FieldSamples> s;
    for (const auto& f : fields) s.push_back(space.sample(f));
    auto negated = [](FieldSamples v) {
        for (auto& x : v) x = -x;
        return v;
    };

    std::vector<std::vector<double>> ip(n, std::vector<double>(n));
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ip[i][j] = space.inner(s[i], s[j]);
            dist[i][j] = space.distance(s[i], s[j]);
        }
    std::vector<double> nrm(n);
    for (std::size_t i = 0; i < n; ++i) nrm[i] = std::sqrt(ip[i][i]);

    auto label = [&](std::size_t i) { return fields[i].label; };
    auto pointwise_gap = [&](std::size_t i, std::size_t j) {
        double gap = 0.0;
        for (std::size_t k = 0; k < s[i].size(); ++k) gap = std::max(gap, std::abs(s[i][k] - s[j][k]));
        return gap;
    };

    std::vector<AxiomRecord> out;

    {
        Tally t("bilinearity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double flipped = space.inner(s[i], negated(s[j]));
                const double excess = std::abs(flipped + ip[i][j]) - tolerance(ip[i][j]);
                t.probe(excess, [&] {
                    return Witness{{label(i), label(j)}, -1.0, {flipped, ip[i][j]},
                                   "<X,-Y> should equal -<X,Y>"};
                });
            }
        out.push_back(t.finish());
    }
    {
        Tally t("cauchy_schwarz");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double bound = nrm[i] * nrm[j];
                t.probe(ip[i][j] - bound - tolerance(bound), [&] {
                    return Witness{{label(i), label(j)}, 0.0, {ip[i][j], nrm[i], nrm[j]},
                                   "<X,Y> exceeds |X||Y|"};
                });
            }
        out.push_back(t.finish());
    }
    {
        Tally t("definiteness");
        auto check = [&](std::size_t i, std::size_t j) {
            const double gap = pointwise_gap(i, j);
            const double excess = dist[i][j] <= kNullDistance && gap > kAuditTolerance ? gap : 0.0;
            t.probe(excess, [&] {
                return Witness{{label(i), label(j)}, 0.0, {dist[i][j], gap},
                               "d(X,Y) = 0 with X != Y: null direction of the conformal metric"};
            });
        };
        for (std::size_t i = 0; i < zero; ++i) check(i, zero);
        for (std::size_t i = 0; i < zero; ++i)
            for (std::size_t j = i + 1; j < zero; ++j) check(i, j);
        out.push_back(t.finish());
    }
    {
        Tally t("homogeneity");
        for (std::size_t i = 0; i < zero; ++i)
            for (double c : kHomogeneityFactors) {
                FieldSamples scaled = s[i];
                for (auto& x : scaled) x *= c;
                const double lhs = space.norm(scaled);
                const double rhs = std::abs(c) * nrm[i];
                t.probe(std::abs(lhs - rhs) - tolerance(rhs), [&] {
                    return Witness{{label(i)}, c, {lhs, rhs}, "|cX| != |c||X|"};
                });
            }
        out.push_back(t.finish());
    }
    {
        Tally t("nonnegativity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t.probe(-ip[i][j], [&] {
                    return Witness{{label(i), label(j)}, 0.0, {ip[i][j]}, "<X,Y> < 0"};
                });
        out.push_back(t.finish());
    }
    {
        Tally t("point_identity");
        for (std::size_t i = 0; i < n; ++i)
            t.probe(dist[i][i], [&] { return Witness{{label(i)}, 0.0, {dist[i][i]}, "d(X,X) != 0"}; });
        out.push_back(t.finish());
    }
    {
        Tally t("symmetry");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                t.probe(std::abs(ip[i][j] - ip[j][i]) - tolerance(ip[i][j]), [&] {
                    return Witness{{label(i), label(j)}, 0.0, {ip[i][j], ip[j][i]}, "<X,Y> != <Y,X>"};
                });
        out.push_back(t.finish());
    }
    {
        Tally t("triangle");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const double detour = dist[i][j] + dist[j][k];
                    t.probe(dist[i][k] - detour - tolerance(detour), [&] {
                        return Witness{{label(i), label(j), label(k)}, 0.0,
                                       {dist[i][k], dist[i][j], dist[j][k]}, "d(X,Z) > d(X,Y) + d(Y,Z)"};
                    });
                }
        out.push_back(t.finish());
    }

    return AuditReport{std::move(out)};
}

} // namespace confspace
