#pragma once

#include "confspace/conformal.hpp"
#include "confspace/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confspace {

/// A vector field over the x-chart, one expression per component.
struct VectorFieldElement {
    std::string label;
    std::vector<Expression> components;

    static VectorFieldElement from_strings(std::string label, const std::vector<std::string>& components);
    static VectorFieldElement zero(std::size_t dimension);

    std::size_t dimension() const noexcept { return components.size(); }
    VectorFieldElement scaled(double c) const;
    VectorFieldElement minus(const VectorFieldElement& other) const;
};

/// Values of a field at every grid node, node-major.
using FieldSamples = std::vector<double>;

/// The measure-weighted pairing
///
///   <X, Y> = int w |Q(X, Y)| / int w,   w = |f det g|^(1/2),  Q = lambda^2 g,
///
/// evaluated on a fixed tensor grid. The absolute value makes the form
/// nonnegative but not bilinear; with Lorentzian Q it has null directions.
class InnerProductSpace {
public:
    InnerProductSpace(const ConformalSystem& sys, const QuadratureRule& rule);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t nodes() const noexcept { return grid_.size(); }
    double measure() const noexcept { return denominator_; }

    FieldSamples sample(const VectorFieldElement& field) const;

    double inner(const FieldSamples& x, const FieldSamples& y) const;
    double norm(const FieldSamples& x) const;
    double distance(const FieldSamples& x, const FieldSamples& y) const;

    double inner(const VectorFieldElement& x, const VectorFieldElement& y) const;
    double norm(const VectorFieldElement& x) const;
    double distance(const VectorFieldElement& x, const VectorFieldElement& y) const;

private:
    std::size_t dimension_;
    TensorGrid grid_;
    Vector weights_;   // quadrature weight times |f det g|^(1/2)
    Vector conformal_; // Q at each node, row-major blocks of D*D
    double denominator_ = 0.0;
};

double inner(const ConformalSystem& sys, const VectorFieldElement& x, const VectorFieldElement& y,
             const QuadratureRule& rule);
double norm(const ConformalSystem& sys, const VectorFieldElement& x, const QuadratureRule& rule);
double distance(const ConformalSystem& sys, const VectorFieldElement& x, const VectorFieldElement& y,
                const QuadratureRule& rule);

enum class AxiomVerdict { held, violated, not_applicable };
std::string to_string(AxiomVerdict v);

struct Witness {
    std::vector<std::string> fields; // labels, in argument order
    double scalar = 0.0;             // homogeneity factor, when relevant
    std::vector<double> values;      // the quantities compared
    std::string note;
};

struct AxiomRecord {
    std::string axiom;
    std::size_t probes = 0;
    std::size_t violations = 0;
    double max_violation = 0.0;
    AxiomVerdict verdict = AxiomVerdict::not_applicable;
    std::optional<Witness> witness; // first violation found
};

struct AuditReport {
    std::vector<AxiomRecord> axioms; // sorted by axiom name

    const AxiomRecord& at(std::string_view axiom) const;
};

inline constexpr double kAuditTolerance = 1e-12;
inline constexpr double kNullDistance = 1e-10;
inline constexpr double kHomogeneityFactors[] = {-2.0, -1.0, 0.5, 3.0};

/// Empirical check of the inner-product, norm and metric axioms over all
/// pairs and triples of `corpus` plus the zero element. Requires at least
/// three fields.
AuditReport axiom_audit(const ConformalSystem& sys, const std::vector<VectorFieldElement>& corpus,
                        const QuadratureRule& rule);

} // namespace confspace
