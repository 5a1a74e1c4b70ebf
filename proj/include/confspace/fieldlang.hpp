#pragma once

// Expression language for scalar fields over R^D.
//
// Grammar (LL(1), '^' binds tighter than unary minus and is right-assoc):
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' unary]
//   primary := number | 'x'<index> | 'pi' | 'e'
//            | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt | abs | tanh

#include "confspace/dual.hpp"
#include "confspace/error.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confspace {

enum class ParseErrorKind { syntax, unknown_identifier, unknown_variable, arity };

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, std::string message,
               std::vector<std::string> expected = {});

    ParseErrorKind kind() const noexcept { return kind_; }
    /// Byte offset into the source where the problem was detected.
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Raised for domain violations during evaluation (log of a nonpositive
/// value, division by zero, fractional power of a nonpositive base,
/// non-finite results). Carries the printed offending subexpression.
class EvaluationError : public Error {
public:
    EvaluationError(std::string message, std::string subexpression);

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, log, sqrt, abs, tanh };
enum class NamedConstant { pi, e };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { number, variable, constant, negate, binary, call };

    Kind kind = Kind::number;
    double number = 0.0;
    std::size_t variable = 0;
    NamedConstant constant = NamedConstant::pi;
    BinaryOp op = BinaryOp::add;
    Function function = Function::sin;
    NodePtr lhs; // operand of negate/call, left side of binary
    NodePtr rhs;
};

/// An immutable, shareable expression tree over the variables x0..x{D-1}.
class Expression {
public:
    Expression(NodePtr root, std::size_t dimension);

    static Expression number(double value, std::size_t dimension);
    static Expression variable(std::size_t index, std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    const Node& root() const noexcept { return *root_; }

    double evaluate(std::span<const double> point) const;

    /// Value and directional derivative at `point` along `direction`.
    DualValue evaluate_dual(std::span<const double> point,
                            std::span<const double> direction) const;

    /// Fully parenthesised text that parses back to the same tree.
    std::string to_string() const;

    /// Structural equality of the trees; dimensions must match too.
    bool operator==(const Expression& other) const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);

private:
    NodePtr root_;
    std::size_t dimension_;
};

Expression parse(std::string_view source, std::size_t dimension);

std::string to_string(Function f);

} // namespace confspace
