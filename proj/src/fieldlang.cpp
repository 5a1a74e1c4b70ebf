#include "confspace/fieldlang.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

namespace confspace {

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, std::string message,
                       std::vector<std::string> expected)
    : Error(std::move(message)), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

EvaluationError::EvaluationError(std::string message, std::string subexpression)
    : Error(message + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 7> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"exp", Function::exp},
    {"log", Function::log},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
    {"tanh", Function::tanh},
}};

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind = Tok::end;
    std::size_t offset = 0;
    std::string_view text;
    double number = 0.0;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + std::string(t.text) + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= src_.size()) return t;

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            t.kind = Tok::ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '/': t.kind = Tok::slash; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case ',': t.kind = Tok::comma; break;
        default:
            throw ParseError(ParseErrorKind::syntax, pos_,
                             "unexpected character '" + std::string(1, c) + "' at offset " +
                                 std::to_string(pos_));
        }
        t.text = src_.substr(pos_, 1);
        ++pos_;
        return t;
    }

private:
    Token lex_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0)
            throw ParseError(ParseErrorKind::syntax, start, "malformed number at offset " +
                                                                std::to_string(start),
                             {"digit"});
        // Exponent only when a digit actually follows, so "2e" stays 2 then 'e'.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        Token t;
        t.kind = Tok::number;
        t.offset = start;
        t.text = src_.substr(start, pos_ - start);
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
            throw ParseError(ParseErrorKind::syntax, start,
                             "number out of range at offset " + std::to_string(start));
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, std::size_t dimension) : lexer_(src), dimension_(dimension) {
        advance();
    }

    NodePtr parse_all() {
        NodePtr e = expr();
        if (cur_.kind != Tok::end) fail({"operator", "end of input"});
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(cur_.offset) + ": unexpected " +
                          describe(cur_) + ", expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += " or ";
            msg += expected[i];
        }
        throw ParseError(ParseErrorKind::syntax, cur_.offset, std::move(msg), std::move(expected));
    }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail({what});
        advance();
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const BinaryOp op = cur_.kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            advance();
            lhs = make_binary(op, lhs, term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
            const BinaryOp op = cur_.kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
            advance();
            lhs = make_binary(op, lhs, unary());
        }
        return lhs;
    }

    NodePtr unary() {
        if (cur_.kind == Tok::minus) {
            advance();
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::negate;
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (cur_.kind == Tok::caret) {
            advance();
            return make_binary(BinaryOp::pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        auto n = std::make_shared<Node>();
        switch (cur_.kind) {
        case Tok::number:
            n->kind = Node::Kind::number;
            n->number = cur_.number;
            advance();
            return n;
        case Tok::lparen: {
            advance();
            NodePtr inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::ident:
            return identifier();
        default:
            fail({"number", "variable", "function", "'('", "'-'"});
        }
    }

    NodePtr identifier() {
        const Token id = cur_;
        auto n = std::make_shared<Node>();

        if (id.text == "pi" || id.text == "e") {
            n->kind = Node::Kind::constant;
            n->constant = id.text == "pi" ? NamedConstant::pi : NamedConstant::e;
            advance();
            return n;
        }

        if (auto index = variable_index(id.text)) {
            if (*index >= dimension_)
                throw ParseError(ParseErrorKind::unknown_variable, id.offset,
                                 "unknown variable '" + std::string(id.text) + "' at offset " +
                                     std::to_string(id.offset) + " (dimension is " +
                                     std::to_string(dimension_) + ")");
            n->kind = Node::Kind::variable;
            n->variable = *index;
            advance();
            return n;
        }

        for (const auto& [name, fn] : kFunctions) {
            if (name != id.text) continue;
            advance();
            expect(Tok::lparen, "'('");
            if (cur_.kind == Tok::rparen)
                throw ParseError(ParseErrorKind::arity, cur_.offset,
                                 std::string(name) + " takes exactly 1 argument, got 0");
            n->kind = Node::Kind::call;
            n->function = fn;
            n->lhs = expr();
            if (cur_.kind == Tok::comma)
                throw ParseError(ParseErrorKind::arity, cur_.offset,
                                 std::string(name) + " takes exactly 1 argument, got more");
            expect(Tok::rparen, "')'");
            return n;
        }

        throw ParseError(ParseErrorKind::unknown_identifier, id.offset,
                         "unknown identifier '" + std::string(id.text) + "' at offset " +
                             std::to_string(id.offset));
    }

    static std::optional<std::size_t> variable_index(std::string_view text) {
        if (text.size() < 2 || text[0] != 'x') return std::nullopt;
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
        return value;
    }

    Lexer lexer_;
    std::size_t dimension_;
    Token cur_;
};

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string s(buf.data(), ptr);
    // "inf"/"nan" never come out of the parser; builders may still produce them.
    return s;
}

void print(const Node& n, std::string& out) {
    switch (n.kind) {
    case Node::Kind::number:
        out += format_number(n.number);
        break;
    case Node::Kind::variable:
        out += 'x';
        out += std::to_string(n.variable);
        break;
    case Node::Kind::constant:
        out += n.constant == NamedConstant::pi ? "pi" : "e";
        break;
    case Node::Kind::negate:
        out += "(-";
        print(*n.lhs, out);
        out += ')';
        break;
    case Node::Kind::binary: {
        static constexpr std::array<char, 5> ops{'+', '-', '*', '/', '^'};
        out += '(';
        print(*n.lhs, out);
        out += ' ';
        out += ops[static_cast<std::size_t>(n.op)];
        out += ' ';
        print(*n.rhs, out);
        out += ')';
        break;
    }
    case Node::Kind::call:
        out += to_string(n.function);
        out += '(';
        print(*n.lhs, out);
        out += ')';
        break;
    }
}

std::string print(const Node& n) {
    std::string s;
    print(n, s);
    return s;
}

bool same_tree(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Node::Kind::number: return a.number == b.number;
    case Node::Kind::variable: return a.variable == b.variable;
    case Node::Kind::constant: return a.constant == b.constant;
    case Node::Kind::negate: return same_tree(*a.lhs, *b.lhs);
    case Node::Kind::binary:
        return a.op == b.op && same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
    case Node::Kind::call: return a.function == b.function && same_tree(*a.lhs, *b.lhs);
    }
    return false;
}

// Scalar traits let one evaluator serve both plain doubles and dual numbers.
inline double value_of(double v) { return v; }
inline double value_of(const DualValue& v) { return v.value; }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const DualValue& v) {
    return std::isfinite(v.value) && std::isfinite(v.derivative);
}

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

double power(double base, double exponent, const Node& n) {
    if (!(base > 0.0) && !is_integer(exponent))
        throw EvaluationError("non-integer power of nonpositive base", print(n));
    if (base == 0.0 && exponent < 0.0) throw EvaluationError("division by zero", print(n));
    return std::pow(base, exponent);
}

DualValue power(const DualValue& base, const DualValue& exponent, const Node& n) {
    const double v = power(base.value, exponent.value, n);
    if (exponent.derivative == 0.0) {
        // Constant exponent along this direction: d(a^k) = k a^(k-1) da.
        const double k = exponent.value;
        const double dv = base.derivative == 0.0 ? 0.0
                                                 : k * std::pow(base.value, k - 1.0) * base.derivative;
        return {v, dv};
    }
    if (!(base.value > 0.0))
        throw EvaluationError("variable exponent requires a positive base", print(n));
    const double dv =
        v * (exponent.derivative * std::log(base.value) + exponent.value * base.derivative / base.value);
    return {v, dv};
}

template <class Scalar>
class Evaluator {
public:
    Evaluator(std::span<const double> point, std::span<const double> direction)
        : point_(point), direction_(direction) {}

    Scalar eval(const Node& n) const {
        Scalar r = eval_unchecked(n);
        if (!finite(r)) throw EvaluationError("non-finite result", print(n));
        return r;
    }

private:
    Scalar leaf(double v, double d) const {
        if constexpr (std::is_same_v<Scalar, double>) {
            (void)d;
            return v;
        } else {
            return Scalar{v, d};
        }
    }

    Scalar eval_unchecked(const Node& n) const {
        using std::abs, std::cos, std::exp, std::log, std::sin, std::sqrt, std::tanh;
        switch (n.kind) {
        case Node::Kind::number: return leaf(n.number, 0.0);
        case Node::Kind::variable:
            return leaf(point_[n.variable], direction_.empty() ? 0.0 : direction_[n.variable]);
        case Node::Kind::constant:
            return leaf(n.constant == NamedConstant::pi ? std::numbers::pi : std::numbers::e, 0.0);
        case Node::Kind::negate: return -eval(*n.lhs);
        case Node::Kind::binary: {
            const Scalar a = eval(*n.lhs);
            const Scalar b = eval(*n.rhs);
            switch (n.op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div:
                if (value_of(b) == 0.0) throw EvaluationError("division by zero", print(n));
                return a / b;
            case BinaryOp::pow: return power(a, b, n);
            }
            break;
        }
        case Node::Kind::call: {
            const Scalar a = eval(*n.lhs);
            switch (n.function) {
            case Function::sin: return sin(a);
            case Function::cos: return cos(a);
            case Function::exp: return exp(a);
            case Function::tanh: return tanh(a);
            case Function::abs: return abs(a);
            case Function::log:
                if (!(value_of(a) > 0.0))
                    throw EvaluationError("log of nonpositive value", print(n));
                return log(a);
            case Function::sqrt:
                if (value_of(a) < 0.0) throw EvaluationError("sqrt of negative value", print(n));
                return sqrt(a);
            }
            break;
        }
        }
        throw EvaluationError("malformed expression node", "?");
    }

    std::span<const double> point_;
    std::span<const double> direction_;
};

} // namespace

std::string to_string(Function f) {
    for (const auto& [name, fn] : kFunctions)
        if (fn == f) return std::string(name);
    return "?";
}

Expression::Expression(NodePtr root, std::size_t dimension)
    : root_(std::move(root)), dimension_(dimension) {
    if (!root_) throw std::invalid_argument("Expression: null root");
}

Expression Expression::number(double value, std::size_t dimension) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->number = value;
    return Expression(std::move(n), dimension);
}

Expression Expression::variable(std::size_t index, std::size_t dimension) {
    if (index >= dimension) throw std::invalid_argument("Expression::variable: index out of range");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::variable;
    n->variable = index;
    return Expression(std::move(n), dimension);
}

double Expression::evaluate(std::span<const double> point) const {
    if (point.size() != dimension_)
        throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) +
                                    " coordinates, expression expects " + std::to_string(dimension_));
    return Evaluator<double>(point, {}).eval(*root_);
}

DualValue Expression::evaluate_dual(std::span<const double> point,
                                    std::span<const double> direction) const {
    if (point.size() != dimension_ || direction.size() != dimension_)
        throw std::invalid_argument("evaluate_dual: point/direction dimension mismatch");
    return Evaluator<DualValue>(point, direction).eval(*root_);
}

std::string Expression::to_string() const { return print(*root_); }

bool Expression::operator==(const Expression& other) const {
    return dimension_ == other.dimension_ && same_tree(*root_, *other.root_);
}

Expression operator+(const Expression& a, const Expression& b) {
    if (a.dimension_ != b.dimension_) throw std::invalid_argument("dimension mismatch");
    return Expression(make_binary(BinaryOp::add, a.root_, b.root_), a.dimension_);
}

Expression operator-(const Expression& a, const Expression& b) {
    if (a.dimension_ != b.dimension_) throw std::invalid_argument("dimension mismatch");
    return Expression(make_binary(BinaryOp::sub, a.root_, b.root_), a.dimension_);
}

Expression operator*(const Expression& a, const Expression& b) {
    if (a.dimension_ != b.dimension_) throw std::invalid_argument("dimension mismatch");
    return Expression(make_binary(BinaryOp::mul, a.root_, b.root_), a.dimension_);
}

Expression parse(std::string_view source, std::size_t dimension) {
    if (dimension == 0) throw std::invalid_argument("parse: dimension must be positive");
    Parser p(source, dimension);
    return Expression(p.parse_all(), dimension);
}

} // namespace confspace
