#include "qhagg/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <variant>

#include "qhagg/numerics.hpp"

namespace qhagg {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      kind_(kind),
      offset_(offset) {}

EvalError::EvalError(Kind kind, double at, const std::string& what)
    : std::runtime_error(what + " at x=" + format_shortest(at)), kind_(kind), at_(at) {}

struct Variable {};
struct Literal {
    double value;
};
struct Negate {
    std::shared_ptr<const Expr::Node> operand;
};
struct Binary {
    char op;
    std::shared_ptr<const Expr::Node> lhs;
    std::shared_ptr<const Expr::Node> rhs;
};

struct Expr::Node {
    std::variant<Variable, Literal, Negate, Binary> payload;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

constexpr int kMaxNesting = 200;

template <typename T>
NodePtr make_node(T payload) {
    return std::make_shared<const Expr::Node>(Expr::Node{std::move(payload)});
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ == text_.size()) {
            throw ParseError(ParseError::Kind::Syntax, pos_, "empty expression");
        }
        auto root = parse_expr(0);
        skip_ws();
        if (pos_ != text_.size()) {
            if (!is_token_char(text_[pos_])) {
                throw ParseError(ParseError::Kind::Lexical, pos_,
                                 std::string("unexpected character '") + text_[pos_] + "'");
            }
            throw ParseError(ParseError::Kind::TrailingInput, pos_, "trailing input");
        }
        return root;
    }

private:
    static bool is_token_char(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == '+' ||
               c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void check_depth(int depth) const {
        if (depth > kMaxNesting) {
            throw ParseError(ParseError::Kind::Syntax, pos_, "expression nested too deeply");
        }
    }

    // `depth` counts nesting (parentheses, unary minus, exponent chains), not
    // grammar levels.
    NodePtr parse_expr(int depth) {
        check_depth(depth);
        auto lhs = parse_term(depth);
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            lhs = make_node(Binary{c, lhs, parse_term(depth)});
        }
        return lhs;
    }

    NodePtr parse_term(int depth) {
        check_depth(depth);
        auto lhs = parse_factor(depth);
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            lhs = make_node(Binary{c, lhs, parse_factor(depth)});
        }
        return lhs;
    }

    NodePtr parse_factor(int depth) {
        check_depth(depth);
        auto base = parse_atom(depth);
        if (peek() == '^') {
            ++pos_;
            return make_node(Binary{'^', base, parse_factor(depth + 1)});
        }
        return base;
    }

    NodePtr parse_atom(int depth) {
        check_depth(depth);
        const char c = peek();
        if (c == '\0') {
            throw ParseError(ParseError::Kind::Syntax, pos_, "unexpected end of input");
        }
        if (c == 'x') {
            ++pos_;
            return make_node(Variable{});
        }
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr(depth + 1);
            if (peek() != ')') {
                throw ParseError(ParseError::Kind::Syntax, pos_, "expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return make_node(Negate{parse_atom(depth + 1)});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (!is_token_char(c)) {
            throw ParseError(ParseError::Kind::Lexical, pos_,
                             std::string("unexpected character '") + c + "'");
        }
        throw ParseError(ParseError::Kind::Syntax, pos_,
                         std::string("unexpected '") + c + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t digits = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            ++digits;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++digits;
            }
        }
        if (digits == 0) {
            throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value,
                                         std::chars_format::fixed);
        if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value)) {
            throw ParseError(ParseError::Kind::Syntax, start, "number out of range");
        }
        return make_node(Literal{value});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double checked(double v, double x) {
    if (!std::isfinite(v)) {
        throw EvalError(EvalError::Kind::NonFinite, x, "non-finite result");
    }
    return v;
}

double eval_node(const Expr::Node& node, double x) {
    return std::visit(
        [x](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, Literal>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -eval_node(*n.operand, x);
            } else {
                const double a = eval_node(*n.lhs, x);
                const double b = eval_node(*n.rhs, x);
                switch (n.op) {
                    case '+':
                        return checked(a + b, x);
                    case '-':
                        return checked(a - b, x);
                    case '*':
                        return checked(a * b, x);
                    case '/':
                        if (b == 0.0) {
                            throw EvalError(EvalError::Kind::DivisionByZero, x, "division by zero");
                        }
                        return checked(a / b, x);
                    default: {
                        if (a < 0.0 && b != std::trunc(b)) {
                            throw EvalError(EvalError::Kind::NegativeBaseFractionalPower, x,
                                            "negative base with fractional exponent");
                        }
                        if (a == 0.0 && b < 0.0) {
                            throw EvalError(EvalError::Kind::DivisionByZero, x,
                                            "zero raised to a negative power");
                        }
                        return checked(std::pow(a, b), x);
                    }
                }
            }
        },
        node.payload);
}

void render(const Expr::Node& node, std::string& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, Literal>) {
                out += format_fixed_shortest(n.value);
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += "-(";
                render(*n.operand, out);
                out += ')';
            } else {
                out += '(';
                render(*n.lhs, out);
                out += n.op;
                render(*n.rhs, out);
                out += ')';
            }
        },
        node.payload);
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

double Expr::eval(double x) const { return eval_node(*root_, x); }

std::string Expr::to_string() const {
    std::string out;
    render(*root_, out);
    return out;
}

std::optional<double> Expr::as_power_of_x() const {
    if (std::holds_alternative<Variable>(root_->payload)) {
        return 1.0;
    }
    if (const auto* bin = std::get_if<Binary>(&root_->payload); bin && bin->op == '^') {
        const auto* lit = std::get_if<Literal>(&bin->rhs->payload);
        if (std::holds_alternative<Variable>(bin->lhs->payload) && lit && lit->value > 0.0) {
            return lit->value;
        }
    }
    return std::nullopt;
}

Expr parse_expr(std::string_view text) {
    Parser parser(text);
    return Expr(parser.parse(), std::string(text));
}

double eval_expr(const Expr& e, double x) { return e.eval(x); }

}  // namespace qhagg
