#pragma once

// A tiny scalar-expression language in one variable `x`:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' factor)?        ('^' is right-associative)
//   atom   := number | 'x' | '(' expr ')' | '-' atom
//
// Numbers are plain decimals ("2", "0.5", ".5"); no exponent notation.
// Whitespace is ignored.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhagg {

class ParseError : public std::runtime_error {
public:
    enum class Kind { Lexical, Syntax, TrailingInput };

    ParseError(Kind kind, std::size_t offset, const std::string& what);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    enum class Kind { DivisionByZero, NegativeBaseFractionalPower, NonFinite };

    EvalError(Kind kind, double at, const std::string& what);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double at() const { return at_; }

private:
    Kind kind_;
    double at_;
};

/// Immutable parsed expression. Copies share the same tree.
class Expr {
public:
    struct Node;

    /// Evaluate at x. Throws EvalError.
    [[nodiscard]] double eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x); }

    /// Fully parenthesised rendering that re-parses to an identical tree.
    [[nodiscard]] std::string to_string() const;

    /// The exponent c when the expression is literally `x` or `x^c` with a
    /// numeric c (used to attach a closed-form inverse).
    [[nodiscard]] std::optional<double> as_power_of_x() const;

    [[nodiscard]] const std::string& source() const { return source_; }

private:
    friend Expr parse_expr(std::string_view text);
    Expr(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

/// Parse `text`. Throws ParseError carrying the byte offset of the problem.
Expr parse_expr(std::string_view text);

/// Convenience: parse then evaluate.
double eval_expr(const Expr& e, double x);

}  // namespace qhagg
