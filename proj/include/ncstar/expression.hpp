#ifndef NCSTAR_EXPRESSION_HPP
#define NCSTAR_EXPRESSION_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ncstar/deformation.hpp"
#include "ncstar/polystar.hpp"
#include "ncstar/wavestar.hpp"

namespace ncstar {

enum class Variable { x1, x2, z, zbar };

/// Expression tree. Grammar, loosest binding first:
///
///   sum     := star (('+' | '-') star)*
///   star    := product ('**' product)*
///   product := unary ('*' unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' integer)?
///   primary := number | number 'i' | 'i' | variable
///            | 'exp' '(' sum ')' | '(' sum ')'
struct Expr {
    enum class Kind { literal, variable, neg, add, sub, mul, star, pow, exp };

    Kind kind = Kind::literal;
    cplx value{};              // literal
    Variable var = Variable::x1; // variable
    unsigned exponent = 0;     // pow
    std::vector<Expr> args;

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct Expression {
    Expr root;
    Frame frame = Frame::cartesian;

    friend bool operator==(const Expression&, const Expression&) = default;
};

/// Syntax or validation error with a 1-based position and the set of tokens
/// that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column, std::vector<std::string> expected);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

/// Raised when a well-formed expression cannot be evaluated (mixing a
/// non-constant polynomial with exponentials).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Expression parse_expression(std::string_view text);

/// Fully parenthesized rendering that reparses to the same tree.
std::string to_string(const Expr& e);
inline std::string to_string(const Expression& e) { return to_string(e.root); }

using Value = std::variant<Polynomial2, WaveSum>;

/// Evaluates with `**` as the star product for the given parameters.
Value evaluate(const Expression& e, const DeformationParams& params);

/// Evaluates an expression that must reduce to a constant (no variables).
cplx evaluate_constant(std::string_view text);

/// Renders a value in the expression grammar.
std::string format_value(const Value& v);
std::string format_complex(cplx c);
std::string format_double(double d);

} // namespace ncstar

#endif
