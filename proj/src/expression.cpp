#include "ncstar/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

namespace ncstar {

ParseError::ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << line << ":" << column << ": " << message;
          if (!expected.empty()) {
              os << " (expected ";
              for (std::size_t k = 0; k < expected.size(); ++k)
                  os << (k ? ", " : "") << expected[k];
              os << ")";
          }
          return os.str();
      }()),
      line_(line), column_(column), expected_(std::move(expected))
{
}

namespace {

enum class Tok { number, imag, ident, plus, minus, star, starstar, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    bool integral = false;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        skip_space();
        Token t{Tok::end, "", 0.0, false, line_, column_};
        if (pos_ >= text_.size())
            return t;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < text_.size()
                                                            && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
            return number(t);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                advance();
            t.kind = Tok::ident;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        advance();
        t.text = std::string(1, c);
        switch (c) {
        case '+': t.kind = Tok::plus; return t;
        case '-': t.kind = Tok::minus; return t;
        case '^': t.kind = Tok::caret; return t;
        case '(': t.kind = Tok::lparen; return t;
        case ')': t.kind = Tok::rparen; return t;
        case '*':
            if (pos_ < text_.size() && text_[pos_] == '*') {
                advance();
                t.kind = Tok::starstar;
                t.text = "**";
            } else {
                t.kind = Tok::star;
            }
            return t;
        default:
            throw ParseError("unexpected character '" + t.text + "'", t.line, t.column, {"expression"});
        }
    }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }

    bool digit_at(std::size_t k) const
    {
        return k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]));
    }

    Token number(Token t)
    {
        const std::size_t start = pos_;
        bool integral = true;
        while (digit_at(pos_))
            advance();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            integral = false;
            advance();
            while (digit_at(pos_))
                advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t k = pos_ + 1;
            if (k < text_.size() && (text_[k] == '+' || text_[k] == '-'))
                ++k;
            if (digit_at(k)) {
                integral = false;
                while (pos_ < k)
                    advance();
                while (digit_at(pos_))
                    advance();
            }
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc() || !std::isfinite(t.number))
            throw ParseError("malformed number '" + t.text + "'", t.line, t.column, {"number"});
        t.integral = integral;
        t.kind = Tok::number;
        // imaginary suffix: 2i, 1.5i (but not 2in...)
        if (pos_ < text_.size() && text_[pos_] == 'i'
            && (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            advance();
            t.kind = Tok::imag;
            t.text += 'i';
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::optional<Variable> variable_named(std::string_view name)
{
    if (name == "x1")
        return Variable::x1;
    if (name == "x2")
        return Variable::x2;
    if (name == "z")
        return Variable::z;
    if (name == "zbar")
        return Variable::zbar;
    return std::nullopt;
}

Frame frame_of(Variable v)
{
    return v == Variable::x1 || v == Variable::x2 ? Frame::cartesian : Frame::complex;
}

std::string_view name_of(Variable v)
{
    switch (v) {
    case Variable::x1: return "x1";
    case Variable::x2: return "x2";
    case Variable::z: return "z";
    case Variable::zbar: return "zbar";
    }
    return "?";
}

Expr make(Expr::Kind kind, std::vector<Expr> args)
{
    Expr e;
    e.kind = kind;
    e.args = std::move(args);
    return e;
}

// Upper bound on polynomial degree; nullopt if the tree contains exp.
std::optional<unsigned> degree_bound(const Expr& e)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::literal: return 0u;
    case K::variable: return 1u;
    case K::exp: return std::nullopt;
    case K::neg: return degree_bound(e.args[0]);
    case K::pow: {
        auto d = degree_bound(e.args[0]);
        return d ? std::optional<unsigned>(*d * e.exponent) : std::nullopt;
    }
    case K::add:
    case K::sub: {
        auto a = degree_bound(e.args[0]), b = degree_bound(e.args[1]);
        return a && b ? std::optional<unsigned>(std::max(*a, *b)) : std::nullopt;
    }
    case K::mul:
    case K::star: {
        auto a = degree_bound(e.args[0]), b = degree_bound(e.args[1]);
        return a && b ? std::optional<unsigned>(*a + *b) : std::nullopt;
    }
    }
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

    Expression parse()
    {
        Expr root = sum();
        if (tok_.kind != Tok::end)
            fail("unexpected '" + tok_.text + "'", {"+", "-", "*", "**", "^", "end of input"});
        return {std::move(root), frame_.value_or(Frame::cartesian)};
    }

private:
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const
    {
        throw ParseError(message, tok_.line, tok_.column, std::move(expected));
    }

    void advance() { tok_ = lexer_.next(); }

    Expr sum()
    {
        Expr lhs = star();
        while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
            const auto kind = tok_.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub;
            advance();
            lhs = make(kind, {std::move(lhs), star()});
        }
        return lhs;
    }

    Expr star()
    {
        Expr lhs = product();
        while (tok_.kind == Tok::starstar) {
            advance();
            lhs = make(Expr::Kind::star, {std::move(lhs), product()});
        }
        return lhs;
    }

    Expr product()
    {
        Expr lhs = unary();
        while (tok_.kind == Tok::star) {
            advance();
            lhs = make(Expr::Kind::mul, {std::move(lhs), unary()});
        }
        return lhs;
    }

    Expr unary()
    {
        if (tok_.kind == Tok::minus) {
            advance();
            return make(Expr::Kind::neg, {unary()});
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (tok_.kind != Tok::caret)
            return base;
        advance();
        if (tok_.kind == Tok::minus)
            fail("negative exponent", {"non-negative integer"});
        if (tok_.kind != Tok::number)
            fail("exponent must be an integer literal", {"non-negative integer"});
        if (!tok_.integral || tok_.number > 1024.0)
            fail("fractional or oversized exponent '" + tok_.text + "'", {"non-negative integer"});
        Expr e = make(Expr::Kind::pow, {std::move(base)});
        e.exponent = static_cast<unsigned>(tok_.number);
        advance();
        return e;
    }

    Expr primary()
    {
        static const std::vector<std::string> starts{"number", "variable", "i", "exp", "("};
        Expr e;
        switch (tok_.kind) {
        case Tok::number:
            e.value = tok_.number;
            advance();
            return e;
        case Tok::imag:
            e.value = cplx(0.0, tok_.number);
            advance();
            return e;
        case Tok::lparen: {
            advance();
            e = sum();
            expect_rparen();
            return e;
        }
        case Tok::ident:
            return identifier();
        default:
            fail(tok_.kind == Tok::end ? "unexpected end of input" : "unexpected '" + tok_.text + "'", starts);
        }
    }

    Expr identifier()
    {
        const Token t = tok_;
        if (t.text == "i") {
            advance();
            Expr e;
            e.value = I;
            return e;
        }
        if (t.text == "exp") {
            advance();
            if (tok_.kind != Tok::lparen)
                fail("expected '(' after exp", {"("});
            advance();
            Expr arg = sum();
            const auto deg = degree_bound(arg);
            if (!deg || *deg > 1)
                throw ParseError("exp argument must be affine in the variables", t.line, t.column,
                                 {"affine expression"});
            expect_rparen();
            return make(Expr::Kind::exp, {std::move(arg)});
        }
        const auto v = variable_named(t.text);
        if (!v)
            fail("unknown identifier '" + t.text + "'", {"x1", "x2", "z", "zbar", "i", "exp"});
        const Frame f = frame_of(*v);
        if (frame_ && *frame_ != f) {
            if (*frame_ == Frame::cartesian)
                fail("cannot mix z/zbar with x1/x2", {"x1", "x2"});
            fail("cannot mix x1/x2 with z/zbar", {"z", "zbar"});
        }
        frame_ = f;
        advance();
        Expr e;
        e.kind = Expr::Kind::variable;
        e.var = *v;
        return e;
    }

    void expect_rparen()
    {
        if (tok_.kind != Tok::rparen)
            fail(tok_.kind == Tok::end ? "unexpected end of input" : "unexpected '" + tok_.text + "'",
                 {")", "+", "-", "*", "**"});
        advance();
    }

    Lexer lexer_;
    Token tok_;
    std::optional<Frame> frame_;
};

// --- evaluation -------------------------------------------------------------

struct Evaluator {
    const DeformationParams& params;
    Frame frame;

    static bool is_constant(const Polynomial2& p) { return p.degree() <= 0; }

    WaveSum as_wave(const Value& v) const
    {
        if (const auto* w = std::get_if<WaveSum>(&v))
            return *w;
        const auto& p = std::get<Polynomial2>(v);
        if (!is_constant(p))
            throw EvalError("cannot combine a non-constant polynomial with exponential terms");
        WaveSum w(frame);
        if (!p.is_zero())
            w.add_term(p.coefficient({0, 0}), {0.0, 0.0});
        return w;
    }

    static bool both_poly(const Value& a, const Value& b)
    {
        return std::holds_alternative<Polynomial2>(a) && std::holds_alternative<Polynomial2>(b);
    }

    Value operator()(const Expr& e) const
    {
        using K = Expr::Kind;
        switch (e.kind) {
        case K::literal: return Polynomial2::constant(e.value, frame);
        case K::variable:
            return Polynomial2::variable(e.var == Variable::x1 || e.var == Variable::z ? 0 : 1, frame);
        case K::neg: {
            Value a = (*this)(e.args[0]);
            if (auto* p = std::get_if<Polynomial2>(&a))
                return -*p;
            return std::get<WaveSum>(a) * cplx(-1.0);
        }
        case K::add:
        case K::sub: {
            Value a = (*this)(e.args[0]);
            Value b = (*this)(e.args[1]);
            const double sign = e.kind == K::add ? 1.0 : -1.0;
            if (both_poly(a, b))
                return std::get<Polynomial2>(a) + sign * std::get<Polynomial2>(b);
            return as_wave(a) + sign * as_wave(b);
        }
        case K::mul: {
            Value a = (*this)(e.args[0]);
            Value b = (*this)(e.args[1]);
            if (both_poly(a, b))
                return std::get<Polynomial2>(a) * std::get<Polynomial2>(b);
            return as_wave(a) * as_wave(b);
        }
        case K::star: {
            Value a = (*this)(e.args[0]);
            Value b = (*this)(e.args[1]);
            if (both_poly(a, b))
                return star_poly(std::get<Polynomial2>(a), std::get<Polynomial2>(b), params);
            return star_wave(as_wave(a), as_wave(b), params);
        }
        case K::pow: {
            Value base = (*this)(e.args[0]);
            if (auto* p = std::get_if<Polynomial2>(&base)) {
                Polynomial2 out = Polynomial2::constant(1.0, frame);
                for (unsigned k = 0; k < e.exponent; ++k)
                    out = out * *p;
                return out;
            }
            WaveSum out = WaveSum::single(1.0, {0.0, 0.0}, frame);
            for (unsigned k = 0; k < e.exponent; ++k)
                out = out * std::get<WaveSum>(base);
            return out;
        }
        case K::exp: {
            const Value arg = (*this)(e.args[0]);
            const auto* p = std::get_if<Polynomial2>(&arg);
            if (!p || p->degree() > 1)
                throw EvalError("exp argument must be affine in the variables");
            const cplx c0 = p->coefficient({0, 0});
            const cplx c1 = p->coefficient({1, 0});
            const cplx c2 = p->coefficient({0, 1});
            // Cartesian terms store k with exp(i k.x), so k = -i c.
            const Vec2 k = frame == Frame::cartesian ? Vec2{-I * c1, -I * c2} : Vec2{c1, c2};
            return WaveSum::single(std::exp(c0), k, frame);
        }
        }
        throw EvalError("unknown expression node");
    }
};

} // namespace

Expression parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

std::string format_double(double d)
{
    if (d == 0.0)
        d = 0.0; // drop the sign of -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, ptr);
}

std::string format_complex(cplx c)
{
    const double re = c.real(), im = c.imag();
    if (im == 0.0)
        return re < 0.0 ? "(" + format_double(re) + ")" : format_double(re);
    if (re == 0.0)
        return im < 0.0 ? "(" + format_double(im) + "i)" : format_double(im) + "i";
    return "(" + format_double(re) + (im < 0.0 ? "-" : "+") + format_double(std::abs(im)) + "i)";
}

std::string to_string(const Expr& e)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::literal:
        if (e.value.imag() == 0.0 && e.value.real() >= 0.0)
            return format_double(e.value.real());
        if (e.value.real() == 0.0 && e.value.imag() >= 0.0)
            return format_double(e.value.imag()) + "i";
        return format_complex(e.value);
    case K::variable: return std::string(name_of(e.var));
    case K::neg: return "(-" + to_string(e.args[0]) + ")";
    case K::add: return "(" + to_string(e.args[0]) + " + " + to_string(e.args[1]) + ")";
    case K::sub: return "(" + to_string(e.args[0]) + " - " + to_string(e.args[1]) + ")";
    case K::mul: return "(" + to_string(e.args[0]) + " * " + to_string(e.args[1]) + ")";
    case K::star: return "(" + to_string(e.args[0]) + " ** " + to_string(e.args[1]) + ")";
    case K::pow: return "(" + to_string(e.args[0]) + "^" + std::to_string(e.exponent) + ")";
    case K::exp: return "exp(" + to_string(e.args[0]) + ")";
    }
    return "?";
}

Value evaluate(const Expression& e, const DeformationParams& params)
{
    return Evaluator{params, e.frame}(e.root);
}

cplx evaluate_constant(std::string_view text)
{
    const auto e = parse_expression(text);
    const auto v = evaluate(e, make_params(0.0, 0.0, 0.0, 0.0));
    const auto* p = std::get_if<Polynomial2>(&v);
    if (!p || p->degree() > 0)
        throw EvalError("expected a constant, got '" + std::string(text) + "'");
    return p->coefficient({0, 0});
}

namespace {

std::string join_terms(const std::vector<std::string>& parts)
{
    if (parts.empty())
        return "0";
    std::string out = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k)
        out += " + " + parts[k];
    return out;
}

std::string monomial_text(Monomial m, Frame frame)
{
    const char* v0 = frame == Frame::cartesian ? "x1" : "z";
    const char* v1 = frame == Frame::cartesian ? "x2" : "zbar";
    std::string out;
    auto append = [&](const char* name, unsigned n) {
        if (n == 0)
            return;
        if (!out.empty())
            out += "*";
        out += name;
        if (n > 1)
            out += "^" + std::to_string(n);
    };
    append(v0, m.first);
    append(v1, m.second);
    return out;
}

} // namespace

std::string format_value(const Value& v)
{
    std::vector<std::string> parts;
    if (const auto* p = std::get_if<Polynomial2>(&v)) {
        for (const auto& [m, c] : p->terms()) {
            const std::string mono = monomial_text(m, p->frame());
            if (mono.empty())
                parts.push_back(format_complex(c));
            else if (c == 1.0)
                parts.push_back(mono);
            else
                parts.push_back(format_complex(c) + "*" + mono);
        }
        return join_terms(parts);
    }
    const auto& w = std::get<WaveSum>(v);
    const bool cart = w.frame() == Frame::cartesian;
    for (const auto& t : w.terms()) {
        const cplx c0 = cart ? I * t.wavevector[0] : t.wavevector[0];
        const cplx c1 = cart ? I * t.wavevector[1] : t.wavevector[1];
        std::vector<std::string> lin;
        if (c0 != 0.0)
            lin.push_back(format_complex(c0) + (cart ? "*x1" : "*z"));
        if (c1 != 0.0)
            lin.push_back(format_complex(c1) + (cart ? "*x2" : "*zbar"));
        if (lin.empty())
            parts.push_back(format_complex(t.amplitude));
        else
            parts.push_back(format_complex(t.amplitude) + "*exp(" + join_terms(lin) + ")");
    }
    return join_terms(parts);
}

} // namespace ncstar
