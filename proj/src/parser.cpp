#include "tropism/parser.hpp"

#include <cctype>
#include <optional>

namespace tropism {

namespace {

enum class Tok { Number, Ident, Op, End };

struct Token
{
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n')
                advance(1);
            continue;
        }
        const int l = line;
        const int cl = col;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            bool dot = false;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || (s[j] == '.' && !dot))) {
                dot = dot || s[j] == '.';
                ++j;
            }
            std::string text = s.substr(i, j - i);
            if (text == ".")
                throw ParseError("malformed number", l, cl);
            out.push_back({Tok::Number, text, l, cl});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            std::string text = s.substr(i, j - i);
            if (text == "root" && s.compare(j, 6, "-order") == 0) {
                text = "root-order";
                j += 6;
            }
            out.push_back({Tok::Ident, text, l, cl});
            advance(j - i);
            continue;
        }
        if (std::string("+-*/^();:,").find(c) != std::string::npos) {
            out.push_back({Tok::Op, std::string(1, c), l, cl});
            advance(1);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

Rational parse_decimal(const std::string& text)
{
    const auto dot = text.find('.');
    if (dot == std::string::npos)
        return Rational(BigInt(text));
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k)
        scale *= 10;
    const BigInt w = whole.empty() ? BigInt(0) : BigInt(whole);
    const BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    return Rational(w * scale + f, scale);
}

bool is_indexed_name(const std::string& s, std::size_t& index)
{
    if (s.size() < 2 || s[0] != 'x')
        return false;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    if (s.size() > 2 && s[1] == '0')
        return false;
    if (s.size() > 7)
        return false;
    index = std::stoul(s.substr(1));
    return true;
}

class Parser
{
public:
    Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    CyclotomicSystem system()
    {
        scan_headers();
        std::vector<CyclotomicPoly> polys;
        while (peek().kind != Tok::End) {
            if (is_header_start()) {
                header();
                continue;
            }
            CyclotomicPoly p = expr();
            expect(";");
            polys.push_back(std::move(p));
        }
        if (polys.empty())
            throw ParseError("empty system", peek().line, peek().column);
        return CyclotomicSystem(nvars_, std::move(polys), names_.empty() ? default_variable_names(nvars_) : names_);
    }

    Cyclotomic coefficient(long order)
    {
        root_order_ = order;
        nvars_ = 0;
        coefficient_only_ = true;
        CyclotomicPoly p = expr();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        if (p.is_zero())
            return Cyclotomic(0L);
        return p.terms().begin()->second;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().line, peek().column); }

    bool is_op(const char* op, std::size_t k = 0) const { return peek(k).kind == Tok::Op && peek(k).text == op; }

    void expect(const char* op)
    {
        if (!is_op(op))
            fail(std::string("expected '") + op + "'" + (peek().kind == Tok::End ? " before end of input" : ", got '" + peek().text + "'"));
        next();
    }

    bool is_header_start() const
    {
        return peek().kind == Tok::Ident && (peek().text == "vars" || peek().text == "root-order") && is_op(":", 1);
    }

    // Headers fix the variable set; without one, scan ahead for the largest xK.
    void scan_headers()
    {
        for (std::size_t k = 0; k + 1 < toks_.size(); ++k) {
            if (toks_[k].kind == Tok::Ident && toks_[k].text == "vars" && toks_[k + 1].text == ":") {
                have_vars_ = true;
                break;
            }
        }
        if (have_vars_)
            return;
        for (const auto& t : toks_) {
            std::size_t index;
            if (t.kind == Tok::Ident && is_indexed_name(t.text, index))
                nvars_ = std::max(nvars_, index + 1);
        }
    }

    void header()
    {
        const Token name = next();
        next();  // ':'
        if (name.text == "vars") {
            if (seen_polynomial_)
                throw ParseError("vars header must come before the polynomials", name.line, name.column);
            if (!names_.empty())
                throw ParseError("duplicate vars header", name.line, name.column);
            while (true) {
                if (peek().kind != Tok::Ident)
                    fail("expected a variable name");
                const std::string v = next().text;
                if (v == "u" || v == "i")
                    fail("'" + v + "' is reserved");
                if (std::find(names_.begin(), names_.end(), v) != names_.end())
                    fail("duplicate variable '" + v + "'");
                names_.push_back(v);
                if (is_op(","))
                    next();
                else
                    break;
            }
            expect(";");
            nvars_ = names_.size();
            return;
        }
        if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
            fail("root-order expects a positive integer");
        const long m = std::stol(next().text);
        if (m < 1)
            fail("root-order expects a positive integer");
        root_order_ = m;
        expect(";");
    }

    CyclotomicPoly constant(const Cyclotomic& c) const { return CyclotomicPoly::constant(nvars_, c); }

    CyclotomicPoly expr()
    {
        seen_polynomial_ = true;
        bool negate = false;
        if (is_op("+") || is_op("-"))
            negate = next().text == "-";
        CyclotomicPoly acc = term();
        if (negate)
            acc = -acc;
        while (is_op("+") || is_op("-")) {
            const bool minus = next().text == "-";
            CyclotomicPoly t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    CyclotomicPoly term()
    {
        CyclotomicPoly acc = factor();
        while (is_op("*") || is_op("/")) {
            const bool divide = next().text == "/";
            const Token at = peek();
            CyclotomicPoly f = factor();
            if (divide) {
                if (f.size() != 1)
                    throw ParseError("can only divide by a single term", at.line, at.column);
                f = invert(f, at);
            }
            acc = acc * f;
        }
        return acc;
    }

    CyclotomicPoly invert(const CyclotomicPoly& f, const Token& at) const
    {
        if (f.size() != 1)
            throw ParseError("negative power of a sum", at.line, at.column);
        const auto& [e, c] = *f.terms().begin();
        Exponent neg(e.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            neg[i] = -e[i];
        return CyclotomicPoly::monomial(neg, c.inverse());
    }

    CyclotomicPoly factor()
    {
        const Token at = peek();
        CyclotomicPoly base = primary();
        if (!is_op("^"))
            return base;
        next();
        bool paren = false;
        if (is_op("(")) {
            paren = true;
            next();
        }
        bool negative = false;
        if (is_op("-") || is_op("+"))
            negative = next().text == "-";
        if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
            fail("malformed exponent");
        const std::string digits = next().text;
        if (digits.size() > 6)
            fail("malformed exponent: too large");
        const long k = std::stol(digits);
        if (paren)
            expect(")");
        if (negative)
            base = invert(base, at);
        if (base.size() == 1) {
            const auto& [e, c] = *base.terms().begin();
            Exponent scaled(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                scaled[i] = checked_mul(e[i], k);
            return CyclotomicPoly::monomial(scaled, c.pow(k));
        }
        return base.pow(static_cast<unsigned>(k));
    }

    CyclotomicPoly primary()
    {
        const Token t = peek();
        if (t.kind == Tok::Number) {
            next();
            return constant(Cyclotomic(parse_decimal(t.text)));
        }
        if (is_op("(")) {
            next();
            CyclotomicPoly e = expr();
            expect(")");
            return e;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (t.text == "i")
                return constant(Cyclotomic::root_of_unity(1, 4));
            if (t.text == "u") {
                if (root_order_ == 0)
                    throw ParseError("'u' needs a root-order header", t.line, t.column);
                return constant(Cyclotomic::root_of_unity(1, root_order_));
            }
            if (coefficient_only_)
                throw ParseError("unexpected variable '" + t.text + "' in a coefficient", t.line, t.column);
            std::size_t index = 0;
            if (have_vars_) {
                auto it = std::find(names_.begin(), names_.end(), t.text);
                if (it == names_.end())
                    throw ParseError("unknown variable '" + t.text + "'", t.line, t.column);
                index = static_cast<std::size_t>(it - names_.begin());
            } else if (!is_indexed_name(t.text, index)) {
                throw ParseError("unknown variable '" + t.text + "'", t.line, t.column);
            }
            return CyclotomicPoly::variable(nvars_, index);
        }
        if (t.kind == Tok::End)
            fail("unexpected end of input");
        fail("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t nvars_ = 0;
    std::vector<std::string> names_;
    bool have_vars_ = false;
    bool seen_polynomial_ = false;
    bool coefficient_only_ = false;
    long root_order_ = 0;
};

} // namespace

CyclotomicSystem parse_system(const std::string& text)
{
    Parser p(lex(text));
    return p.system();
}

Cyclotomic parse_coefficient(const std::string& text, long root_order)
{
    Parser p(lex(text));
    return p.coefficient(root_order);
}

std::string format_monomial(const Exponent& e, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += names[i];
        if (e[i] != 1)
            out += "^" + std::to_string(e[i]);
    }
    return out;
}

} // namespace tropism
