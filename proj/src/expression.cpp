#include "folforge/expression.hpp"

#include <cctype>

namespace folforge {

std::optional<int> VarTable::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return (int)i;
    return std::nullopt;
}

VarTable ambient_vars(const std::string& ambient) {
    VarTable t;
    t.ambient = ambient;
    auto xs = [&](int n) {
        for (int i = 0; i < n; ++i) t.names.push_back("x" + std::to_string(i));
    };
    if (ambient == "P2") xs(3);
    else if (ambient == "P3") xs(4);
    else if (ambient == "P4" || ambient == "Q3") xs(5);
    else if (ambient == "P1P1") t.names = {"x0", "x1", "y0", "y1"};
    else if (ambient == "ST") t.names = {"s", "t"};
    else fail("UnsupportedAmbient", "unknown ambient '" + ambient + "'");
    t.ngeom = (int)t.names.size();
    t.names.push_back("eps");
    return t;
}

bool GradedValue::is_zero() const {
    for (auto& [q, f] : parts)
        if (!f.is_zero()) return false;
    return true;
}

bool GradedValue::pure_degree(int* q) const {
    int found = -1;
    for (auto& [d, f] : parts) {
        if (f.is_zero()) continue;
        if (found >= 0) return false;
        found = d;
    }
    if (found < 0) return false;
    if (q) *q = found;
    return true;
}

PolyForm GradedValue::pure(int expect_degree) const {
    for (auto& [d, f] : parts)
        if (!f.is_zero() && d != expect_degree)
            fail("GradingError", "expression mixes form degrees");
    auto it = parts.find(expect_degree);
    if (it != parts.end()) return it->second;
    return PolyForm(nvars, ngeom, expect_degree);
}

MultiPoly GradedValue::poly() const {
    for (auto& [d, f] : parts)
        if (d != 0 && !f.is_zero()) fail("GradingError", "expected a polynomial, found a form");
    auto it = parts.find(0);
    return it == parts.end() ? MultiPoly(nvars) : it->second.coeff(0);
}

namespace {

struct Token {
    enum class Kind { number, ident, op, end };
    Kind kind;
    std::string text;
    int line, col;
};

struct Lexer {
    std::string src;
    size_t pos = 0;
    int line = 1, col = 1;
    std::vector<Token> tokens;

    [[noreturn]] void err(const std::string& msg, int l, int c) {
        fail("SyntaxError", msg + " at " + std::to_string(l) + ":" + std::to_string(c));
    }

    void run() {
        while (pos < src.size()) {
            char ch = src[pos];
            if (ch == '\n') {
                ++line;
                col = 1;
                ++pos;
                continue;
            }
            if (std::isspace((unsigned char)ch)) {
                ++col;
                ++pos;
                continue;
            }
            int l = line, c = col;
            if (std::isdigit((unsigned char)ch)) {
                std::string num;
                while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                    num += src[pos++];
                    ++col;
                }
                tokens.push_back({Token::Kind::number, num, l, c});
                continue;
            }
            if (std::islower((unsigned char)ch)) {
                std::string id;
                while (pos < src.size() &&
                       (std::islower((unsigned char)src[pos]) ||
                        std::isdigit((unsigned char)src[pos]))) {
                    id += src[pos++];
                    ++col;
                }
                tokens.push_back({Token::Kind::ident, id, l, c});
                continue;
            }
            if (std::string("+-*/^()").find(ch) != std::string::npos) {
                tokens.push_back({Token::Kind::op, std::string(1, ch), l, c});
                ++pos;
                ++col;
                continue;
            }
            err(std::string("unexpected character '") + ch + "'", l, c);
        }
        tokens.push_back({Token::Kind::end, "", line, col});
    }
};

struct Parser {
    const VarTable& vars;
    std::vector<Token> toks;
    size_t at = 0;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }
    bool is_op(const std::string& o) const {
        return peek().kind == Token::Kind::op && peek().text == o;
    }

    [[noreturn]] void err(const char* code, const std::string& msg) {
        fail(code, msg + " at " + std::to_string(peek().line) + ":" + std::to_string(peek().col));
    }

    GradedValue zero() const {
        GradedValue v;
        v.nvars = vars.nvars();
        v.ngeom = vars.ngeom;
        return v;
    }

    GradedValue of_form(PolyForm f) {
        GradedValue v = zero();
        if (!f.is_zero()) v.parts.emplace(f.degree(), std::move(f));
        return v;
    }

    GradedValue add(GradedValue a, const GradedValue& b, bool sub) {
        for (auto& [d, f] : b.parts) {
            PolyForm g = sub ? -f : f;
            auto it = a.parts.find(d);
            if (it == a.parts.end()) a.parts.emplace(d, std::move(g));
            else {
                it->second = it->second + g;
                if (it->second.is_zero()) a.parts.erase(it);
            }
        }
        return a;
    }

    GradedValue mul(const GradedValue& a, const GradedValue& b) {
        GradedValue out = zero();
        for (auto& [da, fa] : a.parts)
            for (auto& [db, fb] : b.parts) {
                PolyForm w = wedge(fa, fb);
                if (w.is_zero()) continue;
                auto it = out.parts.find(w.degree());
                if (it == out.parts.end()) out.parts.emplace(w.degree(), std::move(w));
                else {
                    it->second = it->second + w;
                    if (it->second.is_zero()) out.parts.erase(it);
                }
            }
        return out;
    }

    GradedValue expr() {
        bool neg = false;
        if (is_op("+") || is_op("-")) neg = take().text == "-";
        GradedValue acc = term();
        if (neg) acc = add(zero(), acc, true);
        while (is_op("+") || is_op("-")) {
            bool sub = take().text == "-";
            acc = add(std::move(acc), term(), sub);
        }
        return acc;
    }

    GradedValue term() {
        GradedValue acc = factor();
        while (is_op("*")) {
            take();
            acc = mul(acc, factor());
        }
        return acc;
    }

    GradedValue factor() {
        GradedValue base = primary();
        while (is_op("^")) {
            take();
            if (peek().kind != Token::Kind::number) err("SyntaxError", "exponent must be a number");
            long e = std::stol(take().text);
            int q;
            if (!base.is_zero() && (!base.pure_degree(&q) || q != 0))
                err("GradingError", "exponent applied to a differential form");
            MultiPoly p = base.is_zero() ? MultiPoly(vars.nvars()) : base.parts.at(0).coeff(0);
            base = of_form(PolyForm::from_poly(p.pow((unsigned)e), vars.ngeom));
        }
        return base;
    }

    GradedValue primary() {
        if (peek().kind == Token::Kind::number) {
            long num = std::stol(take().text);
            long den = 1;
            if (is_op("/")) {
                take();
                if (peek().kind != Token::Kind::number)
                    err("SyntaxError", "denominator must be a number");
                den = std::stol(take().text);
                if (den == 0) err("SyntaxError", "zero denominator");
            }
            return of_form(PolyForm::from_poly(
                MultiPoly::constant(vars.nvars(), Scalar::of_fraction(num, den)), vars.ngeom));
        }
        if (peek().kind == Token::Kind::ident) {
            Token t = take();
            if (t.text == "i")
                return of_form(PolyForm::from_poly(MultiPoly::constant(vars.nvars(), Scalar::i()),
                                                   vars.ngeom));
            if (auto idx = vars.index_of(t.text))
                return of_form(PolyForm::from_poly(MultiPoly::variable(vars.nvars(), *idx),
                                                   vars.ngeom));
            if (t.text.size() > 1 && t.text[0] == 'd') {
                auto idx = vars.index_of(t.text.substr(1));
                if (idx && *idx < vars.ngeom) {
                    PolyForm f(vars.nvars(), vars.ngeom, 1);
                    f.add(1u << *idx, MultiPoly::constant(vars.nvars(), Scalar(1)));
                    return of_form(std::move(f));
                }
                if (idx)
                    fail("GradingError", "no differential of the deformation parameter (" +
                                             t.text + " at " + std::to_string(t.line) + ":" +
                                             std::to_string(t.col) + ")");
            }
            fail("UnknownIdentifier", "'" + t.text + "' is not declared at " +
                                          std::to_string(t.line) + ":" + std::to_string(t.col));
        }
        if (is_op("(")) {
            take();
            GradedValue v = expr();
            if (!is_op(")")) err("SyntaxError", "expected ')'");
            take();
            return v;
        }
        err("SyntaxError", "expected a scalar, variable, differential or '('");
    }
};

} // namespace

GradedValue parse_expression(const std::string& text, const VarTable& vars) {
    Lexer lex{text, 0, 1, 1, {}};
    lex.run();
    Parser p{vars, std::move(lex.tokens)};
    GradedValue v = p.expr();
    if (p.peek().kind != Token::Kind::end) p.err("SyntaxError", "trailing input");
    return v;
}

std::string print_value(const GradedValue& v, const VarTable& vars) {
    if (v.is_zero()) return "0";
    std::string out;
    for (auto& [d, f] : v.parts) {
        if (f.is_zero()) continue;
        std::string piece = form_str(f, vars.names);
        if (!out.empty()) out += " + ";
        out += piece;
    }
    return out;
}

} // namespace folforge
