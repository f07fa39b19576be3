#include "tw/payoff.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace tw {

namespace {

using Expr = Payoff::Expr;
using ExprPtr = Payoff::ExprPtr;
using Op = Payoff::Op;

ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr literal(Rational v) {
    Expr e{Op::Literal, std::move(v), 0, nullptr, nullptr};
    return make_expr(std::move(e));
}

ExprPtr unary(Op op, ExprPtr a) {
    Expr e{op, Rational(0), 0, std::move(a), nullptr};
    return make_expr(std::move(e));
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
    Expr e{op, Rational(0), 0, std::move(a), std::move(b)};
    return make_expr(std::move(e));
}

// Recursive-descent parser:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom
//   atom   := rational | 'S' '[' int ']' | call | '(' expr ')'
//   call   := abs(e) | max(e,e) | min(e,e) | ind(e cmp e)
//   rational := int ('/' int)?
struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw PayoffError("payoff parse error at position " + std::to_string(pos) +
                          ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    std::string ident() {
        skip_ws();
        std::string out;
        while (pos < text.size() &&
               (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            out.push_back(text[pos++]);
        }
        return out;
    }

    Integer integer() {
        skip_ws();
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            digits.push_back(text[pos++]);
        if (digits.empty()) fail("expected a number");
        return Integer(digits);
    }

    ExprPtr rational_literal() {
        Integer num = integer();
        if (eat('/')) {
            Integer den = integer();
            if (den == 0) fail("zero denominator");
            return literal(Rational(num, den));
        }
        return literal(Rational(num));
    }

    ExprPtr atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 'S' && pos + 1 < text.size() && text[pos + 1] == '[') {
            pos += 2;
            Integer idx = integer();
            if (!eat(']')) fail("expected ']'");
            if (idx < 0 || idx > 1000000) fail("coordinate index out of range");
            Expr e{Op::Coord, Rational(0), static_cast<int>(idx), nullptr, nullptr};
            return make_expr(std::move(e));
        }
        const std::string name = ident();
        if (name.empty()) fail(std::string("unexpected character '") + c + "'");
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        if (name == "abs") {
            ExprPtr a = expr();
            if (!eat(')')) fail("expected ')'");
            return unary(Op::Abs, a);
        }
        if (name == "max" || name == "min") {
            ExprPtr a = expr();
            if (!eat(',')) fail("expected ',' in " + name);
            ExprPtr b = expr();
            if (!eat(')')) fail("expected ')'");
            return binary(name == "max" ? Op::Max : Op::Min, a, b);
        }
        if (name == "ind") {
            ExprPtr a = expr();
            skip_ws();
            Op op;
            if (eat('<')) {
                op = eat('=') ? Op::IndLe : Op::IndLt;
            } else if (eat('>')) {
                op = eat('=') ? Op::IndGe : Op::IndGt;
            } else if (eat('=')) {
                if (!eat('=')) fail("expected '==' in ind");
                op = Op::IndEq;
            } else if (eat('!')) {
                if (!eat('=')) fail("expected '!=' in ind");
                op = Op::IndNe;
            } else {
                fail("expected a comparison in ind");
            }
            ExprPtr b = expr();
            if (!eat(')')) fail("expected ')'");
            return binary(op, a, b);
        }
        fail("unknown function '" + name + "'");
    }

    ExprPtr factor() {
        if (eat('-')) return unary(Op::Neg, factor());
        if (eat('+')) return factor();
        return atom();
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (peek() == '*') {
            ++pos;
            e = binary(Op::Mul, e, factor());
        }
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos;
                e = binary(Op::Add, e, term());
            } else if (c == '-') {
                ++pos;
                e = binary(Op::Sub, e, term());
            } else {
                return e;
            }
        }
    }
};

int expr_maturity(const ExprPtr& e) {
    if (!e) return 0;
    int m = e->op == Op::Coord ? e->coord : 0;
    m = std::max(m, expr_maturity(e->lhs));
    return std::max(m, expr_maturity(e->rhs));
}

Rational eval_expr(const ExprPtr& e, const Trajectory& s) {
    switch (e->op) {
        case Op::Literal:
            return e->literal;
        case Op::Coord:
            return s.at(e->coord);
        case Op::Add:
            return eval_expr(e->lhs, s) + eval_expr(e->rhs, s);
        case Op::Sub:
            return eval_expr(e->lhs, s) - eval_expr(e->rhs, s);
        case Op::Mul:
            return eval_expr(e->lhs, s) * eval_expr(e->rhs, s);
        case Op::Neg:
            return -eval_expr(e->lhs, s);
        case Op::Abs:
            return rational_abs(eval_expr(e->lhs, s));
        case Op::Max:
            return std::max(eval_expr(e->lhs, s), eval_expr(e->rhs, s));
        case Op::Min:
            return std::min(eval_expr(e->lhs, s), eval_expr(e->rhs, s));
        case Op::IndLt:
            return Rational(eval_expr(e->lhs, s) < eval_expr(e->rhs, s) ? 1 : 0);
        case Op::IndLe:
            return Rational(eval_expr(e->lhs, s) <= eval_expr(e->rhs, s) ? 1 : 0);
        case Op::IndGt:
            return Rational(eval_expr(e->lhs, s) > eval_expr(e->rhs, s) ? 1 : 0);
        case Op::IndGe:
            return Rational(eval_expr(e->lhs, s) >= eval_expr(e->rhs, s) ? 1 : 0);
        case Op::IndEq:
            return Rational(eval_expr(e->lhs, s) == eval_expr(e->rhs, s) ? 1 : 0);
        case Op::IndNe:
            return Rational(eval_expr(e->lhs, s) != eval_expr(e->rhs, s) ? 1 : 0);
    }
    throw PayoffError("corrupt payoff expression");
}

}  // namespace

int Payoff::maturity() const { return expr_maturity(root); }

Rational Payoff::evaluate(const Trajectory& trajectory) const {
    if (!root) throw PayoffError("empty payoff");
    return eval_expr(root, trajectory);
}

Payoff Payoff::parse(const std::string& text) {
    Parser p(text);
    Payoff out;
    out.root = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    out.source = text;
    return out;
}

Payoff Payoff::constant(const Rational& value) {
    Payoff out;
    out.root = literal(value);
    out.source = format_rational(value);
    return out;
}

Payoff Payoff::coordinate(int index) {
    Expr e{Op::Coord, Rational(0), index, nullptr, nullptr};
    Payoff out;
    out.root = make_expr(std::move(e));
    out.source = "S[" + std::to_string(index) + "]";
    return out;
}

bool PayoffValues::nonnegative() const {
    return std::all_of(values.begin(), values.end(),
                       [](const Rational& v) { return v >= 0; });
}

PayoffValues PayoffValues::abs() const {
    PayoffValues out = *this;
    for (auto& v : out.values) v = rational_abs(v);
    return out;
}

PayoffValues PayoffValues::negate() const {
    PayoffValues out = *this;
    for (auto& v : out.values) v = -v;
    return out;
}

PayoffValues evaluate_payoff(const Payoff& payoff, const Instance& instance) {
    const int horizon = std::max(instance.depth, instance.regime.maturity_cap);
    if (payoff.maturity() > horizon)
        throw PayoffError("payoff coordinate S[" + std::to_string(payoff.maturity()) +
                          "] is beyond the horizon " + std::to_string(horizon));
    PayoffValues out;
    out.maturity = payoff.maturity();
    out.values.reserve(instance.num_classes());
    for (const auto& t : instance.classes) out.values.push_back(payoff.evaluate(t));
    return out;
}

PayoffValues payoff_from_values(std::vector<Rational> values, int maturity) {
    return PayoffValues{std::move(values), maturity};
}

}  // namespace tw
