#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tw/market.hpp"
#include "tw/rational.hpp"

namespace tw {

class PayoffError : public std::runtime_error {
  public:
    explicit PayoffError(const std::string& what) : std::runtime_error(what) {}
};

/// Expression over rational literals and coordinates S[i] with +, -, *,
/// abs, max, min and ind(comparison). Total on rationals: no division
/// operator, only "p/q" literals.
struct Payoff {
    struct Expr;
    using ExprPtr = std::shared_ptr<const Expr>;

    enum class Op {
        Literal,
        Coord,
        Add,
        Sub,
        Mul,
        Neg,
        Abs,
        Max,
        Min,
        IndLt,
        IndLe,
        IndGt,
        IndGe,
        IndEq,
        IndNe,
    };

    struct Expr {
        Op op;
        Rational literal;   // Literal
        int coord = 0;      // Coord
        ExprPtr lhs, rhs;   // children (rhs unused for unary ops)
    };

    ExprPtr root;
    std::string source;

    int maturity() const;  // largest coordinate index used, 0 if none
    Rational evaluate(const Trajectory& trajectory) const;

    static Payoff parse(const std::string& text);
    static Payoff constant(const Rational& value);
    static Payoff coordinate(int index);
};

/// Payoff materialized against an instance: one exact value per class.
struct PayoffValues {
    std::vector<Rational> values;
    int maturity = 0;

    bool nonnegative() const;
    PayoffValues abs() const;
    PayoffValues negate() const;
};

/// Per-class evaluation. Coordinates must stay within the horizon
/// max(tree depth, maturity cap); beyond it the instance carries no
/// structure the payoff could depend on.
PayoffValues evaluate_payoff(const Payoff& payoff, const Instance& instance);

PayoffValues payoff_from_values(std::vector<Rational> values, int maturity);

}  // namespace tw
