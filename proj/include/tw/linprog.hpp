#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tw/rational.hpp"

namespace tw::lp {

enum class Rel { Le, Eq, Ge };
enum class Sense { Min, Max };

struct Constraint {
    std::vector<Rational> a;
    Rel rel = Rel::Le;
    Rational b;
};

/// Dense exact-rational linear program. Every coefficient vector must have
/// length n(); variables are free unless flagged nonnegative.
struct LinearProgram {
    Sense sense = Sense::Min;
    std::vector<Rational> c;
    std::vector<Constraint> rows;
    std::vector<bool> nonneg;

    explicit LinearProgram(Sense s = Sense::Min, int nvars = 0)
        : sense(s), c(nvars), nonneg(nvars, false) {}

    int n() const { return static_cast<int>(c.size()); }
    int m() const { return static_cast<int>(rows.size()); }

    void add_row(std::vector<Rational> a, Rel rel, Rational b) {
        rows.push_back(Constraint{std::move(a), rel, std::move(b)});
    }

    bool well_formed(std::string* why = nullptr) const;
};

enum class Status { Optimal, Infeasible, Unbounded };

/// Exact solver outcome with verifiable certificates.
///  - Optimal: primal point x, dual multipliers y (one per row), equal
///    objective values.
///  - Infeasible: Farkas vector over the rows proving the contradiction.
///  - Unbounded: feasible point x plus an improving ray.
struct Outcome {
    Status status = Status::Optimal;
    Rational value;
    std::vector<Rational> x;
    std::vector<Rational> y;
    std::vector<Rational> farkas;
    std::vector<Rational> ray;
};

/// Two-phase dense simplex with Bland's rule; deterministic for fixed input.
Outcome solve(const LinearProgram& lp);

struct FmResult {
    enum class Kind { Finite, PlusInf, MinusInf, Infeasible };
    Kind kind = Kind::Finite;
    Rational value;

    bool finite() const { return kind == Kind::Finite; }
};

class FmSizeError : public std::runtime_error {
  public:
    explicit FmSizeError(const std::string& what) : std::runtime_error(what) {}
};

/// Independent oracle: optimal value by Fourier-Motzkin elimination.
/// Guarded to at most 8 variables (doubly exponential growth).
FmResult fm_value(const LinearProgram& lp);

/// Checks the certificates embedded in an outcome against the program,
/// exactly: feasibility, dual signs, and zero duality gap.
bool verify_certificate(const LinearProgram& lp, const Outcome& outcome);

/// True when solve() and fm_value() agree (status and exact value).
bool outcomes_agree(const LinearProgram& lp, const Outcome& oc, const FmResult& fm);

}  // namespace tw::lp
