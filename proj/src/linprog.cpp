#include "tw/linprog.hpp"

#include <algorithm>
#include <cassert>
#include <bit>
#include <map>
#include <utility>

namespace tw::lp {

bool LinearProgram::well_formed(std::string* why) const {
    for (const auto& row : rows) {
        if (static_cast<int>(row.a.size()) != n()) {
            if (why) *why = "constraint length differs from variable count";
            return false;
        }
    }
    if (static_cast<int>(nonneg.size()) != n()) {
        if (why) *why = "sign vector length differs from variable count";
        return false;
    }
    return true;
}

namespace {

// Standard form: minimize c over columns, A x = b with b >= 0, x >= 0.
// Columns carry their provenance so solutions map back to the original
// variables and rows.
struct StdForm {
    int m = 0;
    int ncols = 0;
    std::vector<std::vector<Rational>> A;  // m x ncols
    std::vector<Rational> b;
    std::vector<Rational> c;
    std::vector<int> col_var;   // original variable index, -1 for slack
    std::vector<int> col_sgn;   // +-1 for variable copies, 0 for slack
    std::vector<int> row_sign;  // +-1 applied to the original row
};

StdForm build_std(const LinearProgram& lp) {
    const int n = lp.n();
    StdForm sf;
    sf.m = lp.m();
    // Column layout: for each variable a + copy, plus a - copy when free,
    // then one slack per inequality row.
    std::vector<int> pos_col(n), neg_col(n, -1);
    for (int j = 0; j < n; ++j) {
        pos_col[j] = sf.ncols++;
        sf.col_var.push_back(j);
        sf.col_sgn.push_back(1);
        if (!lp.nonneg[j]) {
            neg_col[j] = sf.ncols++;
            sf.col_var.push_back(j);
            sf.col_sgn.push_back(-1);
        }
    }
    std::vector<int> slack_col(lp.m(), -1);
    for (int i = 0; i < lp.m(); ++i) {
        if (lp.rows[i].rel != Rel::Eq) {
            slack_col[i] = sf.ncols++;
            sf.col_var.push_back(-1);
            sf.col_sgn.push_back(0);
        }
    }
    const Rational sense_mult = lp.sense == Sense::Min ? 1 : -1;
    sf.c.assign(sf.ncols, Rational(0));
    for (int j = 0; j < n; ++j) {
        sf.c[pos_col[j]] = sense_mult * lp.c[j];
        if (neg_col[j] >= 0) sf.c[neg_col[j]] = -sense_mult * lp.c[j];
    }
    sf.A.assign(sf.m, std::vector<Rational>(sf.ncols, Rational(0)));
    sf.b.assign(sf.m, Rational(0));
    sf.row_sign.assign(sf.m, 1);
    for (int i = 0; i < lp.m(); ++i) {
        const auto& row = lp.rows[i];
        const int flip = row.b < 0 ? -1 : 1;
        sf.row_sign[i] = flip;
        for (int j = 0; j < n; ++j) {
            if (row.a[j] == 0) continue;
            sf.A[i][pos_col[j]] = flip * row.a[j];
            if (neg_col[j] >= 0) sf.A[i][neg_col[j]] = -flip * row.a[j];
        }
        if (slack_col[i] >= 0) {
            const int s = row.rel == Rel::Le ? 1 : -1;
            sf.A[i][slack_col[i]] = Rational(flip * s);
        }
        sf.b[i] = flip * row.b;
    }
    return sf;
}

// Dense tableau with explicit reduced-cost row; pivots keep everything exact.
struct Tableau {
    int m = 0;
    int ncols = 0;
    std::vector<std::vector<Rational>> t;  // m x (ncols + 1), last column = rhs
    std::vector<int> basis;
    std::vector<Rational> rc;  // reduced costs, length ncols
    Rational obj;              // current objective value

    void pivot(int r, int j) {
        const Rational piv = t[r][j];
        for (auto& v : t[r]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r || t[i][j] == 0) continue;
            const Rational f = t[i][j];
            for (int k = 0; k <= ncols; ++k) t[i][k] -= f * t[r][k];
        }
        if (rc[j] != 0) {
            const Rational f = rc[j];
            for (int k = 0; k < ncols; ++k) rc[k] -= f * t[r][k];
            obj += f * t[r][ncols];
        }
        basis[r] = j;
    }

    void rebuild_rc(const std::vector<Rational>& cost) {
        rc = cost;
        obj = 0;
        for (int i = 0; i < m; ++i) {
            const Rational cb = cost[basis[i]];
            if (cb == 0) continue;
            for (int k = 0; k < ncols; ++k) rc[k] -= cb * t[i][k];
            obj += cb * t[i][ncols];
        }
    }

    // Bland: entering = lowest eligible column with negative reduced cost,
    // leaving = min ratio, ties by lowest basis index. Returns false at
    // optimality; throws nothing; sets *unbounded_col on an unbounded step.
    bool step(const std::vector<bool>& allowed, int* unbounded_col) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j) {
            if (allowed[j] && rc[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][ncols] / t[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) {
            *unbounded_col = enter;
            return false;
        }
        pivot(leave, enter);
        *unbounded_col = -1;
        return true;
    }
};

// Solves M y = rhs for square nonsingular M by exact Gaussian elimination.
std::vector<Rational> gauss_solve(std::vector<std::vector<Rational>> M,
                                  std::vector<Rational> rhs) {
    const int k = static_cast<int>(rhs.size());
    std::vector<int> perm(k);
    for (int col = 0; col < k; ++col) {
        int pr = -1;
        for (int r = col; r < k; ++r) {
            if (M[r][col] != 0) {
                pr = r;
                break;
            }
        }
        assert(pr >= 0 && "basis matrix must be nonsingular");
        std::swap(M[col], M[pr]);
        std::swap(rhs[col], rhs[pr]);
        for (int r = col + 1; r < k; ++r) {
            if (M[r][col] == 0) continue;
            const Rational f = M[r][col] / M[col][col];
            for (int cc = col; cc < k; ++cc) M[r][cc] -= f * M[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> y(k);
    for (int r = k - 1; r >= 0; --r) {
        Rational acc = rhs[r];
        for (int cc = r + 1; cc < k; ++cc) acc -= M[r][cc] * y[cc];
        y[r] = acc / M[r][r];
    }
    (void)perm;
    return y;
}

}  // namespace

Outcome solve(const LinearProgram& lp) {
    std::string why;
    if (!lp.well_formed(&why)) throw std::invalid_argument("linear program: " + why);
    const StdForm sf = build_std(lp);
    const int m = sf.m;
    const int nstruct = sf.ncols;

    // Phase I over structural + artificial columns.
    Tableau tab;
    tab.m = m;
    tab.ncols = nstruct + m;
    tab.t.assign(m, std::vector<Rational>(tab.ncols + 1, Rational(0)));
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nstruct; ++j) tab.t[i][j] = sf.A[i][j];
        tab.t[i][nstruct + i] = 1;
        tab.t[i][tab.ncols] = sf.b[i];
        tab.basis[i] = nstruct + i;
    }
    std::vector<Rational> cost1(tab.ncols, Rational(0));
    for (int i = 0; i < m; ++i) cost1[nstruct + i] = 1;
    tab.rebuild_rc(cost1);
    std::vector<bool> allowed(tab.ncols, true);
    int ub_col = -1;
    while (tab.step(allowed, &ub_col)) {
    }
    assert(ub_col < 0 && "phase one objective is bounded below by zero");

    Outcome oc;
    if (tab.obj > 0) {
        // Farkas certificate from the phase-one multipliers.
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
        std::vector<Rational> rhs(m);
        for (int k = 0; k < m; ++k) {
            const int bc = tab.basis[k];
            for (int i = 0; i < m; ++i)
                M[k][i] = bc < nstruct ? sf.A[i][bc]
                                       : Rational(i == bc - nstruct ? 1 : 0);
            rhs[k] = cost1[bc];
        }
        const std::vector<Rational> y = gauss_solve(std::move(M), std::move(rhs));
        oc.status = Status::Infeasible;
        oc.farkas.resize(m);
        for (int i = 0; i < m; ++i) oc.farkas[i] = Rational(sf.row_sign[i]) * y[i];
        return oc;
    }

    // Drive artificials out of the basis; rows that resist are redundant.
    std::vector<bool> live(m, true);
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < nstruct) continue;
        int j = -1;
        for (int jj = 0; jj < nstruct; ++jj) {
            if (tab.t[r][jj] != 0) {
                j = jj;
                break;
            }
        }
        if (j >= 0) {
            tab.pivot(r, j);
        } else {
            live[r] = false;
        }
    }

    // Phase II tableau: live rows, structural columns only.
    Tableau t2;
    std::vector<int> live_rows;
    for (int r = 0; r < m; ++r)
        if (live[r]) live_rows.push_back(r);
    t2.m = static_cast<int>(live_rows.size());
    t2.ncols = nstruct;
    t2.t.assign(t2.m, std::vector<Rational>(nstruct + 1));
    t2.basis.resize(t2.m);
    for (int i = 0; i < t2.m; ++i) {
        const int r = live_rows[i];
        for (int j = 0; j < nstruct; ++j) t2.t[i][j] = tab.t[r][j];
        t2.t[i][nstruct] = tab.t[r][tab.ncols];
        t2.basis[i] = tab.basis[r];
    }
    t2.rebuild_rc(sf.c);
    std::vector<bool> allowed2(nstruct, true);
    ub_col = -1;
    while (t2.step(allowed2, &ub_col)) {
    }

    const int n = lp.n();
    auto to_original = [&](const std::vector<Rational>& xs) {
        std::vector<Rational> x(n, Rational(0));
        for (int col = 0; col < nstruct; ++col) {
            if (sf.col_var[col] >= 0 && xs[col] != 0)
                x[sf.col_var[col]] += Rational(sf.col_sgn[col]) * xs[col];
        }
        return x;
    };
    std::vector<Rational> xstd(nstruct, Rational(0));
    for (int i = 0; i < t2.m; ++i) xstd[t2.basis[i]] = t2.t[i][nstruct];

    if (ub_col >= 0) {
        oc.status = Status::Unbounded;
        oc.x = to_original(xstd);
        std::vector<Rational> dstd(nstruct, Rational(0));
        dstd[ub_col] = 1;
        for (int i = 0; i < t2.m; ++i) dstd[t2.basis[i]] = -t2.t[i][ub_col];
        oc.ray = to_original(dstd);
        return oc;
    }

    oc.status = Status::Optimal;
    oc.x = to_original(xstd);
    oc.value = 0;
    for (int j = 0; j < n; ++j) oc.value += lp.c[j] * oc.x[j];
    // Duals over live rows; redundant rows carry multiplier zero.
    oc.y.assign(m, Rational(0));
    if (t2.m > 0) {
        std::vector<std::vector<Rational>> M(t2.m, std::vector<Rational>(t2.m));
        std::vector<Rational> rhs(t2.m);
        for (int k = 0; k < t2.m; ++k) {
            for (int i = 0; i < t2.m; ++i) M[k][i] = sf.A[live_rows[i]][t2.basis[k]];
            rhs[k] = sf.c[t2.basis[k]];
        }
        const std::vector<Rational> y = gauss_solve(std::move(M), std::move(rhs));
        const Rational sense_mult = lp.sense == Sense::Min ? 1 : -1;
        for (int i = 0; i < t2.m; ++i)
            oc.y[live_rows[i]] = sense_mult * Rational(sf.row_sign[live_rows[i]]) * y[i];
    }
    return oc;
}

namespace {

// One inequality "coef . v <= b" over the variables plus a trailing
// objective coordinate. `anc` tracks which original rows were combined;
// by the Chernikov-Imbert criterion a row produced after k eliminations
// with more than k+1 ancestors is redundant and can be dropped.
struct FmRow {
    std::vector<Rational> coef;
    Rational b;
    std::uint64_t anc = 0;
};

void fm_normalize(FmRow* row) {
    Rational lead;
    for (const auto& c : row->coef) {
        if (c != 0) {
            lead = rational_abs(c);
            break;
        }
    }
    if (lead == 0) {
        if (row->b != 0) row->b = row->b < 0 ? Rational(-1) : Rational(1);
        return;
    }
    for (auto& c : row->coef) c /= lead;
    row->b /= lead;
}

}  // namespace

FmResult fm_value(const LinearProgram& lp) {
    std::string why;
    if (!lp.well_formed(&why)) throw std::invalid_argument("linear program: " + why);
    if (lp.n() > 8)
        throw FmSizeError("fm_value limited to 8 variables, got " +
                          std::to_string(lp.n()));
    const int n = lp.n();
    const int zi = n;  // objective coordinate
    std::vector<FmRow> rows;
    int next_anc = 0;
    auto push_le = [&](std::vector<Rational> coef, Rational b) {
        const std::uint64_t bit = next_anc < 64 ? (std::uint64_t{1} << next_anc) : 0;
        ++next_anc;
        rows.push_back(FmRow{std::move(coef), std::move(b), bit});
    };
    for (const auto& row : lp.rows) {
        std::vector<Rational> le(n + 1, Rational(0)), ge(n + 1, Rational(0));
        for (int j = 0; j < n; ++j) {
            le[j] = row.a[j];
            ge[j] = -row.a[j];
        }
        if (row.rel != Rel::Ge) push_le(le, row.b);
        if (row.rel != Rel::Le) push_le(ge, -row.b);
    }
    for (int j = 0; j < n; ++j) {
        if (!lp.nonneg[j]) continue;
        std::vector<Rational> coef(n + 1, Rational(0));
        coef[j] = -1;
        push_le(std::move(coef), Rational(0));
    }
    {
        std::vector<Rational> up(n + 1, Rational(0)), lo(n + 1, Rational(0));
        for (int j = 0; j < n; ++j) {
            up[j] = -lp.c[j];
            lo[j] = lp.c[j];
        }
        up[zi] = 1;
        lo[zi] = -1;
        push_le(std::move(up), Rational(0));  // z <= c.x
        push_le(std::move(lo), Rational(0));  // z >= c.x
    }

    const bool use_imbert = next_anc <= 64;
    std::vector<bool> eliminated(n, false);
    auto compact = [&](std::vector<FmRow>& rs) -> bool {
        std::map<std::vector<Rational>, std::pair<Rational, std::uint64_t>> best;
        for (auto& r : rs) {
            fm_normalize(&r);
            bool all_zero = true;
            for (const auto& c : r.coef)
                if (c != 0) all_zero = false;
            if (all_zero) {
                if (r.b < 0) return false;  // 0 <= negative: infeasible
                continue;
            }
            auto it = best.find(r.coef);
            if (it == best.end())
                best.emplace(r.coef, std::make_pair(r.b, r.anc));
            else if (r.b < it->second.first)
                it->second = std::make_pair(r.b, r.anc);  // tighter bound wins
        }
        rs.clear();
        for (auto& [coef, bv] : best) rs.push_back(FmRow{coef, bv.first, bv.second});
        return true;
    };
    if (!compact(rows)) return FmResult{FmResult::Kind::Infeasible, Rational(0)};

    for (int round = 0; round < n; ++round) {
        // Greedy order: eliminate the variable with the smallest pos*neg
        // pairing cost.
        int pick = -1;
        long best_cost = 0;
        for (int j = 0; j < n; ++j) {
            if (eliminated[j]) continue;
            long pos = 0, neg = 0;
            for (const auto& r : rows) {
                if (r.coef[j] > 0) ++pos;
                if (r.coef[j] < 0) ++neg;
            }
            const long cost = pos * neg + pos + neg;
            if (pick < 0 || cost < best_cost) {
                pick = j;
                best_cost = cost;
            }
        }
        eliminated[pick] = true;
        std::vector<FmRow> keep, pos, neg;
        for (auto& r : rows) {
            if (r.coef[pick] == 0)
                keep.push_back(std::move(r));
            else if (r.coef[pick] > 0)
                pos.push_back(std::move(r));
            else
                neg.push_back(std::move(r));
        }
        const int max_anc = round + 2;  // k+1 ancestors after k=round+1 eliminations
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                const std::uint64_t anc = p.anc | q.anc;
                if (use_imbert && std::popcount(anc) > max_anc) continue;
                FmRow combined;
                combined.coef.resize(n + 1);
                const Rational mp = -q.coef[pick];  // > 0
                const Rational mq = p.coef[pick];   // > 0
                for (int k = 0; k <= n; ++k)
                    combined.coef[k] = mp * p.coef[k] + mq * q.coef[k];
                combined.b = mp * p.b + mq * q.b;
                combined.anc = anc;
                keep.push_back(std::move(combined));
            }
        }
        rows = std::move(keep);
        if (rows.size() > 200000)
            throw FmSizeError("fm_value: elimination exploded");
        if (!compact(rows)) return FmResult{FmResult::Kind::Infeasible, Rational(0)};
    }

    bool has_lb = false, has_ub = false;
    Rational lb, ub;
    for (const auto& r : rows) {
        const Rational a = r.coef[zi];
        if (a > 0) {
            const Rational bound = r.b / a;
            if (!has_ub || bound < ub) ub = bound;
            has_ub = true;
        } else if (a < 0) {
            const Rational bound = r.b / a;
            if (!has_lb || bound > lb) lb = bound;
            has_lb = true;
        }
    }
    if (has_lb && has_ub && lb > ub)
        return FmResult{FmResult::Kind::Infeasible, Rational(0)};
    if (lp.sense == Sense::Min) {
        if (!has_lb) return FmResult{FmResult::Kind::MinusInf, Rational(0)};
        return FmResult{FmResult::Kind::Finite, lb};
    }
    if (!has_ub) return FmResult{FmResult::Kind::PlusInf, Rational(0)};
    return FmResult{FmResult::Kind::Finite, ub};
}

namespace {

bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != lp.n()) return false;
    for (int j = 0; j < lp.n(); ++j)
        if (lp.nonneg[j] && x[j] < 0) return false;
    for (const auto& row : lp.rows) {
        Rational lhs = 0;
        for (int j = 0; j < lp.n(); ++j) lhs += row.a[j] * x[j];
        switch (row.rel) {
            case Rel::Le:
                if (lhs > row.b) return false;
                break;
            case Rel::Eq:
                if (lhs != row.b) return false;
                break;
            case Rel::Ge:
                if (lhs < row.b) return false;
                break;
        }
    }
    return true;
}

}  // namespace

bool verify_certificate(const LinearProgram& lp, const Outcome& oc) {
    const int n = lp.n();
    const int m = lp.m();
    const bool minimize = lp.sense == Sense::Min;
    switch (oc.status) {
        case Status::Optimal: {
            if (!primal_feasible(lp, oc.x)) return false;
            if (static_cast<int>(oc.y.size()) != m) return false;
            for (int i = 0; i < m; ++i) {
                const Rel rel = lp.rows[i].rel;
                if (rel == Rel::Le && (minimize ? oc.y[i] > 0 : oc.y[i] < 0)) return false;
                if (rel == Rel::Ge && (minimize ? oc.y[i] < 0 : oc.y[i] > 0)) return false;
            }
            for (int j = 0; j < n; ++j) {
                Rational red = lp.c[j];
                for (int i = 0; i < m; ++i) red -= oc.y[i] * lp.rows[i].a[j];
                if (lp.nonneg[j]) {
                    if (minimize ? red < 0 : red > 0) return false;
                } else if (red != 0) {
                    return false;
                }
            }
            Rational primal = 0, dual = 0;
            for (int j = 0; j < n; ++j) primal += lp.c[j] * oc.x[j];
            for (int i = 0; i < m; ++i) dual += oc.y[i] * lp.rows[i].b;
            return primal == oc.value && dual == oc.value;
        }
        case Status::Infeasible: {
            if (static_cast<int>(oc.farkas.size()) != m) return false;
            for (int i = 0; i < m; ++i) {
                const Rel rel = lp.rows[i].rel;
                if (rel == Rel::Le && oc.farkas[i] > 0) return false;
                if (rel == Rel::Ge && oc.farkas[i] < 0) return false;
            }
            for (int j = 0; j < n; ++j) {
                Rational t = 0;
                for (int i = 0; i < m; ++i) t += oc.farkas[i] * lp.rows[i].a[j];
                if (lp.nonneg[j]) {
                    if (t > 0) return false;
                } else if (t != 0) {
                    return false;
                }
            }
            Rational bt = 0;
            for (int i = 0; i < m; ++i) bt += oc.farkas[i] * lp.rows[i].b;
            return bt > 0;
        }
        case Status::Unbounded: {
            if (!primal_feasible(lp, oc.x)) return false;
            if (static_cast<int>(oc.ray.size()) != n) return false;
            for (int j = 0; j < n; ++j)
                if (lp.nonneg[j] && oc.ray[j] < 0) return false;
            for (const auto& row : lp.rows) {
                Rational ad = 0;
                for (int j = 0; j < n; ++j) ad += row.a[j] * oc.ray[j];
                if (row.rel == Rel::Le && ad > 0) return false;
                if (row.rel == Rel::Eq && ad != 0) return false;
                if (row.rel == Rel::Ge && ad < 0) return false;
            }
            Rational cd = 0;
            for (int j = 0; j < n; ++j) cd += lp.c[j] * oc.ray[j];
            return minimize ? cd < 0 : cd > 0;
        }
    }
    return false;
}

bool outcomes_agree(const LinearProgram& lp, const Outcome& oc, const FmResult& fm) {
    switch (oc.status) {
        case Status::Optimal:
            return fm.kind == FmResult::Kind::Finite && fm.value == oc.value;
        case Status::Infeasible:
            return fm.kind == FmResult::Kind::Infeasible;
        case Status::Unbounded:
            return fm.kind == (lp.sense == Sense::Min ? FmResult::Kind::MinusInf
                                                      : FmResult::Kind::PlusInf);
    }
    return false;
}

}  // namespace tw::lp
