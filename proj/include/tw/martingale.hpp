#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tw/market.hpp"
#include "tw/payoff.hpp"
#include "tw/superhedge.hpp"

namespace tw {

/// Probability on the trajectory classes whose coordinate process is a
/// martingale: nonnegative weights summing to one, with the one-period
/// fairness identity holding exactly at every node carrying positive mass.
struct MartingaleMeasure {
    std::vector<Rational> weights;  // per class
};

struct MeasureConstruction {
    bool ok = false;
    MartingaleMeasure measure;
    int type2_node = -1;  // blocking node when construction fails
};

/// Binomial walk from the root: flat and type-I nodes put full conditional
/// mass on the constant child; up-down nodes split between the closest
/// child above and the closest below, with the unique fair probabilities.
/// Reaching a type-II node with positive mass fails the construction.
MeasureConstruction construct_measure(const Instance& instance);

/// Exact verification: simplex constraints plus per-node fairness at every
/// positive-mass node of every depth.
bool verify_martingale(const Instance& instance, const MartingaleMeasure& measure);

Rational expectation(const Instance& instance, const MartingaleMeasure& measure,
                     const PayoffValues& payoff);

/// Best expectation over measures that are fair at every node the hedging
/// horizon can see (the exact dual of the superhedging program). With
/// `restrict_off_null` the measure must vanish on the null set, matching
/// sigma_bar; without it, it matches the superhedge with no null relief.
PriceResult dual_price(const Instance& instance, const PayoffValues& payoff,
                       bool restrict_off_null);

/// Exact inequality chain for a verified measure:
///   E_Q[f] <= sigma_bar(f)   and   E_Q[|f|] <= sigma_bar(|f|) <= norm(f).
struct DualityBoundsReport {
    bool measure_verified = false;
    bool pass = false;
    std::string violated;  // human-readable description of the broken link
    Rational e_f, e_abs;
    PriceResult sigma_f, sigma_abs;
    Rational norm_f;
};
DualityBoundsReport check_duality_bounds(const Instance& instance,
                                         const MartingaleMeasure& measure,
                                         const PayoffValues& payoff);

}  // namespace tw
