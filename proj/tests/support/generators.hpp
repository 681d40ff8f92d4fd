#pragma once

#include "cashctl/model.hpp"

#include <random>

namespace cashctl::testgen {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
long long uniform_int(Rng& rng, long long lo, long long hi);

/// k / scale for k uniform in [lo * scale, hi * scale].
Rational uniform_decimal(Rng& rng, long long lo, long long hi, long long scale);

/// Fraction k / 1000 with k in [0, 1000].
Fraction uniform_fraction(Rng& rng);

struct LedgerOptions {
    int periods{3};
    /// Draw random transfer coefficients; when false every flow settles in-period.
    bool with_stocks{true};
    /// Occasionally drop a flow from one period to exercise zero matching.
    bool sparse_flows{true};
    /// Attach investment, debt and cash balances derived flow by flow.
    bool with_financing{true};
};

/// Balanced multi-period ledger: every period satisfies the production-account
/// identity, stocks lie within their flows, and cash balances come from
/// per-flow cash collection (flow - closing stock + opening stock).
Ledger random_ledger(Rng& rng, const LedgerOptions& options = {});

/// Two-period pair where the second period is a random perturbation of the
/// first and its result follows from the identity.
std::pair<PeriodAccount, PeriodAccount> random_period_pair(Rng& rng);

/// Cost structure with a positive margin.
CostStructure random_cost_structure(Rng& rng);

/// Lag profile with integer months in 0..3, integer sales rate, and
/// optionally modulation, anticipation and a cycle capacity.
CashLagProfile random_lag_profile(Rng& rng, const CostStructure& cs);

}  // namespace cashctl::testgen
