#pragma once

#include "cashctl/model.hpp"

#include <optional>
#include <vector>

namespace cashctl {

inline constexpr int kDaysPerMonth = 30;

/// Units sold per month: either a constant rate or an explicit month list.
class SalesSchedule {
public:
    static SalesSchedule steady(Quantity units_per_month);
    /// Month i of the list is sold uniformly over days [30 i, 30 (i + 1)).
    static SalesSchedule monthly(std::vector<Quantity> units_per_month);
    /// Steady at the profile rate, or seasonal weights repeated yearly when present.
    static SalesSchedule from_profile(const CashLagProfile& profile, int horizon_months);

    [[nodiscard]] bool is_steady() const { return !months_; }
    [[nodiscard]] const Quantity& rate() const { return rate_; }
    [[nodiscard]] const std::vector<Quantity>& months() const { return *months_; }

private:
    Quantity rate_;
    std::optional<std::vector<Quantity>> months_;
};

struct DailyCashPoint {
    int day{0};
    Money inflow;
    Money outflow;
    Money cumulative;
};

struct SimulationResult {
    std::vector<DailyCashPoint> series;
    /// Exact time (days) of the first event after which cash is non-negative.
    std::optional<Rational> first_crossing_time;
    /// Exact time (days) after which cash stays non-negative to the horizon.
    std::optional<Rational> solvency_time;
    std::optional<int> solvency_day;
    /// Units whose sale happened at or before the solvency time.
    Quantity units_sold_at_solvency;
    /// Steady schedules only: rate x elapsed months at the solvency time,
    /// comparable with closed-form thresholds past the end of sales.
    std::optional<Quantity> activity_volume_at_solvency;
    Money final_cash;
    std::size_t event_count{0};
};

/// Event-level cash simulation at day resolution (30-day months). Every unit
/// sold books its receipt after the customer credit and its variable cost
/// after the supplier credit; fixed cash charges and anticipated purchases
/// leave at day 0, the modulated part at the modulation month. Sales stop at
/// the cycle capacity when one is given.
SimulationResult simulate_cash_days(const CostStructure& cs, const CashLagProfile& profile,
                                    const SalesSchedule& schedule, int horizon_days);

/// Days needed to see every flow of a capacity-bounded cycle, or nullopt when
/// sales are unbounded.
std::optional<int> cycle_length_days(const CashLagProfile& profile, const SalesSchedule& schedule);

}  // namespace cashctl
