#pragma once

#include "cashctl/model.hpp"

#include <optional>
#include <vector>

namespace cashctl {

/// Which closed form produced the solvency threshold.
enum class BindingFormula {
    /// (CFD - MCFD + CVA - CVD + ED) / MUSCV
    Standard,
    /// (anticipated cash outlays + deferred receipts) / p: the threshold is
    /// reached before the first supplier payment falls due.
    AnticipatedCap,
    /// (total cash charges + deferred receipts) / p: every charge of the cycle
    /// is already paid when the threshold is reached.
    TotalChargesCap,
};

struct ThresholdComponents {
    Money fixed_cash;             // CFD
    Money modulated_fixed;        // MCFD actually deducted (0 when the deferral does not qualify)
    Money anticipated_variable;   // CVA
    Money deferred_variable;      // CVD
    Money deferred_receipts;      // ED
    UnitValue effective_margin;   // MUSCV after the anticipation adjustment
};

struct ThresholdReport {
    Quantity liquidity_threshold;
    Quantity solvency_threshold;
    BindingFormula binding{BindingFormula::Standard};
    ThresholdComponents components;

    /// Threshold with every cash fixed charge paid up front.
    Quantity pre_modulation_threshold;
    bool modulation_applied{false};

    Quantity standard_value;
    Quantity anticipated_cap_value;
    std::optional<Quantity> total_charges_cap_value;

    /// Months of steady sales needed to reach the threshold; empty without sales.
    std::optional<Rational> solvency_month;
};

/// Cash fixed charges over the nominal unit margin. Throws NonPositiveMargin.
Quantity liquidity_threshold(const CostStructure& cs);

/// Variable costs whose payment is pushed back by supplier credit (CVD).
/// Only the part of the unit cost still paid per unit is deferred, so a
/// SingleInputAllUpfront anticipation removes its component first.
Money supplier_credit_offset(const CashLagProfile& profile, const CostStructure& cs);

/// Receipts pushed back by customer credit (ED).
Money customer_credit_delay(const CashLagProfile& profile, const CostStructure& cs);

/// Variable cost still paid per unit sold after the anticipation adjustment.
UnitValue cash_variable_cost(const CashLagProfile& profile, const CostStructure& cs);

/// Solvency threshold for steady sales, with modulation, anticipation, both
/// credit offsets and the two caps applied. Throws NonPositiveMargin and,
/// when a cycle capacity is given and the cycle never pays for itself,
/// InfeasibleCycle.
ThresholdReport solvency_threshold(const CostStructure& cs, const CashLagProfile& profile);

struct MonthlyCashPoint {
    int month{0};
    Money inflow;
    Money outflow;
    Money cumulative;
    Quantity units_sold;
};

struct SeasonalSolvency {
    /// Month after which cumulative cash never goes negative again.
    int month{0};
    Quantity cumulative_units;
    /// First month with non-negative cumulative cash, for diagnostics.
    int first_crossing_month{0};
    std::vector<MonthlyCashPoint> series;
};

/// Month-granular cash series for a seasonal sales pattern. Sales of month i
/// are spread uniformly over the month and settle after the credit delays;
/// fixed charges go out at month 0 except the modulated part, paid at the
/// modulation month. Throws NeverSolvent when cash is still negative at the
/// horizon and InvalidInput for a horizon under 12 months.
SeasonalSolvency seasonal_solvency(const CostStructure& cs, const CashLagProfile& profile, int horizon_months);

/// The same month-granular series without the solvency search.
std::vector<MonthlyCashPoint> monthly_cash_series(const CostStructure& cs, const CashLagProfile& profile,
                                                  int horizon_months);

}  // namespace cashctl
