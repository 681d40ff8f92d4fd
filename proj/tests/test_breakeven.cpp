#include "cashctl/breakeven.hpp"
#include "cashctl/error.hpp"
#include "cashctl/simulation.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace cashctl;

namespace {

CostStructure base_cost() { return CostStructure::from_parts(100000, 0, 50, 30); }

CashLagProfile steady(long long monthly_sales)
{
    CashLagProfile p;
    p.monthly_sales = monthly_sales;
    return p;
}

// Activity volume at which the day-level simulation becomes solvent for good.
Quantity oracle_volume(const CostStructure& cs, const CashLagProfile& p)
{
    Quantity threshold = solvency_threshold(cs, p).solvency_threshold;
    Rational months = threshold / p.monthly_sales + max(p.customer_credit_months, p.supplier_credit_months) +
                      p.modulation_month + Rational(3);
    int horizon = static_cast<int>((months * Rational(kDaysPerMonth)).ceil());
    SalesSchedule schedule = SalesSchedule::steady(p.monthly_sales);
    if (auto cycle = cycle_length_days(p, schedule)) horizon = std::max(horizon, *cycle);
    SimulationResult r = simulate_cash_days(cs, p, schedule, horizon);
    EXPECT_TRUE(r.activity_volume_at_solvency.has_value());
    return r.activity_volume_at_solvency.value_or(Rational(-1));
}

void expect_within_one_unit(const Quantity& a, const Quantity& b)
{
    EXPECT_LE((a - b).abs(), Rational(1)) << a.to_fixed(4) << " vs " << b.to_fixed(4);
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Parse;
}

}  // namespace

TEST(LiquidityThreshold, CashFixedOverMargin)
{
    EXPECT_EQ(liquidity_threshold(base_cost()), Rational(5000));
    expect_within_one_unit(oracle_volume(base_cost(), steady(1000)), Rational(5000));
}

TEST(LiquidityThreshold, ZeroFixedCashGivesZero)
{
    EXPECT_EQ(liquidity_threshold(CostStructure::from_parts(0, 500, 50, 30)), Rational(0));
}

TEST(LiquidityThreshold, RejectsNonPositiveMargin)
{
    EXPECT_EQ(kind_of([] { liquidity_threshold(CostStructure::from_parts(100, 0, 30, 30)); }),
              ErrorKind::NonPositiveMargin);
}

TEST(CreditOffsets, SupplierCreditIsCostTimesMonthsTimesSales)
{
    CashLagProfile p = steady(1000);
    p.supplier_credit_months = 1;
    EXPECT_EQ(supplier_credit_offset(p, base_cost()), Rational(30000));
    p.supplier_credit_months = 2;
    p.monthly_sales = 500;
    EXPECT_EQ(supplier_credit_offset(p, base_cost()), Rational(30000));
    p.supplier_credit_months = 0;
    EXPECT_EQ(supplier_credit_offset(p, base_cost()), Rational(0));
}

TEST(CreditOffsets, CustomerCreditIsPriceTimesMonthsTimesSales)
{
    CashLagProfile p = steady(1000);
    p.customer_credit_months = 1;
    EXPECT_EQ(customer_credit_delay(p, base_cost()), Rational(50000));
    p.customer_credit_months = 3;
    p.monthly_sales = 200;
    EXPECT_EQ(customer_credit_delay(p, base_cost()), Rational(30000));
    p.customer_credit_months = 0;
    EXPECT_EQ(customer_credit_delay(p, base_cost()), Rational(0));
}

TEST(SolvencyThreshold, BothCreditsStandardFormula)
{
    CashLagProfile p = steady(1000);
    p.supplier_credit_months = 1;
    p.customer_credit_months = 1;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_EQ(r.solvency_threshold, Rational(6000));
    EXPECT_EQ(r.binding, BindingFormula::Standard);
    EXPECT_EQ(r.components.deferred_variable, Rational(30000));
    EXPECT_EQ(r.components.deferred_receipts, Rational(50000));
    EXPECT_EQ(r.solvency_month, Rational(6));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(6000));
}

TEST(SolvencyThreshold, NoLagsEqualsLiquidity)
{
    ThresholdReport r = solvency_threshold(base_cost(), steady(1000));
    EXPECT_EQ(r.solvency_threshold, r.liquidity_threshold);
    EXPECT_EQ(r.solvency_threshold, Rational(5000));
}

TEST(SolvencyThreshold, WholeUnitAnticipationAddsToNumerator)
{
    CashLagProfile p = steady(1000);
    p.anticipated_variable = 40000;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_EQ(r.solvency_threshold, Rational(7000));
    EXPECT_EQ(r.components.effective_margin, Rational(20));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(7000));
}

TEST(SolvencyThreshold, SingleInputUpfrontRaisesCashMargin)
{
    // the upfront input no longer leaves cash per unit, so each sale nets p - (v - c)
    CashLagProfile p = steady(1000);
    p.anticipated_variable = 40000;
    p.anticipation_case = AnticipationCase::SingleInputAllUpfront;
    p.anticipated_unit_component = 10;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_EQ(r.components.effective_margin, Rational(30));
    EXPECT_EQ(r.solvency_threshold, Rational(140000) / Rational(30));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(140000) / Rational(30));
}

TEST(SolvencyThreshold, ModulationAppliesWhenDeferredPastThreshold)
{
    CashLagProfile p = steady(1000);
    p.modulated_fixed = 40000;
    for (int month : {5, 6}) {
        p.modulation_month = month;
        ThresholdReport r = solvency_threshold(base_cost(), p);
        EXPECT_TRUE(r.modulation_applied) << month;
        EXPECT_EQ(r.pre_modulation_threshold, Rational(5000));
        EXPECT_EQ(r.solvency_threshold, Rational(3000));
        expect_within_one_unit(oracle_volume(base_cost(), p), Rational(3000));
    }
}

TEST(SolvencyThreshold, ModulationIgnoredWhenPaidBeforeThreshold)
{
    CashLagProfile p = steady(1000);
    p.modulated_fixed = 40000;
    p.modulation_month = 4;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_FALSE(r.modulation_applied);
    EXPECT_EQ(r.components.modulated_fixed, Rational(0));
    EXPECT_EQ(r.solvency_threshold, Rational(5000));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(5000));
}

TEST(SolvencyThreshold, AnticipatedCapBindsUnderLongSupplierCredit)
{
    CashLagProfile p = steady(1000);
    p.supplier_credit_months = 3;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_EQ(r.standard_value, Rational(500));
    EXPECT_EQ(r.binding, BindingFormula::AnticipatedCap);
    EXPECT_EQ(r.solvency_threshold, Rational(2000));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(2000));
}

TEST(SolvencyThreshold, TotalChargesCapBindsWhenCycleEndsFirst)
{
    CashLagProfile p = steady(1000);
    p.customer_credit_months = 3;
    p.cycle_capacity = 6000;
    ThresholdReport r = solvency_threshold(base_cost(), p);
    EXPECT_EQ(r.standard_value, Rational(12500));
    EXPECT_EQ(r.binding, BindingFormula::TotalChargesCap);
    EXPECT_EQ(r.solvency_threshold, Rational(8600));
    expect_within_one_unit(oracle_volume(base_cost(), p), Rational(8600));
}

TEST(SolvencyThreshold, InfeasibleCycleWhenCapacityCannotPay)
{
    CashLagProfile p = steady(1000);
    p.cycle_capacity = 1000;
    EXPECT_EQ(kind_of([&] { solvency_threshold(base_cost(), p); }), ErrorKind::InfeasibleCycle);
}

TEST(SolvencyThreshold, NonPositiveEffectiveMargin)
{
    EXPECT_EQ(kind_of([] { solvency_threshold(CostStructure::from_parts(1, 0, 10, 12), CashLagProfile{}); }),
              ErrorKind::NonPositiveMargin);
}

TEST(SolvencyThreshold, MonotoneInEachAdjustment)
{
    testgen::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        CostStructure cs = testgen::random_cost_structure(rng);
        CashLagProfile p;
        p.monthly_sales = testgen::uniform_int(rng, 10, 100);
        p.supplier_credit_months = Rational(testgen::uniform_int(rng, 0, 2));
        p.customer_credit_months = Rational(testgen::uniform_int(rng, 0, 2));
        ThresholdReport base = solvency_threshold(cs, p);
        if (base.binding != BindingFormula::Standard) continue;

        CashLagProfile more_ed = p;
        more_ed.customer_credit_months += Rational(1);
        EXPECT_GE(solvency_threshold(cs, more_ed).solvency_threshold, base.solvency_threshold);

        CashLagProfile more_cva = p;
        more_cva.anticipated_variable = Rational(testgen::uniform_int(rng, 1, 10000));
        EXPECT_GE(solvency_threshold(cs, more_cva).solvency_threshold, base.solvency_threshold);

        CashLagProfile more_cvd = p;
        more_cvd.supplier_credit_months += Rational(1);
        ThresholdReport r = solvency_threshold(cs, more_cvd);
        if (r.binding == BindingFormula::Standard) {
            EXPECT_LE(r.solvency_threshold, base.solvency_threshold);
        }
    }
}

TEST(SolvencyThreshold, NeverBelowAnticipatedCap)
{
    testgen::Rng rng(22);
    for (int i = 0; i < 300; ++i) {
        CostStructure cs = testgen::random_cost_structure(rng);
        CashLagProfile p = testgen::random_lag_profile(rng, cs);
        ThresholdReport r;
        try {
            r = solvency_threshold(cs, p);
        } catch (const Error& e) {
            EXPECT_TRUE(e.kind() == ErrorKind::InfeasibleCycle || e.kind() == ErrorKind::NonPositiveMargin);
            continue;
        }
        if (r.binding == BindingFormula::TotalChargesCap) {
            EXPECT_EQ(r.solvency_threshold, *r.total_charges_cap_value);
        } else {
            EXPECT_GE(r.solvency_threshold, r.anticipated_cap_value);
            EXPECT_EQ(r.solvency_threshold, r.binding == BindingFormula::Standard ? r.standard_value
                                                                                  : r.anticipated_cap_value);
        }
    }
}

TEST(SeasonalSolvency, UniformWeightsReduceToSteadyCase)
{
    CashLagProfile p = steady(1000);
    p.seasonal_weights = std::vector<Rational>(12, Rational(1));
    SeasonalSolvency s = seasonal_solvency(base_cost(), p, 24);
    EXPECT_EQ(s.month, 5);
    EXPECT_EQ(s.cumulative_units, Rational(5000));
}

TEST(SeasonalSolvency, AllSalesInLastMonth)
{
    CashLagProfile p = steady(1000);
    std::vector<Rational> w(12, Rational(0));
    w[11] = 1;
    p.seasonal_weights = w;
    SeasonalSolvency s = seasonal_solvency(base_cost(), p, 12);
    EXPECT_EQ(s.month, 12);
    EXPECT_EQ(s.cumulative_units, Rational(12000));
}

TEST(SeasonalSolvency, LastCrossingSurvivesSeasonalDip)
{
    // strong first quarter, then the modulated charge lands in a dead season
    CostStructure cs = CostStructure::from_parts(150000, 0, 50, 30);
    CashLagProfile p = steady(500);
    p.seasonal_weights = std::vector<Rational>{4, 4, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    p.modulated_fixed = 110000;
    p.modulation_month = 5;
    SeasonalSolvency s = seasonal_solvency(cs, p, 24);
    EXPECT_EQ(s.series[3].cumulative, Rational(80000));
    EXPECT_EQ(s.series[5].cumulative, Rational(-30000));
    EXPECT_EQ(s.first_crossing_month, 1);
    EXPECT_EQ(s.month, 13);

    // day-level oracle on the same pattern
    SalesSchedule schedule = SalesSchedule::from_profile(p, 24);
    SimulationResult r = simulate_cash_days(cs, p, schedule, 24 * kDaysPerMonth);
    ASSERT_TRUE(r.solvency_time.has_value());
    EXPECT_EQ(Rational(*r.solvency_time / Rational(kDaysPerMonth)).ceil(), s.month);
}

TEST(SeasonalSolvency, NeverSolventWithinHorizon)
{
    CashLagProfile p = steady(10);
    p.seasonal_weights = std::vector<Rational>(12, Rational(1));
    EXPECT_EQ(kind_of([&] { seasonal_solvency(base_cost(), p, 12); }), ErrorKind::NeverSolvent);
    EXPECT_EQ(kind_of([&] { seasonal_solvency(base_cost(), p, 11); }), ErrorKind::InvalidInput);
}
