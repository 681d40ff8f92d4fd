#include "cashctl/breakeven.hpp"
#include "cashctl/error.hpp"
#include "cashctl/simulation.hpp"

#include <gtest/gtest.h>

using namespace cashctl;

namespace {

CostStructure base_cost() { return CostStructure::from_parts(100000, 0, 50, 30); }

SimulationResult run(const CashLagProfile& p, int horizon = 600)
{
    return simulate_cash_days(base_cost(), p, SalesSchedule::steady(p.monthly_sales), horizon);
}

}  // namespace

TEST(Simulation, NoLagsCrossesAtLiquidityThreshold)
{
    CashLagProfile p;
    p.monthly_sales = 1000;
    SimulationResult r = run(p);
    ASSERT_TRUE(r.solvency_time.has_value());
    EXPECT_EQ(*r.solvency_time, Rational(150));
    EXPECT_EQ(r.units_sold_at_solvency, Rational(5000));
    EXPECT_EQ(*r.first_crossing_time, *r.solvency_time);
}

TEST(Simulation, EqualCreditsShiftCrossingByOneMonthOfSales)
{
    CashLagProfile p;
    p.monthly_sales = 1000;
    SimulationResult plain = run(p);
    p.customer_credit_months = 1;
    p.supplier_credit_months = 1;
    SimulationResult lagged = run(p);
    EXPECT_EQ(*lagged.activity_volume_at_solvency - *plain.activity_volume_at_solvency, Rational(1000));
}

TEST(Simulation, CustomerCreditAloneShiftsCrossingByDelayedReceiptsOverMargin)
{
    CashLagProfile p;
    p.monthly_sales = 1000;
    SimulationResult plain = run(p);
    p.customer_credit_months = 1;
    SimulationResult lagged = run(p);
    // ED / m = 50000 / 20
    Rational shift = *lagged.activity_volume_at_solvency - *plain.activity_volume_at_solvency;
    EXPECT_LE((shift - Rational(2500)).abs(), Rational(1));
}

TEST(Simulation, SeriesAccumulatesDailyFlows)
{
    CashLagProfile p;
    p.monthly_sales = 30;
    SimulationResult r = run(p, 60);
    ASSERT_EQ(r.series.size(), 61u);
    EXPECT_EQ(r.series[0].outflow, Rational(100000));
    EXPECT_EQ(r.series[1].inflow, Rational(50));
    EXPECT_EQ(r.series[1].outflow, Rational(30));
    Money running;
    for (const auto& point : r.series) {
        running += point.inflow - point.outflow;
        EXPECT_EQ(point.cumulative, running);
    }
    EXPECT_EQ(r.final_cash, running);
}

TEST(Simulation, NeverSolventLeavesSolvencyEmpty)
{
    CashLagProfile p;
    p.monthly_sales = 1;
    SimulationResult r = run(p, 60);
    EXPECT_FALSE(r.solvency_time.has_value());
    EXPECT_LT(r.final_cash, Rational(0));
}

TEST(Simulation, CapacityStopsSalesAndBoundsCycle)
{
    CashLagProfile p;
    p.monthly_sales = 1000;
    p.cycle_capacity = 6000;
    p.customer_credit_months = 3;
    SalesSchedule s = SalesSchedule::steady(1000);
    ASSERT_EQ(cycle_length_days(p, s), 270);
    EXPECT_THROW(simulate_cash_days(base_cost(), p, s, 200), Error);
    SimulationResult r = simulate_cash_days(base_cost(), p, s, 270);
    EXPECT_EQ(r.final_cash, Rational(50 * 6000 - 100000 - 30 * 6000));
}

TEST(Simulation, MonthlyScheduleSpreadsUnitsWithinMonth)
{
    CashLagProfile p;
    SimulationResult r = simulate_cash_days(base_cost(), p, SalesSchedule::monthly({Rational(3), Rational(0)}), 60);
    EXPECT_EQ(r.series[10].inflow, Rational(50));
    EXPECT_EQ(r.series[20].inflow, Rational(50));
    EXPECT_EQ(r.series[30].inflow, Rational(50));
    EXPECT_EQ(r.series[45].inflow, Rational(0));
}
