#include "cashctl/error.hpp"
#include "cashctl/surplus.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace cashctl;

namespace {

FlowLine line(std::string id, FlowKind kind, Rational q, Rational u, bool cash = true)
{
    return FlowLine{std::move(id), kind, cash, std::move(q), std::move(u)};
}

PeriodAccount account(int n, std::vector<FlowLine> lines)
{
    PeriodAccount a;
    a.period = n;
    a.lines = std::move(lines);
    a.result_before_tax = a.total(FlowKind::Product) - a.total(FlowKind::Input);
    return a;
}

std::pair<PeriodAccount, PeriodAccount> worked_example()
{
    return {account(1, {line("sales", FlowKind::Product, 100, 10), line("materials", FlowKind::Input, 50, 8)}),
            account(2, {line("sales", FlowKind::Product, 110, Rational::parse("10.5")),
                        line("materials", FlowKind::Input, 55, Rational::parse("8.2"))})};
}

Money sum(const std::vector<SurplusItem>& items)
{
    Money total;
    for (const auto& i : items) total += i.amount;
    return total;
}

// S from the production-account identity, without touching base prices.
Money identity_surplus(const PeriodAccount& base, const PeriodAccount& next)
{
    Money s = next.result_before_tax - base.result_before_tax;
    for (const auto& pair : match_flows(base, next)) {
        Money term = pair.delta_unit_value() * pair.next_quantity;
        s += pair.kind == FlowKind::Product ? -term : term;
    }
    return s;
}

}  // namespace

TEST(ProductivitySurplus, WorkedExample)
{
    auto [base, next] = worked_example();
    EXPECT_EQ(next.result_before_tax - base.result_before_tax, Rational(104));
    EXPECT_EQ(productivity_surplus(base, next), Rational(60));
    EXPECT_EQ(identity_surplus(base, next), Rational(60));
}

TEST(ProductivitySurplus, ZeroWhenQuantitiesConstant)
{
    auto [base, next] = worked_example();
    EXPECT_EQ(productivity_surplus(base, base), Rational(0));
    PeriodAccount prices_only = account(2, {line("sales", FlowKind::Product, 100, 12),
                                            line("materials", FlowKind::Input, 50, 7)});
    EXPECT_EQ(productivity_surplus(base, prices_only), Rational(0));
}

TEST(ProductivitySurplus, CanBeNegative)
{
    auto [base, next] = worked_example();
    PeriodAccount worse = account(2, {line("sales", FlowKind::Product, 90, 10), line("materials", FlowKind::Input, 50, 8)});
    EXPECT_EQ(productivity_surplus(base, worse), Rational(-100));
}

TEST(SurplusAccounts, WorkedExampleBalances)
{
    auto [base, next] = worked_example();
    SurplusReport r = surplus_accounts(base, next);
    EXPECT_TRUE(r.balance_ok);
    EXPECT_EQ(r.productivity, Rational(60));
    EXPECT_EQ(r.total_resources(), Rational(115));
    EXPECT_EQ(r.total_uses(), Rational(115));
    ASSERT_EQ(r.resources.size(), 1u);
    EXPECT_EQ(r.resources[0].kind, SurplusItemKind::OutputPrice);
    EXPECT_EQ(r.resources[0].counterparty, Counterparty::Customers);
    EXPECT_EQ(r.resources[0].amount, Rational(55));
    ASSERT_EQ(r.uses.size(), 2u);
    EXPECT_EQ(sum(r.uses), Rational(115));
    EXPECT_EQ(r.delta_result, Rational(104));
}

TEST(SurplusAccounts, IdenticalPeriodsGiveEmptyAccount)
{
    auto [base, next] = worked_example();
    SurplusReport r = surplus_accounts(base, base);
    EXPECT_TRUE(r.balance_ok);
    EXPECT_TRUE(r.resources.empty());
    EXPECT_TRUE(r.uses.empty());
    EXPECT_EQ(r.total_resources(), Rational(0));
}

TEST(SurplusAccounts, OutputPriceFallIsAbsorbedByResult)
{
    auto [base, next] = worked_example();
    PeriodAccount cut = account(2, {line("sales", FlowKind::Product, 100, 9), line("materials", FlowKind::Input, 50, 8)});
    SurplusReport r = surplus_accounts(base, cut);
    EXPECT_TRUE(r.balance_ok);
    ASSERT_EQ(r.uses.size(), 1u);
    EXPECT_EQ(r.uses[0].counterparty, Counterparty::Customers);
    EXPECT_EQ(r.uses[0].amount, Rational(100));
    ASSERT_EQ(r.resources.size(), 1u);
    EXPECT_EQ(r.resources[0].kind, SurplusItemKind::Result);
    EXPECT_EQ(r.resources[0].amount, Rational(100));
}

TEST(SurplusAccounts, TaxSplitOfResultChange)
{
    auto [base, next] = worked_example();
    base.tax = 100;
    next.tax = 130;
    SurplusReport r = surplus_accounts(base, next);
    EXPECT_EQ(r.delta_tax, Rational(30));
    EXPECT_EQ(r.delta_result_after_tax, Rational(74));
}

TEST(SurplusAccounts, RandomLedgersBalanceAndMatchIdentity)
{
    testgen::Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        auto [base, next] = testgen::random_period_pair(rng);
        SurplusReport r = surplus_accounts(base, next);
        EXPECT_TRUE(r.balance_ok);
        EXPECT_EQ(r.total_resources(), r.total_uses());
        EXPECT_EQ(productivity_surplus(base, next), identity_surplus(base, next));
    }
}

TEST(CafSurplus, QuantityOnlyDap)
{
    PeriodAccount base = account(1, {line("sales", FlowKind::Product, 100, 10), line("dap", FlowKind::Input, 100, 1, false)});
    PeriodAccount next = account(2, {line("sales", FlowKind::Product, 100, Rational::parse("10.7")),
                                     line("dap", FlowKind::Input, 120, 1, false)});
    ASSERT_EQ(next.result_before_tax - base.result_before_tax, Rational(50));
    CafSurplusReport r = caf_surplus(base, next);
    EXPECT_EQ(r.dap_quantity, Rational(20));
    EXPECT_EQ(r.dap_price, Rational(0));
    EXPECT_EQ(r.dap_cross, Rational(0));
    EXPECT_EQ(r.total, Rational(70));
    EXPECT_EQ(r.total, (next.result_before_tax + 120) - (base.result_before_tax + 100));
}

TEST(CafSurplus, QuantityPriceAndCrossTerms)
{
    PeriodAccount base = account(1, {line("sales", FlowKind::Product, 100, 10), line("dap", FlowKind::Input, 100, 1, false)});
    PeriodAccount next = account(2, {line("sales", FlowKind::Product, 100, 11),
                                     line("dap", FlowKind::Input, 110, Rational::parse("1.1"), false)});
    CafSurplusReport r = caf_surplus(base, next);
    EXPECT_EQ(r.dap_quantity, Rational(10));
    EXPECT_EQ(r.dap_price, Rational(10));
    EXPECT_EQ(r.dap_cross, Rational(1));
    EXPECT_EQ(r.total, r.delta_result + Rational(21));
}

TEST(CafSurplus, NoDapEqualsResultChange)
{
    auto [base, next] = worked_example();
    CafSurplusReport r = caf_surplus(base, next);
    EXPECT_EQ(r.total, Rational(104));
    EXPECT_EQ(r.dap_quantity + r.dap_price + r.dap_cross, Rational(0));
}

TEST(CafSurplus, RandomTotalsMatchDirectCaf)
{
    testgen::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        auto [base, next] = testgen::random_period_pair(rng);
        CafSurplusReport r = caf_surplus(base, next);
        EXPECT_EQ(r.total, r.dap_quantity + r.dap_price + r.dap_cross + r.delta_result);
        EXPECT_EQ(r.total - (next.tax - base.tax), next.self_financing_capacity() - base.self_financing_capacity());
    }
}

TEST(VirtualCashSurplus, SplitsPriceEffectsByCounterparty)
{
    auto [base, next] = worked_example();
    VirtualCashSurplus v = virtual_cash_surplus(base, next);
    EXPECT_EQ(v.productivity, Rational(60));
    EXPECT_EQ(v.inherited_from_customers, Rational(55));
    EXPECT_EQ(v.transferred_to_suppliers, Rational(-11));
    EXPECT_EQ(v.inherited_from_suppliers, Rational(0));
    EXPECT_EQ(v.transferred_to_customers, Rational(0));
    EXPECT_EQ(v.delta_caf_after_tax(), Rational(104));
}
