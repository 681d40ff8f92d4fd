// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "cashctl/breakeven.hpp"
#include "cashctl/cash_transfer.hpp"
#include "cashctl/error.hpp"
#include "cashctl/leverage.hpp"
#include "cashctl/simulation.hpp"
#include "cashctl/surplus.hpp"

#include "support/generators.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace cashctl;

namespace {

struct Check {
    bool ok{true};
    std::ostringstream detail;

    void expect(bool condition, const std::string& what)
    {
        if (!condition && ok) detail << what;
        ok = ok && condition;
    }
};

double fd_elasticity(double f, double m, double q)
{
    const double h = 1e-6;
    double t0 = m * q - f;
    return ((m * q * (1 + h) - f - t0) / t0) / h;
}

void criterion_1(Check& c)
{
    testgen::Rng rng(1001);
    for (int i = 0; i < 200; ++i) {
        Money f = testgen::uniform_decimal(rng, 1, 10000000, 100);
        UnitValue m = testgen::uniform_decimal(rng, 1, 500, 1000);
        Quantity pole = f / m;
        c.expect(elasticity_wrt_volume(f, m, pole / Rational(2)) == Rational(-1), "E(Q*/2) != -1");
        c.expect(elasticity_wrt_volume(f, m, pole * Rational(2, 3)) == Rational(-2), "E(2Q*/3) != -2");
        c.expect(elasticity_wrt_volume(f, m, pole * Rational(2)) == Rational(2), "E(2Q*) != 2");
        c.expect(elasticity_wrt_volume(f, m, pole * Rational(3)) == Rational(3, 2), "E(3Q*) != 3/2");
        Rational far = elasticity_wrt_volume(f, m, pole * Rational(1000));
        Rational excess = (far - Rational(1)).abs();
        c.expect(excess <= Rational(1, 1000), "|E(1000 Q*) - 1| = " + excess.to_exact_string() + " exceeds 1e-3");
    }
}

void criterion_2(Check& c)
{
    c.expect(critical_production(8000000, 8) == Rational(1000000), "Q* != 1000000");
    c.expect(critical_margin(8000000, 2400000).to_fixed(2) == "3.33", "m* does not round to 3.33");
}

void criterion_3(Check& c)
{
    testgen::Rng rng(1003);
    int done = 0;
    while (done < 1000) {
        Money f = testgen::uniform_int(rng, 0, 10000000);
        UnitValue m = testgen::uniform_decimal(rng, 1, 100, 100);
        Quantity q = testgen::uniform_int(rng, 1, 10000000);
        Money t = virtual_treasury(m, q, f);
        if (t.is_zero() || (t / (m * q)).abs() < Rational(1, 100)) continue;  // keep away from the pole
        Rational ev = elasticity_wrt_volume(f, m, q);
        c.expect(ev == elasticity_wrt_margin(f, m, q), "volume and margin elasticities differ");
        double fd = fd_elasticity(f.to_double(), m.to_double(), q.to_double());
        c.expect(std::abs(fd - ev.to_double()) <= 1e-4 * std::abs(ev.to_double()), "finite difference off");
        ++done;
    }
}

void criterion_4(Check& c)
{
    testgen::Rng rng(1004);
    for (int i = 0; i < 500; ++i) {
        CostStructure cs = testgen::random_cost_structure(rng);
        CashLagProfile p;
        p.monthly_sales = testgen::uniform_int(rng, 1, 100);
        ThresholdReport r = solvency_threshold(cs, p);
        c.expect(r.solvency_threshold == r.liquidity_threshold, "no-lag threshold differs from liquidity");
    }
    int lagged = 0;
    while (lagged < 500) {
        CostStructure cs = testgen::random_cost_structure(rng);
        CashLagProfile p = testgen::random_lag_profile(rng, cs);
        if (!p.has_lags()) continue;
        ThresholdReport r;
        try {
            r = solvency_threshold(cs, p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InfeasibleCycle || e.kind() == ErrorKind::NonPositiveMargin) continue;
            throw;
        }
        SalesSchedule schedule = SalesSchedule::steady(p.monthly_sales);
        Rational months = r.solvency_threshold / p.monthly_sales +
                          max(p.customer_credit_months, p.supplier_credit_months) + p.modulation_month + Rational(3);
        int horizon = static_cast<int>((months * Rational(kDaysPerMonth)).ceil());
        if (auto cycle = cycle_length_days(p, schedule)) horizon = std::max(horizon, *cycle);
        SimulationResult sim = simulate_cash_days(cs, p, schedule, horizon);
        bool ok = sim.activity_volume_at_solvency &&
                  (*sim.activity_volume_at_solvency - r.solvency_threshold).abs() <= Rational(1);
        c.expect(ok, "closed form and day-level oracle disagree by more than one unit");
        ++lagged;
    }
}

Money identity_surplus(const PeriodAccount& base, const PeriodAccount& next)
{
    Money s = next.result_before_tax - base.result_before_tax;
    for (const auto& pair : match_flows(base, next)) {
        Money term = pair.delta_unit_value() * pair.next_quantity;
        s += pair.kind == FlowKind::Product ? -term : term;
    }
    return s;
}

void criterion_5(Check& c)
{
    testgen::Rng rng(1005);
    for (int i = 0; i < 1000; ++i) {
        auto [base, next] = testgen::random_period_pair(rng);
        SurplusReport r = surplus_accounts(base, next);
        c.expect(r.balance_ok && r.total_resources() == r.total_uses(), "surplus account out of balance");
        c.expect(productivity_surplus(base, next) == identity_surplus(base, next), "S differs from identity oracle");
    }
}

Money operating_cash(const ValidatedLedger& l, int n)
{
    return l.period(n).self_financing_capacity() - (l.working_capital(n) - l.working_capital(n - 1));
}

std::vector<ValidatedLedger> ledgers_for_6_and_7()
{
    testgen::Rng rng(1006);
    std::vector<ValidatedLedger> out;
    for (int i = 0; i < 500; ++i) out.push_back(validate_ledger(testgen::random_ledger(rng)));
    return out;
}

void criterion_6(Check& c, const std::vector<ValidatedLedger>& ledgers)
{
    for (const auto& l : ledgers) {
        CashDecompositionTable t = operating_cash_surplus(l, 2);
        c.expect(t.variation.caf_cash_by_flows() == t.variation.caf_cash_by_components(), "row IV routes differ");
        c.expect(t.operating_cash_surplus == operating_cash(l, 3) - operating_cash(l, 2),
                 "row VI differs from balance-sheet oracle");
    }
    testgen::Rng rng(1016);
    testgen::LedgerOptions settled;
    settled.with_stocks = false;
    for (int i = 0; i < 500; ++i) {
        ValidatedLedger l = validate_ledger(testgen::random_ledger(rng, settled));
        CashDecompositionTable t = operating_cash_surplus(l, 2);
        VirtualCashSurplus v = virtual_cash_surplus(l.period(2), l.period(3));
        const TransferRows& r = t.variation.transfers;
        bool same = t.variation.productivity() == v.productivity && r.price_rises == v.inherited_from_customers &&
                    r.price_cuts == v.transferred_to_customers && r.cost_cuts == v.inherited_from_suppliers &&
                    r.cost_rises == v.transferred_to_suppliers &&
                    (r.receipt_delays + r.receipt_speedups + r.payment_delays + r.payment_speedups).is_zero() &&
                    t.variation.caf_cash_by_flows() == v.delta_caf_after_tax() && t.deferred.is_zero();
        c.expect(same, "settled ledger does not collapse to the virtual decomposition");
    }
}

void criterion_7(Check& c, const std::vector<ValidatedLedger>& ledgers)
{
    for (const auto& l : ledgers) {
        WaterfallComparison w = fcf_waterfall(l, 2);
        c.expect(w.variation.operating_cash == operating_cash_surplus(l, 2).operating_cash_surplus,
                 "operating-cash variation differs from row VI");
        for (const WaterfallReport* r : {&w.base, &w.next}) {
            c.expect(r->delta_fr - r->delta_bfr == r->delta_treasury, "dFR - dBFR != dTreasury");
            c.expect(r->observed_delta_treasury && *r->observed_delta_treasury == r->delta_treasury,
                     "observed cash change differs");
        }
    }
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double budget_seconds;
        std::function<void(Check&)> body;
    };
    std::vector<ValidatedLedger> ledgers;
    std::vector<Criterion> criteria{
        {1, "elasticity tables", 1, criterion_1},
        {2, "critical production and margin", 1, criterion_2},
        {3, "elasticity identity and finite difference", 5, criterion_3},
        {4, "no-lag collapse and day-level oracle", 30, criterion_4},
        {5, "surplus balance", 10, criterion_5},
        {6, "cash-table dual route", 30,
         [&](Check& c) {
             ledgers = ledgers_for_6_and_7();
             criterion_6(c, ledgers);
         }},
        {7, "waterfall reconciliation", 10, [&](Check& c) { criterion_7(c, ledgers); }},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.expect(seconds <= criterion.budget_seconds, "over time budget");
        std::cout << (check.ok ? "PASS" : "FAIL") << " criterion " << criterion.id << ": " << criterion.name << " ("
                  << std::fixed;
        std::cout.precision(3);
        std::cout << seconds << " s)";
        if (!check.ok) std::cout << " - " << check.detail.str();
        std::cout << '\n';
        failures += check.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
