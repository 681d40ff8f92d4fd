#include "cashctl/model.hpp"

#include "cashctl/error.hpp"

#include <algorithm>
#include <set>

namespace cashctl {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::InvalidInput, message); }

std::string period_label(int n) { return "period " + std::to_string(n); }

}  // namespace

CostStructure CostStructure::from_parts(Money fixed_cash, Money fixed_calculated, UnitValue price,
                                        UnitValue variable_cost)
{
    CostStructure cs;
    cs.fixed_total = fixed_cash + fixed_calculated;
    cs.fixed_cash = std::move(fixed_cash);
    cs.fixed_calculated = std::move(fixed_calculated);
    cs.unit_price = std::move(price);
    cs.unit_variable_cost = std::move(variable_cost);
    return cs;
}

void CostStructure::validate() const
{
    if (fixed_cash.sign() < 0 || fixed_calculated.sign() < 0)
        invalid("fixed charges must be non-negative");
    if (fixed_cash + fixed_calculated != fixed_total)
        invalid("fixed_cash + fixed_calculated (" + (fixed_cash + fixed_calculated).to_exact_string() +
                ") differs from fixed_total (" + fixed_total.to_exact_string() + ")");
    if (unit_price.sign() < 0 || unit_variable_cost.sign() < 0)
        invalid("unit price and unit variable cost must be non-negative");
}

bool CashLagProfile::has_lags() const
{
    return !modulated_fixed.is_zero() || !anticipated_variable.is_zero() ||
           !supplier_credit_months.is_zero() || !customer_credit_months.is_zero();
}

std::vector<Rational> CashLagProfile::normalized_weights() const
{
    if (!seasonal_weights) invalid("seasonal weights are required");
    const auto& weights = *seasonal_weights;
    if (weights.size() != 12) invalid("seasonal weights must have 12 entries");
    Rational sum;
    for (const auto& w : weights) {
        if (w.sign() < 0) invalid("seasonal weights must be non-negative");
        sum += w;
    }
    if (sum.is_zero()) invalid("seasonal weights sum to zero");
    std::vector<Rational> out;
    out.reserve(weights.size());
    for (const auto& w : weights) out.push_back(w / sum);
    return out;
}

void CashLagProfile::validate(const CostStructure& cs) const
{
    if (modulated_fixed.sign() < 0) invalid("modulated fixed charges must be non-negative");
    if (modulated_fixed > cs.fixed_cash) invalid("modulated fixed charges exceed cash fixed charges");
    if (modulation_month.sign() < 0) invalid("modulation month must be non-negative");
    if (anticipated_variable.sign() < 0) invalid("anticipated variable costs must be non-negative");
    if (supplier_credit_months.sign() < 0 || customer_credit_months.sign() < 0)
        invalid("credit durations must be non-negative");
    if (monthly_sales.sign() < 0) invalid("monthly sales must be non-negative");
    if (anticipated_unit_component.sign() < 0) invalid("anticipated unit component must be non-negative");
    if (anticipation_case == AnticipationCase::SingleInputAllUpfront &&
        anticipated_unit_component > cs.unit_variable_cost)
        invalid("anticipated unit component exceeds the unit variable cost");
    if (cycle_capacity && cycle_capacity->sign() <= 0) invalid("cycle capacity must be positive");
    if (seasonal_weights) (void)normalized_weights();
}

const FlowLine* PeriodAccount::find(const std::string& id) const
{
    auto it = std::find_if(lines.begin(), lines.end(), [&](const FlowLine& l) { return l.id == id; });
    return it == lines.end() ? nullptr : &*it;
}

Money PeriodAccount::total(FlowKind kind) const
{
    Money sum;
    for (const auto& line : lines)
        if (line.kind == kind) sum += line.value();
    return sum;
}

Money PeriodAccount::total(FlowKind kind, bool cash_effective) const
{
    Money sum;
    for (const auto& line : lines)
        if (line.kind == kind && line.cash_effective == cash_effective) sum += line.value();
    return sum;
}

Money PeriodAccount::non_cash_net_charges() const
{
    return total(FlowKind::Input, false) - total(FlowKind::Product, false);
}

Money PeriodAccount::self_financing_capacity() const
{
    return result_after_tax() + non_cash_net_charges();
}

std::vector<FlowPair> match_flows(const PeriodAccount& base, const PeriodAccount& next)
{
    std::map<std::string, FlowPair> pairs;
    for (const auto& line : base.lines) {
        FlowPair& p = pairs[line.id];
        p.id = line.id;
        p.kind = line.kind;
        p.cash_effective = line.cash_effective;
        p.base_quantity = line.quantity;
        p.base_unit_value = line.unit_value;
    }
    for (const auto& line : next.lines) {
        auto [it, inserted] = pairs.try_emplace(line.id);
        FlowPair& p = it->second;
        if (!inserted && (p.kind != line.kind || p.cash_effective != line.cash_effective))
            throw Error(ErrorKind::UnmatchedFlow, "flow '" + line.id + "' changes kind or cash flag between " +
                                                      period_label(base.period) + " and " +
                                                      period_label(next.period));
        p.id = line.id;
        p.kind = line.kind;
        p.cash_effective = line.cash_effective;
        p.next_quantity = line.quantity;
        p.next_unit_value = line.unit_value;
    }
    std::vector<FlowPair> out;
    out.reserve(pairs.size());
    for (auto& [id, p] : pairs) out.push_back(std::move(p));
    return out;
}

const PeriodAccount& ValidatedLedger::period(int n) const
{
    if (!has_period(n))
        throw Error(ErrorKind::InsufficientPeriods, period_label(n) + " is not in the ledger");
    return ledger_.periods[static_cast<std::size_t>(n - first_period())];
}

std::vector<FlowPair> ValidatedLedger::pair(int n) const
{
    return match_flows(period(n - 1), period(n));
}

Money ValidatedLedger::stock(int n, const std::string& flow_id) const
{
    auto it = stocks_.find({n, flow_id});
    return it == stocks_.end() ? Money{} : it->second;
}

Money ValidatedLedger::working_capital(int n) const
{
    const PeriodAccount& account = period(n);
    Money bfr;
    for (const auto& line : account.lines) {
        Money s = stock(n, line.id);
        bfr += line.kind == FlowKind::Product ? s : -s;
    }
    return bfr;
}

const PeriodFinancing* ValidatedLedger::financing(int n) const
{
    for (const auto& f : ledger_.financing)
        if (f.period == n) return &f;
    return nullptr;
}

ValidatedLedger validate_ledger(Ledger ledger)
{
    if (ledger.periods.size() < 2)
        throw Error(ErrorKind::InsufficientPeriods, "a ledger needs at least 2 periods");

    std::sort(ledger.periods.begin(), ledger.periods.end(),
              [](const PeriodAccount& a, const PeriodAccount& b) { return a.period < b.period; });
    for (std::size_t i = 1; i < ledger.periods.size(); ++i) {
        if (ledger.periods[i].period != ledger.periods[i - 1].period + 1)
            invalid("periods must be consecutive; found " + std::to_string(ledger.periods[i - 1].period) +
                    " then " + std::to_string(ledger.periods[i].period));
    }

    std::map<std::string, std::pair<FlowKind, bool>> flow_shape;
    for (const auto& account : ledger.periods) {
        std::set<std::string> seen;
        for (const auto& line : account.lines) {
            if (line.id.empty()) invalid(period_label(account.period) + ": empty flow id");
            if (!seen.insert(line.id).second)
                invalid(period_label(account.period) + ": duplicate flow id '" + line.id + "'");
            if (line.quantity.sign() < 0)
                throw Error(ErrorKind::NegativeQuantity,
                            period_label(account.period) + ": flow '" + line.id + "' has negative quantity");
            if (line.unit_value.sign() < 0)
                invalid(period_label(account.period) + ": flow '" + line.id + "' has negative unit value");
            auto [it, inserted] = flow_shape.try_emplace(line.id, line.kind, line.cash_effective);
            if (!inserted && it->second != std::make_pair(line.kind, line.cash_effective))
                throw Error(ErrorKind::UnmatchedFlow, "flow '" + line.id +
                                                          "' changes kind or cash flag across periods");
        }
        Money products = account.total(FlowKind::Product);
        Money inputs = account.total(FlowKind::Input);
        if (products != inputs + account.result_before_tax)
            throw Error(ErrorKind::IdentityViolation,
                        period_label(account.period) + ": products " + products.to_exact_string() +
                            " != inputs " + inputs.to_exact_string() + " + result " +
                            account.result_before_tax.to_exact_string());
    }

    ValidatedLedger out;
    out.ledger_ = std::move(ledger);
    for (const auto& s : out.ledger_.stocks) {
        if (!out.has_period(s.period))
            throw Error(ErrorKind::UnmatchedFlow, "stock for '" + s.flow_id + "' refers to missing " +
                                                      period_label(s.period));
        const FlowLine* line = out.period(s.period).find(s.flow_id);
        if (line == nullptr)
            throw Error(ErrorKind::UnmatchedFlow,
                        "stock refers to flow '" + s.flow_id + "' absent from " + period_label(s.period));
        if (!line->cash_effective)
            invalid("stock declared on non-cash flow '" + s.flow_id + "'");
        if (s.stock_end.sign() < 0 || s.stock_end > line->value())
            throw Error(ErrorKind::CoefficientOutOfRange,
                        period_label(s.period) + ": stock " + s.stock_end.to_exact_string() + " of '" +
                            s.flow_id + "' outside [0, " + line->value().to_exact_string() + "]");
        if (!out.stocks_.emplace(std::make_pair(s.period, s.flow_id), s.stock_end).second)
            invalid("duplicate stock for '" + s.flow_id + "' in " + period_label(s.period));
    }
    std::set<int> financed;
    for (const auto& f : out.ledger_.financing) {
        if (!out.has_period(f.period)) invalid("financing refers to missing " + period_label(f.period));
        if (!financed.insert(f.period).second) invalid("duplicate financing for " + period_label(f.period));
    }
    return out;
}

}  // namespace cashctl
