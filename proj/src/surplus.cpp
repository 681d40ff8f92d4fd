#include "cashctl/surplus.hpp"

#include "cashctl/error.hpp"

namespace cashctl {

Money SurplusReport::total_resources() const
{
    Money sum = productivity;
    for (const auto& item : resources) sum += item.amount;
    return sum;
}

Money SurplusReport::total_uses() const
{
    Money sum;
    for (const auto& item : uses) sum += item.amount;
    return sum;
}

Money productivity_surplus(const PeriodAccount& base, const PeriodAccount& next)
{
    Money surplus;
    for (const auto& flow : match_flows(base, next)) {
        Money term = flow.base_unit_value * flow.delta_quantity();
        surplus += flow.kind == FlowKind::Product ? term : -term;
    }
    return surplus;
}

SurplusReport surplus_accounts(const PeriodAccount& base, const PeriodAccount& next)
{
    SurplusReport report;
    report.productivity = productivity_surplus(base, next);

    for (const auto& flow : match_flows(base, next)) {
        // price effect valued at next-period quantities
        Money term = flow.delta_unit_value() * flow.next_quantity;
        if (term.is_zero()) continue;
        if (flow.kind == FlowKind::Product) {
            SurplusItem item{SurplusItemKind::OutputPrice, flow.id,
                             flow.cash_effective ? Counterparty::Customers : Counterparty::Firm, term.abs()};
            (term.sign() > 0 ? report.resources : report.uses).push_back(std::move(item));
        } else {
            SurplusItem item{SurplusItemKind::InputPrice, flow.id,
                             flow.cash_effective ? Counterparty::Suppliers : Counterparty::Firm, term.abs()};
            (term.sign() > 0 ? report.uses : report.resources).push_back(std::move(item));
        }
    }

    report.delta_result = next.result_before_tax - base.result_before_tax;
    report.delta_tax = next.tax - base.tax;
    report.delta_result_after_tax = next.result_after_tax() - base.result_after_tax();
    if (!report.delta_result.is_zero()) {
        SurplusItem item{SurplusItemKind::Result, {}, Counterparty::Owners, report.delta_result.abs()};
        (report.delta_result.sign() > 0 ? report.uses : report.resources).push_back(std::move(item));
    }

    report.balance_ok = report.total_resources() == report.total_uses();
    if (!report.balance_ok)
        throw Error(ErrorKind::BalanceViolation, "surplus account does not balance: resources " +
                                                     report.total_resources().to_exact_string() + ", uses " +
                                                     report.total_uses().to_exact_string());
    return report;
}

CafSurplusReport caf_surplus(const PeriodAccount& base, const PeriodAccount& next)
{
    CafSurplusReport report;
    for (const auto& flow : match_flows(base, next)) {
        if (flow.cash_effective) continue;
        // calculated charges add back to the result, non-cash products come off it
        Rational sign = flow.kind == FlowKind::Input ? Rational(1) : Rational(-1);
        report.dap_quantity += sign * flow.delta_quantity() * flow.base_unit_value;
        report.dap_price += sign * flow.delta_unit_value() * flow.base_quantity;
        report.dap_cross += sign * flow.delta_quantity() * flow.delta_unit_value();
    }
    report.delta_result = next.result_before_tax - base.result_before_tax;
    report.total = report.dap_quantity + report.dap_price + report.dap_cross + report.delta_result;
    return report;
}

VirtualCashSurplus virtual_cash_surplus(const PeriodAccount& base, const PeriodAccount& next)
{
    VirtualCashSurplus out;
    for (const auto& flow : match_flows(base, next)) {
        if (!flow.cash_effective) continue;
        Money quantity_effect = flow.base_unit_value * flow.delta_quantity();
        Money price_effect = flow.delta_unit_value() * flow.next_quantity;
        if (flow.kind == FlowKind::Product) {
            out.productivity += quantity_effect;
            (price_effect.sign() > 0 ? out.inherited_from_customers : out.transferred_to_customers) += price_effect;
        } else {
            out.productivity -= quantity_effect;
            (price_effect.sign() < 0 ? out.inherited_from_suppliers : out.transferred_to_suppliers) -= price_effect;
        }
    }
    out.caf = caf_surplus(base, next);
    out.delta_tax = next.tax - base.tax;
    return out;
}

}  // namespace cashctl
