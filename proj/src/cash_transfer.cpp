#include "cashctl/cash_transfer.hpp"

#include "cashctl/error.hpp"
#include "cashctl/surplus.hpp"

namespace cashctl {

namespace {

Fraction immobilized_share(const ValidatedLedger& ledger, int n, const std::string& flow_id)
{
    const FlowLine* line = ledger.period(n).find(flow_id);
    Money stock = ledger.stock(n, flow_id);
    Money flow = line == nullptr ? Money{} : line->value();
    if (flow.is_zero()) {
        if (!stock.is_zero())
            throw Error(ErrorKind::CoefficientOutOfRange, "stock on zero flow '" + flow_id + "'");
        return {};
    }
    Fraction t = stock / flow;
    if (t.sign() < 0 || t > Fraction(1))
        throw Error(ErrorKind::CoefficientOutOfRange,
                    "coefficient " + t.to_exact_string() + " of '" + flow_id + "' outside [0, 1]");
    return t;
}

const FlowCoefficient& coefficient_for(const TransferCoefficients& coeffs, const std::string& flow_id)
{
    const FlowCoefficient* c = coeffs.find(flow_id);
    if (c == nullptr)
        throw Error(ErrorKind::UnmatchedFlow, "no transfer coefficient for flow '" + flow_id + "'");
    return *c;
}

}  // namespace

const FlowCoefficient* TransferCoefficients::find(const std::string& flow_id) const
{
    for (const auto& f : flows)
        if (f.flow_id == flow_id) return &f;
    return nullptr;
}

TransferCoefficients transfer_coefficients(const ValidatedLedger& ledger, int n)
{
    TransferCoefficients out;
    out.period = n;
    for (const auto& flow : ledger.pair(n)) {
        if (!flow.cash_effective) continue;
        FlowCoefficient c;
        c.flow_id = flow.id;
        c.kind = flow.kind;
        c.t_base = immobilized_share(ledger, n - 1, flow.id);
        c.t_next = immobilized_share(ledger, n, flow.id);
        c.settled_base = Fraction(1) - c.t_base;
        c.settled_next = Fraction(1) - c.t_next;
        c.delta_settled = c.settled_next - c.settled_base;
        out.flows.push_back(std::move(c));
    }
    return out;
}

Money productivity_cash_flow(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs)
{
    Money receipts;
    Money disbursements;
    for (const auto& flow : ledger.pair(n)) {
        if (!flow.cash_effective) continue;
        const auto& c = coefficient_for(coeffs, flow.id);
        Money term = flow.delta_quantity() * flow.base_unit_value * c.settled_base;
        (flow.kind == FlowKind::Product ? receipts : disbursements) += term;
    }
    return receipts - disbursements;
}

TransferRows transferred_and_inherited_cash(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs)
{
    TransferRows rows;
    for (const auto& flow : ledger.pair(n)) {
        if (!flow.cash_effective) continue;
        const auto& c = coefficient_for(coeffs, flow.id);
        Money price = flow.next_quantity * flow.delta_unit_value() * c.settled_base;
        Money timing = flow.next_quantity * flow.next_unit_value * c.delta_settled;
        if (flow.kind == FlowKind::Product) {
            (price.sign() < 0 ? rows.price_cuts : rows.price_rises) += price;
            (timing.sign() < 0 ? rows.receipt_delays : rows.receipt_speedups) += timing;
        } else {
            // an input term leaves cash, so its effect is the negated term
            (price.sign() > 0 ? rows.cost_rises : rows.cost_cuts) -= price;
            (timing.sign() > 0 ? rows.payment_speedups : rows.payment_delays) -= timing;
        }
    }
    Money delta_tax = ledger.period(n).tax - ledger.period(n - 1).tax;
    (delta_tax.sign() > 0 ? rows.tax_increase : rows.tax_decrease) -= delta_tax;
    return rows;
}

Money settled_result(const ValidatedLedger& ledger, int n)
{
    const PeriodAccount& account = ledger.period(n);
    Money settled;
    for (const auto& line : account.lines) {
        if (!line.cash_effective) continue;
        Money part = line.value() * (Fraction(1) - immobilized_share(ledger, n, line.id));
        settled += line.kind == FlowKind::Product ? part : -part;
    }
    return settled - account.non_cash_net_charges() - account.tax;
}

CashVariation caf_cash_variation(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs)
{
    CashVariation v;
    v.base_period = n - 1;
    v.next_period = n;
    for (const auto& flow : ledger.pair(n)) {
        if (!flow.cash_effective) continue;
        const auto& c = coefficient_for(coeffs, flow.id);
        Money term = flow.delta_quantity() * flow.base_unit_value * c.settled_base;
        (flow.kind == FlowKind::Product ? v.productivity_receipts : v.productivity_disbursements) += term;
    }
    v.transfers = transferred_and_inherited_cash(ledger, n, coeffs);

    CafSurplusReport caf = caf_surplus(ledger.period(n - 1), ledger.period(n));
    v.dap_quantity = caf.dap_quantity;
    v.dap_price = caf.dap_price;
    v.dap_cross = caf.dap_cross;
    v.delta_result_cash = settled_result(ledger, n) - settled_result(ledger, n - 1);

    if (v.caf_cash_by_flows() != v.caf_cash_by_components())
        throw Error(ErrorKind::DecompositionMismatch,
                    "row IV by flows " + v.caf_cash_by_flows().to_exact_string() + " != by components " +
                        v.caf_cash_by_components().to_exact_string());
    return v;
}

Money deferred_net_cash_flow(const ValidatedLedger& ledger, int n)
{
    Money accounting = ledger.period(n).result_after_tax() - ledger.period(n - 1).result_after_tax();
    Money settled = settled_result(ledger, n) - settled_result(ledger, n - 1);
    return accounting - settled;
}

CashDecompositionTable operating_cash_surplus(const ValidatedLedger& ledger, int n)
{
    if (!ledger.has_period(n - 1) || !ledger.has_period(n) || !ledger.has_period(n + 1))
        throw Error(ErrorKind::InsufficientPeriods, "the cash table around period " + std::to_string(n) +
                                                        " needs periods " + std::to_string(n - 1) + " to " +
                                                        std::to_string(n + 1));
    CashDecompositionTable table;
    table.period = n;
    table.variation = caf_cash_variation(ledger, n + 1, transfer_coefficients(ledger, n + 1));
    table.deferred = deferred_net_cash_flow(ledger, n);
    table.operating_cash_surplus = table.variation.caf_cash_by_flows() + table.deferred;
    return table;
}

WaterfallReport fcf_waterfall(const WaterfallInputs& inputs)
{
    WaterfallReport r;
    r.caf_before_interest = inputs.caf_before_interest;
    r.delta_bfr = inputs.delta_bfr;
    r.operating_cash = inputs.caf_before_interest - inputs.delta_bfr;
    r.net_investment = inputs.net_investment;
    r.free_cash = r.operating_cash - inputs.net_investment;
    r.delta_debt = inputs.delta_debt;
    r.free_cash_after_financing = r.free_cash + inputs.delta_debt;
    r.delta_fr = inputs.caf_before_interest - inputs.net_investment + inputs.delta_debt;
    r.delta_treasury = r.delta_fr - r.delta_bfr;
    return r;
}

WaterfallReport waterfall_for_period(const ValidatedLedger& ledger, int n)
{
    WaterfallInputs in;
    in.caf_before_interest = ledger.period(n).self_financing_capacity();
    in.delta_bfr = ledger.working_capital(n) - ledger.working_capital(n - 1);
    if (const PeriodFinancing* f = ledger.financing(n)) {
        in.net_investment = f->net_investment;
        in.delta_debt = f->debt_change;
    }
    WaterfallReport r = fcf_waterfall(in);
    r.period = n;
    const PeriodFinancing* now = ledger.financing(n);
    const PeriodFinancing* before = ledger.financing(n - 1);
    if (now && before && now->cash_balance && before->cash_balance) {
        r.observed_delta_treasury = *now->cash_balance - *before->cash_balance;
        if (*r.observed_delta_treasury != r.delta_treasury)
            throw Error(ErrorKind::ReconciliationFailure,
                        "period " + std::to_string(n) + ": dFR - dBFR = " + r.delta_treasury.to_exact_string() +
                            " but cash balances moved by " + r.observed_delta_treasury->to_exact_string());
    }
    return r;
}

WaterfallComparison fcf_waterfall(const ValidatedLedger& ledger, int n)
{
    CashDecompositionTable table = operating_cash_surplus(ledger, n);
    WaterfallComparison out;
    out.base = waterfall_for_period(ledger, n);
    out.next = waterfall_for_period(ledger, n + 1);
    auto& v = out.variation;
    v.period = n + 1;
    v.caf_before_interest = out.next.caf_before_interest - out.base.caf_before_interest;
    v.delta_bfr = out.next.delta_bfr - out.base.delta_bfr;
    v.operating_cash = out.next.operating_cash - out.base.operating_cash;
    v.net_investment = out.next.net_investment - out.base.net_investment;
    v.free_cash = out.next.free_cash - out.base.free_cash;
    v.delta_debt = out.next.delta_debt - out.base.delta_debt;
    v.free_cash_after_financing = out.next.free_cash_after_financing - out.base.free_cash_after_financing;
    v.delta_fr = out.next.delta_fr - out.base.delta_fr;
    v.delta_treasury = out.next.delta_treasury - out.base.delta_treasury;
    out.operating_cash_surplus = table.operating_cash_surplus;
    if (v.operating_cash != table.operating_cash_surplus)
        throw Error(ErrorKind::ReconciliationFailure,
                    "operating cash moved by " + v.operating_cash.to_exact_string() + " but row VI is " +
                        table.operating_cash_surplus.to_exact_string());
    return out;
}

}  // namespace cashctl
