#pragma once

#include "cashctl/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cashctl {

/// Share of a flow still held in its end-of-period stock (t) and share
/// settled within the period (T = 1 - t), for two consecutive periods.
struct FlowCoefficient {
    std::string flow_id;
    FlowKind kind{FlowKind::Product};
    Fraction t_base;
    Fraction settled_base;
    Fraction t_next;
    Fraction settled_next;
    Fraction delta_settled;
};

struct TransferCoefficients {
    int period{0};  // coefficients of period-1 (base) and period (next)
    std::vector<FlowCoefficient> flows;

    [[nodiscard]] const FlowCoefficient* find(const std::string& flow_id) const;
};

/// Coefficients of every cash-effective flow for periods n-1 and n. A flow
/// without a declared stock is fully settled (t = 0). Throws
/// CoefficientOutOfRange when a stock exceeds its flow.
TransferCoefficients transfer_coefficients(const ValidatedLedger& ledger, int n);

/// Rows II and III of the cash table. Transferred rows carry the (negative)
/// effect on cash; inherited rows carry the (positive) effect.
struct TransferRows {
    Money price_cuts;        // a) output price falls
    Money receipt_delays;    // b) customers settle a smaller share in-period
    Money cost_rises;        // c) input cost rises
    Money payment_speedups;  // d) suppliers are paid a larger share in-period
    Money tax_increase;      // 5
    Money price_rises;       // e)
    Money receipt_speedups;  // f)
    Money cost_cuts;         // g)
    Money payment_delays;    // h)
    Money tax_decrease;      // 8

    [[nodiscard]] Money reduced_receipts() const { return price_cuts + receipt_delays; }             // 3
    [[nodiscard]] Money increased_disbursements() const { return cost_rises + payment_speedups; }   // 4
    [[nodiscard]] Money transferred() const { return reduced_receipts() + increased_disbursements() + tax_increase; }
    [[nodiscard]] Money increased_receipts() const { return price_rises + receipt_speedups; }       // 6
    [[nodiscard]] Money reduced_disbursements() const { return cost_cuts + payment_delays; }        // 7
    [[nodiscard]] Money inherited() const { return increased_receipts() + reduced_disbursements() + tax_decrease; }
};

/// Rows I to IV for the variation from period-1 to period.
struct CashVariation {
    int base_period{0};
    int next_period{0};
    Money productivity_receipts;       // 1
    Money productivity_disbursements;  // 2
    TransferRows transfers;            // II, III
    Money dap_quantity;                // 9
    Money dap_price;                   // 10
    Money dap_cross;                   // 11
    Money delta_result_cash;           // 12, after tax

    [[nodiscard]] Money productivity() const { return productivity_receipts - productivity_disbursements; }
    /// Row IV as I + II + III.
    [[nodiscard]] Money caf_cash_by_flows() const
    {
        return productivity() + transfers.transferred() + transfers.inherited();
    }
    /// Row IV as 9 + 10 + 11 + 12.
    [[nodiscard]] Money caf_cash_by_components() const
    {
        return dap_quantity + dap_price + dap_cross + delta_result_cash;
    }
};

/// Row I: quantity changes of cash flows at base prices, weighted by the
/// base-period settled share.
Money productivity_cash_flow(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs);

TransferRows transferred_and_inherited_cash(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs);

/// Rows I to IV. Throws DecompositionMismatch if the two routes to row IV differ.
CashVariation caf_cash_variation(const ValidatedLedger& ledger, int n, const TransferCoefficients& coeffs);

/// Result after tax as settled in cash within period n: settled share of
/// cash products minus settled share of cash inputs, minus calculated
/// charges (net of non-cash products) and tax.
Money settled_result(const ValidatedLedger& ledger, int n);

/// Row V for period n: accounting minus settled change of the result from
/// n-1 to n, i.e. the net working-capital investment of period n.
Money deferred_net_cash_flow(const ValidatedLedger& ledger, int n);

struct CashDecompositionTable {
    int period{0};
    /// Rows I-IV for the variation n -> n+1.
    CashVariation variation;
    /// Row V for period n.
    Money deferred;
    /// Row VI = IV(n+1) + V(n).
    Money operating_cash_surplus;
};

/// Full I-VI table around period n. Needs periods n-1, n and n+1.
CashDecompositionTable operating_cash_surplus(const ValidatedLedger& ledger, int n);

struct WaterfallInputs {
    Money caf_before_interest;
    Money delta_bfr;
    Money net_investment;
    Money delta_debt;
};

struct WaterfallReport {
    int period{0};
    Money caf_before_interest;
    Money delta_bfr;
    Money operating_cash;
    Money net_investment;
    Money free_cash;
    Money delta_debt;
    Money free_cash_after_financing;
    /// Financing-table view: change of the working-capital fund, and the
    /// resulting change of treasury.
    Money delta_fr;
    Money delta_treasury;
    std::optional<Money> observed_delta_treasury;
};

WaterfallReport fcf_waterfall(const WaterfallInputs& inputs);

struct WaterfallComparison {
    WaterfallReport base;
    WaterfallReport next;
    WaterfallReport variation;  // next - base, field by field
    Money operating_cash_surplus;
};

/// Waterfalls of periods n and n+1 from the ledger. Throws
/// ReconciliationFailure when the operating-cash variation differs from
/// row VI, or when declared cash balances contradict dFR - dBFR.
WaterfallComparison fcf_waterfall(const ValidatedLedger& ledger, int n);

/// Waterfall of a single period n (needs n-1 for the working-capital change).
WaterfallReport waterfall_for_period(const ValidatedLedger& ledger, int n);

}  // namespace cashctl
