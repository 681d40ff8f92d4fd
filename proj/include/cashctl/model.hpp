#pragma once

#include "cashctl/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cashctl {

// ---------------------------------------------------------------------------
// Cost-volume-cash inputs
// ---------------------------------------------------------------------------

/// Single-product cost structure. Fixed charges are split into the part that
/// is paid out (cash) and the calculated part (depreciation, provisions).
struct CostStructure {
    Money fixed_total;
    Money fixed_cash;
    Money fixed_calculated;
    UnitValue unit_price;
    UnitValue unit_variable_cost;

    /// Builds a structure with fixed_total = fixed_cash + fixed_calculated.
    static CostStructure from_parts(Money fixed_cash, Money fixed_calculated, UnitValue price,
                                    UnitValue variable_cost);

    [[nodiscard]] UnitValue unit_margin() const { return unit_price - unit_variable_cost; }

    /// Throws InvalidInput unless the fixed split adds up and nothing is negative.
    void validate() const;

    friend bool operator==(const CostStructure&, const CostStructure&) = default;
};

enum class AnticipationCase {
    /// A buffer of whole-unit variable costs is bought before the cycle and
    /// kept replenished; the unit margin is unchanged.
    WholeUnits,
    /// One input is bought in full before the cycle; its unit cost no longer
    /// leaves cash per unit sold.
    SingleInputAllUpfront,
};

struct CashLagProfile {
    Money modulated_fixed{0};
    Rational modulation_month{0};
    Money anticipated_variable{0};
    AnticipationCase anticipation_case{AnticipationCase::WholeUnits};
    UnitValue anticipated_unit_component{0};
    Rational supplier_credit_months{0};
    Rational customer_credit_months{0};
    Quantity monthly_sales{0};
    std::optional<std::vector<Rational>> seasonal_weights;
    std::optional<Quantity> cycle_capacity;

    [[nodiscard]] bool has_lags() const;

    /// Weights scaled to sum to one. Throws InvalidInput if absent or degenerate.
    [[nodiscard]] std::vector<Rational> normalized_weights() const;

    void validate(const CostStructure& cs) const;

    friend bool operator==(const CashLagProfile&, const CashLagProfile&) = default;
};

struct Scenario {
    std::string name;
    CostStructure cost;
    CashLagProfile lags;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// Multi-period operating ledger
// ---------------------------------------------------------------------------

enum class FlowKind { Product, Input };

struct FlowLine {
    std::string id;
    FlowKind kind{FlowKind::Product};
    bool cash_effective{true};
    Quantity quantity;
    UnitValue unit_value;

    [[nodiscard]] Money value() const { return quantity * unit_value; }

    friend bool operator==(const FlowLine&, const FlowLine&) = default;
};

struct PeriodAccount {
    int period{0};
    std::vector<FlowLine> lines;
    Money result_before_tax;
    Money tax{0};

    [[nodiscard]] Money result_after_tax() const { return result_before_tax - tax; }
    [[nodiscard]] const FlowLine* find(const std::string& id) const;

    [[nodiscard]] Money total(FlowKind kind) const;
    /// Value of the lines of one kind that are (or are not) cash-effective.
    [[nodiscard]] Money total(FlowKind kind, bool cash_effective) const;

    /// Calculated charges net of non-cash products: the amount added back to
    /// the result to obtain the self-financing capacity.
    [[nodiscard]] Money non_cash_net_charges() const;

    /// Self-financing capacity after tax: result after tax plus calculated charges.
    [[nodiscard]] Money self_financing_capacity() const;

    friend bool operator==(const PeriodAccount&, const PeriodAccount&) = default;
};

struct FlowStock {
    int period{0};
    std::string flow_id;
    Money stock_end;

    friend bool operator==(const FlowStock&, const FlowStock&) = default;
};

/// Investment and financing flows of one period, used by the free-cash-flow
/// waterfall. cash_balance, when given, is checked against the waterfall.
struct PeriodFinancing {
    int period{0};
    Money net_investment{0};
    Money debt_change{0};
    std::optional<Money> cash_balance;

    friend bool operator==(const PeriodFinancing&, const PeriodFinancing&) = default;
};

struct Ledger {
    std::vector<PeriodAccount> periods;
    std::vector<FlowStock> stocks;
    std::vector<PeriodFinancing> financing;

    friend bool operator==(const Ledger&, const Ledger&) = default;
};

/// One flow seen in two consecutive periods. A flow absent from one side is
/// represented with zero quantity and zero unit value on that side.
struct FlowPair {
    std::string id;
    FlowKind kind{FlowKind::Product};
    bool cash_effective{true};
    Quantity base_quantity;
    UnitValue base_unit_value;
    Quantity next_quantity;
    UnitValue next_unit_value;

    [[nodiscard]] Quantity delta_quantity() const { return next_quantity - base_quantity; }
    [[nodiscard]] UnitValue delta_unit_value() const { return next_unit_value - base_unit_value; }
    [[nodiscard]] Money base_value() const { return base_quantity * base_unit_value; }
    [[nodiscard]] Money next_value() const { return next_quantity * next_unit_value; }
};

/// Flows of two periods matched by id, sorted by id. A flow present on one
/// side only is paired with a zero line. Throws UnmatchedFlow when the same
/// id changes kind or cash flag.
std::vector<FlowPair> match_flows(const PeriodAccount& base, const PeriodAccount& next);

/// A ledger that passed validate_ledger(). Periods are sorted and contiguous.
class ValidatedLedger {
public:
    [[nodiscard]] const Ledger& ledger() const { return ledger_; }
    [[nodiscard]] int first_period() const { return ledger_.periods.front().period; }
    [[nodiscard]] int last_period() const { return ledger_.periods.back().period; }
    [[nodiscard]] bool has_period(int n) const { return n >= first_period() && n <= last_period(); }

    /// Throws InsufficientPeriods for an index outside the ledger.
    [[nodiscard]] const PeriodAccount& period(int n) const;

    /// Flows of periods n-1 and n matched by id, sorted by id.
    [[nodiscard]] std::vector<FlowPair> pair(int n) const;

    /// Declared end-of-period stock of a flow, zero when none was declared.
    [[nodiscard]] Money stock(int n, const std::string& flow_id) const;

    /// Net working-capital requirement held in flow stocks at the end of n:
    /// stocks on products minus stocks on inputs.
    [[nodiscard]] Money working_capital(int n) const;

    [[nodiscard]] const PeriodFinancing* financing(int n) const;

private:
    friend ValidatedLedger validate_ledger(Ledger ledger);

    Ledger ledger_;
    std::map<std::pair<int, std::string>, Money> stocks_;
};

/// Checks every ledger invariant and indexes the stocks. Throws Error with
/// IdentityViolation, UnmatchedFlow, NegativeQuantity, CoefficientOutOfRange,
/// InsufficientPeriods or InvalidInput.
ValidatedLedger validate_ledger(Ledger ledger);

}  // namespace cashctl
