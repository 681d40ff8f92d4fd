#pragma once

#include "cashctl/model.hpp"

#include <string>
#include <vector>

namespace cashctl {

enum class Counterparty { Firm, Customers, Suppliers, Owners };

enum class SurplusItemKind {
    /// Price change on an output, valued at next-period quantities.
    OutputPrice,
    /// Unit-cost change on an input, valued at next-period quantities.
    InputPrice,
    /// Change of the result before tax.
    Result,
};

struct SurplusItem {
    SurplusItemKind kind{SurplusItemKind::Result};
    std::string flow_id;
    Counterparty counterparty{Counterparty::Firm};
    Money amount;  // always positive; the side of the account gives the direction
};

/// Two-sided surplus account between consecutive periods. Resources are the
/// productivity surplus plus what the firm inherits (output price rises,
/// input cost falls, a lower result); uses are what it hands out (output
/// price cuts, input cost rises, a higher result).
struct SurplusReport {
    Money productivity;
    std::vector<SurplusItem> resources;
    std::vector<SurplusItem> uses;
    Money delta_result;
    /// Split of the result change between the State and the owners.
    Money delta_tax;
    Money delta_result_after_tax;
    bool balance_ok{false};

    [[nodiscard]] Money total_resources() const;  // productivity included
    [[nodiscard]] Money total_uses() const;
};

/// Change of the self-financing capacity, split over the calculated charges.
struct CafSurplusReport {
    Money dap_quantity;  // sum dF * f
    Money dap_price;     // sum df * F
    Money dap_cross;     // sum dF * df
    Money delta_result;  // before tax
    Money total;
};

/// Cash-relevant split of the change of the virtual treasury: productivity on
/// cash-effective flows at base prices, and the price effects inherited from
/// or transferred to customers and suppliers. Transferred amounts are <= 0.
struct VirtualCashSurplus {
    Money productivity;
    Money inherited_from_customers;
    Money inherited_from_suppliers;
    Money transferred_to_customers;
    Money transferred_to_suppliers;
    CafSurplusReport caf;
    Money delta_tax;

    /// Change of the self-financing capacity after tax.
    [[nodiscard]] Money delta_caf_after_tax() const { return caf.total - delta_tax; }
};

/// Quantity changes valued at base-period prices: sum p dP - sum f dF over
/// every flow, calculated charges included. May be negative.
Money productivity_surplus(const PeriodAccount& base, const PeriodAccount& next);

/// Throws BalanceViolation if the two sides do not balance exactly.
SurplusReport surplus_accounts(const PeriodAccount& base, const PeriodAccount& next);

CafSurplusReport caf_surplus(const PeriodAccount& base, const PeriodAccount& next);

VirtualCashSurplus virtual_cash_surplus(const PeriodAccount& base, const PeriodAccount& next);

}  // namespace cashctl
