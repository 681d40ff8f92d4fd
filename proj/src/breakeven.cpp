#include "cashctl/breakeven.hpp"

#include "cashctl/error.hpp"

namespace cashctl {

namespace {

struct RuleResult {
    Quantity threshold;
    BindingFormula binding{BindingFormula::Standard};
    Quantity standard_value;
    Quantity anticipated_cap_value;
    std::optional<Quantity> total_charges_cap_value;
};

struct Inputs {
    UnitValue price;
    UnitValue cash_variable;
    UnitValue margin;
    Money deferred_variable;
    Money deferred_receipts;
    bool receipts_lag_payments{false};
    std::optional<Quantity> capacity;
};

// Last zero of the cumulative cash line when `upfront` leaves at the start of
// the cycle. Between the two credit delays only one of receipts and variable
// payments is running, which is where the caps take over.
RuleResult apply_rule(const Inputs& in, const Money& upfront)
{
    RuleResult r;
    r.standard_value = (upfront - in.deferred_variable + in.deferred_receipts) / in.margin;
    r.anticipated_cap_value = (upfront + in.deferred_receipts) / in.price;
    r.threshold = r.standard_value;
    if (r.anticipated_cap_value > r.threshold) {
        r.threshold = r.anticipated_cap_value;
        r.binding = BindingFormula::AnticipatedCap;
    }
    if (in.capacity && in.receipts_lag_payments) {
        Money total_charges = upfront + in.cash_variable * *in.capacity;
        r.total_charges_cap_value = (total_charges + in.deferred_receipts) / in.price;
        if (*r.total_charges_cap_value < r.threshold) {
            r.threshold = *r.total_charges_cap_value;
            r.binding = BindingFormula::TotalChargesCap;
        }
    }
    return r;
}

// Portion of a flow spread uniformly over (start, start + 1] months that lands
// in each month bucket.
void spread(std::vector<Money>& buckets, const Rational& start, const Money& amount)
{
    if (amount.is_zero()) return;
    auto whole = start.floor();
    Rational frac = start - Rational(whole, 1);
    auto first = static_cast<long long>(whole) + 1;
    auto put = [&](long long month, const Money& part) {
        if (part.is_zero()) return;
        if (month >= 0 && month < static_cast<long long>(buckets.size()))
            buckets[static_cast<std::size_t>(month)] += part;
    };
    put(first, amount * (Rational(1) - frac));
    put(first + 1, amount * frac);
}

void book_at(std::vector<Money>& buckets, const Rational& month, const Money& amount)
{
    auto index = static_cast<long long>(month.ceil());
    if (index >= 0 && index < static_cast<long long>(buckets.size()))
        buckets[static_cast<std::size_t>(index)] += amount;
}

}  // namespace

Quantity liquidity_threshold(const CostStructure& cs)
{
    UnitValue margin = cs.unit_margin();
    if (margin.sign() <= 0)
        throw Error(ErrorKind::NonPositiveMargin, "unit margin " + margin.to_exact_string() + " is not positive");
    return cs.fixed_cash / margin;
}

UnitValue cash_variable_cost(const CashLagProfile& profile, const CostStructure& cs)
{
    if (profile.anticipation_case == AnticipationCase::SingleInputAllUpfront)
        return cs.unit_variable_cost - profile.anticipated_unit_component;
    return cs.unit_variable_cost;
}

Money supplier_credit_offset(const CashLagProfile& profile, const CostStructure& cs)
{
    return cash_variable_cost(profile, cs) * profile.supplier_credit_months * profile.monthly_sales;
}

Money customer_credit_delay(const CashLagProfile& profile, const CostStructure& cs)
{
    return cs.unit_price * profile.customer_credit_months * profile.monthly_sales;
}

ThresholdReport solvency_threshold(const CostStructure& cs, const CashLagProfile& profile)
{
    cs.validate();
    profile.validate(cs);
    ThresholdReport report;
    report.liquidity_threshold = liquidity_threshold(cs);

    Inputs in;
    in.price = cs.unit_price;
    in.cash_variable = cash_variable_cost(profile, cs);
    in.margin = in.price - in.cash_variable;
    if (in.margin.sign() <= 0)
        throw Error(ErrorKind::NonPositiveMargin,
                    "effective unit margin " + in.margin.to_exact_string() + " is not positive");
    in.deferred_variable = supplier_credit_offset(profile, cs);
    in.deferred_receipts = customer_credit_delay(profile, cs);
    in.receipts_lag_payments = profile.customer_credit_months > profile.supplier_credit_months;
    in.capacity = profile.cycle_capacity;

    Money all_upfront = cs.fixed_cash + profile.anticipated_variable;
    if (in.capacity) {
        Money total_charges = all_upfront + in.cash_variable * *in.capacity;
        Money total_receipts = in.price * *in.capacity;
        if (total_receipts < total_charges)
            throw Error(ErrorKind::InfeasibleCycle, "receipts of the whole cycle (" +
                                                        total_receipts.to_exact_string() +
                                                        ") never cover its cash charges (" +
                                                        total_charges.to_exact_string() + ")");
    }

    RuleResult pre = apply_rule(in, all_upfront);
    report.pre_modulation_threshold = pre.threshold;
    RuleResult chosen = pre;

    if (!profile.modulated_fixed.is_zero()) {
        // The deferral only counts in full when the deferred payment falls at
        // or after the date the unmodulated threshold is reached. Without a
        // sales rate there is no calendar, so the deferral is taken as given.
        bool qualifies = true;
        if (profile.monthly_sales.sign() > 0)
            qualifies = profile.modulation_month >= pre.threshold / profile.monthly_sales;
        if (qualifies) {
            chosen = apply_rule(in, all_upfront - profile.modulated_fixed);
            report.modulation_applied = true;
        }
    }

    report.solvency_threshold = chosen.threshold;
    report.binding = chosen.binding;
    report.standard_value = chosen.standard_value;
    report.anticipated_cap_value = chosen.anticipated_cap_value;
    report.total_charges_cap_value = chosen.total_charges_cap_value;
    report.components = ThresholdComponents{
        cs.fixed_cash,
        report.modulation_applied ? profile.modulated_fixed : Money{},
        profile.anticipated_variable,
        in.deferred_variable,
        in.deferred_receipts,
        in.margin,
    };
    if (profile.monthly_sales.sign() > 0) report.solvency_month = report.solvency_threshold / profile.monthly_sales;
    return report;
}

std::vector<MonthlyCashPoint> monthly_cash_series(const CostStructure& cs, const CashLagProfile& profile,
                                                  int horizon_months)
{
    if (horizon_months < 1) throw Error(ErrorKind::InvalidInput, "horizon must be at least one month");
    const auto size = static_cast<std::size_t>(horizon_months) + 1;
    std::vector<Money> inflow(size);
    std::vector<Money> outflow(size);
    std::vector<Quantity> sold(size);

    std::optional<std::vector<Rational>> weights;
    if (profile.seasonal_weights) weights = profile.normalized_weights();

    UnitValue cash_variable = cash_variable_cost(profile, cs);
    outflow[0] += cs.fixed_cash - profile.modulated_fixed + profile.anticipated_variable;
    book_at(outflow, profile.modulation_month, profile.modulated_fixed);

    Quantity cumulative_units;
    for (int month = 1; month <= horizon_months; ++month) {
        Quantity units = profile.monthly_sales;
        if (weights) units = Rational(12) * profile.monthly_sales * (*weights)[static_cast<std::size_t>((month - 1) % 12)];
        if (profile.cycle_capacity) units = min(units, *profile.cycle_capacity - cumulative_units);
        cumulative_units += units;
        sold[static_cast<std::size_t>(month)] = units;
        Rational start(month - 1);
        spread(inflow, start + profile.customer_credit_months, cs.unit_price * units);
        spread(outflow, start + profile.supplier_credit_months, cash_variable * units);
    }

    std::vector<MonthlyCashPoint> series;
    series.reserve(size);
    Money cumulative;
    Quantity units_total;
    for (std::size_t m = 0; m < size; ++m) {
        cumulative += inflow[m] - outflow[m];
        units_total += sold[m];
        series.push_back({static_cast<int>(m), inflow[m], outflow[m], cumulative, units_total});
    }
    return series;
}

SeasonalSolvency seasonal_solvency(const CostStructure& cs, const CashLagProfile& profile, int horizon_months)
{
    if (!profile.seasonal_weights) throw Error(ErrorKind::InvalidInput, "seasonal weights are required");
    if (horizon_months < 12) throw Error(ErrorKind::InvalidInput, "seasonal horizon must be at least 12 months");
    profile.validate(cs);

    SeasonalSolvency out;
    out.series = monthly_cash_series(cs, profile, horizon_months);
    if (out.series.back().cumulative.sign() < 0)
        throw Error(ErrorKind::NeverSolvent, "cumulative cash is still negative after " +
                                                 std::to_string(horizon_months) + " months");
    int last_negative = -1;
    for (const auto& point : out.series)
        if (point.cumulative.sign() < 0) last_negative = point.month;
    out.month = last_negative + 1;
    out.cumulative_units = out.series[static_cast<std::size_t>(out.month)].units_sold;
    bool seen_negative = false;
    for (const auto& point : out.series) {
        if (point.cumulative.sign() < 0) {
            seen_negative = true;
        } else if (seen_negative) {
            out.first_crossing_month = point.month;
            break;
        }
    }
    return out;
}

}  // namespace cashctl
