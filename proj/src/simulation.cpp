#include "cashctl/simulation.hpp"

#include "cashctl/breakeven.hpp"
#include "cashctl/error.hpp"

#include <algorithm>
#include <cstdint>

namespace cashctl {

namespace {

// Events run on exact scaled integers: time in ticks of 1/D day, units in
// 1/U, money in 1/M. Rationals are only rebuilt for reported values.
__extension__ using Wide = __int128;
__extension__ using UWide = unsigned __int128;
using Integer = Rational::Integer;

const Integer kWideLimit = Integer(1) << 120;
const Integer kTickLimit = Integer(1) << 62;

Integer lcm_of(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

Wide to_wide(const Integer& value)
{
    if (boost::multiprecision::abs(value) >= kWideLimit)
        throw Error(ErrorKind::InvalidInput, "values too fine-grained for the day-level simulation");
    Integer magnitude = boost::multiprecision::abs(value);
    auto lo = static_cast<unsigned long long>(magnitude & Integer(~0ULL));
    auto hi = static_cast<unsigned long long>(magnitude >> 64);
    Wide w = (static_cast<Wide>(hi) << 64) | static_cast<Wide>(lo);
    return value.sign() < 0 ? -w : w;
}

Integer from_wide(Wide w)
{
    bool negative = w < 0;
    auto magnitude = static_cast<UWide>(negative ? -w : w);
    Integer out = Integer(static_cast<unsigned long long>(magnitude >> 64));
    out <<= 64;
    out += Integer(static_cast<unsigned long long>(magnitude & ~0ULL));
    return negative ? Integer(-out) : out;
}

// Exact integer value of r * scale; scale must clear r's denominator.
Wide scaled(const Rational& r, const Integer& scale)
{
    return to_wide(r.numerator() * (scale / r.denominator()));
}

std::int64_t ticks(const Rational& r, const Integer& scale)
{
    Integer v = r.numerator() * (scale / r.denominator());
    if (boost::multiprecision::abs(v) >= kTickLimit)
        throw Error(ErrorKind::InvalidInput, "sales timing too fine-grained for the day-level simulation");
    return static_cast<std::int64_t>(v);
}

struct Sale {
    std::int64_t tick;
    Wide units;  // in 1/U
};

struct Scales {
    Integer time{1};   // D
    Integer units{1};  // U
    Integer money{1};  // M = L * U
    Integer price{1};  // L
};

Scales choose_scales(const CostStructure& cs, const CashLagProfile& profile, const SalesSchedule& schedule,
                     const UnitValue& cash_variable)
{
    const Rational month_days(kDaysPerMonth);
    Scales s;
    s.time = lcm_of(s.time, (profile.customer_credit_months * month_days).denominator());
    s.time = lcm_of(s.time, (profile.supplier_credit_months * month_days).denominator());
    s.time = lcm_of(s.time, (profile.modulation_month * month_days).denominator());
    if (profile.cycle_capacity) s.units = lcm_of(s.units, profile.cycle_capacity->denominator());
    if (schedule.is_steady()) {
        if (schedule.rate().sign() > 0) {
            Rational spacing = month_days / schedule.rate();
            s.time = lcm_of(s.time, spacing.denominator());
            // a fractional capacity ends on a partial unit sold part-way through a spacing
            if (profile.cycle_capacity)
                s.time = lcm_of(s.time, (spacing * (*profile.cycle_capacity - Rational(profile.cycle_capacity->floor())))
                                            .denominator());
        }
    } else {
        for (const auto& units : schedule.months()) {
            if (units.sign() <= 0) continue;
            s.time = lcm_of(s.time, (month_days / units).denominator());
            s.units = lcm_of(s.units, units.denominator());
        }
    }
    for (const Rational* r : {&cs.unit_price, &cash_variable, &cs.fixed_cash, &profile.modulated_fixed,
                              &profile.anticipated_variable})
        s.price = lcm_of(s.price, r->denominator());
    s.money = s.price * s.units;
    return s;
}

// Sales in time order, stopping at the horizon or at the capacity.
std::vector<Sale> generate_sales(const SalesSchedule& schedule, const std::optional<Quantity>& capacity,
                                 std::int64_t horizon, const Scales& sc)
{
    std::vector<Sale> sales;
    const Wide one = to_wide(sc.units);
    Wide remaining = capacity ? scaled(*capacity, sc.units) : Wide(0);
    auto exhausted = [&] { return capacity && remaining <= 0; };
    auto take = [&](Wide wanted) {
        if (!capacity) return wanted;
        Wide q = std::min(wanted, remaining);
        remaining -= q;
        return q;
    };

    const Rational month_days(kDaysPerMonth);
    if (schedule.is_steady()) {
        if (schedule.rate().sign() <= 0) return sales;
        const Rational spacing = month_days / schedule.rate();
        const std::int64_t step = ticks(spacing, sc.time);
        for (std::int64_t k = 1;; ++k) {
            std::int64_t tick = step * k;
            if (tick > horizon || exhausted()) break;
            Wide q = take(one);
            if (q < one) tick = ticks(spacing * (Rational(k - 1) + Rational(from_wide(q), sc.units)), sc.time);
            sales.push_back({tick, q});
        }
        return sales;
    }

    const auto& months = schedule.months();
    const std::int64_t month_ticks = ticks(month_days, sc.time);
    for (std::size_t i = 0; i < months.size(); ++i) {
        const Quantity& units = months[i];
        if (units.sign() <= 0) continue;
        const std::int64_t start = month_ticks * static_cast<std::int64_t>(i);
        const std::int64_t step = ticks(month_days / units, sc.time);
        auto whole = static_cast<long long>(units.floor());
        Wide fraction = scaled(units - Rational(whole), sc.units);
        for (long long j = 1; j <= whole; ++j) {
            std::int64_t tick = start + step * j;
            if (tick > horizon || exhausted()) return sales;
            sales.push_back({tick, take(one)});
        }
        if (fraction > 0) {
            std::int64_t tick = start + month_ticks;
            if (tick > horizon || exhausted()) return sales;
            sales.push_back({tick, take(fraction)});
        }
    }
    return sales;
}

struct Event {
    std::int64_t tick;
    Wide cash;   // signed, in 1/M
    Wide units;  // units sold, in 1/U
};

}  // namespace

SalesSchedule SalesSchedule::steady(Quantity units_per_month)
{
    if (units_per_month.sign() < 0) throw Error(ErrorKind::InvalidInput, "sales rate must be non-negative");
    SalesSchedule s;
    s.rate_ = std::move(units_per_month);
    return s;
}

SalesSchedule SalesSchedule::monthly(std::vector<Quantity> units_per_month)
{
    for (const auto& q : units_per_month)
        if (q.sign() < 0) throw Error(ErrorKind::InvalidInput, "monthly sales must be non-negative");
    SalesSchedule s;
    s.months_ = std::move(units_per_month);
    return s;
}

SalesSchedule SalesSchedule::from_profile(const CashLagProfile& profile, int horizon_months)
{
    if (!profile.seasonal_weights) return steady(profile.monthly_sales);
    auto weights = profile.normalized_weights();
    std::vector<Quantity> months;
    months.reserve(static_cast<std::size_t>(std::max(horizon_months, 0)));
    for (int i = 0; i < horizon_months; ++i)
        months.push_back(Rational(12) * profile.monthly_sales * weights[static_cast<std::size_t>(i % 12)]);
    return monthly(std::move(months));
}

std::optional<int> cycle_length_days(const CashLagProfile& profile, const SalesSchedule& schedule)
{
    Rational last_sale_month;
    if (schedule.is_steady()) {
        if (!profile.cycle_capacity || schedule.rate().sign() <= 0) return std::nullopt;
        last_sale_month = *profile.cycle_capacity / schedule.rate();
    } else {
        Quantity sold;
        std::size_t i = 0;
        const auto& months = schedule.months();
        for (; i < months.size(); ++i) {
            sold += months[i];
            if (profile.cycle_capacity && sold >= *profile.cycle_capacity) break;
        }
        last_sale_month = Rational(static_cast<long long>(std::min(i + 1, months.size())));
    }
    Rational lag = max(profile.customer_credit_months, profile.supplier_credit_months);
    Rational end = max(last_sale_month + lag, profile.modulation_month);
    return static_cast<int>((end * Rational(kDaysPerMonth)).ceil());
}

SimulationResult simulate_cash_days(const CostStructure& cs, const CashLagProfile& profile,
                                    const SalesSchedule& schedule, int horizon_days)
{
    cs.validate();
    profile.validate(cs);
    if (horizon_days < 0) throw Error(ErrorKind::InvalidInput, "negative horizon");
    if (auto cycle = cycle_length_days(profile, schedule); cycle && horizon_days < *cycle)
        throw Error(ErrorKind::InvalidInput, "horizon of " + std::to_string(horizon_days) +
                                                 " days is shorter than the cycle (" + std::to_string(*cycle) +
                                                 " days)");

    const Rational month_days(kDaysPerMonth);
    const UnitValue cash_variable = cash_variable_cost(profile, cs);
    const Scales sc = choose_scales(cs, profile, schedule, cash_variable);
    const std::int64_t horizon = ticks(Rational(horizon_days), sc.time);
    const std::int64_t ticks_per_day = ticks(Rational(1), sc.time);

    std::vector<Sale> sales = generate_sales(schedule, profile.cycle_capacity, horizon, sc);
    const Wide price = scaled(cs.unit_price, sc.price);
    const Wide variable = scaled(cash_variable, sc.price);
    const std::int64_t receipt_delay = ticks(profile.customer_credit_months * month_days, sc.time);
    const std::int64_t payment_delay = ticks(profile.supplier_credit_months * month_days, sc.time);

    std::vector<Event> events;
    events.reserve(3 * sales.size() + 2);
    events.push_back({0, -scaled(cs.fixed_cash - profile.modulated_fixed + profile.anticipated_variable, sc.money), 0});
    if (!profile.modulated_fixed.is_zero()) {
        std::int64_t when = ticks(profile.modulation_month * month_days, sc.time);
        if (when <= horizon) events.push_back({when, -scaled(profile.modulated_fixed, sc.money), 0});
    }
    std::size_t cash_events = events.size();
    for (const auto& s : sales) {
        events.push_back({s.tick, 0, s.units});
        if (price != 0 && s.tick + receipt_delay <= horizon) {
            events.push_back({s.tick + receipt_delay, price * s.units, 0});
            ++cash_events;
        }
        if (variable != 0 && s.tick + payment_delay <= horizon) {
            events.push_back({s.tick + payment_delay, -variable * s.units, 0});
            ++cash_events;
        }
    }
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.tick < b.tick; });

    std::vector<Wide> inflow(static_cast<std::size_t>(horizon_days) + 1, 0);
    std::vector<Wide> outflow(inflow.size(), 0);

    struct Group {
        std::int64_t tick;
        Wide cash;
        Wide units;
    };
    std::vector<Group> groups;
    Wide cash = 0;
    Wide units = 0;
    for (std::size_t i = 0; i < events.size();) {
        const std::int64_t now = events[i].tick;
        auto day = static_cast<std::size_t>(now / ticks_per_day);
        for (; i < events.size() && events[i].tick == now; ++i) {
            const Event& e = events[i];
            cash += e.cash;
            units += e.units;
            (e.cash > 0 ? inflow[day] : outflow[day]) += e.cash > 0 ? e.cash : -e.cash;
        }
        groups.push_back({now, cash, units});
    }

    auto money = [&](Wide w) { return Rational(from_wide(w), sc.money); };
    auto time = [&](std::int64_t t) { return Rational(Integer(t), sc.time); };

    SimulationResult result;
    result.event_count = cash_events;
    result.series.resize(inflow.size());
    Wide running = 0;
    for (std::size_t d = 0; d < inflow.size(); ++d) {
        running += inflow[d] - outflow[d];
        auto& point = result.series[d];
        point.day = static_cast<int>(d);
        point.inflow = money(inflow[d]);
        point.outflow = money(outflow[d]);
        point.cumulative = money(running);
    }
    result.final_cash = money(cash);

    if (cash >= 0) {
        std::optional<std::size_t> last_negative;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (groups[g].cash < 0) last_negative = g;
        Rational when;
        Quantity sold_then;
        if (last_negative) {
            const Group& g = groups[*last_negative + 1];
            when = time(g.tick);
            sold_then = Rational(from_wide(g.units), sc.units);
        }
        result.solvency_time = when;
        result.solvency_day = static_cast<int>(when.ceil());
        result.units_sold_at_solvency = sold_then;
        if (schedule.is_steady()) result.activity_volume_at_solvency = schedule.rate() * when / month_days;
    }

    bool seen_negative = false;
    for (const auto& g : groups) {
        if (g.cash < 0) {
            seen_negative = true;
        } else if (seen_negative) {
            result.first_crossing_time = time(g.tick);
            break;
        }
    }
    if (!seen_negative) result.first_crossing_time = Rational(0);
    return result;
}

}  // namespace cashctl
