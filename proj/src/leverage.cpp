#include "cashctl/leverage.hpp"

#include "cashctl/error.hpp"

#include <algorithm>
#include <cmath>

namespace cashctl {

namespace {

void require_positive_margin(const UnitValue& margin)
{
    if (margin.sign() <= 0)
        throw Error(ErrorKind::NonPositiveMargin, "unit margin " + margin.to_exact_string() + " is not positive");
}

void require_non_negative_fixed(const Money& fixed)
{
    if (fixed.sign() < 0) throw Error(ErrorKind::InvalidInput, "fixed charges must be non-negative");
}

}  // namespace

Money fixed_charges(const CostStructure& cs, LeverageBasis basis)
{
    return basis == LeverageBasis::Term ? cs.fixed_total : cs.fixed_cash;
}

Money virtual_treasury(const UnitValue& margin, const Quantity& quantity, const Money& fixed)
{
    return margin * quantity - fixed;
}

Rational elasticity_wrt_volume(const Money& fixed, const UnitValue& margin, const Quantity& quantity)
{
    require_non_negative_fixed(fixed);
    require_positive_margin(margin);
    if (quantity.sign() < 0) throw Error(ErrorKind::InvalidInput, "volume must be non-negative");
    Money treasury = virtual_treasury(margin, quantity, fixed);
    if (treasury.is_zero())
        throw Error(ErrorKind::AtCriticalProduction, "volume " + quantity.to_exact_string() +
                                                         " is the critical production; elasticity is unbounded");
    return margin * quantity / treasury;
}

Rational elasticity_wrt_volume(const CostStructure& cs, LeverageBasis basis, const Quantity& quantity)
{
    return elasticity_wrt_volume(fixed_charges(cs, basis), cs.unit_margin(), quantity);
}

Rational elasticity_wrt_margin(const Money& fixed, const UnitValue& margin, const Quantity& quantity)
{
    require_non_negative_fixed(fixed);
    // m = 0 is the left end of the margin table (E = 0), like Q = 0 for the volume
    if (margin.sign() < 0)
        throw Error(ErrorKind::NonPositiveMargin, "unit margin " + margin.to_exact_string() + " is negative");
    if (quantity.sign() <= 0) throw Error(ErrorKind::ZeroProduction, "volume must be positive");
    UnitValue gap = margin - fixed / quantity;
    if (gap.is_zero())
        throw Error(ErrorKind::AtCriticalMargin, "margin " + margin.to_exact_string() +
                                                     " is the critical margin; elasticity is unbounded");
    return margin / gap;
}

Rational elasticity_wrt_margin(const CostStructure& cs, LeverageBasis basis, const UnitValue& margin,
                               const Quantity& quantity)
{
    return elasticity_wrt_margin(fixed_charges(cs, basis), margin, quantity);
}

Quantity critical_production(const Money& fixed, const UnitValue& margin)
{
    require_non_negative_fixed(fixed);
    require_positive_margin(margin);
    return fixed / margin;
}

Quantity critical_production(const CostStructure& cs, LeverageBasis basis)
{
    return critical_production(fixed_charges(cs, basis), cs.unit_margin());
}

UnitValue critical_margin(const Money& fixed, const Quantity& quantity)
{
    require_non_negative_fixed(fixed);
    if (quantity.sign() <= 0) throw Error(ErrorKind::ZeroProduction, "volume must be positive");
    return fixed / quantity;
}

UnitValue critical_margin(const CostStructure& cs, LeverageBasis basis, const Quantity& quantity)
{
    return critical_margin(fixed_charges(cs, basis), quantity);
}

RuptureMatrix rupture_matrix(const CostStructure& cs, const Quantity& quantity, const UnitValue& margin)
{
    return RuptureMatrix{
        critical_production(cs.fixed_cash, margin),
        critical_production(cs.fixed_total, margin),
        critical_margin(cs.fixed_cash, quantity),
        critical_margin(cs.fixed_total, quantity),
    };
}

std::vector<std::pair<Quantity, UnitValue>> indifference_curve(const Money& fixed, const std::vector<Quantity>& grid)
{
    require_non_negative_fixed(fixed);
    std::vector<std::pair<Quantity, UnitValue>> out;
    out.reserve(grid.size());
    for (const auto& q : grid) out.emplace_back(q, critical_margin(fixed, q));
    return out;
}

std::vector<Rational> default_grid(const Rational& pole)
{
    if (pole.sign() <= 0)
        throw Error(ErrorKind::InvalidInput, "a default grid needs a positive pole; pass an explicit grid");
    constexpr int per_decade = 200;
    constexpr double lo = 0.1;
    constexpr double hi = 4.0;
    const Rational neighbourhood = Rational::parse("1e-9") * pole;
    const double base = pole.to_double();
    const int steps = static_cast<int>(std::floor(std::log10(hi / lo) * per_decade));

    std::vector<Rational> grid;
    for (int i = 0; i <= steps; ++i) {
        double x = base * lo * std::pow(10.0, static_cast<double>(i) / per_decade);
        Rational q = Rational::from_double(x);
        if ((q - pole).abs() <= neighbourhood) continue;
        grid.push_back(std::move(q));
    }
    for (const Rational& factor : {Rational(1, 2), Rational(2, 3), Rational(2), Rational(3)})
        grid.push_back(pole * factor);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<Curve> emit_curve_data(const CurveRequest& request)
{
    std::vector<Curve> curves;

    Curve volume{"elasticity_volume", "Q", "E_T/Q", {}};
    std::vector<Quantity> volume_grid = request.volume_grid;
    if (volume_grid.empty()) volume_grid = default_grid(critical_production(request.fixed, request.margin));
    for (const auto& q : volume_grid) {
        if (virtual_treasury(request.margin, q, request.fixed).is_zero()) continue;
        volume.points.emplace_back(q, elasticity_wrt_volume(request.fixed, request.margin, q));
    }
    curves.push_back(std::move(volume));

    Curve margin{"elasticity_margin", "m", "E_T/m", {}};
    std::vector<UnitValue> margin_grid = request.margin_grid;
    if (margin_grid.empty()) margin_grid = default_grid(critical_margin(request.fixed, request.quantity));
    for (const auto& m : margin_grid) {
        if (virtual_treasury(m, request.quantity, request.fixed).is_zero()) continue;
        margin.points.emplace_back(m, elasticity_wrt_margin(request.fixed, m, request.quantity));
    }
    curves.push_back(std::move(margin));

    for (const auto& f : request.indifference_fixed) {
        std::vector<Quantity> grid = request.indifference_grid;
        if (grid.empty()) grid = volume_grid;
        Curve curve{"indifference_F=" + f.to_exact_string(), "Q", "m", {}};
        for (auto& [q, m] : indifference_curve(f, grid)) curve.points.emplace_back(std::move(q), std::move(m));
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace cashctl
