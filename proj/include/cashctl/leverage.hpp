#pragma once

#include "cashctl/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cashctl {

/// Which fixed charges the leverage is measured against.
enum class LeverageBasis {
    /// All structural charges, calculated ones included ("à terme").
    Term,
    /// Cash-disbursable structural charges only ("immédiate").
    Immediate,
};

Money fixed_charges(const CostStructure& cs, LeverageBasis basis);

/// Virtual treasury m*Q - F.
Money virtual_treasury(const UnitValue& margin, const Quantity& quantity, const Money& fixed);

// Elasticities of the virtual treasury, both equal to mQ / (mQ - F).
Rational elasticity_wrt_volume(const Money& fixed, const UnitValue& margin, const Quantity& quantity);
Rational elasticity_wrt_volume(const CostStructure& cs, LeverageBasis basis, const Quantity& quantity);
Rational elasticity_wrt_margin(const Money& fixed, const UnitValue& margin, const Quantity& quantity);
Rational elasticity_wrt_margin(const CostStructure& cs, LeverageBasis basis, const UnitValue& margin,
                               const Quantity& quantity);

/// Volume at which the margin covers the fixed charges, F / m.
Quantity critical_production(const Money& fixed, const UnitValue& margin);
Quantity critical_production(const CostStructure& cs, LeverageBasis basis);

/// Margin at which a given volume covers the fixed charges, F / Q.
UnitValue critical_margin(const Money& fixed, const Quantity& quantity);
UnitValue critical_margin(const CostStructure& cs, LeverageBasis basis, const Quantity& quantity);

struct RuptureMatrix {
    Quantity q_immediate;
    Quantity q_term;
    UnitValue m_immediate;
    UnitValue m_term;
};

/// The four liquidity-rupture indicators at volume `quantity` and margin `margin`.
RuptureMatrix rupture_matrix(const CostStructure& cs, const Quantity& quantity, const UnitValue& margin);

/// Points (Q, F/Q) of zero virtual treasury for fixed charges F.
std::vector<std::pair<Quantity, UnitValue>> indifference_curve(const Money& fixed, const std::vector<Quantity>& grid);

/// Log-spaced grid over [0.1, 4] x pole, 200 points per decade, with the
/// points within a relative 1e-9 of the pole removed and the tabulated
/// abscissae 1/2, 2/3, 2 and 3 x pole inserted exactly.
std::vector<Rational> default_grid(const Rational& pole);

struct CurveRequest {
    Money fixed;
    UnitValue margin;
    /// Volume at which the margin curve is evaluated.
    Quantity quantity;
    /// Empty grids take default_grid() around the relevant pole.
    std::vector<Quantity> volume_grid;
    std::vector<UnitValue> margin_grid;
    std::vector<Money> indifference_fixed;
    std::vector<Quantity> indifference_grid;
};

struct Curve {
    std::string name;
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<Rational, Rational>> points;
};

/// Plot data: E over volume, E over margin, and one indifference curve per
/// requested fixed-charge level. Grid points sitting on a pole are skipped.
std::vector<Curve> emit_curve_data(const CurveRequest& request);

}  // namespace cashctl
