#pragma once

#include "cashctl/breakeven.hpp"
#include "cashctl/cash_transfer.hpp"
#include "cashctl/leverage.hpp"
#include "cashctl/simulation.hpp"
#include "cashctl/surplus.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cashctl {

enum class OutputFormat { Text, Json, Csv };

/// How numbers leave the program: rounded half-even to `scale` digits, or
/// as exact rationals when `raw` is set.
struct NumberFormat {
    bool raw{false};
    int scale{2};

    [[nodiscard]] std::string operator()(const Rational& value) const;
};

using Cell = std::variant<std::monostate, std::string, Rational, long long>;

struct Field {
    std::string key;
    std::string label;
    Cell value;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Overrides the document scale for numeric cells of this table.
    std::optional<int> scale;
};

/// Format-neutral report: a list of scalar fields followed by tables.
struct Document {
    std::string kind;
    std::string title;
    std::vector<Field> fields;
    std::vector<Table> tables;
};

std::string render(const Document& doc, OutputFormat format, const NumberFormat& numbers);

/// Several documents in one output: a JSON array, or text/CSV blocks
/// separated by a blank line.
std::string render_all(const std::vector<Document>& docs, OutputFormat format, const NumberFormat& numbers);

Document threshold_document(const Scenario& scenario, const ThresholdReport& report,
                            const std::optional<SeasonalSolvency>& seasonal);
Document simulation_document(const Scenario& scenario, const SimulationResult& result);
Document monthly_series_document(const Scenario& scenario, const SeasonalSolvency& result);

struct LeverageSummary {
    Money fixed;
    UnitValue margin;
    Quantity quantity;
    std::string basis;
    std::optional<Rational> elasticity_volume;
    std::optional<Rational> elasticity_margin;
    std::string pole_note;
    std::optional<Quantity> critical_production;
    std::optional<UnitValue> critical_margin;
    Money virtual_treasury;
    std::optional<RuptureMatrix> rupture;
};

Document leverage_document(const LeverageSummary& summary);
Document curves_document(const std::vector<Curve>& curves, int scale);

Document surplus_document(int base_period, int next_period, const SurplusReport& report,
                          const VirtualCashSurplus& cash);
Document cash_table_document(const CashDecompositionTable& table, const TransferCoefficients& coeffs);
Document waterfall_document(const WaterfallComparison& waterfall);
Document validation_document(const ValidatedLedger& ledger);
Document scenario_validation_document(const Scenario& scenario);

}  // namespace cashctl
