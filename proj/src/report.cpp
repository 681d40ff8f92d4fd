#include "cashctl/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace cashctl {

std::string NumberFormat::operator()(const Rational& value) const
{
    return raw ? value.to_exact_string() : value.to_fixed(scale);
}

namespace {

using json = nlohmann::ordered_json;

std::string cell_text(const Cell& cell, const NumberFormat& numbers)
{
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* r = std::get_if<Rational>(&cell)) return numbers(*r);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return "";
}

NumberFormat table_numbers(const Table& table, const NumberFormat& numbers)
{
    NumberFormat out = numbers;
    if (table.scale) out.scale = *table.scale;
    return out;
}

json cell_json(const Cell& cell, const NumberFormat& numbers)
{
    if (std::holds_alternative<std::monostate>(cell)) return nullptr;
    return cell_text(cell, numbers);
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json to_json(const Document& doc, const NumberFormat& numbers)
{
    json out;
    out["report"] = doc.kind;
    out["title"] = doc.title;
    json fields = json::object();
    for (const auto& f : doc.fields) fields[f.key] = cell_json(f.value, numbers);
    out["fields"] = std::move(fields);
    json tables = json::array();
    for (const auto& t : doc.tables) {
        NumberFormat tn = table_numbers(t, numbers);
        json rows = json::array();
        for (const auto& row : t.rows) {
            json r = json::object();
            for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
                r[t.columns[i]] = cell_json(row[i], tn);
            rows.push_back(std::move(r));
        }
        tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
    }
    out["tables"] = std::move(tables);
    return out;
}

std::string to_text(const Document& doc, const NumberFormat& numbers)
{
    std::ostringstream out;
    out << doc.title << '\n';
    std::size_t width = 0;
    for (const auto& f : doc.fields) width = std::max(width, f.label.size());
    for (const auto& f : doc.fields) {
        out << "  " << f.label << std::string(width - f.label.size() + 2, ' ') << cell_text(f.value, numbers)
            << '\n';
    }
    for (const auto& t : doc.tables) {
        NumberFormat tn = table_numbers(t, numbers);
        out << '\n' << t.name << '\n';
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> widths(t.columns.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) widths[i] = t.columns[i].size();
        for (const auto& row : t.rows) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                line.push_back(i < row.size() ? cell_text(row[i], tn) : "");
                widths[i] = std::max(widths[i], line.back().size());
            }
            text.push_back(std::move(line));
        }
        auto emit = [&](const std::vector<std::string>& line, const std::vector<Cell>* source) {
            out << ' ';
            for (std::size_t i = 0; i < line.size(); ++i) {
                bool numeric = source && i < source->size() && !std::holds_alternative<std::string>((*source)[i]);
                std::string pad(widths[i] - line[i].size(), ' ');
                out << ' ' << (numeric ? pad + line[i] : line[i] + pad);
            }
            out << '\n';
        };
        emit(t.columns, nullptr);
        for (std::size_t r = 0; r < text.size(); ++r) emit(text[r], &t.rows[r]);
    }
    std::string s = out.str();
    // trailing spaces from left-aligned last columns
    std::string cleaned;
    std::istringstream lines(s);
    for (std::string line; std::getline(lines, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        cleaned += line + '\n';
    }
    return cleaned;
}

std::string to_csv(const Document& doc, const NumberFormat& numbers)
{
    std::ostringstream out;
    bool first = true;
    if (!doc.fields.empty()) {
        out << "field,value\n";
        for (const auto& f : doc.fields) out << csv_escape(f.key) << ',' << csv_escape(cell_text(f.value, numbers)) << '\n';
        first = false;
    }
    for (const auto& t : doc.tables) {
        NumberFormat tn = table_numbers(t, numbers);
        if (!first) out << '\n';
        first = false;
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i]);
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                out << (i ? "," : "") << csv_escape(i < row.size() ? cell_text(row[i], tn) : "");
            out << '\n';
        }
    }
    return out.str();
}

Cell opt(const std::optional<Rational>& v) { return v ? Cell{*v} : Cell{}; }

const char* binding_name(BindingFormula b)
{
    switch (b) {
    case BindingFormula::Standard: return "standard";
    case BindingFormula::AnticipatedCap: return "anticipated_cap";
    case BindingFormula::TotalChargesCap: return "total_charges_cap";
    }
    return "";
}

const char* counterparty_name(Counterparty c)
{
    switch (c) {
    case Counterparty::Firm: return "firm";
    case Counterparty::Customers: return "customers";
    case Counterparty::Suppliers: return "suppliers";
    case Counterparty::Owners: return "owners";
    }
    return "";
}

const char* item_name(SurplusItemKind k)
{
    switch (k) {
    case SurplusItemKind::OutputPrice: return "output_price";
    case SurplusItemKind::InputPrice: return "input_price";
    case SurplusItemKind::Result: return "result";
    }
    return "";
}

}  // namespace

std::string render(const Document& doc, OutputFormat format, const NumberFormat& numbers)
{
    switch (format) {
    case OutputFormat::Json: return to_json(doc, numbers).dump(2) + "\n";
    case OutputFormat::Csv: return to_csv(doc, numbers);
    case OutputFormat::Text: break;
    }
    return to_text(doc, numbers);
}

std::string render_all(const std::vector<Document>& docs, OutputFormat format, const NumberFormat& numbers)
{
    if (docs.size() == 1) return render(docs.front(), format, numbers);
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const auto& d : docs) arr.push_back(to_json(d, numbers));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i) out += '\n';
        out += render(docs[i], format, numbers);
    }
    return out;
}

Document threshold_document(const Scenario& scenario, const ThresholdReport& r,
                            const std::optional<SeasonalSolvency>& seasonal)
{
    Document d;
    d.kind = "breakeven";
    d.title = "Break-even thresholds: " + scenario.name;
    const auto& c = r.components;
    d.fields = {
        {"liquidity_threshold", "Liquidity threshold (seuil de liquidite), units", r.liquidity_threshold},
        {"solvency_threshold", "Solvency threshold (seuil de solvabilite), units", r.solvency_threshold},
        {"binding_formula", "Binding formula", std::string(binding_name(r.binding))},
        {"pre_modulation_threshold", "Threshold before modulation", r.pre_modulation_threshold},
        {"modulation_applied", "Modulation applied", std::string(r.modulation_applied ? "true" : "false")},
        {"standard_value", "Standard formula value", r.standard_value},
        {"anticipated_cap_value", "Anticipated-outlay floor", r.anticipated_cap_value},
        {"total_charges_cap_value", "Total-charges cap", opt(r.total_charges_cap_value)},
        {"solvency_month", "Months of sales to solvency", opt(r.solvency_month)},
        {"CFD", "Cash fixed charges (CFD)", c.fixed_cash},
        {"MCFD", "Modulated fixed charges deducted (MCFD)", c.modulated_fixed},
        {"CVA", "Anticipated variable costs (CVA)", c.anticipated_variable},
        {"CVD", "Supplier-credit offset (CVD)", c.deferred_variable},
        {"ED", "Customer-credit delay (ED)", c.deferred_receipts},
        {"MUSCV", "Effective unit margin (MUSCV)", c.effective_margin},
    };
    if (seasonal) {
        d.fields.push_back({"seasonal_solvency_month", "Seasonal solvency month", static_cast<long long>(seasonal->month)});
        d.fields.push_back({"seasonal_cumulative_units", "Units sold by then", seasonal->cumulative_units});
        d.fields.push_back(
            {"seasonal_first_crossing_month", "First crossing month", static_cast<long long>(seasonal->first_crossing_month)});
    }
    return d;
}

Document simulation_document(const Scenario& scenario, const SimulationResult& r)
{
    Document d;
    d.kind = "simulate";
    d.title = "Daily cash simulation: " + scenario.name;
    d.fields = {
        {"first_crossing_time", "First crossing (day)", opt(r.first_crossing_time)},
        {"solvency_time", "Solvency time (day)", opt(r.solvency_time)},
        {"solvency_day", "Solvency day", r.solvency_day ? Cell{static_cast<long long>(*r.solvency_day)} : Cell{}},
        {"units_sold_at_solvency", "Units sold at solvency", r.units_sold_at_solvency},
        {"activity_volume_at_solvency", "Activity volume at solvency", opt(r.activity_volume_at_solvency)},
        {"final_cash", "Final cumulative cash", r.final_cash},
        {"event_count", "Events", static_cast<long long>(r.event_count)},
    };
    Table t{"series", {"day", "inflow", "outflow", "cumulative"}, {}, std::nullopt};
    for (const auto& p : r.series) t.rows.push_back({static_cast<long long>(p.day), p.inflow, p.outflow, p.cumulative});
    d.tables.push_back(std::move(t));
    return d;
}

Document monthly_series_document(const Scenario& scenario, const SeasonalSolvency& r)
{
    Document d;
    d.kind = "simulate";
    d.title = "Monthly cash series: " + scenario.name;
    d.fields = {
        {"solvency_month", "Solvency month", static_cast<long long>(r.month)},
        {"cumulative_units", "Units sold by then", r.cumulative_units},
        {"first_crossing_month", "First crossing month", static_cast<long long>(r.first_crossing_month)},
    };
    Table t{"series", {"month", "inflow", "outflow", "cumulative", "units_sold"}, {}, std::nullopt};
    for (const auto& p : r.series)
        t.rows.push_back({static_cast<long long>(p.month), p.inflow, p.outflow, p.cumulative, p.units_sold});
    d.tables.push_back(std::move(t));
    return d;
}

Document leverage_document(const LeverageSummary& s)
{
    Document d;
    d.kind = "leverage";
    d.title = "Treasury leverage (effet de levier de tresorerie), basis " + s.basis;
    d.fields = {
        {"F", "Fixed charges F", s.fixed},
        {"m", "Unit margin m", s.margin},
        {"Q", "Volume Q", s.quantity},
        {"virtual_treasury", "Virtual treasury mQ - F", s.virtual_treasury},
        {"elasticity_volume", "Elasticity to volume E_T/Q", opt(s.elasticity_volume)},
        {"elasticity_margin", "Elasticity to margin E_T/m", opt(s.elasticity_margin)},
        {"critical_production", "Critical production Q* = F/m", opt(s.critical_production)},
        {"critical_margin", "Critical margin m* = F/Q", opt(s.critical_margin)},
    };
    if (!s.pole_note.empty()) d.fields.push_back({"note", "Note", s.pole_note});
    if (s.rupture) {
        Table t{"rupture_matrix", {"indicator", "immediate", "term"}, {}, std::nullopt};
        t.rows.push_back({std::string("liquidity threshold (Q)"), s.rupture->q_immediate, s.rupture->q_term});
        t.rows.push_back({std::string("critical margin (m)"), s.rupture->m_immediate, s.rupture->m_term});
        d.tables.push_back(std::move(t));
    }
    return d;
}

Document curves_document(const std::vector<Curve>& curves, int scale)
{
    Document d;
    d.kind = "curves";
    d.title = "Leverage curves";
    for (const auto& c : curves) {
        Table t{c.name, {c.x_label, c.name}, {}, scale};
        for (const auto& [x, y] : c.points) t.rows.push_back({x, y});
        d.tables.push_back(std::move(t));
    }
    return d;
}

Document surplus_document(int base_period, int next_period, const SurplusReport& r, const VirtualCashSurplus& cash)
{
    Document d;
    d.kind = "surplus";
    d.title = "Surplus account (compte de surplus), period " + std::to_string(base_period) + " to " +
              std::to_string(next_period);
    d.fields = {
        {"productivity_surplus", "Productivity surplus S", r.productivity},
        {"total_resources", "Total resources", r.total_resources()},
        {"total_uses", "Total uses", r.total_uses()},
        {"balance_ok", "Balanced", std::string(r.balance_ok ? "true" : "false")},
        {"delta_result", "Change of result before tax", r.delta_result},
        {"delta_tax", "of which State (tax)", r.delta_tax},
        {"delta_result_after_tax", "of which owners (after tax)", r.delta_result_after_tax},
    };
    Table account{"account", {"side", "item", "flow", "counterparty", "amount"}, {}, std::nullopt};
    account.rows.push_back({std::string("resource"), std::string("productivity"), std::string(),
                            std::string("firm"), r.productivity});
    for (const auto& i : r.resources)
        account.rows.push_back({std::string("resource"), std::string(item_name(i.kind)), i.flow_id,
                                std::string(counterparty_name(i.counterparty)), i.amount});
    for (const auto& i : r.uses)
        account.rows.push_back({std::string("use"), std::string(item_name(i.kind)), i.flow_id,
                                std::string(counterparty_name(i.counterparty)), i.amount});
    d.tables.push_back(std::move(account));

    Table v{"virtual_cash_surplus", {"item", "amount"}, {}, std::nullopt};
    auto row = [&](const char* name, const Money& m) { v.rows.push_back({std::string(name), m}); };
    row("cash productivity", cash.productivity);
    row("inherited from customers", cash.inherited_from_customers);
    row("inherited from suppliers", cash.inherited_from_suppliers);
    row("transferred to customers", cash.transferred_to_customers);
    row("transferred to suppliers", cash.transferred_to_suppliers);
    row("DAP quantities", cash.caf.dap_quantity);
    row("DAP prices", cash.caf.dap_price);
    row("DAP variations", cash.caf.dap_cross);
    row("change of result", cash.caf.delta_result);
    row("change of CAF (before tax)", cash.caf.total);
    row("change of tax", cash.delta_tax);
    row("change of CAF (after tax)", cash.delta_caf_after_tax());
    d.tables.push_back(std::move(v));
    return d;
}

Document cash_table_document(const CashDecompositionTable& table, const TransferCoefficients& coeffs)
{
    const CashVariation& v = table.variation;
    const TransferRows& t = v.transfers;
    Document d;
    d.kind = "cash-table";
    d.title = "Operating cash surplus (surplus de tresorerie d'exploitation), period " +
              std::to_string(table.period) + " to " + std::to_string(table.period + 1);
    d.fields = {
        {"period", "Pivot period n", static_cast<long long>(table.period)},
        {"row_IV_by_flows", "Row IV as I + II + III", v.caf_cash_by_flows()},
        {"row_IV_by_components", "Row IV as 9 + 10 + 11 + 12", v.caf_cash_by_components()},
        {"row_VI", "Row VI", table.operating_cash_surplus},
    };
    Table rows{"table", {"row", "nature", "mode", "amount"}, {}, std::nullopt};
    auto add = [&](const char* row, const char* nature, const char* mode, const Money& m) {
        rows.rows.push_back({std::string(row), std::string(nature), std::string(mode), m});
    };
    add("I", "Productivity cash flow (flux d'encaisse de productivite)", "1 - 2", v.productivity());
    add("1", "Receipts from output quantities", "sum dP.p.T", v.productivity_receipts);
    add("2", "Disbursements for input quantities", "sum dF.f.T", v.productivity_disbursements);
    add("II", "Transferred cash flow (flux d'encaisse transfere)", "3 + 4 + 5", t.transferred());
    add("3", "Reduced receipts", "a + b", t.reduced_receipts());
    add("a", "Output price falls (dp < 0)", "(P+dP).dp.T", t.price_cuts);
    add("b", "Longer customer settlement (dT < 0)", "(P+dP).(p+dp).dT", t.receipt_delays);
    add("4", "Increased disbursements", "c + d", t.increased_disbursements());
    add("c", "Input cost rises (df > 0)", "-(F+dF).df.T", t.cost_rises);
    add("d", "Shorter supplier settlement (dT > 0)", "-(F+dF).(f+df).dT", t.payment_speedups);
    add("5", "Tax increase", "-dtax", t.tax_increase);
    add("III", "Inherited cash flow (flux d'encaisse herite)", "6 + 7 + 8", t.inherited());
    add("6", "Increased receipts", "e + f", t.increased_receipts());
    add("e", "Output price rises (dp > 0)", "(P+dP).dp.T", t.price_rises);
    add("f", "Shorter customer settlement (dT > 0)", "(P+dP).(p+dp).dT", t.receipt_speedups);
    add("7", "Reduced disbursements", "g + h", t.reduced_disbursements());
    add("g", "Input cost falls (df < 0)", "-(F+dF).df.T", t.cost_cuts);
    add("h", "Longer supplier settlement (dT < 0)", "-(F+dF).(f+df).dT", t.payment_delays);
    add("8", "Tax decrease", "-dtax", t.tax_decrease);
    add("IV", "Change of cash CAF (variation de la CAF encaissee)", "I + II + III", v.caf_cash_by_flows());
    add("9", "DAP (quantities)", "sum dF.f", v.dap_quantity);
    add("10", "DAP (prices)", "sum df.F", v.dap_price);
    add("11", "DAP (variations)", "sum dF.df", v.dap_cross);
    add("12", "Change of cash result after tax", "dR_E", v.delta_result_cash);
    add("V", "Deferred net cash flow (flux d'encaisse net differe)", "dR - dR_E", table.deferred);
    add("VI", "Operating cash surplus", "IV(n+1) + V(n)", table.operating_cash_surplus);
    d.tables.push_back(std::move(rows));

    Table c{"coefficients", {"flow", "kind", "t_base", "T_base", "t_next", "T_next", "dT"}, {}, std::nullopt};
    for (const auto& f : coeffs.flows)
        c.rows.push_back({f.flow_id, std::string(f.kind == FlowKind::Product ? "product" : "input"), f.t_base,
                          f.settled_base, f.t_next, f.settled_next, f.delta_settled});
    if (!c.rows.empty()) d.tables.push_back(std::move(c));
    return d;
}

Document waterfall_document(const WaterfallComparison& w)
{
    Document d;
    d.kind = "waterfall";
    d.title = "Free cash flow waterfall, period " + std::to_string(w.base.period) + " to " +
              std::to_string(w.next.period);
    d.fields = {
        {"operating_cash_surplus", "Row VI (operating cash surplus)", w.operating_cash_surplus},
        {"reconciled", "Operating-cash variation equals row VI", std::string("true")},
    };
    Table t{"flows",
            {"flow", "period " + std::to_string(w.base.period), "period " + std::to_string(w.next.period),
             "variation"},
            {},
            std::nullopt};
    auto add = [&](const char* name, Money WaterfallReport::*field) {
        t.rows.push_back({std::string(name), w.base.*field, w.next.*field, w.variation.*field});
    };
    add("CAF before interest (capacite d'autofinancement)", &WaterfallReport::caf_before_interest);
    add("- working-capital investment (dBFR)", &WaterfallReport::delta_bfr);
    add("= operating cash (tresorerie d'exploitation)", &WaterfallReport::operating_cash);
    add("- net investment", &WaterfallReport::net_investment);
    add("= free cash (tresorerie disponible)", &WaterfallReport::free_cash);
    add("+ debt change", &WaterfallReport::delta_debt);
    add("= free cash after financing", &WaterfallReport::free_cash_after_financing);
    add("dFR", &WaterfallReport::delta_fr);
    add("dFR - dBFR = dTreasury", &WaterfallReport::delta_treasury);
    t.rows.push_back({std::string("observed dTreasury"),
                      w.base.observed_delta_treasury ? Cell{*w.base.observed_delta_treasury} : Cell{},
                      w.next.observed_delta_treasury ? Cell{*w.next.observed_delta_treasury} : Cell{}, Cell{}});
    d.tables.push_back(std::move(t));
    return d;
}

Document validation_document(const ValidatedLedger& ledger)
{
    Document d;
    d.kind = "validate";
    d.title = "Ledger is valid";
    const Ledger& l = ledger.ledger();
    d.fields = {
        {"first_period", "First period", static_cast<long long>(ledger.first_period())},
        {"last_period", "Last period", static_cast<long long>(ledger.last_period())},
        {"stocks", "Declared stocks", static_cast<long long>(l.stocks.size())},
    };
    Table t{"periods", {"period", "lines", "products", "inputs", "result_before_tax", "tax", "caf", "bfr"}, {},
            std::nullopt};
    for (const auto& a : l.periods)
        t.rows.push_back({static_cast<long long>(a.period), static_cast<long long>(a.lines.size()),
                          a.total(FlowKind::Product), a.total(FlowKind::Input), a.result_before_tax, a.tax,
                          a.self_financing_capacity(), ledger.working_capital(a.period)});
    d.tables.push_back(std::move(t));
    return d;
}

Document scenario_validation_document(const Scenario& s)
{
    Document d;
    d.kind = "validate";
    d.title = "Scenario is valid: " + s.name;
    d.fields = {
        {"fixed_total", "Fixed charges F", s.cost.fixed_total},
        {"fixed_cash", "Cash fixed charges CFD", s.cost.fixed_cash},
        {"unit_margin", "Unit margin m", s.cost.unit_margin()},
        {"has_lags", "Cash lags", std::string(s.lags.has_lags() ? "true" : "false")},
        {"seasonal", "Seasonal weights", std::string(s.lags.seasonal_weights ? "true" : "false")},
    };
    return d;
}

}  // namespace cashctl
