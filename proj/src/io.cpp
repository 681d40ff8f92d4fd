#include "cashctl/io.hpp"

#include "cashctl/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cashctl {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorKind::Parse, message); }

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

Rational number_from_text(std::string_view text, const std::string& where)
{
    try {
        return Rational::parse(trim(text));
    } catch (const std::exception& e) {
        parse_error(where + ": " + e.what());
    }
}

Rational to_rational(const json& j, const std::string& where)
{
    if (j.is_string()) return number_from_text(j.get_ref<const std::string&>(), where);
    if (j.is_number_integer() || j.is_number_unsigned() || j.is_number_float())
        return number_from_text(j.dump(), where);
    parse_error(where + ": expected a number");
}

const json& require(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) parse_error(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_error(where + ": missing '" + key + "'");
    return *it;
}

Rational rational_field(const json& obj, const char* key, const std::string& where)
{
    return to_rational(require(obj, key, where), where + "." + key);
}

std::optional<Rational> optional_rational(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return to_rational(*it, where + "." + key);
}

int int_field(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) parse_error(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_string()) parse_error(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

bool bool_field(const json& obj, const char* key, const std::string& where, bool fallback)
{
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) parse_error(where + "." + key + ": expected true or false");
    return it->get<bool>();
}

FlowKind kind_from(std::string_view text, const std::string& where)
{
    if (text == "product") return FlowKind::Product;
    if (text == "input") return FlowKind::Input;
    parse_error(where + ": kind must be 'product' or 'input', got '" + std::string(text) + "'");
}

const char* kind_name(FlowKind kind) { return kind == FlowKind::Product ? "product" : "input"; }

json parse_document(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_error(std::string("invalid JSON: ") + e.what());
    }
}

std::string exact(const Rational& r) { return r.to_exact_string(); }

}  // namespace

Ledger parse_ledger_json(std::string_view text)
{
    json doc = parse_document(text);
    Ledger ledger;
    const json& periods = require(doc, "periods", "ledger");
    if (!periods.is_array()) parse_error("ledger.periods: expected an array");
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const json& p = periods[i];
        std::string where = "periods[" + std::to_string(i) + "]";
        PeriodAccount account;
        account.period = int_field(p, "period", where);
        const json& lines = require(p, "lines", where);
        if (!lines.is_array()) parse_error(where + ".lines: expected an array");
        for (std::size_t k = 0; k < lines.size(); ++k) {
            const json& l = lines[k];
            std::string lw = where + ".lines[" + std::to_string(k) + "]";
            FlowLine line;
            line.id = string_field(l, "id", lw);
            line.kind = kind_from(string_field(l, "kind", lw), lw);
            line.cash_effective = bool_field(l, "cash", lw, true);
            line.quantity = rational_field(l, "qty", lw);
            line.unit_value = rational_field(l, "unit_value", lw);
            account.lines.push_back(std::move(line));
        }
        account.result_before_tax = rational_field(p, "result_before_tax", where);
        account.tax = optional_rational(p, "tax", where).value_or(Rational{});
        ledger.periods.push_back(std::move(account));
    }
    if (auto it = doc.find("stocks"); it != doc.end()) {
        if (!it->is_array()) parse_error("ledger.stocks: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& s = (*it)[i];
            std::string where = "stocks[" + std::to_string(i) + "]";
            ledger.stocks.push_back(
                {int_field(s, "period", where), string_field(s, "flow_id", where), rational_field(s, "stock_end", where)});
        }
    }
    if (auto it = doc.find("financing"); it != doc.end()) {
        if (!it->is_array()) parse_error("ledger.financing: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& f = (*it)[i];
            std::string where = "financing[" + std::to_string(i) + "]";
            PeriodFinancing pf;
            pf.period = int_field(f, "period", where);
            pf.net_investment = optional_rational(f, "net_investment", where).value_or(Rational{});
            pf.debt_change = optional_rational(f, "debt_change", where).value_or(Rational{});
            pf.cash_balance = optional_rational(f, "cash_balance", where);
            ledger.financing.push_back(std::move(pf));
        }
    }
    return ledger;
}

std::string emit_ledger_json(const Ledger& ledger)
{
    json doc;
    json periods = json::array();
    for (const auto& account : ledger.periods) {
        json p;
        p["period"] = account.period;
        json lines = json::array();
        for (const auto& line : account.lines) {
            lines.push_back({{"id", line.id},
                             {"kind", kind_name(line.kind)},
                             {"cash", line.cash_effective},
                             {"qty", exact(line.quantity)},
                             {"unit_value", exact(line.unit_value)}});
        }
        p["lines"] = std::move(lines);
        p["result_before_tax"] = exact(account.result_before_tax);
        p["tax"] = exact(account.tax);
        periods.push_back(std::move(p));
    }
    doc["periods"] = std::move(periods);
    json stocks = json::array();
    for (const auto& s : ledger.stocks)
        stocks.push_back({{"period", s.period}, {"flow_id", s.flow_id}, {"stock_end", exact(s.stock_end)}});
    doc["stocks"] = std::move(stocks);
    if (!ledger.financing.empty()) {
        json financing = json::array();
        for (const auto& f : ledger.financing) {
            json row{{"period", f.period},
                     {"net_investment", exact(f.net_investment)},
                     {"debt_change", exact(f.debt_change)}};
            if (f.cash_balance) row["cash_balance"] = exact(*f.cash_balance);
            financing.push_back(std::move(row));
        }
        doc["financing"] = std::move(financing);
    }
    return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string_view> split_csv_row(std::string_view row)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = row.find(',', start);
        out.push_back(trim(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

int int_from_text(std::string_view text, const std::string& where)
{
    Rational r = number_from_text(text, where);
    if (!r.is_integer() || r.abs() > Rational(1'000'000'000)) parse_error(where + ": expected an integer period");
    return static_cast<int>(r.numerator());
}

PeriodAccount& account_for(Ledger& ledger, int period)
{
    for (auto& a : ledger.periods)
        if (a.period == period) return a;
    ledger.periods.push_back({});
    ledger.periods.back().period = period;
    return ledger.periods.back();
}

PeriodFinancing& financing_for(Ledger& ledger, int period)
{
    for (auto& f : ledger.financing)
        if (f.period == period) return f;
    ledger.financing.push_back({});
    ledger.financing.back().period = period;
    return ledger.financing.back();
}

bool cash_from(std::string_view text, const std::string& where)
{
    if (text.empty() || text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    parse_error(where + ": cash must be true or false");
}

}  // namespace

Ledger parse_ledger_csv(std::string_view text)
{
    static const std::vector<std::string_view> kHeader{"period", "id", "kind", "cash", "qty", "unit_value"};
    Ledger ledger;
    std::set<int> has_result;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view row = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        row = trim(row);
        if (row.empty() || row.front() == '#') continue;
        auto cells = split_csv_row(row);
        std::string where = "line " + std::to_string(line_no);
        if (!header_seen) {
            if (cells != kHeader) parse_error(where + ": expected header period,id,kind,cash,qty,unit_value");
            header_seen = true;
            continue;
        }
        if (cells.size() != kHeader.size())
            parse_error(where + ": expected 6 columns, found " + std::to_string(cells.size()));
        int period = int_from_text(cells[0], where);
        std::string_view kind = cells[2];
        if (kind == "product" || kind == "input") {
            FlowLine line;
            line.id = std::string(cells[1]);
            line.kind = kind_from(kind, where);
            line.cash_effective = cash_from(cells[3], where);
            line.quantity = number_from_text(cells[4], where + " qty");
            line.unit_value = number_from_text(cells[5], where + " unit_value");
            account_for(ledger, period).lines.push_back(std::move(line));
            continue;
        }
        Rational amount = number_from_text(cells[5], where + " unit_value");
        if (kind == "result") {
            account_for(ledger, period).result_before_tax = amount;
            has_result.insert(period);
        } else if (kind == "tax") {
            account_for(ledger, period).tax = amount;
        } else if (kind == "stock") {
            ledger.stocks.push_back({period, std::string(cells[1]), amount});
        } else if (kind == "investment") {
            financing_for(ledger, period).net_investment = amount;
        } else if (kind == "debt") {
            financing_for(ledger, period).debt_change = amount;
        } else if (kind == "cash_balance") {
            financing_for(ledger, period).cash_balance = amount;
        } else {
            parse_error(where + ": unknown kind '" + std::string(kind) + "'");
        }
    }
    if (!header_seen) parse_error("empty CSV ledger");
    for (const auto& a : ledger.periods)
        if (!has_result.count(a.period)) parse_error("period " + std::to_string(a.period) + " has no result row");
    return ledger;
}

std::string emit_ledger_csv(const Ledger& ledger)
{
    std::ostringstream out;
    out << "period,id,kind,cash,qty,unit_value\n";
    for (const auto& a : ledger.periods) {
        for (const auto& l : a.lines)
            out << a.period << ',' << l.id << ',' << kind_name(l.kind) << ',' << (l.cash_effective ? "true" : "false")
                << ',' << exact(l.quantity) << ',' << exact(l.unit_value) << '\n';
        out << a.period << ",,result,,," << exact(a.result_before_tax) << '\n';
        out << a.period << ",,tax,,," << exact(a.tax) << '\n';
    }
    for (const auto& s : ledger.stocks) out << s.period << ',' << s.flow_id << ",stock,,," << exact(s.stock_end) << '\n';
    for (const auto& f : ledger.financing) {
        out << f.period << ",,investment,,," << exact(f.net_investment) << '\n';
        out << f.period << ",,debt,,," << exact(f.debt_change) << '\n';
        if (f.cash_balance) out << f.period << ",,cash_balance,,," << exact(*f.cash_balance) << '\n';
    }
    return out.str();
}

Scenario parse_scenario_json(std::string_view text)
{
    json doc = parse_document(text);
    Scenario s;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) parse_error("scenario.name: expected a string");
        s.name = it->get<std::string>();
    }
    const json& c = require(doc, "cost_structure", "scenario");
    const std::string cw = "cost_structure";
    Money fixed_cash = rational_field(c, "fixed_cash", cw);
    Money fixed_calculated = optional_rational(c, "fixed_calculated", cw).value_or(Rational{});
    s.cost = CostStructure::from_parts(fixed_cash, fixed_calculated, rational_field(c, "unit_price", cw),
                                       rational_field(c, "unit_variable_cost", cw));
    if (auto total = optional_rational(c, "fixed_total", cw)) s.cost.fixed_total = *total;

    if (auto it = doc.find("cash_lags"); it != doc.end() && !it->is_null()) {
        const json& l = *it;
        const std::string lw = "cash_lags";
        if (!l.is_object()) parse_error("cash_lags: expected an object");
        CashLagProfile& p = s.lags;
        p.modulated_fixed = optional_rational(l, "modulated_fixed", lw).value_or(Rational{});
        p.modulation_month = optional_rational(l, "modulation_month", lw).value_or(Rational{});
        p.anticipated_variable = optional_rational(l, "anticipated_variable", lw).value_or(Rational{});
        if (auto a = l.find("anticipation"); a != l.end() && !a->is_null()) {
            std::string kase = string_field(*a, "case", lw + ".anticipation");
            if (kase == "whole_units") {
                p.anticipation_case = AnticipationCase::WholeUnits;
            } else if (kase == "single_input_upfront") {
                p.anticipation_case = AnticipationCase::SingleInputAllUpfront;
                p.anticipated_unit_component =
                    rational_field(*a, "unit_cost_component", lw + ".anticipation");
            } else {
                parse_error(lw + ".anticipation.case: expected whole_units or single_input_upfront");
            }
        }
        p.supplier_credit_months = optional_rational(l, "supplier_credit_months", lw).value_or(Rational{});
        p.customer_credit_months = optional_rational(l, "customer_credit_months", lw).value_or(Rational{});
        p.monthly_sales = optional_rational(l, "monthly_sales", lw).value_or(Rational{});
        if (auto w = l.find("seasonal_weights"); w != l.end() && !w->is_null()) {
            if (!w->is_array()) parse_error(lw + ".seasonal_weights: expected an array");
            std::vector<Rational> weights;
            for (std::size_t i = 0; i < w->size(); ++i)
                weights.push_back(to_rational((*w)[i], lw + ".seasonal_weights[" + std::to_string(i) + "]"));
            p.seasonal_weights = std::move(weights);
        }
        p.cycle_capacity = optional_rational(l, "cycle_capacity", lw);
    }
    return s;
}

std::string emit_scenario_json(const Scenario& s)
{
    json doc;
    doc["name"] = s.name;
    doc["cost_structure"] = {{"fixed_total", exact(s.cost.fixed_total)},
                             {"fixed_cash", exact(s.cost.fixed_cash)},
                             {"fixed_calculated", exact(s.cost.fixed_calculated)},
                             {"unit_price", exact(s.cost.unit_price)},
                             {"unit_variable_cost", exact(s.cost.unit_variable_cost)}};
    const CashLagProfile& p = s.lags;
    json lags{{"modulated_fixed", exact(p.modulated_fixed)},
              {"modulation_month", exact(p.modulation_month)},
              {"anticipated_variable", exact(p.anticipated_variable)}};
    if (p.anticipation_case == AnticipationCase::WholeUnits)
        lags["anticipation"] = {{"case", "whole_units"}};
    else
        lags["anticipation"] = {{"case", "single_input_upfront"},
                                {"unit_cost_component", exact(p.anticipated_unit_component)}};
    lags["supplier_credit_months"] = exact(p.supplier_credit_months);
    lags["customer_credit_months"] = exact(p.customer_credit_months);
    lags["monthly_sales"] = exact(p.monthly_sales);
    if (p.seasonal_weights) {
        json w = json::array();
        for (const auto& x : *p.seasonal_weights) w.push_back(exact(x));
        lags["seasonal_weights"] = std::move(w);
    }
    if (p.cycle_capacity) lags["cycle_capacity"] = exact(*p.cycle_capacity);
    doc["cash_lags"] = std::move(lags);
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Ledger load_ledger(const std::filesystem::path& path)
{
    std::string text = read_text_file(path);
    if (path.extension() == ".csv") return parse_ledger_csv(text);
    return parse_ledger_json(text);
}

Scenario load_scenario(const std::filesystem::path& path)
{
    Scenario s = parse_scenario_json(read_text_file(path));
    if (s.name.empty()) s.name = path.stem().string();
    return s;
}

}  // namespace cashctl
