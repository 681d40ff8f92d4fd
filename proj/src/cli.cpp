#include "cashctl/cli.hpp"

#include "cashctl/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <map>

namespace cashctl {

namespace {

Rational parse_number(const std::string& text, const std::string& flag)
{
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Parse, flag + ": " + e.what());
    }
}

const Rational& need(const std::optional<Rational>& v, const char* flag, const std::string& command)
{
    if (!v) throw Error(ErrorKind::Parse, command + " needs " + flag);
    return *v;
}

Document breakeven_for(const std::filesystem::path& path, int horizon_months)
{
    Scenario s = load_scenario(path);
    s.cost.validate();
    s.lags.validate(s.cost);
    ThresholdReport report = solvency_threshold(s.cost, s.lags);
    std::optional<SeasonalSolvency> seasonal;
    if (s.lags.seasonal_weights) seasonal = seasonal_solvency(s.cost, s.lags, horizon_months);
    return threshold_document(s, report, seasonal);
}

Document simulate_for(const std::filesystem::path& path, const RunConfig& c)
{
    Scenario s = load_scenario(path);
    s.cost.validate();
    s.lags.validate(s.cost);
    if (c.granularity == "month") {
        if (s.lags.seasonal_weights) return monthly_series_document(s, seasonal_solvency(s.cost, s.lags, c.horizon_months));
        SeasonalSolvency plain;
        plain.series = monthly_cash_series(s.cost, s.lags, c.horizon_months);
        int last_negative = -1;
        for (const auto& p : plain.series)
            if (p.cumulative.sign() < 0) last_negative = p.month;
        if (plain.series.back().cumulative.sign() < 0)
            throw Error(ErrorKind::NeverSolvent, "cumulative cash is still negative after " +
                                                     std::to_string(c.horizon_months) + " months");
        plain.month = last_negative + 1;
        plain.first_crossing_month = plain.month;
        plain.cumulative_units = plain.series[static_cast<std::size_t>(plain.month)].units_sold;
        return monthly_series_document(s, plain);
    }
    int months = c.horizon_days ? (*c.horizon_days + kDaysPerMonth - 1) / kDaysPerMonth + 1 : c.horizon_months;
    SalesSchedule schedule = SalesSchedule::from_profile(s.lags, months);
    int horizon = c.horizon_days.value_or(std::max(360, cycle_length_days(s.lags, schedule).value_or(0)));
    return simulation_document(s, simulate_cash_days(s.cost, s.lags, schedule, horizon));
}

template <class F>
std::vector<Document> batch(const std::vector<std::filesystem::path>& paths, F&& job)
{
    std::vector<std::future<Document>> futures;
    futures.reserve(paths.size());
    for (const auto& p : paths) futures.push_back(std::async(std::launch::async, job, p));
    std::vector<Document> docs;
    docs.reserve(paths.size());
    // get() rethrows the first failure in scenario order
    for (auto& f : futures) docs.push_back(f.get());
    return docs;
}

std::optional<Scenario> single_scenario(const RunConfig& c)
{
    if (c.scenarios.empty()) return std::nullopt;
    if (c.scenarios.size() > 1) throw Error(ErrorKind::Parse, c.command + " takes a single --scenario");
    Scenario s = load_scenario(c.scenarios.front());
    s.cost.validate();
    return s;
}

Document leverage_for(const RunConfig& c)
{
    LeverageSummary sum;
    std::optional<Scenario> scenario = single_scenario(c);
    sum.basis = c.basis == LeverageBasis::Term ? "term" : "immediate";
    if (scenario) {
        sum.fixed = c.fixed.value_or(fixed_charges(scenario->cost, c.basis));
        sum.margin = c.margin.value_or(scenario->cost.unit_margin());
    } else {
        sum.fixed = need(c.fixed, "--F", c.command);
        sum.margin = need(c.margin, "--m", c.command);
    }
    sum.quantity = need(c.quantity, "--Q", c.command);
    if (sum.fixed.sign() < 0) throw Error(ErrorKind::InvalidInput, "fixed charges must be non-negative");
    if (sum.quantity.sign() < 0) throw Error(ErrorKind::InvalidInput, "volume must be non-negative");
    sum.virtual_treasury = virtual_treasury(sum.margin, sum.quantity, sum.fixed);
    sum.critical_production = critical_production(sum.fixed, sum.margin);
    sum.elasticity_volume = elasticity_wrt_volume(sum.fixed, sum.margin, sum.quantity);
    if (sum.quantity.sign() > 0) {
        sum.critical_margin = critical_margin(sum.fixed, sum.quantity);
        sum.elasticity_margin = elasticity_wrt_margin(sum.fixed, sum.margin, sum.quantity);
    } else {
        sum.pole_note = "margin elasticity and critical margin need Q > 0";
    }
    if (scenario) sum.rupture = rupture_matrix(scenario->cost, sum.quantity, sum.margin);
    return leverage_document(sum);
}

Document curves_for(const RunConfig& c)
{
    std::optional<Scenario> scenario = single_scenario(c);
    CurveRequest req;
    if (scenario) {
        req.fixed = c.fixed.value_or(fixed_charges(scenario->cost, c.basis));
        req.margin = c.margin.value_or(scenario->cost.unit_margin());
    } else {
        req.fixed = need(c.fixed, "--F", c.command);
        req.margin = need(c.margin, "--m", c.command);
    }
    if (req.fixed.sign() <= 0) throw Error(ErrorKind::InvalidInput, "curves need F > 0 to place the pole");
    Quantity pole = critical_production(req.fixed, req.margin);
    req.quantity = c.quantity.value_or(Rational(2) * pole);
    if (req.quantity.sign() <= 0) throw Error(ErrorKind::ZeroProduction, "curves need Q > 0");
    req.indifference_fixed = c.indifference_fixed.empty() ? std::vector<Money>{req.fixed} : c.indifference_fixed;
    return curves_document(emit_curve_data(req), c.curve_scale);
}

ValidatedLedger ledger_for(const RunConfig& c)
{
    if (!c.ledger) throw Error(ErrorKind::Parse, c.command + " needs --ledger");
    return validate_ledger(load_ledger(*c.ledger));
}

}  // namespace

int exit_code_for(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::Parse: return kExitParse;
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Domain: return kExitDomain;
    }
    return 1;
}

std::string execute(const RunConfig& c)
{
    OutputFormat format = c.format.value_or(c.command == "curves" ? OutputFormat::Csv : OutputFormat::Text);
    NumberFormat numbers{c.raw, 2};
    std::vector<Document> docs;

    if (c.command == "breakeven" || c.command == "simulate") {
        if (c.scenarios.empty()) throw Error(ErrorKind::Parse, c.command + " needs --scenario");
        if (c.command == "breakeven")
            docs = batch(c.scenarios, [&](const std::filesystem::path& p) { return breakeven_for(p, c.horizon_months); });
        else
            docs = batch(c.scenarios, [&](const std::filesystem::path& p) { return simulate_for(p, c); });
    } else if (c.command == "leverage") {
        docs.push_back(leverage_for(c));
    } else if (c.command == "curves") {
        docs.push_back(curves_for(c));
    } else if (c.command == "surplus") {
        ValidatedLedger ledger = ledger_for(c);
        int n = c.period.value_or(ledger.last_period());
        if (!ledger.has_period(n) || !ledger.has_period(n - 1))
            throw Error(ErrorKind::InsufficientPeriods, "surplus needs periods " + std::to_string(n - 1) + " and " +
                                                            std::to_string(n));
        const PeriodAccount& base = ledger.period(n - 1);
        const PeriodAccount& next = ledger.period(n);
        docs.push_back(surplus_document(n - 1, n, surplus_accounts(base, next), virtual_cash_surplus(base, next)));
    } else if (c.command == "cash-table") {
        ValidatedLedger ledger = ledger_for(c);
        int n = c.period.value_or(ledger.first_period() + 1);
        CashDecompositionTable table = operating_cash_surplus(ledger, n);
        docs.push_back(cash_table_document(table, transfer_coefficients(ledger, n + 1)));
    } else if (c.command == "waterfall") {
        ValidatedLedger ledger = ledger_for(c);
        int n = c.period.value_or(ledger.first_period() + 1);
        docs.push_back(waterfall_document(fcf_waterfall(ledger, n)));
    } else if (c.command == "validate") {
        if (!c.ledger && c.scenarios.empty()) throw Error(ErrorKind::Parse, "validate needs --ledger or --scenario");
        if (c.ledger) docs.push_back(validation_document(ledger_for(c)));
        for (const auto& path : c.scenarios) {
            Scenario s = load_scenario(path);
            s.cost.validate();
            s.lags.validate(s.cost);
            docs.push_back(scenario_validation_document(s));
        }
    } else {
        throw Error(ErrorKind::Parse, "unknown command '" + c.command + "'");
    }
    return render_all(docs, format, numbers);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    CLI::App app{"Cost-volume-cash thresholds, treasury leverage and surplus-based cash decomposition"};
    app.name("cashctl");
    app.require_subcommand(1);

    std::map<std::string, OutputFormat> formats{
        {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
    std::map<std::string, LeverageBasis> bases{{"term", LeverageBasis::Term}, {"immediate", LeverageBasis::Immediate}};
    std::map<std::string, std::string> granularities{{"day", "day"}, {"month", "month"}};

    std::string fixed_text, margin_text, quantity_text;
    std::vector<std::string> indifference_text;
    OutputFormat format_value{OutputFormat::Text};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format_value, "Output format: text, json or csv")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
            ->type_name("{text,json,csv}");
        sub->add_flag("--raw", config.raw, "Print exact rationals instead of 2-decimal half-even rounding");
        sub->add_option("-o,--output", config.output, "Write the report to this file");
    };
    auto scenario_opt = [&](CLI::App* sub, bool many) {
        auto* o = sub->add_option("--scenario", config.scenarios,
                                  many ? "Scenario JSON (repeat for a batch run)" : "Scenario JSON")
                      ->check(CLI::ExistingFile);
        if (!many) o->expected(1);
        return o;
    };
    auto ledger_opt = [&](CLI::App* sub, const char* period_help) {
        sub->add_option("--ledger", config.ledger, "Ledger file (.json or .csv)")->check(CLI::ExistingFile);
        if (period_help != nullptr) sub->add_option("--period", config.period, period_help);
    };
    auto leverage_opts = [&](CLI::App* sub) {
        sub->add_option("--F", fixed_text, "Fixed charges F (charges de structure)");
        sub->add_option("--m", margin_text, "Unit margin m (marge unitaire)");
        sub->add_option("--Q", quantity_text, "Volume Q (quantite produite et vendue)");
        sub->add_option("--basis", config.basis,
                        "With --scenario: term (a terme, all fixed charges) or immediate (immediate, cash fixed charges)")
            ->transform(CLI::CheckedTransformer(bases, CLI::ignore_case).description(""))
            ->type_name("{term,immediate}");
    };

    auto* breakeven = app.add_subcommand(
        "breakeven", "Liquidity threshold (seuil de liquidite) and solvency threshold (seuil de solvabilite)");
    scenario_opt(breakeven, true)->required();
    breakeven->add_option("--horizon-months", config.horizon_months, "Horizon of the seasonal series")
        ->check(CLI::PositiveNumber);
    common(breakeven);

    auto* simulate = app.add_subcommand("simulate", "Cash series (serie de tresorerie) by day or by month");
    scenario_opt(simulate, true)->required();
    simulate->add_option("--horizon-days", config.horizon_days, "Day-level horizon (default: max(360, cycle))")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--horizon-months", config.horizon_months, "Month-level horizon")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--granularity", config.granularity, "day or month")
        ->transform(CLI::CheckedTransformer(granularities, CLI::ignore_case).description(""))
        ->type_name("{day,month}");
    common(simulate);

    auto* leverage = app.add_subcommand(
        "leverage", "Treasury leverage (effet de levier de tresorerie), critical production and margin");
    scenario_opt(leverage, false);
    leverage_opts(leverage);
    common(leverage);

    auto* curves = app.add_subcommand(
        "curves", "Plot data: elasticity curves and liquidity indifference curves (courbes d'indifference)");
    scenario_opt(curves, false);
    leverage_opts(curves);
    curves->add_option("--indifference", indifference_text, "Fixed-charge level for an indifference curve (repeat)");
    curves->add_option("--scale", config.curve_scale, "Decimals in rounded curve output")->check(CLI::Range(0, 30));
    common(curves);

    auto* surplus = app.add_subcommand("surplus", "Surplus account (compte de surplus) between periods n-1 and n");
    ledger_opt(surplus, "Period n (default: last)");
    common(surplus);

    auto* cash_table = app.add_subcommand(
        "cash-table", "Operating cash surplus table (surplus de tresorerie d'exploitation), rows I to VI");
    ledger_opt(cash_table, "Pivot period n; needs n-1, n and n+1 (default: first + 1)");
    common(cash_table);

    auto* waterfall = app.add_subcommand(
        "waterfall", "Free cash flow waterfall (tresorerie d'exploitation, tresorerie disponible) for n and n+1");
    ledger_opt(waterfall, "Pivot period n; needs n-1, n and n+1 (default: first + 1)");
    common(waterfall);

    auto* validate = app.add_subcommand("validate", "Check a ledger and/or scenarios without computing reports");
    ledger_opt(validate, nullptr);
    scenario_opt(validate, true);
    common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out;
        std::ostringstream help_err;
        int code = app.exit(e, help_out, help_err);
        out << help_out.str();
        err << help_err.str();
        return code == 0 ? kExitOk : kExitParse;
    }

    for (auto* sub : app.get_subcommands()) {
        config.command = sub->get_name();
        if (sub->count("--format")) config.format = format_value;
    }

    try {
        if (!fixed_text.empty()) config.fixed = parse_number(fixed_text, "--F");
        if (!margin_text.empty()) config.margin = parse_number(margin_text, "--m");
        if (!quantity_text.empty()) config.quantity = parse_number(quantity_text, "--Q");
        for (const auto& t : indifference_text) config.indifference_fixed.push_back(parse_number(t, "--indifference"));

        std::string text = execute(config);
        if (config.output) {
            std::ofstream file(*config.output, std::ios::binary);
            if (!file) throw Error(ErrorKind::Parse, "cannot write '" + config.output->string() + "'");
            file << text;
        } else {
            out << text;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.category());
    } catch (const std::domain_error& e) {
        err << "error: domain: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cashctl
