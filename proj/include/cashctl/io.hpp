#pragma once

#include "cashctl/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cashctl {

// Every reader throws Error(ErrorKind::Parse) on malformed input. Numbers may
// be JSON strings ("10.5", "1/3") or JSON numbers; a binary float is read
// through its shortest decimal form, so 0.1 becomes exactly 1/10.
// Writers emit numbers as exact strings, so parse(emit(x)) == x.

Ledger parse_ledger_json(std::string_view text);
std::string emit_ledger_json(const Ledger& ledger);

/// Columns: period,id,kind,cash,qty,unit_value. kind is product or input
/// for flow lines; result, tax, stock, investment, debt and cash_balance
/// rows carry their amount in unit_value (stock rows name the flow in id).
Ledger parse_ledger_csv(std::string_view text);
std::string emit_ledger_csv(const Ledger& ledger);

Scenario parse_scenario_json(std::string_view text);
std::string emit_scenario_json(const Scenario& scenario);

std::string read_text_file(const std::filesystem::path& path);

/// Picks the CSV reader for a .csv extension, JSON otherwise.
Ledger load_ledger(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace cashctl
