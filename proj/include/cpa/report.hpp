#pragma once

#include "cpa/catalog.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cpa {

nlohmann::json report_json(const EntryReport& r);
// Array of {entry, checks:[{name, verdict, details}]}, keys sorted.
std::string emit_json(const std::vector<EntryReport>& reports);
// One line per check: entry, check name, verdict, details as compact JSON.
std::string emit_text(const std::vector<EntryReport>& reports);
std::string emit_report(const std::vector<EntryReport>& reports, const std::string& format);

// Verdict counts overall and per entry, plus the list of MISMATCH checks.
nlohmann::json summary_json(const std::vector<EntryReport>& reports);
std::string summary_text(const nlohmann::json& summary);

// Runs verify_entry on every entry with `threads` workers; output sorted by entry name.
std::vector<EntryReport> verify_all(const std::vector<CatalogEntry>& entries, unsigned threads = 0);

}  // namespace cpa
