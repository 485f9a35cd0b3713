#include "cpa/report.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cpa {

using nlohmann::json;

json report_json(const EntryReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"verdict", c.verdict}, {"details", c.details}});
    return {{"entry", r.entry}, {"checks", checks}};
}

std::string emit_json(const std::vector<EntryReport>& reports) {
    json a = json::array();
    for (const auto& r : reports) a.push_back(report_json(r));
    return a.dump(2) + "\n";
}

std::string emit_text(const std::vector<EntryReport>& reports) {
    std::size_t w = 5;
    for (const auto& r : reports)
        for (const auto& c : r.checks) w = std::max(w, c.name.size());
    std::ostringstream os;
    for (const auto& r : reports) {
        os << "entry " << r.entry << "\n";
        for (const auto& c : r.checks) {
            os << "  " << c.name << std::string(w - c.name.size() + 2, ' ') << c.verdict
               << std::string(c.verdict.size() < 16 ? 16 - c.verdict.size() : 1, ' ') << c.details.dump() << "\n";
        }
    }
    return os.str();
}

std::string emit_report(const std::vector<EntryReport>& reports, const std::string& format) {
    return format == "json" ? emit_json(reports) : emit_text(reports);
}

json summary_json(const std::vector<EntryReport>& reports) {
    std::map<std::string, std::size_t> total;
    json per_entry = json::object(), mismatches = json::array();
    std::size_t checks = 0;
    for (const auto& r : reports) {
        std::map<std::string, std::size_t> counts;
        for (const auto& c : r.checks) {
            ++counts[c.verdict];
            ++total[c.verdict];
            ++checks;
            if (c.verdict == "MISMATCH") mismatches.push_back({{"entry", r.entry}, {"check", c.name}});
        }
        per_entry[r.entry] = counts;
    }
    return {{"entries", reports.size()}, {"checks", checks}, {"verdicts", total}, {"per_entry", per_entry}, {"mismatches", mismatches}};
}

std::string summary_text(const json& s) {
    std::ostringstream os;
    os << "entries: " << s["entries"].get<std::size_t>() << "\n";
    os << "checks: " << s["checks"].get<std::size_t>() << "\n";
    for (const auto& [v, n] : s["verdicts"].items()) os << v << ": " << n.get<std::size_t>() << "\n";
    return os.str();
}

std::vector<EntryReport> verify_all(const std::vector<CatalogEntry>& entries, unsigned threads) {
    std::vector<EntryReport> out(entries.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, entries.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto work = [&] {
        for (std::size_t k; (k = next++) < entries.size();) {
            try {
                out[k] = verify_entry(entries[k]);
            } catch (...) {
                std::lock_guard lock(m);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::sort(out.begin(), out.end(), [](const EntryReport& a, const EntryReport& b) { return a.entry < b.entry; });
    return out;
}

}  // namespace cpa
