#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confspace {

enum class Verdict { pass, fail, info, expected_violation };
std::string to_string(Verdict v);

struct CheckRecord {
    std::string id;
    std::string equation; // e.g. "Eq.(14)"
    std::vector<std::pair<std::string, double>> values;
    std::optional<double> defect;
    std::optional<double> tolerance;
    Verdict verdict = Verdict::info;
    std::string note;

    std::string label() const { return equation + " " + id; }
};

struct Report {
    std::string scenario;
    std::string suite;
    std::vector<CheckRecord> records;
    std::optional<double> elapsed_seconds;

    bool passed() const;
    std::size_t failures() const;
    const CheckRecord* find(const std::string& id) const;
};

enum class ReportFormat { text, json };

/// Aligned table ending in "ALL CHECKS PASSED" or a failure count.
std::string emit_text(const Report& report);
/// Fixed key order, numbers with 17 significant digits, non-finite as null.
std::string emit_json(const Report& report);
std::string emit_report(const Report& report, ReportFormat format);

/// The single number formatter both renderings share.
std::string format_number(double v);

} // namespace confspace
