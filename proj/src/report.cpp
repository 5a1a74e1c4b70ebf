#include "confspace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace confspace {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::info: return "info";
    case Verdict::expected_violation: return "expected_violation";
    }
    return "?";
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict == Verdict::fail; }));
}

const CheckRecord* Report::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out + "\"";
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

} // namespace

std::string emit_text(const Report& report) {
    std::string out = "scenario: " + report.scenario + "\nsuite:    " + report.suite + "\n";
    if (report.elapsed_seconds) out += "elapsed:  " + format_number(*report.elapsed_seconds) + " s\n";
    out += "\n";

    std::size_t label_width = 5;
    for (const auto& r : report.records) label_width = std::max(label_width, r.label().size());
    label_width += 2;

    out += pad("VERDICT", 20) + pad("CHECK", label_width) + pad("DEFECT", 26) + pad("TOLERANCE", 26) + "VALUES\n";
    for (const auto& r : report.records) {
        std::string line = pad(upper(to_string(r.verdict)), 20) + pad(r.label(), label_width) +
                           pad(optional_number(r.defect), 26) + pad(optional_number(r.tolerance), 26);
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            if (i) line += ' ';
            line += r.values[i].first + "=" + format_number(r.values[i].second);
        }
        if (!r.note.empty()) line += "  # " + r.note;
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    out += "\n";
    const std::size_t failed = report.failures();
    if (failed == 0)
        out += "ALL CHECKS PASSED\n";
    else
        out += std::to_string(failed) + " CHECK(S) FAILED\n";
    return out;
}

std::string emit_json(const Report& report) {
    std::string out = "{\n";
    out += "  \"scenario\": " + json_string(report.scenario) + ",\n";
    out += "  \"suite\": " + json_string(report.suite) + ",\n";
    out += "  \"verdict\": " + json_string(report.passed() ? "pass" : "fail") + ",\n";
    out += "  \"failures\": " + std::to_string(report.failures()) + ",\n";
    if (report.elapsed_seconds) out += "  \"elapsed_seconds\": " + format_number(*report.elapsed_seconds) + ",\n";
    out += "  \"records\": [";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const auto& r = report.records[i];
        out += i ? ",\n" : "\n";
        out += "    {\n";
        out += "      \"id\": " + json_string(r.id) + ",\n";
        out += "      \"equation\": " + json_string(r.equation) + ",\n";
        out += "      \"verdict\": " + json_string(to_string(r.verdict)) + ",\n";
        out += "      \"defect\": " + (r.defect ? format_number(*r.defect) : "null") + ",\n";
        out += "      \"tolerance\": " + (r.tolerance ? format_number(*r.tolerance) : "null") + ",\n";
        out += "      \"values\": {";
        for (std::size_t k = 0; k < r.values.size(); ++k) {
            out += k ? ", " : "";
            out += json_string(r.values[k].first) + ": " + format_number(r.values[k].second);
        }
        out += "},\n";
        out += "      \"note\": " + json_string(r.note) + "\n";
        out += "    }";
    }
    out += report.records.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

std::string emit_report(const Report& report, ReportFormat format) {
    return format == ReportFormat::json ? emit_json(report) : emit_text(report);
}

} // namespace confspace
