#include "confspace/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace confspace;

namespace {

Report sample(bool failing) {
    Report r;
    r.scenario = "demo";
    r.suite = "identities";
    CheckRecord a;
    a.id = "composition";
    a.equation = "Eq.(14)";
    a.defect = failing ? 0.5 : 1e-17;
    a.tolerance = 1e-10;
    a.values = {{"points", 100}, {"third", 1.0 / 3.0}};
    a.verdict = failing ? Verdict::fail : Verdict::pass;
    a.note = "quote \" and\nnewline";
    CheckRecord b;
    b.id = "jacobian_sign";
    b.equation = "Eq.(14)";
    b.values = {{"bad", NAN}};
    r.records = {a, b};
    return r;
}

} // namespace

TEST_CASE("text rendering") {
    const std::string pass = emit_text(sample(false));
    CHECK(pass.find("ALL CHECKS PASSED") != std::string::npos);
    const std::string fail = emit_text(sample(true));
    CHECK(fail.find("1 CHECK(S) FAILED") != std::string::npos);
    const auto line = fail.substr(fail.find("FAIL "));
    CHECK(line.substr(0, line.find('\n')).find("Eq.(14) composition") != std::string::npos);
}

TEST_CASE("json rendering parses back with the same numbers") {
    const Report r = sample(true);
    const std::string doc = emit_json(r);
    const auto j = nlohmann::json::parse(doc);
    CHECK(j["scenario"] == "demo");
    CHECK(j["verdict"] == "fail");
    CHECK(j["failures"] == 1);
    CHECK(j["records"][0]["equation"] == "Eq.(14)");
    CHECK(j["records"][0]["values"]["third"].get<double>() == 1.0 / 3.0);
    CHECK(j["records"][0]["note"] == "quote \" and\nnewline");
    CHECK(j["records"][1]["values"]["bad"].is_null());
    CHECK(j["records"][1]["defect"].is_null());
    CHECK_FALSE(j.contains("elapsed_seconds"));

    // Both renderings print the same digits.
    const std::string text = emit_text(r);
    CHECK(text.find("third=" + format_number(1.0 / 3.0)) != std::string::npos);
    CHECK(doc.find("\"third\": " + format_number(1.0 / 3.0)) != std::string::npos);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(INFINITY) == "null");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("timing appears only when set") {
    Report r = sample(false);
    r.elapsed_seconds = 0.25;
    CHECK(nlohmann::json::parse(emit_json(r))["elapsed_seconds"] == 0.25);
    CHECK(emit_report(r, ReportFormat::text).find("elapsed:") != std::string::npos);
}
