#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsrt/error.hpp"
#include "wsrt/rrts.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace wsrt;

static std::string slurp(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST_CASE("version upgrade: keep the modified case, drop the rest, template the new op") {
    auto old_suite = suite::parse_suite(slurp("saas_old_suite.xml"), suite::Dialect::soapui);
    auto new_wsdl = wsdl::parse_wsdl(slurp("saas_3.wsdl"));
    rrts::Plan plan;
    plan.inserted = {"editFile"};
    plan.modified = {"Index"};
    plan.unmodified = {"Searching", "readingFile"};
    auto r = rrts::build_rrts(old_suite, plan, new_wsdl);
    REQUIRE(r.suite.cases.size() == 2);
    CHECK(r.suite.cases[0].name == "Index_TC");
    CHECK(r.suite.cases[1].name == "editFile_TestCase");
    CHECK(r.suite.cases[1].is_template);
    CHECK(r.report.templates_added == std::vector<std::string>{"editFile_TestCase"});
    CHECK(r.report.dropped.size() == 2);
    CHECK(r.report.stale_case_operations.empty());

    // output re-parses and the template carries a skeleton request
    std::string out = suite::serialize_suite(r.suite);
    auto again = suite::parse_suite(out, suite::Dialect::soapui);
    REQUIRE(again.cases.size() == 2);
    CHECK(again.cases[1].bound_operation == "editFile");
    REQUIRE(again.cases[1].steps.size() == 1);
    const auto& pv = again.cases[1].steps[0].parameter_values;
    REQUIRE(pv.size() == 3);
    CHECK(pv[0] == std::pair<std::string, std::string>{"fileName", "?"});
    CHECK(pv[1].first == "lineToEdit");
    CHECK(pv[2].first == "replacementText");
}

TEST_CASE("obsolete cases bound to vanished operations are excluded") {
    auto old_suite = suite::parse_suite(slurp("saas_old_suite.xml"), suite::Dialect::soapui);
    auto v1 = wsdl::parse_wsdl(slurp("saas_1.wsdl")); // only Index survives
    rrts::Plan plan;
    plan.modified = {"Index", "Searching", "readingFile"};
    auto r = rrts::build_rrts(old_suite, plan, v1);
    REQUIRE(r.suite.cases.size() == 1);
    CHECK(r.suite.cases[0].name == "Index_TC");
    bool obsolete_noted = false;
    for (const auto& [c, why] : r.report.dropped)
        if (why.find("obsolete") != std::string::npos) obsolete_noted = true;
    CHECK(obsolete_noted);
}

TEST_CASE("inserted operation with stale coverage keeps the cases, no template") {
    auto old_suite = suite::parse_suite(slurp("saas3_suite.xml"), suite::Dialect::soapui);
    auto new_wsdl = wsdl::parse_wsdl(slurp("saas_3.wsdl"));
    rrts::Plan plan;
    plan.inserted = {"editFile"}; // but the suite already exercises it
    plan.unmodified = {"Index", "Searching", "readingFile"};
    auto r = rrts::build_rrts(old_suite, plan, new_wsdl);
    REQUIRE(r.suite.cases.size() == 1);
    CHECK(r.suite.cases[0].name == "editFile_TestCase");
    CHECK_FALSE(r.suite.cases[0].is_template);
    CHECK(r.report.templates_added.empty());
    CHECK(r.report.stale_case_operations == std::vector<std::string>{"editFile"});
}

TEST_CASE("jmeter templates parse back through the jmeter reader") {
    auto old_suite = suite::parse_suite(slurp("saas_plan.jmx"), suite::Dialect::jmeter);
    auto new_wsdl = wsdl::parse_wsdl(slurp("saas_3.wsdl"));
    rrts::Plan plan;
    plan.inserted = {"editFile"};
    plan.modified = {"Index"};
    plan.unmodified = {"Searching", "readingFile"};
    auto r = rrts::build_rrts(old_suite, plan, new_wsdl);
    std::string out = suite::serialize_suite(r.suite);
    auto again = suite::parse_suite(out, suite::Dialect::jmeter);
    REQUIRE(again.cases.size() == 2);
    CHECK(again.cases[0].name == "Index_TestCase");
    CHECK(again.cases[1].name == "editFile_TestCase");
    CHECK(again.cases[1].bound_operation == "editFile");
}

TEST_CASE("template generation: empty input message gives an empty body, unknown op throws") {
    auto new_wsdl = wsdl::parse_wsdl(slurp("saas_3.wsdl"));
    CHECK_THROWS_AS(rrts::make_template("ghost", new_wsdl, suite::Dialect::soapui), Error);
    auto no_parts = wsdl::parse_wsdl(R"(<definitions name="d">
      <message name="pingIn"/>
      <portType name="p"><operation name="ping"><input message="tns:pingIn"/></operation></portType>
      </definitions>)");
    auto tc = rrts::make_template("ping", no_parts, suite::Dialect::soapui);
    CHECK(tc.raw.find("<soapenv:Body></soapenv:Body>") != std::string::npos);
}

TEST_CASE("prtws keeps the selected steps and reports the reduction") {
    auto s = suite::parse_suite(slurp("saas3_suite.xml"), suite::Dialect::soapui);
    suite::PrimaryParameterScenario sc;
    sc.operation = "editFile";
    sc.primary_params = {"fileName"};
    auto r = rrts::prtws_reduce(s, sc, {{"editFile_TestCase", {"editFile", "lineToEdit2"}}});
    REQUIRE(r.suite.cases.size() == 2); // Searching passes through
    CHECK(r.report.steps_before == 6);
    CHECK(r.report.steps_after == 2);
    CHECK(r.report.reduction_percent == doctest::Approx(100.0 * 4 / 6));
    CHECK(r.report.scenario_violations.empty());
    CHECK_THROWS_WITH_AS(rrts::prtws_reduce(s, sc, {{"missing", {}}}),
                         doctest::Contains("unknown test case"), Error);
}

// --- randomized agreement with the brute-force selection algebra ------------

namespace {

std::string make_soapui_suite(std::mt19937& rng, const std::vector<std::string>& ops,
                              int max_cases, int max_steps) {
    std::ostringstream out;
    out << "<con:testSuite name=\"rand\" xmlns:con=\"http://eviware.com/soapui/config\">\n";
    int cases = 1 + static_cast<int>(rng() % max_cases);
    for (int c = 0; c < cases; ++c) {
        const std::string& op = ops[rng() % ops.size()];
        out << "  <con:testCase name=\"case" << c << "\">\n";
        int steps = 1 + static_cast<int>(rng() % max_steps);
        for (int s = 0; s < steps; ++s) {
            out << "    <con:testStep type=\"request\" name=\"step" << s << "\">\n"
                << "      <con:config><con:operation>" << op << "</con:operation>\n"
                << "        <con:request name=\"r\"><![CDATA[<e/>]]></con:request>\n"
                << "      </con:config>\n    </con:testStep>\n";
        }
        out << "  </con:testCase>\n";
    }
    out << "</con:testSuite>\n";
    return out.str();
}

} // namespace

TEST_CASE("randomized suites agree with the T-old + ti + tm - td - tu oracle") {
    auto new_wsdl = wsdl::parse_wsdl(slurp("saas_3.wsdl"));
    auto all_ops = new_wsdl.operation_names(); // Index, Searching, readingFile, editFile
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 250; ++iter) {
        auto src = make_soapui_suite(rng, all_ops, 6, 5);
        auto old_suite = suite::parse_suite(src, suite::Dialect::soapui);

        rrts::Plan plan;
        for (const auto& op : all_ops) {
            switch (rng() % 3) {
            case 0: plan.inserted.insert(op); break;
            case 1: plan.modified.insert(op); break;
            default: plan.unmodified.insert(op); break;
            }
        }

        auto r = rrts::build_rrts(old_suite, plan, new_wsdl);

        // oracle: cases for modified ops, plus stale cases for inserted ops,
        // plus a template per uncovered inserted op; everything else removed
        std::set<std::string> want;
        std::set<std::string> covered;
        for (const auto& c : old_suite.cases) {
            REQUIRE(c.bound_operation);
            covered.insert(*c.bound_operation);
            if (plan.modified.count(*c.bound_operation) ||
                plan.inserted.count(*c.bound_operation))
                want.insert(c.name);
        }
        for (const auto& op : plan.inserted)
            if (!covered.count(op)) want.insert(op + "_TestCase");

        std::set<std::string> got;
        for (const auto& c : r.suite.cases) {
            got.insert(c.name);
            REQUIRE(c.bound_operation);
            // never retain a case for a deleted or unmodified operation
            CHECK_FALSE(plan.unmodified.count(*c.bound_operation));
            CHECK_FALSE(plan.deleted.count(*c.bound_operation));
        }
        CHECK(got == want);
        CHECK(r.report.new_case_count == want.size());
    }
}
