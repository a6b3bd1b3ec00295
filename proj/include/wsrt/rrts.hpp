#pragma once

#include "wsrt/testsuite.hpp"
#include "wsrt/wsdl.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wsrt::rrts {

// Classification of the new WSDL's operations driving case selection.
struct Plan {
    std::set<std::string> inserted;
    std::set<std::string> modified;
    std::set<std::string> deleted;    // present in old WSDL only
    std::set<std::string> unmodified; // present but untouched
};

struct SelectionReport {
    std::vector<std::pair<std::string, std::string>> kept;    // case, reason
    std::vector<std::pair<std::string, std::string>> dropped; // case, reason
    std::vector<std::string> templates_added;                 // case names
    // inserted ops that already had cases in the old suite; kept as-is
    std::vector<std::string> stale_case_operations;
    std::size_t old_case_count = 0;
    std::size_t new_case_count = 0;
    std::size_t old_step_count = 0;
    std::size_t new_step_count = 0;
};

struct Result {
    suite::TestSuite suite;
    SelectionReport report;
};

// Skeleton test case for an operation that has no coverage yet. The request
// envelope is derived from the operation's input schema; leaf parameters get
// "?" placeholders. Throws when the input type cannot be resolved.
suite::TestCase make_template(const std::string& operation, const wsdl::WsdlDocument& wsdl_doc,
                              suite::Dialect dialect);

Result build_rrts(const suite::TestSuite& old_suite, const Plan& plan,
                  const wsdl::WsdlDocument& new_wsdl);

struct PrtwsReport {
    std::size_t steps_before = 0;
    std::size_t steps_after = 0;
    double reduction_percent = 0.0; // 100 * (before - after) / before
    std::vector<std::string> dropped_cases;
    std::vector<std::string> scenario_violations;
};

struct PrtwsResult {
    suite::TestSuite suite;
    PrtwsReport report;
};

// Per-case step selection for the scenario operation: cases named in
// `selection` keep exactly those steps; scenario-bound cases not named are
// dropped; cases bound to other operations pass through untouched.
PrtwsResult prtws_reduce(const suite::TestSuite& suite_in,
                         const suite::PrimaryParameterScenario& scenario,
                         const std::map<std::string, std::vector<std::string>>& selection);

} // namespace wsrt::rrts
