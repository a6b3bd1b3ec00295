#pragma once

#include "wsrt/wsdl.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wsrt::suite {

enum class Dialect { soapui, jmeter };

const char* dialect_name(Dialect d);
std::optional<Dialect> dialect_from_name(std::string_view name);

// Root-element sniffing for the CLI.
Dialect sniff_dialect(std::string_view xml_text);

struct TestStep {
    std::string name;
    std::string operation; // from the request config; empty for non-request steps
    std::string type;      // e.g. "request"
    std::string request_payload; // opaque XML fragment
    std::vector<std::pair<std::string, std::string>> parameter_values;
    bool payload_parsed = false;
    std::size_t src_begin = 0, src_end = 0; // 0,0 for generated steps
};

struct TestCase {
    std::string name;
    std::optional<std::string> bound_operation;
    std::vector<TestStep> steps;
    bool is_template = false;
    std::size_t src_begin = 0, src_end = 0; // region incl. jmeter pairing hashTree
    std::string raw; // generated text for template cases

    std::set<std::string> step_operations() const;
};

struct TestSuite {
    Dialect dialect = Dialect::soapui;
    std::string name;
    std::vector<TestCase> cases;
    // Unmodeled regions are preserved by splicing edits into the source text.
    std::shared_ptr<const std::string> source;
    std::size_t insert_pos = 0; // where generated cases are spliced in

    const TestCase* find_case(std::string_view name) const;
};

TestSuite parse_suite(const std::string& xml_text, Dialect dialect);
std::string serialize_suite(const TestSuite& suite);

// op -> test case names; cases binding to no WSDL operation land under kUnbound.
inline constexpr const char* kUnbound = "unbound";
std::map<std::string, std::vector<std::string>>
map_operation_tests(const TestSuite& suite, const wsdl::WsdlDocument& wsdl_doc);

TestCase select_steps(const TestCase& test_case, const std::vector<std::string>& keep);

struct PrimaryParameterScenario {
    std::string operation;
    std::vector<std::string> primary_params; // non-empty
    std::map<std::string, std::string> fixed_primary_values;
    std::set<std::string> non_primary_params;
};

// Per-case conformance: within one case every parseable step must carry the
// same primary-parameter values.
std::vector<std::string> validate_scenario(const TestSuite& suite,
                                           const PrimaryParameterScenario& scenario);

} // namespace wsrt::suite
