#pragma once

#include "wsrt/code_analyzer.hpp"
#include "wsrt/wsdl.hpp"
#include "wsrt/wsdl_diff.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wsrt::subset {

enum class Kind { difference, unit, reduce, combined, parameter };

struct SubsetSpec {
    Kind kind = Kind::reduce;
    const wsdl::WsdlDocument* base = nullptr; // always the NEW version
    std::vector<std::string> required_operations; // ordered, unique
    std::map<std::string, std::string> provenance; // op -> reason
};

struct Result {
    wsdl::WsdlDocument document;
    std::map<std::string, std::string> provenance;
    std::vector<std::string> warnings; // e.g. dropped unreferenced schema types
};

const char* kind_name(Kind k);

Result construct_subset(const SubsetSpec& spec);

Result difference_wsdl(const wsdl::WsdlDocument& old_doc, const wsdl::WsdlDocument& new_doc);
Result unit_wsdl(const wsdl::WsdlDocument& new_doc, const code::UnitChangeSet& units);
Result reduce_wsdl(const wsdl::WsdlDocument& base, const std::vector<std::string>& selected);
Result combined_wsdl(const wsdl::WsdlDocument& base,
                     const std::vector<const wsdl::WsdlDocument*>& parts);
Result parameter_wsdl(const wsdl::WsdlDocument& new_doc, const std::set<std::string>& affected);

} // namespace wsrt::subset
