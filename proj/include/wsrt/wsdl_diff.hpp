#pragma once

#include "wsrt/wsdl.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wsrt::wsdl {

struct IoSignature {
    std::string input_type;
    std::string output_type;
    std::string input_digest;  // digest over canonicalized reachable schema
    std::string output_digest;

    bool operator==(const IoSignature&) const = default;
};

struct OperationChangeSet {
    std::set<std::string> inserted;
    std::set<std::string> deleted;
    std::set<std::string> io_modified;
    std::set<std::string> unchanged;
    std::map<std::string, std::pair<IoSignature, IoSignature>> detail; // old, new
    // definitions-attribute / policy level changes, informational only
    std::vector<std::string> definition_changes;
};

IoSignature io_signature(const WsdlDocument& doc, const std::string& operation);

OperationChangeSet diff_wsdl(const WsdlDocument& old_doc, const WsdlDocument& new_doc);

} // namespace wsrt::wsdl
