#include "wsrt/wsdl_diff.hpp"

#include "wsrt/error.hpp"
#include "wsrt/xml.hpp"

#include <sstream>

namespace wsrt::wsdl {

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

// Canonical text of a message plus every schema type reachable from it.
std::string side_canonical(const WsdlDocument& doc, const std::string& message_name) {
    if (message_name.empty()) return "";
    const Message* m = doc.find_message(message_name);
    if (!m) return "";
    std::string acc = xml::canonical(xml::parse_document(m->raw).root);
    std::set<std::string> names;
    for (const auto& t : doc.schema_types)
        if (!t.name.empty()) names.insert(t.name);
    std::set<std::string> closed;
    std::vector<std::string> work;
    for (const auto& r : m->refs)
        if (names.count(r)) { closed.insert(r); work.push_back(r); }
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        const SchemaType* t = doc.find_schema_type(cur);
        if (!t) continue;
        for (const auto& r : t->refs)
            if (names.count(r) && !closed.count(r)) { closed.insert(r); work.push_back(r); }
    }
    for (const auto& name : closed) { // std::set iteration gives a stable order
        const SchemaType* t = doc.find_schema_type(name);
        acc += xml::canonical(xml::parse_document(t->raw).root);
    }
    return acc;
}

} // namespace

IoSignature io_signature(const WsdlDocument& doc, const std::string& operation) {
    for (const auto& view : doc.operations()) {
        if (view.name != operation) continue;
        IoSignature sig;
        sig.input_type = view.input_type;
        sig.output_type = view.output_type;
        sig.input_digest = hex64(xml::fnv1a(side_canonical(doc, view.input_message)));
        sig.output_digest = hex64(xml::fnv1a(side_canonical(doc, view.output_message)));
        return sig;
    }
    throw Error("unknown operation '" + operation + "' for signature");
}

OperationChangeSet diff_wsdl(const WsdlDocument& old_doc, const WsdlDocument& new_doc) {
    OperationChangeSet cs;
    std::set<std::string> old_ops, new_ops;
    for (const auto& op : old_doc.port_type.operations) old_ops.insert(op.name);
    for (const auto& op : new_doc.port_type.operations) new_ops.insert(op.name);

    for (const auto& op : new_ops)
        if (!old_ops.count(op)) cs.inserted.insert(op);
    for (const auto& op : old_ops)
        if (!new_ops.count(op)) cs.deleted.insert(op);
    for (const auto& op : old_ops) {
        if (!new_ops.count(op)) continue;
        IoSignature s_old = io_signature(old_doc, op);
        IoSignature s_new = io_signature(new_doc, op);
        if (s_old == s_new) {
            cs.unchanged.insert(op);
        } else {
            cs.io_modified.insert(op);
            cs.detail.emplace(op, std::make_pair(s_old, s_new));
        }
    }

    auto as_map = [](const std::vector<std::pair<std::string, std::string>>& v) {
        return std::map<std::string, std::string>(v.begin(), v.end());
    };
    auto a = as_map(old_doc.definitions_attrs);
    auto b = as_map(new_doc.definitions_attrs);
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end())
            cs.definition_changes.push_back("removed definitions attribute " + k);
        else if (it->second != v)
            cs.definition_changes.push_back("changed definitions attribute " + k);
    }
    for (const auto& [k, v] : b)
        if (!a.count(k))
            cs.definition_changes.push_back("added definitions attribute " + k);
    return cs;
}

} // namespace wsrt::wsdl
