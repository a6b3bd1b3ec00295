#include "wsrt/wsdl.hpp"

#include "wsrt/error.hpp"
#include "wsrt/xml.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wsrt::wsdl {

using xml::Element;
using xml::local_name;

bool is_builtin_xsd_type(std::string_view local) {
    static const std::set<std::string, std::less<>> builtins = {
        "string", "boolean", "decimal", "float", "double", "duration", "dateTime",
        "time", "date", "gYearMonth", "gYear", "gMonthDay", "gDay", "gMonth",
        "hexBinary", "base64Binary", "anyURI", "QName", "NOTATION", "integer",
        "int", "long", "short", "byte", "nonNegativeInteger", "positiveInteger",
        "nonPositiveInteger", "negativeInteger", "unsignedLong", "unsignedInt",
        "unsignedShort", "unsignedByte", "normalizedString", "token", "anyType",
        "anySimpleType",
    };
    return builtins.count(local) > 0;
}

namespace {

const char* kRefAttrs[] = {"type", "element", "ref", "base", "message"};

void collect_refs(const Element& e, std::set<std::string>* out) {
    for (const auto& [k, v] : e.attrs) {
        std::string kl = local_name(k);
        for (const char* ra : kRefAttrs) {
            if (kl == ra) {
                std::string name = local_name(v);
                if (!name.empty()) out->insert(name);
            }
        }
    }
    for (const auto& c : e.children) collect_refs(c, out);
}

std::set<std::string> refs_of(const Element& e) {
    std::set<std::string> out;
    collect_refs(e, &out);
    return out;
}

std::string close_tag(const Element& e) {
    return "</" + e.qname + ">";
}

std::string canon_fragment(const std::string& raw) {
    return xml::canonical(xml::parse_document(raw).root);
}

} // namespace

std::vector<std::string> WsdlDocument::operation_names() const {
    std::vector<std::string> out;
    for (const auto& op : port_type.operations) out.push_back(op.name);
    return out;
}

bool WsdlDocument::has_operation(std::string_view name) const {
    for (const auto& op : port_type.operations)
        if (op.name == name) return true;
    return false;
}

const Message* WsdlDocument::find_message(std::string_view name) const {
    for (const auto& m : messages)
        if (m.name == name) return &m;
    return nullptr;
}

const SchemaType* WsdlDocument::find_schema_type(std::string_view name) const {
    for (const auto& t : schema_types)
        if (!t.name.empty() && t.name == name) return &t;
    return nullptr;
}

std::string WsdlDocument::target_namespace() const {
    for (const auto& [k, v] : definitions_attrs)
        if (k == "targetNamespace") return v;
    return "";
}

std::string WsdlDocument::service_name() const {
    if (service.present) {
        auto doc = xml::parse_document(service.raw);
        std::string n = doc.root.attr("name");
        if (!n.empty()) return n;
    }
    for (const auto& [k, v] : definitions_attrs)
        if (k == "name") return v;
    return "definitions";
}

std::vector<OperationView> WsdlDocument::operations() const {
    std::vector<OperationView> out;
    for (const auto& op : port_type.operations) {
        OperationView v;
        v.name = op.name;
        v.input_message = op.input_message;
        v.output_message = op.output_message;
        auto part_ref = [&](const std::string& msg_name) -> std::string {
            const Message* m = find_message(msg_name);
            if (!m) return "";
            auto doc = xml::parse_document(m->raw);
            for (const auto& part : doc.root.children) {
                if (local_name(part.qname) != "part") continue;
                std::string r = part.attr("element");
                if (r.empty()) r = part.attr("type");
                if (!r.empty()) return local_name(r);
            }
            return "";
        };
        v.input_type = part_ref(op.input_message);
        v.output_type = part_ref(op.output_message);
        out.push_back(std::move(v));
    }
    return out;
}

WsdlDocument parse_wsdl(std::string_view text) {
    auto doc = xml::parse_document(text);
    const Element& root = doc.root;
    std::string root_local = local_name(root.qname);
    if (root_local == "description")
        throw Error("WSDL 2.0 documents (description/interface vocabulary) are not "
                    "supported; provide a WSDL 1.1 document with definitions/portType");
    if (root_local != "definitions")
        throw Error("missing definitions element: root is <" + root.qname + ">");

    WsdlDocument w;
    w.xml_decl = doc.xml_decl;
    w.definitions_attrs = root.attrs;
    w.defs_open_raw = root.open_raw;
    w.defs_close_raw = close_tag(root);
    w.prefix_style = xml::prefix_of(root.qname).empty() ? PrefixStyle::unprefixed
                                                        : PrefixStyle::prefixed;
    w.wsdl_prefix = xml::prefix_of(root.qname);

    for (const auto& child : root.children) {
        std::string l = local_name(child.qname);
        if (l == "interface")
            throw Error("WSDL 2.0 'interface' element found; only WSDL 1.1 portType "
                        "documents are supported");
        if (l == "types") {
            w.has_types = true;
            const Element* schema = child.child("schema");
            if (!schema) {
                w.types_prelude = child.self_closing ? child.raw : child.open_raw;
                w.types_postlude = child.self_closing ? "" : close_tag(child);
                continue;
            }
            w.types_prelude = child.open_raw + "\n    " + schema->open_raw;
            w.types_postlude = "    " + close_tag(*schema) + "\n  " + close_tag(child);
            for (const auto& tc : schema->children) {
                SchemaType t;
                t.name = tc.attr("name");
                t.tag = local_name(tc.qname);
                t.raw = tc.raw;
                t.refs = refs_of(tc);
                w.schema_types.push_back(std::move(t));
            }
        } else if (l == "message") {
            Message m;
            m.name = child.attr("name");
            m.raw = child.raw;
            m.refs = refs_of(child);
            w.messages.push_back(std::move(m));
        } else if (l == "portType") {
            w.port_type.present = true;
            w.port_type.name = child.attr("name");
            if (child.self_closing) {
                // normalize "<portType .../>" into an open/close pair
                std::string open = child.raw;
                open.erase(open.find_last_of('/'), 1);
                w.port_type.open_raw = open;
            } else {
                w.port_type.open_raw = child.open_raw;
            }
            w.port_type.close_raw = close_tag(child);
            for (const auto& oc : child.children) {
                if (local_name(oc.qname) != "operation") continue;
                PortOperation op;
                op.name = oc.attr("name");
                op.raw = oc.raw;
                if (const Element* in = oc.child("input"))
                    op.input_message = local_name(in->attr("message"));
                if (const Element* outp = oc.child("output"))
                    op.output_message = local_name(outp->attr("message"));
                for (const auto& existing : w.port_type.operations)
                    if (existing.name == op.name)
                        throw Error("duplicate operation name '" + op.name + "' in portType");
                w.port_type.operations.push_back(std::move(op));
            }
        } else if (l == "binding") {
            Binding b;
            b.name = child.attr("name");
            b.open_raw = child.open_raw;
            b.close_raw = close_tag(child);
            for (const auto& bc : child.children) {
                Binding::Child c;
                if (local_name(bc.qname) == "operation") {
                    c.is_operation = true;
                    c.name = bc.attr("name");
                }
                c.raw = bc.raw;
                b.children.push_back(std::move(c));
            }
            w.bindings.push_back(std::move(b));
        } else if (l == "service") {
            w.service.present = true;
            w.service.raw = child.raw;
        }
        // other children (documentation, policy extensions) are dropped from
        // the model; the parts the algorithms touch are all above
    }

    // referential integrity
    std::set<std::string> type_names;
    for (const auto& t : w.schema_types)
        if (!t.name.empty()) type_names.insert(t.name);
    for (const auto& m : w.messages) {
        auto mdoc = xml::parse_document(m.raw);
        for (const auto& part : mdoc.root.children) {
            if (local_name(part.qname) != "part") continue;
            std::string r = part.attr("element");
            if (r.empty()) r = part.attr("type");
            if (r.empty()) continue;
            std::string ln = local_name(r);
            if (!type_names.count(ln) && !is_builtin_xsd_type(ln))
                throw Error("message '" + m.name + "' references unknown type or element '" +
                            ln + "'");
        }
    }
    std::set<std::string> message_names;
    for (const auto& m : w.messages) message_names.insert(m.name);
    for (const auto& op : w.port_type.operations) {
        if (!op.input_message.empty() && !message_names.count(op.input_message))
            throw Error("operation '" + op.name + "' references unknown input message '" +
                        op.input_message + "'");
        if (!op.output_message.empty() && !message_names.count(op.output_message))
            throw Error("operation '" + op.name + "' references unknown output message '" +
                        op.output_message + "'");
    }
    for (const auto& b : w.bindings)
        for (const auto& c : b.children)
            if (c.is_operation && !w.has_operation(c.name))
                throw Error("binding '" + b.name + "' lists operation '" + c.name +
                            "' absent from the portType");
    return w;
}

std::vector<std::string> messages_of(const WsdlDocument& doc,
                                     const std::set<std::string>& operations) {
    std::set<std::string> wanted;
    for (const auto& op : doc.port_type.operations) {
        if (!operations.count(op.name)) continue;
        if (!op.input_message.empty()) wanted.insert(op.input_message);
        if (!op.output_message.empty()) wanted.insert(op.output_message);
    }
    std::vector<std::string> out;
    for (const auto& m : doc.messages)
        if (wanted.count(m.name)) out.push_back(m.name);
    return out;
}

std::set<std::string> type_closure(const WsdlDocument& doc,
                                   const std::set<std::string>& operations) {
    std::set<std::string> names;
    for (const auto& t : doc.schema_types)
        if (!t.name.empty()) names.insert(t.name);

    std::set<std::string> seeds;
    for (const auto& op : operations) {
        // <Op>Type / <Op>ResponseType naming convention
        for (const std::string& cand : {op, op + "Type", op + "Response", op + "ResponseType"})
            if (names.count(cand)) seeds.insert(cand);
    }
    for (const auto& mname : messages_of(doc, operations)) {
        const Message* m = doc.find_message(mname);
        for (const auto& r : m->refs)
            if (names.count(r)) seeds.insert(r);
    }
    // transitive closure over fragment references
    std::vector<std::string> work(seeds.begin(), seeds.end());
    std::set<std::string> closed = seeds;
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        const SchemaType* t = doc.find_schema_type(cur);
        if (!t) continue;
        for (const auto& r : t->refs) {
            if (names.count(r) && !closed.count(r)) {
                closed.insert(r);
                work.push_back(r);
            }
        }
    }
    return closed;
}

std::string extract_part(const WsdlDocument& doc, Part part,
                         const std::set<std::string>& required_operations) {
    if (part != Part::start_definition && part != Part::service &&
        part != Part::end_definition) {
        for (const auto& op : required_operations)
            if (!doc.has_operation(op))
                throw Error("unknown operation '" + op + "' requested from WSDL");
    }
    std::ostringstream out;
    switch (part) {
    case Part::start_definition:
        if (!doc.xml_decl.empty()) out << doc.xml_decl << "\n";
        out << doc.defs_open_raw;
        break;
    case Part::xsd: {
        if (!doc.has_types) break;
        out << doc.types_prelude;
        auto kept = type_closure(doc, required_operations);
        for (const auto& t : doc.schema_types) {
            if (t.name.empty() || kept.count(t.name))
                out << "\n      " << t.raw;
        }
        out << "\n" << doc.types_postlude;
        break;
    }
    case Part::message: {
        auto kept = messages_of(doc, required_operations);
        std::set<std::string> keep(kept.begin(), kept.end());
        bool first = true;
        for (const auto& m : doc.messages) {
            if (!keep.count(m.name)) continue;
            if (!first) out << "\n  ";
            out << m.raw;
            first = false;
        }
        break;
    }
    case Part::port: {
        if (!doc.port_type.present) break;
        out << doc.port_type.open_raw;
        for (const auto& op : doc.port_type.operations)
            if (required_operations.count(op.name)) out << "\n    " << op.raw;
        out << "\n  " << doc.port_type.close_raw;
        break;
    }
    case Part::binding: {
        bool first = true;
        for (const auto& b : doc.bindings) {
            if (!first) out << "\n  ";
            first = false;
            out << b.open_raw;
            for (const auto& c : b.children) {
                if (c.is_operation && !required_operations.count(c.name)) continue;
                out << "\n    " << c.raw;
            }
            out << "\n  " << b.close_raw;
        }
        break;
    }
    case Part::service:
        if (doc.service.present) out << doc.service.raw;
        break;
    case Part::end_definition:
        out << doc.defs_close_raw;
        break;
    }
    return out.str();
}

std::string serialize_wsdl(const WsdlDocument& doc) {
    std::set<std::string> all;
    for (const auto& op : doc.port_type.operations) all.insert(op.name);
    // fixed seven-part concatenation order
    std::ostringstream out;
    out << extract_part(doc, Part::start_definition, all);
    auto emit = [&](Part p) {
        std::string s = extract_part(doc, p, all);
        if (!s.empty()) out << "\n  " << s;
    };
    emit(Part::xsd);
    emit(Part::message);
    emit(Part::port);
    emit(Part::binding);
    emit(Part::service);
    out << "\n" << extract_part(doc, Part::end_definition, all) << "\n";
    return out.str();
}

bool structurally_equal(const WsdlDocument& a, const WsdlDocument& b) {
    auto attrs_sorted = [](std::vector<std::pair<std::string, std::string>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (attrs_sorted(a.definitions_attrs) != attrs_sorted(b.definitions_attrs)) return false;
    if (a.schema_types.size() != b.schema_types.size()) return false;
    for (std::size_t i = 0; i < a.schema_types.size(); ++i) {
        if (a.schema_types[i].name != b.schema_types[i].name) return false;
        if (canon_fragment(a.schema_types[i].raw) != canon_fragment(b.schema_types[i].raw))
            return false;
    }
    if (a.messages.size() != b.messages.size()) return false;
    for (std::size_t i = 0; i < a.messages.size(); ++i)
        if (canon_fragment(a.messages[i].raw) != canon_fragment(b.messages[i].raw))
            return false;
    if (a.port_type.operations.size() != b.port_type.operations.size()) return false;
    for (std::size_t i = 0; i < a.port_type.operations.size(); ++i)
        if (canon_fragment(a.port_type.operations[i].raw) !=
            canon_fragment(b.port_type.operations[i].raw))
            return false;
    if (a.bindings.size() != b.bindings.size()) return false;
    for (std::size_t i = 0; i < a.bindings.size(); ++i) {
        if (a.bindings[i].children.size() != b.bindings[i].children.size()) return false;
        for (std::size_t j = 0; j < a.bindings[i].children.size(); ++j)
            if (canon_fragment(a.bindings[i].children[j].raw) !=
                canon_fragment(b.bindings[i].children[j].raw))
                return false;
    }
    if (a.service.present != b.service.present) return false;
    if (a.service.present && canon_fragment(a.service.raw) != canon_fragment(b.service.raw))
        return false;
    return true;
}

std::string render_graph(const WsdlDocument& doc, GraphView view) {
    std::ostringstream out;
    out << "digraph wsdl {\n";
    out << "  rankdir=TB;\n";
    std::string root = doc.service_name();
    out << "  \"" << root << "\" [shape=box];\n";
    auto ops = doc.operations();
    for (const auto& op : ops) {
        out << "  \"" << root << "\" -> \"" << op.name << "\";\n";
        if (!op.input_type.empty())
            out << "  \"" << op.name << "\" -> \"" << op.name << ".in:" << op.input_type
                << "\";\n";
        if (!op.output_type.empty())
            out << "  \"" << op.name << "\" -> \"" << op.name << ".out:" << op.output_type
                << "\";\n";
    }
    if (view == GraphView::detailed) {
        for (const auto& op : ops) {
            if (!op.input_message.empty())
                out << "  \"" << op.name << "\" -> \"msg:" << op.input_message << "\";\n";
            if (!op.output_message.empty())
                out << "  \"" << op.name << "\" -> \"msg:" << op.output_message << "\";\n";
        }
        if (doc.port_type.present) {
            out << "  \"" << root << "\" -> \"port:" << doc.port_type.name << "\";\n";
        }
        for (const auto& b : doc.bindings)
            out << "  \"" << root << "\" -> \"binding:" << b.name << "\";\n";
        if (doc.service.present)
            out << "  \"" << root << "\" -> \"service\";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace wsrt::wsdl
