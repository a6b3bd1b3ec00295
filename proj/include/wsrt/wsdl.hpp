#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wsrt::wsdl {

/// One port-type operation as seen by the selection algorithms.
struct OperationView {
    std::string name;
    std::string input_message;
    std::string output_message;
    std::string input_type;
    std::string output_type;
};

// Top-level schema child (element / complexType / simpleType). The raw
// fragment is kept verbatim; refs are the type/element names syntactically
// referenced by the fragment.
struct SchemaType {
    std::string name;
    std::string tag; // local element name, e.g. "complexType"
    std::string raw;
    std::set<std::string> refs;
};

struct Message {
    std::string name;
    std::string raw;
    std::set<std::string> refs; // element/type names referenced by parts
};

struct PortOperation {
    std::string name;
    std::string raw;
    std::string input_message;
    std::string output_message;
};

struct PortType {
    std::string name;
    std::string open_raw;
    std::string close_raw;
    std::vector<PortOperation> operations;
    bool present = false;
};

struct Binding {
    std::string name;
    std::string open_raw;
    std::string close_raw;
    // Ordered children; operations carry a name, the rest (soap:binding
    // etc.) are opaque fragments.
    struct Child {
        bool is_operation = false;
        std::string name;
        std::string raw;
    };
    std::vector<Child> children;
};

struct ServiceBlock {
    std::string raw;
    bool present = false;
};

enum class PrefixStyle { prefixed, unprefixed };

enum class Part {
    start_definition,
    xsd,
    message,
    port,
    binding,
    service,
    end_definition,
};

enum class GraphView { abstract, detailed };

struct WsdlDocument {
    std::string xml_decl;
    std::vector<std::pair<std::string, std::string>> definitions_attrs;
    std::string defs_open_raw;
    std::string defs_close_raw;
    std::string types_prelude;  // "<types><schema ...>" slices, may be empty
    std::string types_postlude; // matching closers
    bool has_types = false;
    std::vector<SchemaType> schema_types;
    std::vector<Message> messages;
    PortType port_type;
    std::vector<Binding> bindings;
    ServiceBlock service;
    PrefixStyle prefix_style = PrefixStyle::unprefixed;
    std::string wsdl_prefix; // "wsdl" for prefixed style, "" otherwise

    std::vector<OperationView> operations() const;
    std::vector<std::string> operation_names() const;
    bool has_operation(std::string_view name) const;
    const Message* find_message(std::string_view name) const;
    const SchemaType* find_schema_type(std::string_view name) const;
    std::string target_namespace() const;
    std::string service_name() const;
};

WsdlDocument parse_wsdl(std::string_view text);
std::string serialize_wsdl(const WsdlDocument& doc);

std::string extract_part(const WsdlDocument& doc, Part part,
                         const std::set<std::string>& required_operations);

std::string render_graph(const WsdlDocument& doc, GraphView view);

// Schema type names transitively reachable from the kept operations'
// messages (naming convention <Op>Type / <Op>ResponseType is also seeded).
std::set<std::string> type_closure(const WsdlDocument& doc,
                                   const std::set<std::string>& operations);

// Messages belonging to the kept operations, in source order.
std::vector<std::string> messages_of(const WsdlDocument& doc,
                                     const std::set<std::string>& operations);

bool structurally_equal(const WsdlDocument& a, const WsdlDocument& b);

bool is_builtin_xsd_type(std::string_view local);

} // namespace wsrt::wsdl
