#include "wsrt/rrts.hpp"

#include "wsrt/error.hpp"
#include "wsrt/xml.hpp"

#include <algorithm>
#include <sstream>

namespace wsrt::rrts {

namespace {

struct ParamLeaf {
    std::string name;
};

// Resolve a complexType fragment to its leaf parameter names (one level of
// sequence/all nesting is plenty for skeleton requests).
void leaves_of_type(const wsdl::WsdlDocument& doc, const std::string& type_name,
                    std::vector<ParamLeaf>* out, int depth);

void leaves_of_fragment(const wsdl::WsdlDocument& doc, const xml::Element& frag,
                        std::vector<ParamLeaf>* out, int depth) {
    if (depth > 8) throw Error("schema recursion too deep while building template request");
    for (const auto& c : frag.children) {
        std::string local = xml::local_name(c.qname);
        if (local == "sequence" || local == "all" || local == "choice" ||
            local == "complexContent" || local == "extension") {
            leaves_of_fragment(doc, c, out, depth);
            continue;
        }
        if (local != "element") continue;
        std::string name = c.attr("name");
        if (name.empty()) continue;
        std::string type = xml::local_name(c.attr("type"));
        if (!type.empty() && !wsdl::is_builtin_xsd_type(type) && doc.find_schema_type(type)) {
            std::size_t before = out->size();
            leaves_of_type(doc, type, out, depth + 1);
            if (out->size() != before) continue;
        }
        out->push_back({name});
    }
}

void leaves_of_type(const wsdl::WsdlDocument& doc, const std::string& type_name,
                    std::vector<ParamLeaf>* out, int depth) {
    const wsdl::SchemaType* t = doc.find_schema_type(type_name);
    if (!t) throw Error("cannot resolve schema type '" + type_name + "' for template request");
    auto frag = xml::parse_document(t->raw);
    leaves_of_fragment(doc, frag.root, out, depth);
}

struct RequestShape {
    std::string payload_root; // element name for the body child
    std::vector<ParamLeaf> params;
    bool empty_body = false; // message has zero parts
};

RequestShape input_shape(const wsdl::WsdlDocument& doc, const std::string& operation) {
    const wsdl::PortOperation* op = nullptr;
    for (const auto& o : doc.port_type.operations)
        if (o.name == operation) op = &o;
    if (!op) throw Error("operation '" + operation + "' not found in WSDL");

    RequestShape shape;
    shape.payload_root = operation;
    if (op->input_message.empty()) {
        shape.empty_body = true;
        return shape;
    }
    const wsdl::Message* msg = doc.find_message(xml::local_name(op->input_message));
    if (!msg) throw Error("input message '" + op->input_message + "' of operation '" +
                          operation + "' not found");
    auto frag = xml::parse_document(msg->raw);
    auto parts = frag.root.children_named("part");
    if (parts.empty()) {
        shape.empty_body = true;
        return shape;
    }
    for (const auto* part : parts) {
        std::string el = xml::local_name(part->attr("element"));
        std::string ty = xml::local_name(part->attr("type"));
        if (!el.empty()) {
            const wsdl::SchemaType* e = doc.find_schema_type(el);
            if (!e) throw Error("part element '" + el + "' of operation '" + operation +
                                "' not found in schema");
            shape.payload_root = el;
            auto ef = xml::parse_document(e->raw);
            std::string ety = xml::local_name(ef.root.attr("type"));
            if (!ety.empty()) {
                if (wsdl::is_builtin_xsd_type(ety)) shape.params.push_back({el});
                else leaves_of_type(doc, ety, &shape.params, 0);
            } else {
                leaves_of_fragment(doc, ef.root, &shape.params, 0);
            }
        } else if (!ty.empty()) {
            if (wsdl::is_builtin_xsd_type(ty)) shape.params.push_back({part->attr("name")});
            else leaves_of_type(doc, ty, &shape.params, 0);
        } else {
            throw Error("message part of operation '" + operation +
                        "' has neither element nor type");
        }
    }
    return shape;
}

std::string skeleton_envelope(const wsdl::WsdlDocument& doc, const RequestShape& shape) {
    std::string tns = doc.target_namespace();
    std::ostringstream env;
    env << "<soapenv:Envelope xmlns:soapenv=\"http://schemas.xmlsoap.org/soap/envelope/\"";
    if (!tns.empty()) env << " xmlns:ser=\"" << tns << "\"";
    env << ">\n   <soapenv:Header/>\n   <soapenv:Body>";
    std::string p = tns.empty() ? "" : "ser:";
    if (shape.empty_body) {
        env << "</soapenv:Body>\n</soapenv:Envelope>";
        return env.str();
    }
    env << "\n      <" << p << shape.payload_root;
    if (shape.params.empty()) {
        env << "/>";
    } else {
        env << ">\n";
        for (const auto& leaf : shape.params)
            env << "         <" << p << leaf.name << ">?</" << p << leaf.name << ">\n";
        env << "      </" << p << shape.payload_root << ">";
    }
    env << "\n   </soapenv:Body>\n</soapenv:Envelope>";
    return env.str();
}

std::string soapui_case_raw(const std::string& op, const std::string& case_name,
                            const std::string& envelope) {
    std::ostringstream out;
    out << "  <con:testCase name=\"" << case_name << "\">\n"
        << "    <con:testStep type=\"request\" name=\"" << op << "\">\n"
        << "      <con:config>\n"
        << "        <con:operation>" << op << "</con:operation>\n"
        << "        <con:request name=\"" << op << " - Request 1\"><![CDATA[" << envelope
        << "]]></con:request>\n"
        << "      </con:config>\n"
        << "    </con:testStep>\n"
        << "  </con:testCase>";
    return out.str();
}

std::string jmeter_case_raw(const std::string& case_name, const std::string& envelope) {
    std::ostringstream out;
    out << "        <SoapSampler guiclass=\"SoapSamplerGui\" testclass=\"SoapSampler\""
        << " testname=\"" << case_name << "\" enabled=\"true\">\n"
        << "          <stringProp name=\"SoapSampler.URL_DATA\"></stringProp>\n"
        << "          <stringProp name=\"HTTPSampler.xml_data\">" << xml::escape_text(envelope)
        << "</stringProp>\n"
        << "          <stringProp name=\"SoapSampler.SOAP_ACTION\"></stringProp>\n"
        << "          <boolProp name=\"SoapSampler.SEND_SOAP_ACTION\">false</boolProp>\n"
        << "        </SoapSampler>\n"
        << "        <hashTree/>";
    return out.str();
}

} // namespace

suite::TestCase make_template(const std::string& operation, const wsdl::WsdlDocument& wsdl_doc,
                              suite::Dialect dialect) {
    RequestShape shape = input_shape(wsdl_doc, operation);
    std::string envelope = skeleton_envelope(wsdl_doc, shape);

    suite::TestCase tc;
    tc.name = operation + "_TestCase";
    tc.is_template = true;
    tc.bound_operation = operation;
    tc.raw = dialect == suite::Dialect::soapui ? soapui_case_raw(operation, tc.name, envelope)
                                               : jmeter_case_raw(tc.name, envelope);
    suite::TestStep step;
    step.name = operation;
    step.type = "request";
    step.operation = operation;
    step.request_payload = envelope;
    tc.steps.push_back(std::move(step));
    return tc;
}

Result build_rrts(const suite::TestSuite& old_suite, const Plan& plan,
                  const wsdl::WsdlDocument& new_wsdl) {
    Result res;
    res.suite = old_suite;
    res.suite.cases.clear();
    res.report.old_case_count = old_suite.cases.size();

    std::set<std::string> covered_inserted;
    std::set<std::string> used_names;
    for (const auto& c : old_suite.cases) used_names.insert(c.name);

    for (const auto& c : old_suite.cases) {
        res.report.old_step_count += c.steps.size();
        if (!c.bound_operation) {
            res.report.dropped.emplace_back(c.name, "not bound to any operation");
            continue;
        }
        const std::string& op = *c.bound_operation;
        if (!new_wsdl.has_operation(op)) {
            res.report.dropped.emplace_back(c.name, "operation '" + op +
                                                        "' absent from new WSDL (obsolete)");
            continue;
        }
        if (plan.modified.count(op)) {
            res.report.kept.emplace_back(c.name, "operation '" + op + "' modified");
            res.suite.cases.push_back(c);
        } else if (plan.inserted.count(op)) {
            // the suite predates the operation; keep whatever is there and flag it
            res.report.kept.emplace_back(c.name, "stale case for inserted operation '" + op + "'");
            if (covered_inserted.insert(op).second)
                res.report.stale_case_operations.push_back(op);
            res.suite.cases.push_back(c);
        } else if (plan.unmodified.count(op)) {
            res.report.dropped.emplace_back(c.name, "operation '" + op + "' unmodified");
        } else if (plan.deleted.count(op)) {
            res.report.dropped.emplace_back(c.name, "operation '" + op + "' deleted");
        } else {
            res.report.dropped.emplace_back(c.name, "operation '" + op + "' not selected");
        }
    }

    for (const auto& op : plan.inserted) {
        if (covered_inserted.count(op)) continue;
        if (!new_wsdl.has_operation(op))
            throw Error("inserted operation '" + op + "' absent from new WSDL");
        suite::TestCase tc = make_template(op, new_wsdl, old_suite.dialect);
        while (used_names.count(tc.name)) tc.name += "_new";
        used_names.insert(tc.name);
        res.report.templates_added.push_back(tc.name);
        res.suite.cases.push_back(std::move(tc));
    }

    res.report.new_case_count = res.suite.cases.size();
    for (const auto& c : res.suite.cases) res.report.new_step_count += c.steps.size();
    return res;
}

PrtwsResult prtws_reduce(const suite::TestSuite& suite_in,
                         const suite::PrimaryParameterScenario& scenario,
                         const std::map<std::string, std::vector<std::string>>& selection) {
    PrtwsResult res;
    res.suite = suite_in;
    res.suite.cases.clear();
    res.report.scenario_violations = suite::validate_scenario(suite_in, scenario);

    for (const auto& [name, steps] : selection)
        if (!suite_in.find_case(name))
            throw Error("selection names unknown test case '" + name + "'");

    for (const auto& c : suite_in.cases) {
        bool in_scenario = c.bound_operation && *c.bound_operation == scenario.operation;
        if (!in_scenario) {
            res.suite.cases.push_back(c);
            continue;
        }
        res.report.steps_before += c.steps.size();
        auto it = selection.find(c.name);
        if (it == selection.end()) {
            res.report.dropped_cases.push_back(c.name);
            continue;
        }
        suite::TestCase reduced = suite::select_steps(c, it->second);
        res.report.steps_after += reduced.steps.size();
        res.suite.cases.push_back(std::move(reduced));
    }
    if (res.report.steps_before > 0)
        res.report.reduction_percent =
            100.0 * static_cast<double>(res.report.steps_before - res.report.steps_after) /
            static_cast<double>(res.report.steps_before);
    return res;
}

} // namespace wsrt::rrts
