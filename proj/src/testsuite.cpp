#include "wsrt/testsuite.hpp"

#include "wsrt/error.hpp"
#include "wsrt/xml.hpp"

#include <algorithm>
#include <functional>

namespace wsrt::suite {

using xml::Element;
using xml::local_name;

const char* dialect_name(Dialect d) {
    return d == Dialect::soapui ? "soapui" : "jmeter";
}

std::optional<Dialect> dialect_from_name(std::string_view name) {
    if (name == "soapui") return Dialect::soapui;
    if (name == "jmeter") return Dialect::jmeter;
    return std::nullopt;
}

Dialect sniff_dialect(std::string_view xml_text) {
    auto doc = xml::parse_document(xml_text);
    std::string root = local_name(doc.root.qname);
    if (root == "testSuite" || root == "soapui-project") return Dialect::soapui;
    if (root == "jmeterTestPlan") return Dialect::jmeter;
    throw Error("cannot determine test suite dialect from root <" + doc.root.qname + ">");
}

std::set<std::string> TestCase::step_operations() const {
    std::set<std::string> out;
    for (const auto& s : steps)
        if (!s.operation.empty()) out.insert(s.operation);
    return out;
}

const TestCase* TestSuite::find_case(std::string_view name) const {
    for (const auto& c : cases)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

void collect_named(const Element& e, std::string_view local, std::vector<const Element*>* out) {
    for (const auto& c : e.children) {
        if (local_name(c.qname) == local) out->push_back(&c);
        collect_named(c, local, out);
    }
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Leaf elements under the SOAP body of the request payload.
void extract_parameters(TestStep* step) {
    if (step->request_payload.empty()) return;
    try {
        auto doc = xml::parse_document(step->request_payload);
        const Element* body = nullptr;
        if (local_name(doc.root.qname) == "Body") body = &doc.root;
        else body = doc.root.find("Body");
        if (!body || body->children.empty()) {
            step->payload_parsed = true; // parsed, just no parameters
            return;
        }
        const Element& op_el = body->children.front();
        std::vector<const Element*> stack{&op_el};
        // DFS, leaves in document order
        std::vector<const Element*> leaves;
        std::function<void(const Element&)> walk = [&](const Element& e) {
            if (e.children.empty()) {
                if (&e != &op_el) leaves.push_back(&e);
                return;
            }
            for (const auto& c : e.children) walk(c);
        };
        walk(op_el);
        for (const Element* leaf : leaves)
            step->parameter_values.emplace_back(local_name(leaf->qname), trim(leaf->text));
        step->payload_parsed = true;
    } catch (const Error&) {
        step->payload_parsed = false; // best effort, never fails the pipeline
    }
}

std::string name_convention_operation(const std::string& case_name) {
    auto pos = case_name.find("_TestCase");
    if (pos != std::string::npos && pos > 0) return case_name.substr(0, pos);
    auto pos2 = case_name.find("_TC");
    if (pos2 != std::string::npos && pos2 > 0) return case_name.substr(0, pos2);
    return "";
}

void bind_case(TestCase* c) {
    for (const auto& s : c->steps) {
        if (!s.operation.empty()) {
            c->bound_operation = s.operation;
            return;
        }
    }
    std::string conv = name_convention_operation(c->name);
    if (!conv.empty()) c->bound_operation = conv;
}

TestSuite parse_soapui(const std::string& text) {
    auto doc = xml::parse_document(text);
    const Element& root = doc.root;
    if (local_name(root.qname) != "testSuite")
        throw Error("wrong dialect root for soapui suite: <" + root.qname +
                    "> (expected testSuite)");
    TestSuite suite;
    suite.dialect = Dialect::soapui;
    suite.name = root.attr("name");
    suite.source = std::make_shared<const std::string>(text);

    std::set<std::string> names;
    std::size_t last_case_end = 0;
    for (const auto& child : root.children) {
        if (local_name(child.qname) != "testCase") continue;
        TestCase c;
        c.name = child.attr("name");
        if (!names.insert(c.name).second)
            throw Error("duplicate test case name '" + c.name + "'");
        c.src_begin = child.begin;
        c.src_end = child.end;
        last_case_end = child.end;
        for (const auto& sc : child.children) {
            if (local_name(sc.qname) != "testStep") continue;
            TestStep s;
            s.name = sc.attr("name");
            s.type = sc.attr("type");
            s.src_begin = sc.begin;
            s.src_end = sc.end;
            if (const Element* op = sc.find("operation")) s.operation = trim(op->text);
            std::vector<const Element*> requests;
            collect_named(sc, "request", &requests);
            for (const Element* r : requests) {
                std::string t = trim(r->text);
                if (!t.empty()) { s.request_payload = t; break; }
            }
            extract_parameters(&s);
            c.steps.push_back(std::move(s));
        }
        bind_case(&c);
        suite.cases.push_back(std::move(c));
    }
    if (last_case_end != 0) {
        suite.insert_pos = last_case_end;
    } else {
        auto close = text.rfind("</", root.end);
        suite.insert_pos = close == std::string::npos ? root.end : close;
    }
    return suite;
}

const char* kJmeterPayloadProps[] = {"HTTPSampler.xml_data", "SoapSampler.xml_data",
                                     "Soap.xml_data"};

std::string sampler_payload(const Element& sampler) {
    for (const auto& c : sampler.children) {
        if (local_name(c.qname) != "stringProp") continue;
        std::string n = c.attr("name");
        for (const char* p : kJmeterPayloadProps)
            if (n == p) return trim(c.text);
    }
    return "";
}

void walk_samplers(const Element& e, const std::string& text, TestSuite* suite,
                   std::set<std::string>* names, std::size_t* last_end) {
    for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Element& c = e.children[i];
        if (local_name(c.qname) == "SoapSampler") {
            TestCase tc;
            tc.name = c.attr("testname");
            if (!names->insert(tc.name).second)
                throw Error("duplicate test case name '" + tc.name + "'");
            tc.src_begin = c.begin;
            tc.src_end = c.end;
            if (i + 1 < e.children.size() &&
                local_name(e.children[i + 1].qname) == "hashTree")
                tc.src_end = e.children[i + 1].end;
            TestStep s;
            s.name = tc.name;
            s.type = "request";
            s.src_begin = c.begin;
            s.src_end = c.end;
            s.request_payload = sampler_payload(c);
            if (!s.request_payload.empty()) {
                try {
                    auto pd = xml::parse_document(s.request_payload);
                    const Element* body = pd.root.find("Body");
                    if (body && !body->children.empty())
                        s.operation = local_name(body->children.front().qname);
                } catch (const Error&) {
                }
            }
            extract_parameters(&s);
            tc.steps.push_back(std::move(s));
            bind_case(&tc);
            *last_end = tc.src_end;
            suite->cases.push_back(std::move(tc));
        } else {
            walk_samplers(c, text, suite, names, last_end);
        }
    }
}

TestSuite parse_jmeter(const std::string& text) {
    auto doc = xml::parse_document(text);
    const Element& root = doc.root;
    if (local_name(root.qname) != "jmeterTestPlan")
        throw Error("wrong dialect root for jmeter plan: <" + root.qname +
                    "> (expected jmeterTestPlan)");
    TestSuite suite;
    suite.dialect = Dialect::jmeter;
    suite.name = root.attr("testname");
    if (suite.name.empty()) {
        if (const Element* plan = root.find("TestPlan")) suite.name = plan->attr("testname");
    }
    suite.source = std::make_shared<const std::string>(text);

    std::set<std::string> names;
    std::size_t last_end = 0;
    walk_samplers(root, text, &suite, &names, &last_end);
    if (last_end != 0) {
        suite.insert_pos = last_end;
    } else if (const Element* tg = root.find("ThreadGroup")) {
        // insert inside the hashTree pairing the thread group
        // find tg's parent sibling hashTree via raw search
        auto close = text.find("</hashTree>", tg->end);
        suite.insert_pos = close == std::string::npos ? tg->end : close;
    } else {
        throw Error("jmeter plan has no ThreadGroup to attach samplers to");
    }
    return suite;
}

} // namespace

TestSuite parse_suite(const std::string& xml_text, Dialect dialect) {
    return dialect == Dialect::soapui ? parse_soapui(xml_text) : parse_jmeter(xml_text);
}

std::string serialize_suite(const TestSuite& suite) {
    if (!suite.source) throw Error("suite has no source text to serialize from");
    const std::string& src = *suite.source;
    TestSuite original = parse_suite(src, suite.dialect);

    struct Edit {
        std::size_t pos;
        std::size_t del_len;
        std::string insert;
    };
    std::vector<Edit> edits;

    // widen a removal to swallow the preceding indentation + newline
    auto widen = [&](std::size_t begin) {
        std::size_t s = begin;
        while (s > 0 && (src[s - 1] == ' ' || src[s - 1] == '\t')) --s;
        if (s > 0 && src[s - 1] == '\n') --s;
        return s;
    };

    auto current_case = [&](std::size_t begin) -> const TestCase* {
        for (const auto& c : suite.cases)
            if (c.src_begin == begin && !c.is_template) return &c;
        return nullptr;
    };

    for (const auto& oc : original.cases) {
        const TestCase* cc = current_case(oc.src_begin);
        if (!cc) {
            std::size_t s = widen(oc.src_begin);
            edits.push_back({s, oc.src_end - s, ""});
            continue;
        }
        for (const auto& os : oc.steps) {
            bool kept = std::any_of(cc->steps.begin(), cc->steps.end(),
                                    [&](const TestStep& s) { return s.src_begin == os.src_begin; });
            if (!kept) {
                std::size_t s = widen(os.src_begin);
                edits.push_back({s, os.src_end - s, ""});
            }
        }
    }
    std::string inserts;
    for (const auto& c : suite.cases)
        if (c.src_begin == 0 && !c.raw.empty()) inserts += "\n" + c.raw;
    if (!inserts.empty()) edits.push_back({suite.insert_pos, 0, inserts});

    std::sort(edits.begin(), edits.end(),
              [](const Edit& a, const Edit& b) { return a.pos > b.pos; });
    std::string out = src;
    for (const auto& e : edits) out.replace(e.pos, e.del_len, e.insert);
    return out;
}

std::map<std::string, std::vector<std::string>>
map_operation_tests(const TestSuite& suite, const wsdl::WsdlDocument& wsdl_doc) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& c : suite.cases) {
        std::set<std::string> ops;
        for (const auto& op : c.step_operations())
            if (wsdl_doc.has_operation(op)) ops.insert(op);
        if (ops.empty()) {
            std::string conv = name_convention_operation(c.name);
            if (!conv.empty() && wsdl_doc.has_operation(conv)) ops.insert(conv);
        }
        if (ops.empty()) {
            out[kUnbound].push_back(c.name);
        } else {
            for (const auto& op : ops) out[op].push_back(c.name);
        }
    }
    return out;
}

TestCase select_steps(const TestCase& test_case, const std::vector<std::string>& keep) {
    std::set<std::string> known;
    for (const auto& s : test_case.steps) known.insert(s.name);
    for (const auto& k : keep)
        if (!known.count(k))
            throw Error("unknown step '" + k + "' in test case '" + test_case.name + "'");
    std::set<std::string> keep_set(keep.begin(), keep.end());
    TestCase out = test_case;
    out.steps.clear();
    for (const auto& s : test_case.steps)
        if (keep_set.count(s.name)) out.steps.push_back(s);
    return out;
}

std::vector<std::string> validate_scenario(const TestSuite& suite,
                                           const PrimaryParameterScenario& scenario) {
    std::vector<std::string> violations;
    for (const auto& c : suite.cases) {
        if (!c.bound_operation || *c.bound_operation != scenario.operation) continue;
        std::map<std::string, std::string> fixed = scenario.fixed_primary_values;
        for (const auto& s : c.steps) {
            if (!s.payload_parsed) continue; // unparseable payload disables validation
            for (const auto& p : scenario.primary_params) {
                auto it = std::find_if(s.parameter_values.begin(), s.parameter_values.end(),
                                       [&](const auto& kv) { return kv.first == p; });
                if (it == s.parameter_values.end()) continue;
                auto [fit, inserted] = fixed.emplace(p, it->second);
                if (!inserted && fit->second != it->second)
                    violations.push_back("case '" + c.name + "' step '" + s.name +
                                         "': primary parameter '" + p + "' is '" +
                                         it->second + "', expected '" + fit->second + "'");
            }
        }
    }
    return violations;
}

} // namespace wsrt::suite
