// Command-line front end for the WSDL regression-selection pipeline.
#include <CLI11.hpp>
#include <json.hpp>

#include "wsrt/code_analyzer.hpp"
#include "wsrt/error.hpp"
#include "wsrt/metrics.hpp"
#include "wsrt/rrts.hpp"
#include "wsrt/subset.hpp"
#include "wsrt/testsuite.hpp"
#include "wsrt/wsdl.hpp"
#include "wsrt/wsdl_diff.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _WIN32
#include <io.h>
#define ISATTY _isatty
#define FILENO _fileno
#else
#include <unistd.h>
#define ISATTY isatty
#define FILENO fileno
#endif

using json = nlohmann::json;
using namespace wsrt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool g_force = false;

void write_file(const std::string& path, const std::string& content) {
    if (!g_force && std::filesystem::exists(path))
        throw Error(path + " already exists (pass --force to overwrite)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

bool g_pretty = false;

void emit_report(const std::string& path, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
    if (g_pretty && !path.empty() && path != "-") std::cout << text;
}

wsdl::WsdlDocument load_wsdl(const std::string& path) {
    try {
        return wsdl::parse_wsdl(slurp(path));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

suite::Dialect pick_dialect(const std::string& flag, const std::string& suite_text) {
    std::string name = flag;
    if (name.empty()) {
        if (const char* env = std::getenv("WSRT_DIALECT")) name = env;
    }
    if (!name.empty()) {
        auto d = suite::dialect_from_name(name);
        if (!d) throw Error("unknown dialect '" + name + "' (use soapui or jmeter)");
        return *d;
    }
    return suite::sniff_dialect(suite_text);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Prompt on the controlling terminal when nothing was passed on the command
// line; never blocks in pipelines.
std::vector<std::string> prompt_list(const std::string& what,
                                     const std::vector<std::string>& available) {
    if (!ISATTY(FILENO(stdin)))
        throw Error("no " + what + " given and standard input is not a terminal; pass the "
                    "selection on the command line");
    std::cerr << "Available " << what << ":\n";
    for (const auto& a : available) std::cerr << "  " << a << "\n";
    std::cerr << "Enter a comma-separated selection: " << std::flush;
    std::string line;
    std::getline(std::cin, line);
    return split_list(line);
}

json provenance_json(const std::map<std::string, std::string>& prov) {
    json j = json::object();
    for (const auto& [op, why] : prov) j[op] = why;
    return j;
}

void finish_subset(const subset::Result& r, const std::string& out_path,
                   const std::string& report_path, const std::string& kind) {
    if (!out_path.empty()) write_file(out_path, wsdl::serialize_wsdl(r.document));
    json j;
    j["kind"] = kind;
    j["operations"] = r.document.operation_names();
    j["provenance"] = provenance_json(r.provenance);
    j["warnings"] = r.warnings;
    emit_report(report_path, j);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

code::UnitMap load_units(const std::string& src_dir, const std::string& units_dir) {
    code::SeparationResult r;
    if (!units_dir.empty())
        r = code::units_from_dir(units_dir);
    else
        r = code::separate_units(src_dir);
    for (const auto& e : r.errors) std::cerr << "warning: " << e << "\n";
    return r.units;
}

int run(int argc, char** argv) {
    CLI::App app{"Change-impact-based regression test selection for SOAP services"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--force", g_force, "overwrite existing output files");
    app.add_flag("--pretty", g_pretty, "also print file-bound reports to stdout");

    // ---- diff-wsdl ----
    auto* diff = app.add_subcommand("diff-wsdl",
                                    "diff two WSDL versions and build the difference subset");
    std::string d_old, d_new, d_out, d_report;
    diff->add_option("--old", d_old, "old WSDL")->required();
    diff->add_option("--new", d_new, "new WSDL")->required();
    diff->add_option("--out", d_out, "output subset WSDL path");
    diff->add_option("--report", d_report, "JSON report path (- for stdout)");
    diff->callback([&] {
        auto o = load_wsdl(d_old);
        auto n = load_wsdl(d_new);
        auto cs = wsdl::diff_wsdl(o, n);
        auto r = subset::difference_wsdl(o, n);
        if (!d_out.empty()) write_file(d_out, wsdl::serialize_wsdl(r.document));
        json j;
        j["inserted"] = cs.inserted;
        j["deleted"] = cs.deleted;
        j["io_modified"] = cs.io_modified;
        j["unchanged"] = cs.unchanged;
        j["definition_changes"] = cs.definition_changes;
        j["subset_operations"] = r.document.operation_names();
        emit_report(d_report, j);
    });

    // ---- unit-wsdl ----
    auto* unit = app.add_subcommand("unit-wsdl",
                                    "subset for operations whose source code changed");
    std::string u_wsdl, u_old_src, u_new_src, u_old_units, u_new_units, u_out, u_report;
    unit->add_option("--wsdl", u_wsdl, "new WSDL")->required();
    unit->add_option("--old-src", u_old_src, "old source tree");
    unit->add_option("--new-src", u_new_src, "new source tree");
    unit->add_option("--old-units", u_old_units, "old pre-separated unit dir");
    unit->add_option("--new-units", u_new_units, "new pre-separated unit dir");
    unit->add_option("--out", u_out, "output subset WSDL path");
    unit->add_option("--report", u_report, "JSON report path (- for stdout)");
    unit->callback([&] {
        if ((u_old_src.empty() && u_old_units.empty()) ||
            (u_new_src.empty() && u_new_units.empty()))
            throw CLI::ValidationError("unit-wsdl needs old and new sources (--old-src/--new-src "
                                       "or --old-units/--new-units)");
        auto doc = load_wsdl(u_wsdl);
        auto cs = code::diff_units(load_units(u_old_src, u_old_units),
                                   load_units(u_new_src, u_new_units));
        auto r = subset::unit_wsdl(doc, cs);
        if (!u_out.empty()) write_file(u_out, wsdl::serialize_wsdl(r.document));
        json j;
        j["changed_units"] = cs.changed;
        j["added_units"] = cs.added;
        j["removed_units"] = cs.removed;
        j["subset_operations"] = r.document.operation_names();
        j["warnings"] = r.warnings;
        emit_report(u_report, j);
    });

    // ---- reduce-wsdl ----
    auto* reduce = app.add_subcommand("reduce-wsdl", "subset for user-selected operations");
    std::string r_wsdl, r_ops, r_out, r_report;
    reduce->add_option("--wsdl", r_wsdl, "base WSDL")->required();
    reduce->add_option("--ops", r_ops, "comma-separated operation names");
    reduce->add_option("--out", r_out, "output subset WSDL path");
    reduce->add_option("--report", r_report, "JSON report path (- for stdout)");
    reduce->callback([&] {
        auto doc = load_wsdl(r_wsdl);
        auto ops = split_list(r_ops);
        if (ops.empty()) ops = prompt_list("operations", doc.operation_names());
        finish_subset(subset::reduce_wsdl(doc, ops), r_out, r_report, "reduce");
    });

    // ---- combine-wsdl ----
    auto* combine = app.add_subcommand("combine-wsdl", "union of subset WSDLs over one base");
    std::string c_base, c_out, c_report;
    std::vector<std::string> c_parts;
    combine->add_option("--base", c_base, "base (new) WSDL")->required();
    combine->add_option("--parts", c_parts, "subset WSDL files")->required()->expected(-1);
    combine->add_option("--out", c_out, "output subset WSDL path");
    combine->add_option("--report", c_report, "JSON report path (- for stdout)");
    combine->callback([&] {
        auto base = load_wsdl(c_base);
        std::vector<wsdl::WsdlDocument> parts;
        parts.reserve(c_parts.size());
        for (const auto& p : c_parts) parts.push_back(load_wsdl(p));
        std::vector<const wsdl::WsdlDocument*> ptrs;
        for (const auto& p : parts) ptrs.push_back(&p);
        finish_subset(subset::combined_wsdl(base, ptrs), c_out, c_report, "combined");
    });

    // ---- param-wsdl ----
    auto* param = app.add_subcommand("param-wsdl",
                                     "subset for operations impacted through the call graph");
    std::string p_wsdl, p_graph, p_changed, p_old_src, p_new_src, p_out, p_report;
    param->add_option("--wsdl", p_wsdl, "new WSDL")->required();
    param->add_option("--callgraph", p_graph, "call graph file (caller -> callee lines)")
        ->required();
    param->add_option("--changed", p_changed, "comma-separated changed unit names");
    param->add_option("--old-src", p_old_src, "old source tree (derive changed units)");
    param->add_option("--new-src", p_new_src, "new source tree (derive changed units)");
    param->add_option("--out", p_out, "output subset WSDL path");
    param->add_option("--report", p_report, "JSON report path (- for stdout)");
    param->callback([&] {
        auto doc = load_wsdl(p_wsdl);
        auto graph = code::load_callgraph(slurp(p_graph));
        std::set<std::string> changed;
        for (const auto& c : split_list(p_changed)) changed.insert(c);
        if (changed.empty()) {
            if (p_old_src.empty() || p_new_src.empty())
                throw CLI::ValidationError("param-wsdl needs --changed or both "
                                           "--old-src and --new-src");
            auto cs = code::diff_units(load_units(p_old_src, ""), load_units(p_new_src, ""));
            changed = cs.changed;
        }
        std::vector<std::string> warnings = graph.warnings;
        auto affected = code::affected_operations(graph, changed, &warnings);
        auto r = subset::parameter_wsdl(doc, affected);
        if (!p_out.empty()) write_file(p_out, wsdl::serialize_wsdl(r.document));
        json j;
        j["changed_units"] = changed;
        j["affected_operations"] = affected;
        j["subset_operations"] = r.document.operation_names();
        j["warnings"] = warnings;
        emit_report(p_report, j);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    });

    // ---- rrts ----
    auto* rr = app.add_subcommand("rrts", "rewrite a suite into the reduced regression suite");
    std::string t_subset, t_suite, t_old_wsdl, t_new_wsdl, t_dialect, t_out, t_report;
    rr->add_option("--subset", t_subset, "subset WSDL driving the selection")->required();
    rr->add_option("--suite", t_suite, "old test suite (SoapUI XML or JMeter JMX)")->required();
    rr->add_option("--new-wsdl", t_new_wsdl, "full new WSDL (defaults to the subset)");
    rr->add_option("--old-wsdl", t_old_wsdl, "old WSDL, enables inserted/deleted detection");
    rr->add_option("--dialect", t_dialect, "soapui or jmeter (default: sniffed, or $WSRT_DIALECT)");
    rr->add_option("--out", t_out, "output suite path");
    rr->add_option("--report", t_report, "JSON report path (- for stdout)");
    rr->callback([&] {
        auto sub = load_wsdl(t_subset);
        auto new_doc = t_new_wsdl.empty() ? sub : load_wsdl(t_new_wsdl);
        std::string text = slurp(t_suite);
        auto dialect = pick_dialect(t_dialect, text);
        auto old_suite = suite::parse_suite(text, dialect);

        rrts::Plan plan;
        std::set<std::string> sub_ops;
        for (const auto& op : sub.operation_names()) sub_ops.insert(op);
        if (!t_old_wsdl.empty()) {
            auto old_doc = load_wsdl(t_old_wsdl);
            for (const auto& op : sub_ops) {
                if (old_doc.has_operation(op)) plan.modified.insert(op);
                else plan.inserted.insert(op);
            }
            for (const auto& op : old_doc.operation_names()) {
                if (!new_doc.has_operation(op)) plan.deleted.insert(op);
                else if (!sub_ops.count(op)) plan.unmodified.insert(op);
            }
        } else {
            // no old WSDL: a subset op nobody tests yet is treated as inserted
            std::set<std::string> covered;
            for (const auto& c : old_suite.cases)
                if (c.bound_operation) covered.insert(*c.bound_operation);
            for (const auto& op : sub_ops) {
                if (covered.count(op)) plan.modified.insert(op);
                else plan.inserted.insert(op);
            }
            for (const auto& op : new_doc.operation_names())
                if (!sub_ops.count(op)) plan.unmodified.insert(op);
        }

        auto r = rrts::build_rrts(old_suite, plan, new_doc);
        std::string out_text = suite::serialize_suite(r.suite);
        // self-check: the emitted suite must re-parse with the same cases
        auto again = suite::parse_suite(out_text, dialect);
        if (again.cases.size() != r.suite.cases.size())
            throw Error("internal: serialized suite does not re-parse consistently");
        if (!t_out.empty()) write_file(t_out, out_text);
        if (r.suite.cases.empty()) std::cerr << "warning: reduced suite has no test cases\n";
        json j;
        j["kept"] = json::array();
        for (const auto& [c, why] : r.report.kept) j["kept"].push_back({{"case", c}, {"reason", why}});
        j["dropped"] = json::array();
        for (const auto& [c, why] : r.report.dropped)
            j["dropped"].push_back({{"case", c}, {"reason", why}});
        j["templates_added"] = r.report.templates_added;
        j["stale_case_operations"] = r.report.stale_case_operations;
        j["old_case_count"] = r.report.old_case_count;
        j["new_case_count"] = r.report.new_case_count;
        emit_report(t_report, j);
    });

    // ---- prtws ----
    auto* pr = app.add_subcommand("prtws", "reduce steps inside primary-parameter test cases");
    std::string w_suite, w_op, w_primary, w_case, w_steps, w_dialect, w_out, w_report;
    pr->add_option("--suite", w_suite, "test suite file")->required();
    pr->add_option("--op", w_op, "scenario operation")->required();
    pr->add_option("--primary", w_primary, "comma-separated primary parameter names");
    pr->add_option("--case", w_case, "test case to reduce (default: every case bound to --op)");
    pr->add_option("--steps", w_steps, "step names, or k-of-n to keep the first k of n");
    pr->add_option("--dialect", w_dialect, "soapui or jmeter");
    pr->add_option("--out", w_out, "output suite path");
    pr->add_option("--report", w_report, "JSON report path (- for stdout)");
    pr->callback([&] {
        std::string text = slurp(w_suite);
        auto dialect = pick_dialect(w_dialect, text);
        auto s = suite::parse_suite(text, dialect);

        suite::PrimaryParameterScenario sc;
        sc.operation = w_op;
        sc.primary_params = split_list(w_primary);

        std::vector<const suite::TestCase*> targets;
        for (const auto& c : s.cases)
            if (c.bound_operation == w_op && (w_case.empty() || c.name == w_case))
                targets.push_back(&c);
        if (targets.empty())
            throw Error("no test case bound to operation '" + w_op + "'" +
                        (w_case.empty() ? "" : " named '" + w_case + "'"));

        std::map<std::string, std::vector<std::string>> selection;
        for (const auto* c : targets) {
            std::vector<std::string> keep;
            auto dash = w_steps.find("-of-");
            if (!w_steps.empty() && dash != std::string::npos) {
                long k = std::stol(w_steps.substr(0, dash));
                long n = std::stol(w_steps.substr(dash + 4));
                if (n != static_cast<long>(c->steps.size()))
                    throw Error("case '" + c->name + "' has " + std::to_string(c->steps.size()) +
                                " steps, not " + std::to_string(n));
                if (k < 0 || k > n) throw Error("step selection k out of range");
                for (long i = 0; i < k; ++i) keep.push_back(c->steps[i].name);
            } else if (!w_steps.empty()) {
                keep = split_list(w_steps);
            } else {
                std::vector<std::string> names;
                for (const auto& st : c->steps) names.push_back(st.name);
                keep = prompt_list("steps of case '" + c->name + "'", names);
            }
            selection[c->name] = keep;
        }

        auto r = rrts::prtws_reduce(s, sc, selection);
        std::string out_text = suite::serialize_suite(r.suite);
        if (!w_out.empty()) write_file(w_out, out_text);
        json j;
        j["steps_before"] = r.report.steps_before;
        j["steps_after"] = r.report.steps_after;
        j["reduction_percent"] = r.report.reduction_percent;
        j["dropped_cases"] = r.report.dropped_cases;
        j["scenario_violations"] = r.report.scenario_violations;
        emit_report(w_report, j);
        for (const auto& v : r.report.scenario_violations) std::cerr << "warning: " << v << "\n";
    });

    // ---- metrics ----
    auto* met = app.add_subcommand("metrics", "effort-reduction estimates");
    std::string m_old, m_new, m_subset, m_old_src, m_new_src, m_report;
    metrics::LineRatioInputs m_line;
    bool m_have_line = false;
    met->add_option("--old", m_old, "old WSDL");
    met->add_option("--new", m_new, "new WSDL");
    met->add_option("--subset", m_subset, "subset WSDL");
    met->add_option("--old-src", m_old_src, "old source tree for line counts");
    met->add_option("--new-src", m_new_src, "new source tree for line counts");
    auto* l1 = met->add_option("--l1", m_line.l1, "WSDL lines, v1");
    met->add_option("--l2", m_line.l2, "WSDL lines, v2");
    met->add_option("--x1", m_line.x1, "WSDL lines per operation, v1");
    met->add_option("--x2", m_line.x2, "WSDL lines per operation, v2");
    met->add_option("--y1", m_line.y1, "code lines per operation, v1");
    met->add_option("--y2", m_line.y2, "code lines per operation, v2");
    met->add_option("--report", m_report, "JSON report path (- for stdout)");
    met->callback([&] {
        m_have_line = l1->count() > 0;
        json j;
        auto line_json = [](const metrics::EffortReport& r) {
            return json{{"C", r.c},
                        {"Xav", r.xav},
                        {"Yav", r.yav},
                        {"V_prime", r.v_prime},
                        {"V2", r.v2},
                        {"percent_effort_required", r.percent_effort_required},
                        {"percent_effort_reduction", r.percent_effort_reduction}};
        };
        if (m_have_line) {
            j["line_ratio"] = line_json(metrics::line_ratio_effort(m_line));
        }
        if (!m_old.empty() || !m_new.empty() || !m_subset.empty()) {
            if (m_old.empty() || m_new.empty() || m_subset.empty())
                throw CLI::ValidationError("metrics needs --old, --new and --subset together");
            auto o = load_wsdl(m_old);
            auto n = load_wsdl(m_new);
            auto sub = load_wsdl(m_subset);
            code::UnitMap old_units, new_units;
            bool have_src = !m_old_src.empty() && !m_new_src.empty();
            if (have_src) {
                old_units = load_units(m_old_src, "");
                new_units = load_units(m_new_src, "");
            }
            auto g = metrics::gather_counts(o, n, sub, have_src ? &old_units : nullptr,
                                            have_src ? &new_units : nullptr);
            auto r = metrics::operation_ratio_effort(g.operation);
            j["operation_ratio"] = {{"X", r.x},
                                    {"Y", r.y},
                                    {"Z", r.z},
                                    {"percent_effort_required", r.percent_effort_required},
                                    {"percent_effort_reduction", r.percent_effort_reduction}};
            if (g.line) j["gathered_line_ratio"] = line_json(metrics::line_ratio_effort(*g.line));
        }
        if (j.empty())
            throw CLI::ValidationError("metrics needs either --l1..--y2 or WSDL inputs");
        emit_report(m_report, j);
    });

    // ---- graph ----
    auto* gr = app.add_subcommand("graph", "render the WSDL structure as Graphviz DOT");
    std::string g_wsdl, g_view = "abstract", g_out;
    gr->add_option("--wsdl", g_wsdl, "WSDL file")->required();
    gr->add_option("--view", g_view, "abstract or detailed")
        ->check(CLI::IsMember({"abstract", "detailed"}));
    gr->add_option("--out", g_out, "output DOT path (default stdout)");
    gr->callback([&] {
        auto doc = load_wsdl(g_wsdl);
        auto view = g_view == "detailed" ? wsdl::GraphView::detailed : wsdl::GraphView::abstract;
        std::string dot = wsdl::render_graph(doc, view);
        if (g_out.empty())
            std::cout << dot;
        else
            write_file(g_out, dot);
    });

    // let --force/--pretty appear after the subcommand too
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints help or the usage error
        return code == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
