#include "wsrt/subset.hpp"

#include "wsrt/error.hpp"

#include <algorithm>

namespace wsrt::subset {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::difference: return "difference";
    case Kind::unit: return "unit";
    case Kind::reduce: return "reduce";
    case Kind::combined: return "combined";
    case Kind::parameter: return "parameter";
    }
    return "?";
}

namespace {

// Levenshtein distance, used only for closest-match suggestions.
std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string closest_operation(const wsdl::WsdlDocument& doc, const std::string& name) {
    std::string best;
    std::size_t best_d = static_cast<std::size_t>(-1);
    for (const auto& op : doc.port_type.operations) {
        std::size_t d = edit_distance(name, op.name);
        if (d < best_d) { best_d = d; best = op.name; }
    }
    return best;
}

} // namespace

Result construct_subset(const SubsetSpec& spec) {
    const wsdl::WsdlDocument& base = *spec.base;
    std::set<std::string> keep;
    for (const auto& op : spec.required_operations) {
        if (!base.has_operation(op))
            throw Error(std::string(kind_name(spec.kind)) + "-wsdl: required operation '" +
                        op + "' absent from base WSDL (closest match: '" +
                        closest_operation(base, op) + "')");
        keep.insert(op);
    }

    Result res;
    res.provenance = spec.provenance;
    wsdl::WsdlDocument out = base;

    out.port_type.operations.clear();
    for (const auto& op : base.port_type.operations)
        if (keep.count(op.name)) out.port_type.operations.push_back(op);

    auto kept_msgs = wsdl::messages_of(base, keep);
    std::set<std::string> msg_set(kept_msgs.begin(), kept_msgs.end());
    out.messages.clear();
    for (const auto& m : base.messages)
        if (msg_set.count(m.name)) out.messages.push_back(m);

    auto kept_types = wsdl::type_closure(base, keep);
    out.schema_types.clear();
    for (const auto& t : base.schema_types) {
        if (t.name.empty() || kept_types.count(t.name)) {
            out.schema_types.push_back(t);
        } else if (keep.size() == base.port_type.operations.size()) {
            // full subset: any drop means the base carried unreferenced types
            res.warnings.push_back("dropped unreferenced schema type '" + t.name + "'");
        }
    }

    for (auto& b : out.bindings) {
        std::vector<wsdl::Binding::Child> kids;
        for (auto& c : b.children)
            if (!c.is_operation || keep.count(c.name)) kids.push_back(c);
        b.children = std::move(kids);
    }

    if (keep.empty())
        res.warnings.push_back("subset has zero operations");

    res.document = std::move(out);
    return res;
}

Result difference_wsdl(const wsdl::WsdlDocument& old_doc, const wsdl::WsdlDocument& new_doc) {
    auto cs = wsdl::diff_wsdl(old_doc, new_doc);
    SubsetSpec spec;
    spec.kind = Kind::difference;
    spec.base = &new_doc;
    for (const auto& op : new_doc.port_type.operations) {
        if (cs.inserted.count(op.name)) {
            spec.required_operations.push_back(op.name);
            spec.provenance[op.name] = "inserted";
        } else if (cs.io_modified.count(op.name)) {
            spec.required_operations.push_back(op.name);
            spec.provenance[op.name] = "io-modified";
        }
    }
    return construct_subset(spec);
}

Result unit_wsdl(const wsdl::WsdlDocument& new_doc, const code::UnitChangeSet& units) {
    SubsetSpec spec;
    spec.kind = Kind::unit;
    spec.base = &new_doc;
    for (const auto& op : new_doc.port_type.operations) {
        if (units.changed.count(op.name)) {
            spec.required_operations.push_back(op.name);
            spec.provenance[op.name] = "code-changed";
        }
    }
    return construct_subset(spec);
}

Result reduce_wsdl(const wsdl::WsdlDocument& base, const std::vector<std::string>& selected) {
    SubsetSpec spec;
    spec.kind = Kind::reduce;
    spec.base = &base;
    std::set<std::string> seen;
    for (const auto& op : selected) {
        if (!seen.insert(op).second) continue;
        spec.required_operations.push_back(op);
        spec.provenance[op] = "user-selected";
    }
    return construct_subset(spec);
}

Result combined_wsdl(const wsdl::WsdlDocument& base,
                     const std::vector<const wsdl::WsdlDocument*>& parts) {
    SubsetSpec spec;
    spec.kind = Kind::combined;
    spec.base = &base;
    std::set<std::string> seen;
    // union, deduplicated, ordered by first appearance across parts
    for (const auto* part : parts) {
        for (const auto& op : part->port_type.operations) {
            if (!base.has_operation(op.name))
                throw Error("combined-wsdl: part operation '" + op.name +
                            "' absent from base WSDL");
            if (seen.insert(op.name).second) {
                spec.required_operations.push_back(op.name);
                spec.provenance[op.name] = "part-union";
            }
        }
    }
    return construct_subset(spec);
}

Result parameter_wsdl(const wsdl::WsdlDocument& new_doc, const std::set<std::string>& affected) {
    SubsetSpec spec;
    spec.kind = Kind::parameter;
    spec.base = &new_doc;
    for (const auto& op : new_doc.port_type.operations) {
        if (affected.count(op.name)) {
            spec.required_operations.push_back(op.name);
            spec.provenance[op.name] = "call-impacted";
        }
    }
    for (const auto& name : affected)
        if (!new_doc.has_operation(name))
            throw Error("parameter-wsdl: affected operation '" + name +
                        "' absent from WSDL");
    return construct_subset(spec);
}

} // namespace wsrt::subset
