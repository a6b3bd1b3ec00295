#include "wsrt/metrics.hpp"

#include "wsrt/error.hpp"

#include <cmath>
#include <cstdlib>

namespace wsrt::metrics {

EffortReport line_ratio_effort(const LineRatioInputs& in) {
    if (in.l1 <= 0 || in.l2 <= 0 || in.x1 <= 0 || in.x2 <= 0 || in.y1 <= 0 || in.y2 <= 0)
        throw Error("line-ratio effort requires positive inputs");
    EffortReport r;
    r.method = "line-ratio";
    r.c = std::labs(in.l1 - in.l2);
    r.xav = (in.x1 + in.x2) / 2.0;
    r.yav = (in.y1 + in.y2) / 2.0;
    r.v_prime = static_cast<double>(r.c) * r.yav / r.xav;
    r.v2 = static_cast<double>(in.l2) * in.y2 / in.x2;
    r.percent_effort_required = 100.0 * r.v_prime / r.v2;
    r.percent_effort_reduction = 100.0 - r.percent_effort_required;
    return r;
}

EffortReport operation_ratio_effort(const OperationRatioInputs& in) {
    if (in.y <= 0) throw Error("operation-ratio effort requires at least one operation in v2");
    if (in.z < 0 || in.z > in.y)
        throw Error("subset operation count must satisfy 0 <= Z <= Y");
    EffortReport r;
    r.method = "operation-ratio";
    r.x = in.x;
    r.y = in.y;
    r.z = in.z;
    r.percent_effort_reduction =
        100.0 * static_cast<double>(in.y - in.z) / static_cast<double>(in.y);
    r.percent_effort_required = 100.0 - r.percent_effort_reduction;
    return r;
}

namespace {

long unit_lines(const code::UnitMap& units) {
    long n = 0;
    for (const auto& [name, u] : units) n += static_cast<long>(u.body.size());
    return n;
}

long wsdl_lines(const wsdl::WsdlDocument& doc) {
    std::string text = wsdl::serialize_wsdl(doc);
    long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    if (!text.empty() && text.back() != '\n') ++n;
    return n;
}

} // namespace

GatheredCounts gather_counts(const wsdl::WsdlDocument& old_wsdl,
                             const wsdl::WsdlDocument& new_wsdl,
                             const wsdl::WsdlDocument& subset, const code::UnitMap* old_src,
                             const code::UnitMap* new_src) {
    GatheredCounts out;
    out.operation.x = static_cast<long>(old_wsdl.port_type.operations.size());
    out.operation.y = static_cast<long>(new_wsdl.port_type.operations.size());
    out.operation.z = static_cast<long>(subset.port_type.operations.size());
    if (old_src && new_src) {
        LineRatioInputs li;
        li.l1 = wsdl_lines(old_wsdl);
        li.l2 = wsdl_lines(new_wsdl);
        long ops1 = std::max<long>(1, out.operation.x);
        long ops2 = std::max<long>(1, out.operation.y);
        li.x1 = static_cast<double>(li.l1) / static_cast<double>(ops1);
        li.x2 = static_cast<double>(li.l2) / static_cast<double>(ops2);
        li.y1 = static_cast<double>(unit_lines(*old_src)) / static_cast<double>(ops1);
        li.y2 = static_cast<double>(unit_lines(*new_src)) / static_cast<double>(ops2);
        out.line = li;
    }
    return out;
}

} // namespace wsrt::metrics
