#pragma once

#include "wsrt/code_analyzer.hpp"
#include "wsrt/wsdl.hpp"

#include <optional>
#include <string>

namespace wsrt::metrics {

struct LineRatioInputs {
    long l1 = 0, l2 = 0;       // WSDL line counts, v1/v2
    double x1 = 0.0, x2 = 0.0; // WSDL lines per operation, v1/v2
    double y1 = 0.0, y2 = 0.0; // code lines per operation, v1/v2
};

struct OperationRatioInputs {
    long x = 0; // operations in v1
    long y = 0; // operations in v2
    long z = 0; // operations in the subset WSDL
};

struct EffortReport {
    std::string method; // "line-ratio" or "operation-ratio"
    // line-ratio intermediates
    long c = 0;
    double xav = 0.0, yav = 0.0;
    double v_prime = 0.0, v2 = 0.0;
    // operation-ratio operands
    long x = 0, y = 0, z = 0;
    double percent_effort_required = 0.0;
    double percent_effort_reduction = 0.0;
};

EffortReport line_ratio_effort(const LineRatioInputs& in);
EffortReport operation_ratio_effort(const OperationRatioInputs& in);

struct GatheredCounts {
    std::optional<LineRatioInputs> line;
    OperationRatioInputs operation;
};

// Automates the manual table counting: operation counts straight from the
// three documents, line inputs only when both source unit maps are given.
// Lines are counted post-normalization, blank lines included.
GatheredCounts gather_counts(const wsdl::WsdlDocument& old_wsdl,
                             const wsdl::WsdlDocument& new_wsdl,
                             const wsdl::WsdlDocument& subset,
                             const code::UnitMap* old_src = nullptr,
                             const code::UnitMap* new_src = nullptr);

} // namespace wsrt::metrics
