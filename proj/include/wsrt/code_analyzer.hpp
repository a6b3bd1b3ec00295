#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsrt::code {

struct CodeUnit {
    std::string name;
    std::vector<std::string> body; // exact extracted lines
    std::string source_path;
};

using UnitMap = std::map<std::string, CodeUnit>;

struct SeparationResult {
    UnitMap units;
    std::vector<std::string> errors; // per-file problems, other files still processed
};

struct LineRange {
    std::size_t begin = 0; // 0-based, half-open
    std::size_t end = 0;
    bool operator==(const LineRange&) const = default;
};

struct UnitChangeSet {
    std::set<std::string> changed;
    std::set<std::string> added;
    std::set<std::string> removed;
    std::map<std::string, std::vector<std::pair<LineRange, LineRange>>> hunks;
};

struct CallGraph {
    std::set<std::pair<std::string, std::string>> edges; // caller -> callee
    std::set<std::string> nodes;
    std::set<std::string> operations;
    std::vector<std::string> warnings;
};

// Extract top-level functions/methods from brace-delimited sources.
SeparationResult separate_units(const std::string& source_dir);

// Pre-separated layout: one unit per file, named by the file stem.
SeparationResult units_from_dir(const std::string& units_dir);

UnitMap parse_units_text(const std::string& file_name, const std::string& text);

UnitChangeSet diff_units(const UnitMap& old_units, const UnitMap& new_units);

// Line-based longest-common-subsequence diff; trailing whitespace ignored.
std::vector<std::pair<LineRange, LineRange>> lcs_diff(const std::vector<std::string>& a,
                                                      const std::vector<std::string>& b);

CallGraph load_callgraph(const std::string& text);

// Operations that are changed themselves or can reach a changed unit through
// call edges (reverse reachability; cycles are fine).
std::set<std::string> affected_operations(const CallGraph& graph,
                                          const std::set<std::string>& changed_units,
                                          std::vector<std::string>* warnings = nullptr);

} // namespace wsrt::code
