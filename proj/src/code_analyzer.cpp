#include "wsrt/code_analyzer.hpp"

#include "wsrt/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace wsrt::code {

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::string rstrip(const std::string& s) {
    std::size_t end = s.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(0, end);
}

// Blank out comments and string/char literals so brace scanning sees only
// structure. Newlines are preserved.
std::string mask_source(const std::string& src) {
    std::string out = src;
    enum { Code, Line, Block, Str, Chr } state = Code;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        char next = i + 1 < src.size() ? src[i + 1] : '\0';
        switch (state) {
        case Code:
            if (c == '/' && next == '/') { state = Line; out[i] = ' '; }
            else if (c == '/' && next == '*') { state = Block; out[i] = ' '; }
            else if (c == '"') state = Str;
            else if (c == '\'') state = Chr;
            break;
        case Line:
            if (c == '\n') state = Code;
            else out[i] = ' ';
            break;
        case Block:
            if (c == '*' && next == '/') { out[i] = ' '; out[i + 1] = ' '; ++i; state = Code; }
            else if (c != '\n') out[i] = ' ';
            break;
        case Str:
            if (c == '\\') { out[i] = ' '; if (i + 1 < src.size() && src[i+1] != '\n') { out[++i] = ' '; } }
            else if (c == '"') state = Code;
            else if (c != '\n') out[i] = ' ';
            break;
        case Chr:
            if (c == '\\') { out[i] = ' '; if (i + 1 < src.size() && src[i+1] != '\n') { out[++i] = ' '; } }
            else if (c == '\'') state = Code;
            else if (c != '\n') out[i] = ' ';
            break;
        }
    }
    return out;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

const std::set<std::string>& control_keywords() {
    static const std::set<std::string> kw = {
        "if", "for", "while", "switch", "catch", "return", "new", "do",
        "else", "synchronized", "throw", "assert", "sizeof",
    };
    return kw;
}

// Extract top-level functions/methods by signature recognition plus
// balanced-brace scanning. Depth 0 covers C functions, depth 1 covers
// methods inside one enclosing class body.
void extract_units(const std::string& path, const std::string& text,
                   SeparationResult* result) {
    std::string masked = mask_source(text);
    auto lines = split_lines(text);

    int depth = 0;
    for (std::size_t i = 0; i < masked.size(); ++i) {
        char c = masked[i];
        if (c == '{') { ++depth; continue; }
        if (c == '}') { --depth; if (depth < 0) break; continue; }
        if (c != '(' || depth > 1) continue;

        // identifier immediately before '('
        std::size_t e = i;
        while (e > 0 && std::isspace(static_cast<unsigned char>(masked[e - 1]))) --e;
        std::size_t b = e;
        while (b > 0 && is_ident_char(masked[b - 1])) --b;
        if (b == e) continue;
        std::string name = masked.substr(b, e - b);
        if (control_keywords().count(name)) continue;

        // matching ')'
        int paren = 1;
        std::size_t j = i + 1;
        while (j < masked.size() && paren > 0) {
            if (masked[j] == '(') ++paren;
            else if (masked[j] == ')') --paren;
            ++j;
        }
        if (paren != 0) break;
        // allow "throws A, B" style trailers before '{'
        std::size_t k = j;
        while (k < masked.size() &&
               (std::isspace(static_cast<unsigned char>(masked[k])) ||
                is_ident_char(masked[k]) || masked[k] == ','))
            ++k;
        if (k >= masked.size() || masked[k] != '{') { i = j - 1; continue; }

        // body: from start of the signature line to the matching '}'
        std::size_t body_open = k;
        int bdepth = 1;
        std::size_t m = body_open + 1;
        while (m < masked.size() && bdepth > 0) {
            if (masked[m] == '{') ++bdepth;
            else if (masked[m] == '}') --bdepth;
            ++m;
        }
        if (bdepth != 0) {
            result->errors.push_back("unbalanced braces in " + path);
            return;
        }
        std::size_t first_line = static_cast<std::size_t>(
            std::count(masked.begin(), masked.begin() + static_cast<long>(b), '\n'));
        std::size_t last_line = static_cast<std::size_t>(
            std::count(masked.begin(), masked.begin() + static_cast<long>(m - 1), '\n'));

        CodeUnit unit;
        unit.name = name;
        unit.source_path = path;
        for (std::size_t ln = first_line; ln <= last_line && ln < lines.size(); ++ln)
            unit.body.push_back(lines[ln]);

        std::string key = name;
        if (result->units.count(key)) key = name + "@" + path;
        result->units.emplace(std::move(key), std::move(unit));

        i = m - 1; // nested local blocks stay inside their unit
    }
    // trailing imbalance that never opened a unit
    int total = 0;
    for (char c : masked) {
        if (c == '{') ++total;
        else if (c == '}') --total;
    }
    if (total != 0)
        result->errors.push_back("unbalanced braces in " + path);
}

} // namespace

UnitMap parse_units_text(const std::string& file_name, const std::string& text) {
    SeparationResult r;
    extract_units(file_name, text, &r);
    if (!r.errors.empty()) throw Error(r.errors.front());
    return r.units;
}

SeparationResult separate_units(const std::string& source_dir) {
    SeparationResult result;
    if (!fs::exists(source_dir)) throw Error("source directory not found: " + source_dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(source_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        extract_units(f.string(), read_file(f), &result);
    return result;
}

SeparationResult units_from_dir(const std::string& units_dir) {
    SeparationResult result;
    if (!fs::exists(units_dir)) throw Error("units directory not found: " + units_dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(units_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        CodeUnit unit;
        unit.name = f.stem().string();
        unit.source_path = f.string();
        unit.body = split_lines(read_file(f));
        result.units.emplace(unit.name, std::move(unit));
    }
    return result;
}

std::vector<std::pair<LineRange, LineRange>> lcs_diff(const std::vector<std::string>& a,
                                                      const std::vector<std::string>& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::string> an(n), bn(m);
    for (std::size_t i = 0; i < n; ++i) an[i] = rstrip(a[i]);
    for (std::size_t j = 0; j < m; ++j) bn[j] = rstrip(b[j]);

    std::vector<std::vector<std::uint32_t>> lcs(n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            lcs[i][j] = an[i] == bn[j] ? lcs[i + 1][j + 1] + 1
                                       : std::max(lcs[i + 1][j], lcs[i][j + 1]);

    std::vector<std::pair<LineRange, LineRange>> hunks;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && an[i] == bn[j]) {
            ++i;
            ++j;
            continue;
        }
        LineRange ra{i, i}, rb{j, j};
        while (i < n || j < m) {
            if (i < n && j < m && an[i] == bn[j]) break;
            if (j >= m || (i < n && lcs[i + 1][j] >= lcs[i][j + 1])) ++i;
            else ++j;
        }
        ra.end = i;
        rb.end = j;
        hunks.emplace_back(ra, rb);
    }
    return hunks;
}

UnitChangeSet diff_units(const UnitMap& old_units, const UnitMap& new_units) {
    UnitChangeSet cs;
    for (const auto& [name, unit] : old_units)
        if (!new_units.count(name)) cs.removed.insert(name);
    for (const auto& [name, unit] : new_units)
        if (!old_units.count(name)) cs.added.insert(name);
    for (const auto& [name, unit] : old_units) {
        auto it = new_units.find(name);
        if (it == new_units.end()) continue;
        auto hunks = lcs_diff(unit.body, it->second.body);
        if (!hunks.empty()) {
            cs.changed.insert(name);
            cs.hunks.emplace(name, std::move(hunks));
        }
    }
    return cs;
}

CallGraph load_callgraph(const std::string& text) {
    CallGraph g;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> declared_ops;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = rstrip(line);
        std::size_t start = t.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        t = t.substr(start);
        if (t[0] == '#') continue;
        if (t.rfind("@op", 0) == 0) {
            std::string name = t.substr(3);
            std::size_t p = name.find_first_not_of(" \t");
            if (p == std::string::npos)
                throw Error("call graph line " + std::to_string(lineno) + ": @op needs a name");
            name = name.substr(p);
            declared_ops.push_back(name);
            continue;
        }
        auto arrow = t.find("->");
        if (arrow == std::string::npos)
            throw Error("call graph line " + std::to_string(lineno) +
                        ": expected 'caller -> callee'");
        std::string caller = rstrip(t.substr(0, arrow));
        std::string callee = t.substr(arrow + 2);
        std::size_t p = callee.find_first_not_of(" \t");
        callee = p == std::string::npos ? "" : callee.substr(p);
        if (caller.empty() || callee.empty())
            throw Error("call graph line " + std::to_string(lineno) +
                        ": expected 'caller -> callee'");
        g.edges.emplace(caller, callee);
        g.nodes.insert(caller);
        g.nodes.insert(callee);
    }
    for (const auto& op : declared_ops) {
        if (!g.nodes.count(op)) {
            g.warnings.push_back("@op '" + op + "' names a node with no edges; created");
            g.nodes.insert(op);
        }
        g.operations.insert(op);
    }
    return g;
}

std::set<std::string> affected_operations(const CallGraph& graph,
                                          const std::set<std::string>& changed_units,
                                          std::vector<std::string>* warnings) {
    std::map<std::string, std::vector<std::string>> callers_of;
    for (const auto& [caller, callee] : graph.edges)
        callers_of[callee].push_back(caller);

    std::set<std::string> reached;
    std::deque<std::string> work;
    for (const auto& u : changed_units) {
        if (!graph.nodes.count(u)) {
            if (warnings)
                warnings->push_back("changed unit '" + u + "' not in call graph; ignored");
            continue;
        }
        if (reached.insert(u).second) work.push_back(u);
    }
    while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        for (const auto& caller : callers_of[cur])
            if (reached.insert(caller).second) work.push_back(caller);
    }
    std::set<std::string> out;
    for (const auto& op : graph.operations)
        if (reached.count(op)) out.insert(op);
    return out;
}

} // namespace wsrt::code
