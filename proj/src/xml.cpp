#include "wsrt/xml.hpp"

#include "wsrt/error.hpp"

#include <algorithm>
#include <cctype>

namespace wsrt::xml {

std::string local_name(std::string_view qname) {
    auto pos = qname.rfind(':');
    if (pos == std::string_view::npos) return std::string(qname);
    return std::string(qname.substr(pos + 1));
}

std::string prefix_of(std::string_view qname) {
    auto pos = qname.rfind(':');
    if (pos == std::string_view::npos) return "";
    return std::string(qname.substr(0, pos));
}

const Element* Element::child(std::string_view local) const {
    for (const auto& c : children)
        if (local_name(c.qname) == local) return &c;
    return nullptr;
}

const Element* Element::find(std::string_view local) const {
    for (const auto& c : children) {
        if (local_name(c.qname) == local) return &c;
        if (const Element* e = c.find(local)) return e;
    }
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view local) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (local_name(c.qname) == local) out.push_back(&c);
    return out;
}

std::string Element::attr(std::string_view local) const {
    for (const auto& [k, v] : attrs)
        if (local_name(k) == local) return v;
    return "";
}

bool Element::has_attr(std::string_view local) const {
    for (const auto& [k, v] : attrs)
        if (local_name(k) == local) return true;
    return false;
}

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' || c == '.';
}

std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        auto semi = s.find(';', i);
        if (semi == std::string_view::npos) {
            out += s[i];
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "amp") out += '&';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (!ent.empty() && ent[0] == '#') {
            long code = std::strtol(std::string(ent.substr(ent[1] == 'x' ? 2 : 1)).c_str(),
                                    nullptr, ent[1] == 'x' ? 16 : 10);
            if (code > 0 && code < 128) out += static_cast<char>(code);
        } else {
            out += s.substr(i, semi - i + 1);
            i = semi;
            continue;
        }
        i = semi;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Document run() {
        Document doc;
        skip_misc(&doc);
        if (pos_ >= src_.size() || src_[pos_] != '<')
            fail("no root element");
        doc.root = parse_element();
        // trailing whitespace / comments are legal
        return doc;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1 + static_cast<std::size_t>(
            std::count(src_.begin(), src_.begin() + static_cast<long>(std::min(pos_, src_.size())), '\n'));
        throw Error("malformed XML at line " + std::to_string(line) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool starts_with(std::string_view t) const { return src_.substr(pos_, t.size()) == t; }

    void skip_until(std::string_view t) {
        auto p = src_.find(t, pos_);
        if (p == std::string_view::npos) fail("unterminated construct");
        pos_ = p + t.size();
    }

    // prolog: declaration, comments, PIs, doctype
    void skip_misc(Document* doc) {
        for (;;) {
            skip_ws();
            if (starts_with("<?xml")) {
                std::size_t start = pos_;
                skip_until("?>");
                if (doc) doc->xml_decl = std::string(src_.substr(start, pos_ - start));
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<!DOCTYPE")) {
                skip_until(">");
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
        if (pos_ == start) fail("expected name");
        return std::string(src_.substr(start, pos_ - start));
    }

    Element parse_element() {
        Element e;
        e.begin = pos_;
        ++pos_; // '<'
        e.qname = parse_name();
        for (;;) {
            skip_ws();
            if (pos_ >= src_.size()) fail("unterminated tag");
            if (src_[pos_] == '>') {
                ++pos_;
                break;
            }
            if (src_[pos_] == '/') {
                if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != '>') fail("bad empty-element tag");
                pos_ += 2;
                e.self_closing = true;
                e.end = pos_;
                e.raw = std::string(src_.substr(e.begin, e.end - e.begin));
                e.open_raw = e.raw;
                return e;
            }
            std::string key = parse_name();
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != '=') fail("expected '=' after attribute " + key);
            ++pos_;
            skip_ws();
            if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\''))
                fail("expected quoted attribute value");
            char q = src_[pos_++];
            std::size_t vstart = pos_;
            while (pos_ < src_.size() && src_[pos_] != q) ++pos_;
            if (pos_ >= src_.size()) fail("unterminated attribute value");
            e.attrs.emplace_back(key, unescape(src_.substr(vstart, pos_ - vstart)));
            ++pos_;
        }
        e.open_raw = std::string(src_.substr(e.begin, pos_ - e.begin));
        // content
        for (;;) {
            if (pos_ >= src_.size()) fail("unterminated element <" + e.qname + ">");
            if (src_[pos_] == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string close = parse_name();
                    if (close != e.qname)
                        fail("mismatched close tag </" + close + "> for <" + e.qname + ">");
                    skip_ws();
                    if (pos_ >= src_.size() || src_[pos_] != '>') fail("bad close tag");
                    ++pos_;
                    e.end = pos_;
                    e.raw = std::string(src_.substr(e.begin, e.end - e.begin));
                    return e;
                }
                if (starts_with("<!--")) {
                    skip_until("-->");
                } else if (starts_with("<![CDATA[")) {
                    std::size_t start = pos_ + 9;
                    auto p = src_.find("]]>", start);
                    if (p == std::string_view::npos) fail("unterminated CDATA");
                    e.text += std::string(src_.substr(start, p - start));
                    pos_ = p + 3;
                } else if (starts_with("<?")) {
                    skip_until("?>");
                } else {
                    e.children.push_back(parse_element());
                }
            } else {
                std::size_t start = pos_;
                while (pos_ < src_.size() && src_[pos_] != '<') ++pos_;
                e.text += unescape(src_.substr(start, pos_ - start));
            }
        }
    }
};

void collapse_ws(std::string* s) {
    std::string out;
    bool in_ws = true; // trims leading
    for (char c : *s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out += ' ';
            in_ws = false;
            out += c;
        }
    }
    *s = std::move(out);
}

} // namespace

Document parse_document(std::string_view src) {
    return Parser(src).run();
}

std::string canonical(const Element& e) {
    std::string out = "<" + e.qname;
    auto attrs = e.attrs;
    std::sort(attrs.begin(), attrs.end());
    for (const auto& [k, v] : attrs) out += " " + k + "=\"" + v + "\"";
    out += ">";
    std::string text = e.text;
    collapse_ws(&text);
    out += text;
    for (const auto& c : e.children) out += canonical(c);
    out += "</" + e.qname + ">";
    return out;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string escape_text(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace wsrt::xml
