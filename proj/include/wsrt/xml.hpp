#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsrt::xml {

// A parsed element that remembers the exact source slice it came from.
// Comments are dropped during parsing; CDATA contributes to `text`.
struct Element {
    std::string qname;
    std::vector<std::pair<std::string, std::string>> attrs; // source order
    std::vector<Element> children;
    std::string text;     // concatenated character data of this element
    std::string raw;      // exact source slice, "<qname ...>...</qname>"
    std::string open_raw; // "<qname ...>" slice only
    std::size_t begin = 0, end = 0; // offsets into the source string
    bool self_closing = false;

    const Element* child(std::string_view local) const;
    const Element* find(std::string_view local) const; // depth-first descendant
    std::vector<const Element*> children_named(std::string_view local) const;
    std::string attr(std::string_view local) const; // "" when absent
    bool has_attr(std::string_view local) const;
};

struct Document {
    std::string xml_decl; // "<?xml ...?>" line, may be empty
    Element root;
};

std::string local_name(std::string_view qname);
std::string prefix_of(std::string_view qname); // "" when unprefixed

// Throws wsrt::Error on malformed input.
Document parse_document(std::string_view src);

// Normal form used for change digests: comments already stripped,
// whitespace collapsed, attributes sorted lexicographically.
std::string canonical(const Element& e);

std::uint64_t fnv1a(std::string_view s);
std::string escape_text(std::string_view s);

} // namespace wsrt::xml
