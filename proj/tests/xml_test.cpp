#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsrt/error.hpp"
#include "wsrt/xml.hpp"

#include <random>
#include <string>

using namespace wsrt;

TEST_CASE("basic parse keeps raw slices verbatim") {
    std::string src = "<?xml version=\"1.0\"?>\n<a x=\"1\">\n  <b>hi</b>\n  <c/>\n</a>";
    auto doc = xml::parse_document(src);
    CHECK(doc.xml_decl == "<?xml version=\"1.0\"?>");
    CHECK(doc.root.qname == "a");
    CHECK(doc.root.attr("x") == "1");
    REQUIRE(doc.root.children.size() == 2);
    CHECK(doc.root.children[0].raw == "<b>hi</b>");
    CHECK(doc.root.children[0].text == "hi");
    CHECK(doc.root.children[1].raw == "<c/>");
    CHECK(doc.root.children[1].self_closing);
    // the root slice is the whole element
    CHECK(src.substr(doc.root.begin, doc.root.end - doc.root.begin) == doc.root.raw);
}

TEST_CASE("comments are dropped, CDATA contributes text") {
    auto doc = xml::parse_document("<r><!-- note --><x><![CDATA[a<b]]></x></r>");
    REQUIRE(doc.root.children.size() == 1);
    CHECK(doc.root.children[0].text == "a<b");
}

TEST_CASE("entities unescape in text and attributes") {
    auto doc = xml::parse_document("<r a=\"x&amp;y\">1 &lt; 2</r>");
    CHECK(doc.root.attr("a") == "x&y");
    CHECK(doc.root.text == "1 < 2");
}

TEST_CASE("escape_text round-trips through the parser") {
    std::string nasty = "a<b&c>\"d'";
    auto doc = xml::parse_document("<r>" + xml::escape_text(nasty) + "</r>");
    CHECK(doc.root.text == nasty);
}

TEST_CASE("malformed input throws") {
    CHECK_THROWS_AS(xml::parse_document("<a><b></a>"), Error);
    CHECK_THROWS_AS(xml::parse_document("<a>"), Error);
    CHECK_THROWS_AS(xml::parse_document("just text"), Error);
}

TEST_CASE("canonical collapses whitespace and sorts attributes") {
    auto a = xml::parse_document("<r  b=\"2\"   a=\"1\">\n  <x/>\n</r>");
    auto b = xml::parse_document("<r a=\"1\" b=\"2\"><x/></r>");
    CHECK(xml::canonical(a.root) == xml::canonical(b.root));
    auto c = xml::parse_document("<r a=\"1\" b=\"3\"><x/></r>");
    CHECK(xml::canonical(a.root) != xml::canonical(c.root));
}

TEST_CASE("canonical ignores comments") {
    auto a = xml::parse_document("<r><!-- hey --><x/></r>");
    auto b = xml::parse_document("<r><x/></r>");
    CHECK(xml::canonical(a.root) == xml::canonical(b.root));
}

TEST_CASE("find locates nested descendants, child only direct ones") {
    auto doc = xml::parse_document("<a><b><c v=\"1\"/></b></a>");
    CHECK(doc.root.child("c") == nullptr);
    REQUIRE(doc.root.find("c") != nullptr);
    CHECK(doc.root.find("c")->attr("v") == "1");
}

TEST_CASE("local_name and prefix_of split qnames") {
    CHECK(xml::local_name("wsdl:definitions") == "definitions");
    CHECK(xml::prefix_of("wsdl:definitions") == "wsdl");
    CHECK(xml::local_name("plain") == "plain");
    CHECK(xml::prefix_of("plain") == "");
}

TEST_CASE("fnv1a matches the reference constants") {
    CHECK(xml::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(xml::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(xml::fnv1a("foobar") == 0x85944171f73967e8ULL);
}

// Oracle: element count from an independent scan of open tags.
static int count_open_tags(const std::string& s) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == '<' && (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_'))
            ++n;
    return n;
}

static int count_elements(const xml::Element& e) {
    int n = 1;
    for (const auto& c : e.children) n += count_elements(c);
    return n;
}

TEST_CASE("randomized documents: element count matches a tag-scan oracle") {
    std::mt19937 rng(42);
    for (int iter = 0; iter < 50; ++iter) {
        std::string src;
        int open_count = 0;
        std::function<void(int)> gen = [&](int depth) {
            std::string name = "e" + std::to_string(rng() % 5);
            src += "<" + name + ">";
            ++open_count;
            int kids = depth < 3 ? static_cast<int>(rng() % 3) : 0;
            for (int k = 0; k < kids; ++k) gen(depth + 1);
            if (kids == 0) src += "t";
            src += "</" + name + ">";
        };
        gen(0);
        auto doc = xml::parse_document(src);
        CHECK(count_elements(doc.root) == open_count);
        CHECK(count_open_tags(src) == open_count);
    }
}
