#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsrt/code_analyzer.hpp"
#include "wsrt/error.hpp"

#include <random>

using namespace wsrt;

static const std::string kFixtures = FIXTURE_DIR;

TEST_CASE("separates methods out of a class body") {
    auto r = code::separate_units(kFixtures + "/book_src_old");
    CHECK(r.errors.empty());
    for (const char* m : {"bgBook", "bgWSAbst", "bgChapter2", "bgChapter3", "bgVerse", "bgDb"}) {
        CAPTURE(m);
        CHECK(r.units.count(m));
    }
    // braces inside string literals and comments must not confuse the scanner
    auto u = code::parse_units_text("t.java",
                                    "class T { int f() { String s = \"}{\"; // }\n return 1; } }");
    CHECK(u.count("f"));
    CHECK(u.at("f").body.size() == 2);
}

TEST_CASE("unbalanced braces fail only the offending file") {
    auto u = code::parse_units_text("ok.java", "class A { void g() { int x = 1; } }");
    CHECK(u.count("g"));
    CHECK_THROWS_AS(code::parse_units_text("bad.java", "class A { void g() { "), Error);
}

TEST_CASE("diff spots exactly the edited methods") {
    auto old_r = code::separate_units(kFixtures + "/book_src_old");
    auto new_r = code::separate_units(kFixtures + "/book_src_new");
    auto cs = code::diff_units(old_r.units, new_r.units);
    CHECK(cs.changed == std::set<std::string>{"bgChapter2", "bgChapter3"});
    CHECK(cs.added.empty());
    CHECK(cs.removed.empty());
}

TEST_CASE("service code diff finds the changed and added operations") {
    auto old_r = code::separate_units(kFixtures + "/saas_src_old");
    auto new_r = code::separate_units(kFixtures + "/saas_src_new");
    auto cs = code::diff_units(old_r.units, new_r.units);
    CHECK(cs.changed == std::set<std::string>{"Index"});
    CHECK(cs.added == std::set<std::string>{"editFile"});
}

TEST_CASE("lcs diff ignores trailing whitespace and reports hunks") {
    std::vector<std::string> a{"x", "y ", "z"};
    std::vector<std::string> b{"x", "y", "z"};
    CHECK(code::lcs_diff(a, b).empty());
    std::vector<std::string> c{"x", "Q", "z"};
    auto hunks = code::lcs_diff(a, c);
    REQUIRE(hunks.size() == 1);
    CHECK(hunks[0].first == code::LineRange{1, 2});
    CHECK(hunks[0].second == code::LineRange{1, 2});
}

TEST_CASE("call graph parses ops, comments, and rejects junk") {
    auto g = code::load_callgraph("# c\n@op A\nA -> b\nb -> c\n");
    CHECK(g.operations == std::set<std::string>{"A"});
    CHECK(g.nodes.size() == 3);
    CHECK_THROWS_WITH_AS(code::load_callgraph("A => B\n"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_AS(code::load_callgraph("@op\n"), Error);
    auto lonely = code::load_callgraph("@op Z\n");
    CHECK(lonely.warnings.size() == 1);
    CHECK(lonely.nodes.count("Z"));
}

TEST_CASE("book service impact: three of four operations affected") {
    std::ifstream in(kFixtures + "/bookservice.callgraph");
    std::stringstream ss;
    ss << in.rdbuf();
    auto g = code::load_callgraph(ss.str());
    auto affected = code::affected_operations(g, {"bgChapter2", "bgChapter3"});
    CHECK(affected == std::set<std::string>{"getAbstractOfChapter",
                                            "getAllVerseByBookAndChapterNumber",
                                            "getVerseByBookAndChapterAndVerseNumber"});
}

TEST_CASE("unknown changed units warn instead of failing") {
    auto g = code::load_callgraph("@op A\nA -> b\n");
    std::vector<std::string> warnings;
    auto affected = code::affected_operations(g, {"nope"}, &warnings);
    CHECK(affected.empty());
    REQUIRE(warnings.size() == 1);
}

TEST_CASE("cycles terminate and still propagate impact") {
    auto g = code::load_callgraph("@op A\nA -> b\nb -> c\nc -> b\n");
    auto affected = code::affected_operations(g, {"c"});
    CHECK(affected == std::set<std::string>{"A"});
}

// Independent oracle: path existence by exhaustive DFS over all simple paths.
static bool reaches(const code::CallGraph& g, const std::string& from, const std::string& to,
                    std::set<std::string> seen = {}) {
    if (from == to) return true;
    if (!seen.insert(from).second) return false;
    for (const auto& [a, b] : g.edges)
        if (a == from && reaches(g, b, to, seen)) return true;
    return false;
}

TEST_CASE("random graphs match the all-paths oracle") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7); // up to 8 nodes
        std::string text;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
        int op_count = 1 + static_cast<int>(rng() % n);
        for (int i = 0; i < op_count; ++i) text += "@op " + names[i] + "\n";
        int edges = static_cast<int>(rng() % (n * 2));
        for (int e = 0; e < edges; ++e)
            text += names[rng() % n] + " -> " + names[rng() % n] + "\n";
        if (edges == 0) text += names[0] + " -> " + names[n - 1] + "\n";
        auto g = code::load_callgraph(text);

        std::set<std::string> changed;
        for (const auto& nd : g.nodes)
            if (rng() % 3 == 0) changed.insert(nd);

        auto got = code::affected_operations(g, changed);
        std::set<std::string> want;
        for (const auto& op : g.operations)
            for (const auto& c : changed)
                if (g.nodes.count(c) && reaches(g, op, c)) want.insert(op);
        CHECK(got == want);
    }
}
