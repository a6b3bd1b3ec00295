#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsrt/error.hpp"
#include "wsrt/metrics.hpp"
#include "wsrt/subset.hpp"

#include <fstream>
#include <sstream>

using namespace wsrt;

static wsdl::WsdlDocument load(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return wsdl::parse_wsdl(ss.str());
}

TEST_CASE("line-ratio effort on the small-service measurements") {
    metrics::LineRatioInputs in{77, 115, 26, 23, 40, 56};
    auto r = metrics::line_ratio_effort(in);
    CHECK(r.c == 38);
    CHECK(r.xav == doctest::Approx(24.5));
    CHECK(r.yav == doctest::Approx(48.0));
    CHECK(r.v_prime == doctest::Approx(38.0 * 48.0 / 24.5)); // ~74.4
    CHECK(r.v2 == doctest::Approx(115.0 * 56.0 / 23.0));     // 280
    CHECK(r.percent_effort_required == doctest::Approx(26.57).epsilon(0.004));
    CHECK(r.percent_effort_reduction == doctest::Approx(73.43).epsilon(0.002));
    CHECK(r.percent_effort_required + r.percent_effort_reduction == doctest::Approx(100.0));
}

TEST_CASE("no line change means zero effort") {
    auto r = metrics::line_ratio_effort({100, 100, 10, 10, 20, 20});
    CHECK(r.c == 0);
    CHECK(r.v_prime == 0.0);
    CHECK(r.percent_effort_required == 0.0);
    CHECK(r.percent_effort_reduction == 100.0);
}

TEST_CASE("large-service row with its printed operands") {
    // operands exactly as tabulated (numerator 117, denominator mixing v1 lines)
    double v_prime = 117.0 * ((216.0 + 291.0) / 2.0) / ((62.0 + 61.0) / 2.0);
    double v2 = 1712.0 * 291.0 / 61.0;
    CHECK(100.0 * v_prime / v2 == doctest::Approx(5.91).epsilon(0.01));
}

TEST_CASE("line-ratio rejects non-positive inputs") {
    CHECK_THROWS_AS(metrics::line_ratio_effort({0, 1, 1, 1, 1, 1}), Error);
    CHECK_THROWS_AS(metrics::line_ratio_effort({1, 1, 1, -2, 1, 1}), Error);
}

TEST_CASE("operation-ratio effort hits the published percentages") {
    auto saas = metrics::operation_ratio_effort({3, 4, 1});
    CHECK(saas.percent_effort_reduction == doctest::Approx(75.0).epsilon(0.0005));
    auto euca = metrics::operation_ratio_effort({24, 26, 2});
    CHECK(euca.percent_effort_reduction == doctest::Approx(92.3).epsilon(0.0005));
    auto nothing = metrics::operation_ratio_effort({5, 5, 0});
    CHECK(nothing.percent_effort_reduction == 100.0);
}

TEST_CASE("operation-ratio invariants: bounds and monotonicity in Z") {
    CHECK_THROWS_AS(metrics::operation_ratio_effort({1, 0, 0}), Error);
    CHECK_THROWS_AS(metrics::operation_ratio_effort({1, 3, 4}), Error);
    double prev = 101.0;
    for (long z = 0; z <= 10; ++z) {
        auto r = metrics::operation_ratio_effort({10, 10, z});
        CHECK(r.percent_effort_reduction < prev);
        CHECK(r.percent_effort_required + r.percent_effort_reduction == doctest::Approx(100.0));
        prev = r.percent_effort_reduction;
    }
}

TEST_CASE("scale invariance of the operation ratio") {
    auto a = metrics::operation_ratio_effort({4, 8, 2});
    auto b = metrics::operation_ratio_effort({40, 80, 20});
    CHECK(a.percent_effort_reduction == doctest::Approx(b.percent_effort_reduction));
}

TEST_CASE("gather_counts pulls operation counts from the documents") {
    auto v1 = load("eucalyptus_v1.wsdl");
    auto v2 = load("eucalyptus_v2.wsdl");
    auto sub = subset::difference_wsdl(v1, v2).document;
    auto g = metrics::gather_counts(v1, v2, sub);
    CHECK(g.operation.x == 24);
    CHECK(g.operation.y == 26);
    CHECK(g.operation.z == 2);
    CHECK_FALSE(g.line.has_value());
    auto r = metrics::operation_ratio_effort(g.operation);
    CHECK(r.percent_effort_reduction == doctest::Approx(92.3).epsilon(0.0005));
}

TEST_CASE("gather_counts derives line inputs when sources are provided") {
    auto v2 = load("saas_2.wsdl");
    auto v3 = load("saas_3.wsdl");
    auto sub = subset::difference_wsdl(v2, v3).document;
    auto old_units = code::separate_units(std::string(FIXTURE_DIR) + "/saas_src_old").units;
    auto new_units = code::separate_units(std::string(FIXTURE_DIR) + "/saas_src_new").units;
    auto g = metrics::gather_counts(v2, v3, sub, &old_units, &new_units);
    REQUIRE(g.line.has_value());
    CHECK(g.line->l1 > 0);
    CHECK(g.line->l2 > g.line->l1); // the new WSDL grew
    auto r = metrics::line_ratio_effort(*g.line);
    CHECK(r.percent_effort_required > 0.0);
    CHECK(r.percent_effort_required < 100.0);
}

TEST_CASE("identical WSDLs with an empty subset give Z=0") {
    auto v3 = load("saas_3.wsdl");
    auto empty = subset::reduce_wsdl(v3, {}).document;
    auto g = metrics::gather_counts(v3, v3, empty);
    CHECK(g.operation.z == 0);
    CHECK(metrics::operation_ratio_effort(g.operation).percent_effort_reduction == 100.0);
}
