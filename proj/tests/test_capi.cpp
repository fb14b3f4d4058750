// Links only the shared library; everything goes through hodgechart.h.
#include "hodgechart.h"

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(HC_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ConeHandle {
    hc_cone* c = nullptr;
    ~ConeHandle() { hc_cone_free(c); }
};

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    hc_free_string(s);
    return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::strlen(hc_version()) > 0);
    CHECK(std::string(hc_status_name(HC_OK)) == "OK");
    CHECK(std::string(hc_status_name(HC_SCHEMA)) == "SchemaError");
    CHECK(std::string(hc_status_name(HC_NOT_NILPOTENT)) == "NotNilpotent");
    CHECK(std::string(hc_status_name(HC_POOR_FIT)) == "PoorFit");
    CHECK(std::string(hc_status_name(99)) == "Unknown");
    CHECK(std::string(hc_status_name(-1)) == "Unknown");
    CHECK(hc_default_tolerance("curvature") == 1e-2);
    CHECK(hc_default_tolerance(nullptr) > 0);
}

TEST_CASE("cone handle on the genus-2 cone") {
    ConeHandle h;
    REQUIRE(hc_cone_parse(slurp("genus2_cone.json").c_str(), &h.c) == HC_OK);
    CHECK(std::string(hc_last_error()).empty());
    size_t dim = 0, gens = 0;
    int weight = -1;
    REQUIRE(hc_cone_info(h.c, &dim, &weight, &gens) == HC_OK);
    CHECK(dim == 4);
    CHECK(weight == 1);
    CHECK(gens == 3);

    const int one[] = {1};
    char* js = nullptr;
    REQUIRE(hc_cone_relation_data(h.c, one, 1, &js) == HC_OK);
    auto rd = nlohmann::json::parse(take(js));
    CHECK(rd["I"] == nlohmann::json::parse("[1]"));
    CHECK(rd["K"] == nlohmann::json::parse("[1]"));
    CHECK(rd["C"] == nlohmann::json::parse("[[0, 1, 1]]"));

    int member = -1;
    const long a_in[] = {-1, -1, 1}, a_out[] = {0, 1, 1};
    REQUIRE(hc_cone_relation_member(h.c, one, 1, a_in, 3, &member) == HC_OK);
    CHECK(member == 1);
    REQUIRE(hc_cone_relation_member(h.c, one, 1, a_out, 3, &member) == HC_OK);
    CHECK(member == 0);

    REQUIRE(hc_cone_weight_filtration(h.c, one, 1, &js) == HC_OK);
    auto wf = nlohmann::json::parse(take(js));
    CHECK(wf["center"] == 1);
    CHECK(wf["lowest"] == 0);
    CHECK(wf["highest"] == 2);
    CHECK(wf["steps"][0]["basis"].size() == 1);

    // the empty index set
    REQUIRE(hc_cone_relation_data(h.c, nullptr, 0, &js) == HC_OK);
    CHECK(nlohmann::json::parse(take(js))["K"].empty());

    char* r1 = nullptr;
    char* r4 = nullptr;
    REQUIRE(hc_cone_charts_report(h.c, 0, &r1) == HC_OK);
    REQUIRE(hc_cone_charts_report(h.c, 4, &r4) == HC_OK);
    std::string s1 = take(r1), s4 = take(r4);
    CHECK(s1 == s4);
    CHECK(nlohmann::json::parse(s1)["index_map"]["image"].size() == 5);
}

TEST_CASE("error codes and messages") {
    hc_cone* c = nullptr;
    CHECK(hc_cone_parse(slurp("not_nilpotent_cone.json").c_str(), &c) == HC_NOT_NILPOTENT);
    CHECK(c == nullptr);
    CHECK(starts_with(hc_last_error(), "NotNilpotent"));
    CHECK(hc_cone_parse("{", &c) == HC_SCHEMA);
    CHECK(starts_with(hc_last_error(), "SchemaError"));
    CHECK(hc_cone_parse(nullptr, &c) == HC_SCHEMA);
    CHECK(hc_cone_info(nullptr, nullptr, nullptr, nullptr) == HC_SCHEMA);

    ConeHandle big;
    REQUIRE(hc_cone_parse(slurp("too_large_cone.json").c_str(), &big.c) == HC_OK);
    char* js = nullptr;
    CHECK(hc_cone_charts_report(big.c, 1, &js) == HC_CONE_TOO_LARGE);
    CHECK(js == nullptr);

    ConeHandle h;
    REQUIRE(hc_cone_parse(slurp("genus2_cone.json").c_str(), &h.c) == HC_OK);
    const int zero[] = {0}, four[] = {4}, dup[] = {2, 2};
    CHECK(hc_cone_relation_data(h.c, zero, 1, &js) == HC_SCHEMA);
    CHECK(hc_cone_relation_data(h.c, four, 1, &js) == HC_SCHEMA);
    CHECK(hc_cone_relation_data(h.c, dup, 2, &js) == HC_SCHEMA);
    CHECK(hc_cone_relation_data(h.c, nullptr, 1, &js) == HC_SCHEMA);
    int member = 0;
    const long a2[] = {1, 1};
    CHECK(hc_cone_relation_member(h.c, nullptr, 0, a2, 2, &member) == HC_SCHEMA);
    CHECK(hc_cone_relation_data(h.c, nullptr, 0, nullptr) == HC_SCHEMA);

    // a success clears the message
    REQUIRE(hc_cone_info(h.c, nullptr, nullptr, nullptr) == HC_OK);
    CHECK(std::string(hc_last_error()).empty());
}

TEST_CASE("errors are per thread") {
    hc_cone* c = nullptr;
    CHECK(hc_cone_parse("[", &c) == HC_SCHEMA);
    std::string other;
    std::thread t([&] { other = hc_last_error(); });
    t.join();
    CHECK(other.empty());
    CHECK_FALSE(std::string(hc_last_error()).empty());
}

TEST_CASE("hc_report runs every subcommand") {
    struct Case {
        const char* sub;
        const char* fixture;
        const char* options;
        const char* key;
    };
    const std::vector<Case> cases{
        {"charts", "genus2_cone.json", nullptr, "atlas"},
        {"lmhs", "ncd_tetrahedron.json", nullptr, "graded_dims"},
        {"curvature", "residue_g1.json", R"({"tol": 0.05})", "normalized_slope"},
        {"siegel", "siegel_cl3.json", nullptr, "verdict"},
        {"positivity", "sigma1_nonsingular.json", R"({"mode": "sigma1"})", "injective"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.sub);
        char* js = nullptr;
        char* csv = nullptr;
        REQUIRE(hc_report(c.sub, slurp(c.fixture).c_str(), c.options, &js, &csv) == HC_OK);
        auto j = nlohmann::json::parse(take(js));
        CHECK(j.contains(c.key));
        take(csv);
    }
    char* js = nullptr;
    REQUIRE(hc_report("lmhs", slurp("ncd_tetrahedron.json").c_str(), nullptr, &js, nullptr) == HC_OK);
    CHECK(nlohmann::json::parse(take(js))["graded_dims"] == nlohmann::json::parse("[1, 0, 4, 0, 1]"));

    CHECK(hc_report("nope", "{}", nullptr, &js, nullptr) == HC_SCHEMA);
    CHECK(hc_report("charts", "{}", "[1]", &js, nullptr) == HC_SCHEMA);
    CHECK(hc_report("charts", slurp("genus2_cone.json").c_str(), R"({"tol": -1})", &js, nullptr) == HC_SCHEMA);
    CHECK(hc_report("lmhs", slurp("ncd_incidence_bad.json").c_str(), nullptr, &js, nullptr) == HC_INCIDENCE);
    CHECK(hc_report("lmhs", slurp("ncd_triangle_bad.json").c_str(), nullptr, &js, nullptr) == HC_NOT_A_COMPLEX);
    CHECK(hc_report("lmhs", slurp("disconnected_curve.json").c_str(), nullptr, &js, nullptr) == HC_DISCONNECTED);
    CHECK(js == nullptr);
}
