#include "hodgechart.h"

#include "hodgechart/errors.hpp"
#include "hodgechart/io.hpp"
#include "hodgechart/relations.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#define HC_EXPORT extern "C" __attribute__((visibility("default")))

struct hc_cone {
    hodgechart::NilpotentCone cone;
};

namespace {

using namespace hodgechart;

thread_local std::string last_error;

int record(int status, const std::string& msg) {
    last_error = msg;
    return status;
}

template <class F>
int guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return HC_OK;
    } catch (const Error& e) {
        return record(static_cast<int>(e.kind()) + 1, e.what());
    } catch (const nlohmann::json::exception& e) {
        return record(HC_SCHEMA, std::string("SchemaError: ") + e.what());
    } catch (const std::bad_alloc&) {
        return record(HC_INTERNAL, "Internal: out of memory");
    } catch (const std::exception& e) {
        return record(HC_INTERNAL, std::string("Internal: ") + e.what());
    } catch (...) {
        return record(HC_INTERNAL, "Internal: unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::Schema, std::string("null argument: ") + what);
}

IndexSet index_set(const hc_cone* c, const int* I, std::size_t count) {
    if (count > 0) need(I, "index_set");
    Json arr = Json::array();
    for (std::size_t i = 0; i < count; ++i) arr.push_back(I[i]);
    return index_set_from_json(arr, c->cone.size());
}

}  // namespace

HC_EXPORT const char* hc_version(void) { return "0.1.0"; }

HC_EXPORT const char* hc_status_name(int status) {
    if (status == HC_OK) return "OK";
    if (status < 1 || status > HC_POOR_FIT) return "Unknown";
    return error_kind_name(static_cast<ErrorKind>(status - 1));
}

HC_EXPORT const char* hc_last_error(void) { return last_error.c_str(); }

HC_EXPORT void hc_free_string(char* s) { std::free(s); }

HC_EXPORT double hc_default_tolerance(const char* subcommand) {
    return default_tolerance(subcommand ? subcommand : "");
}

HC_EXPORT int hc_cone_parse(const char* json, hc_cone** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        auto* c = new hc_cone{cone_from_json(parse_json_text(json))};
        *out = c;
    });
}

HC_EXPORT void hc_cone_free(hc_cone* cone) { delete cone; }

HC_EXPORT int hc_cone_info(const hc_cone* cone, size_t* dim, int* weight, size_t* generators) {
    return guarded([&] {
        need(cone, "cone");
        if (dim) *dim = cone->cone.dim;
        if (weight) *weight = cone->cone.weight;
        if (generators) *generators = cone->cone.size();
    });
}

HC_EXPORT int hc_cone_relation_data(const hc_cone* cone, const int* I, size_t count, char** json_out) {
    return guarded([&] {
        need(cone, "cone");
        need(json_out, "json_out");
        *json_out = nullptr;
        RelationData r = relation_data(cone->cone, index_set(cone, I, count));
        *json_out = dup_string(relation_data_to_json(r).dump());
    });
}

HC_EXPORT int hc_cone_relation_member(const hc_cone* cone, const int* I, size_t count, const long* a, size_t a_len,
                                      int* member) {
    return guarded([&] {
        need(cone, "cone");
        need(member, "member");
        if (a_len != cone->cone.size()) fail(ErrorKind::Schema, "coefficient vector must have k entries");
        if (a_len > 0) need(a, "a");
        RVec v;
        for (std::size_t i = 0; i < a_len; ++i) v.push_back(Rational(a[i]));
        *member = relation_space(cone->cone, index_set(cone, I, count)).contains(v) ? 1 : 0;
    });
}

HC_EXPORT int hc_cone_weight_filtration(const hc_cone* cone, const int* I, size_t count, char** json_out) {
    return guarded([&] {
        need(cone, "cone");
        need(json_out, "json_out");
        *json_out = nullptr;
        WeightFiltration w = weight_filtration(cone->cone.sum(index_set(cone, I, count)), cone->cone.weight);
        Json steps = Json::array();
        for (int l = w.lowest(); l <= w.highest(); ++l)
            steps.push_back({{"level", l}, {"basis", rational_matrix_to_json(w.step(l).basis())}});
        Json out = {{"center", w.center()}, {"lowest", w.lowest()}, {"highest", w.highest()}, {"steps", steps}};
        *json_out = dup_string(out.dump());
    });
}

HC_EXPORT int hc_cone_charts_report(const hc_cone* cone, unsigned jobs, char** json_out) {
    return guarded([&] {
        need(cone, "cone");
        need(json_out, "json_out");
        *json_out = nullptr;
        ReportOptions opt;
        opt.jobs = jobs == 0 ? 1 : jobs;
        *json_out = dup_string(charts_report(cone->cone, Json::object(), opt).json.dump());
    });
}

HC_EXPORT int hc_report(const char* subcommand, const char* input_json, const char* options_json, char** json_out,
                        char** csv_out) {
    return guarded([&] {
        need(subcommand, "subcommand");
        need(input_json, "input_json");
        need(json_out, "json_out");
        *json_out = nullptr;
        if (csv_out) *csv_out = nullptr;
        Json options = options_json ? parse_json_text(options_json) : Json::object();
        if (!options.is_object()) fail(ErrorKind::Schema, "options must be a JSON object");
        ReportOptions opt;
        opt.tol = options.value("tol", -1.0);
        opt.seed = options.value("seed", std::uint64_t{0});
        opt.jobs = options.value("jobs", 1u);
        if (opt.jobs == 0) opt.jobs = 1;
        if (options.contains("tol") && !(opt.tol > 0)) fail(ErrorKind::Schema, "tol must be positive");
        Json input = parse_json_text(input_json);
        std::string sub = subcommand;
        Report rep;
        if (sub == "charts") rep = charts_report(input, opt);
        else if (sub == "lmhs") rep = lmhs_report(input, opt);
        else if (sub == "curvature") rep = curvature_report(input, opt);
        else if (sub == "siegel")
            rep = siegel_report(input, options.value("family", std::string()), options.value("parabolic", std::string()), opt);
        else if (sub == "positivity") rep = positivity_report(input, options.value("mode", std::string()), opt);
        else fail(ErrorKind::Schema, "unknown subcommand '" + sub + "'");
        char* j = dup_string(rep.json.dump());
        if (csv_out) {
            try {
                *csv_out = dup_string(rep.csv);
            } catch (...) {
                std::free(j);
                throw;
            }
        }
        *json_out = j;
    });
}
