#pragma once

// JSON conversions and report assembly. Index sets are 1-based in JSON.

#include "hodgechart/charts.hpp"
#include "hodgechart/lmhs.hpp"
#include "hodgechart/metrics.hpp"
#include "hodgechart/positivity.hpp"
#include "hodgechart/siegel.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace hodgechart {

using Json = nlohmann::json;

Json parse_json_text(const std::string& text);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
RationalMatrix rational_matrix_from_json(const Json& j);
Json rational_matrix_to_json(const RationalMatrix& m);
RVec rational_vector_from_json(const Json& j);
Json rational_vector_to_json(const RVec& v);
Json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
IndexSet index_set_from_json(const Json& j, std::size_t k);
Json index_set_to_json(const IndexSet& I);
cplx complex_from_json(const Json& j);
Json complex_to_json(cplx z);
CMatrix complex_matrix_from_json(const Json& j);
std::vector<cplx> complex_vector_from_json(const Json& j);

NilpotentCone cone_from_json(const Json& j);
Json cone_to_json(const NilpotentCone& c);
NCDSurface surface_from_json(const Json& j);
DualGraph dual_graph_from_json(const Json& j);
OrbitSpec orbit_from_json(const Json& j);
ConeSpec siegel_cone_from_json(const Json& j);
CurvatureTriple triple_from_json(const Json& j);
FloatCurvatureTriple float_triple_from_json(const Json& j);

struct ReportOptions {
    double tol = -1;        // negative: subcommand default
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

struct Report {
    Json json;
    std::string csv;
};

Json relation_data_to_json(const RelationData& r);
Json atlas_to_json(const MonomialAtlas& a);

Report charts_report(const Json& input, const ReportOptions& opt);
// extra_charts and membership queries are read from input
Report charts_report(const NilpotentCone& cone, const Json& input, const ReportOptions& opt);
Report lmhs_report(const Json& input, const ReportOptions& opt);
Report curvature_report(const Json& input, const ReportOptions& opt);
Report siegel_report(const Json& cone, const std::string& family, const std::string& parabolic,
                     const ReportOptions& opt);
Report positivity_report(const Json& input, const std::string& mode, const ReportOptions& opt);

double default_tolerance(const std::string& subcommand);
std::string format_double(double x);

}  // namespace hodgechart
