#include "hodgechart/io.hpp"

#include "hodgechart/errors.hpp"
#include "hodgechart/relations.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hodgechart {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Schema, std::string("missing field '") + key + "'");
    return j.at(key);
}

void require_array(const Json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::Schema, std::string(what) + " must be an array");
}

Rational rational_any(const Json& j, bool allow_float) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
        return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) fail(ErrorKind::Schema, "non-finite number");
        if (allow_float || d == std::floor(d)) return Rational(d);
        fail(ErrorKind::Schema, "non-integer float in exact data; write it as a \"p/q\" string");
    }
    fail(ErrorKind::Schema, "expected a rational (integer or \"p/q\" string)");
}

std::vector<std::vector<Rational>> rational_rows(const Json& j, bool allow_float) {
    require_array(j, "matrix");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) {
        require_array(r, "matrix row");
        std::vector<Rational> row;
        for (const auto& x : r) row.push_back(rational_any(x, allow_float));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_index_set(const IndexSet& I) {
    std::string s = "{";
    for (std::size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i] + 1);
    return s + "}";
}

Json subspace_to_json(const Subspace& s) {
    Json rows = Json::array();
    for (const auto& v : s.vectors()) rows.push_back(rational_vector_to_json(v));
    return rows;
}

Json double_vector(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

double tol_or(const ReportOptions& opt, const std::string& sub) {
    return opt.tol > 0 ? opt.tol : default_tolerance(sub);
}

template <class S>
CurvatureTripleT<S> triple_impl(const Json& j, bool allow_float) {
    CurvatureTripleT<S> t;
    t.dim_t = require(j, "dim_t").get<std::size_t>();
    t.dim_w = require(j, "dim_w").get<std::size_t>();
    t.dim_u = require(j, "dim_u").get<std::size_t>();
    const Json& a = require(j, "A");
    require_array(a, "A");
    for (const auto& slice : a) {
        auto rows = rational_rows(slice, allow_float);
        std::vector<std::vector<S>> conv;
        for (auto& r : rows) {
            std::vector<S> row;
            for (auto& x : r) {
                if constexpr (std::is_same_v<S, double>) row.push_back(x.get_d());
                else row.push_back(x);
            }
            conv.push_back(row);
        }
        t.A.push_back(conv);
    }
    if (j.contains("metric")) {
        for (auto& r : rational_rows(j.at("metric"), allow_float)) {
            std::vector<S> row;
            for (auto& x : r) {
                if constexpr (std::is_same_v<S, double>) row.push_back(x.get_d());
                else row.push_back(x);
            }
            t.metric.push_back(row);
        }
    } else {
        t.metric.assign(t.dim_u, std::vector<S>(t.dim_u, S(0)));
        for (std::size_t u = 0; u < t.dim_u; ++u) t.metric[u][u] = S(1);
    }
    t.validate();
    return t;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double default_tolerance(const std::string& subcommand) {
    if (subcommand == "charts") return 1e-9;
    if (subcommand == "curvature") return 1e-2;
    if (subcommand == "siegel") return 0.5;
    if (subcommand == "positivity") return 1e-10;
    return 1e-9;
}

Rational rational_from_json(const Json& j) { return rational_any(j, false); }

Json rational_to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return format_rational(q);
}

RationalMatrix rational_matrix_from_json(const Json& j) {
    auto rows = rational_rows(j, false);
    if (rows.empty()) return RationalMatrix();
    std::size_t cols = rows[0].size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::Schema, "ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
    }
    return m;
}

Json rational_matrix_to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rational_vector_to_json(m.row(i)));
    return rows;
}

RVec rational_vector_from_json(const Json& j) {
    require_array(j, "vector");
    RVec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json rational_vector_to_json(const RVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_to_json(x));
    return a;
}

Json int_matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Integer& x = m(i, c);
            if (x.fits_slong_p()) r.push_back(x.get_si());
            else r.push_back(x.get_str());
        }
        rows.push_back(r);
    }
    return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
    RationalMatrix m = rational_matrix_from_json(j);
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(i, c).get_den() != 1) fail(ErrorKind::Schema, "expected integer entries");
            out(i, c) = m(i, c).get_num();
        }
    return out;
}

IndexSet index_set_from_json(const Json& j, std::size_t k) {
    require_array(j, "index set");
    IndexSet I;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(ErrorKind::Schema, "index set entries must be integers");
        long v = x.get<long>();
        if (v < 1 || v > static_cast<long>(k)) fail(ErrorKind::Schema, "index set entry out of range 1..k");
        I.push_back(static_cast<int>(v - 1));
    }
    return normalize_index_set(I, k);
}

Json index_set_to_json(const IndexSet& I) {
    Json a = Json::array();
    for (int i : I) a.push_back(i + 1);
    return a;
}

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(ErrorKind::Schema, "complex entries must be numbers or [re, im] pairs");
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

CMatrix complex_matrix_from_json(const Json& j) {
    require_array(j, "complex matrix");
    if (j.empty()) return CMatrix();
    const std::size_t rows = j.size();
    require_array(j[0], "complex matrix row");
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        require_array(j[r], "complex matrix row");
        if (j[r].size() != cols) fail(ErrorKind::Schema, "ragged complex matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

std::vector<cplx> complex_vector_from_json(const Json& j) {
    require_array(j, "complex vector");
    std::vector<cplx> v;
    for (const auto& x : j) v.push_back(complex_from_json(x));
    return v;
}

NilpotentCone cone_from_json(const Json& j) {
    NilpotentCone c;
    c.dim = require(j, "dim").get<std::size_t>();
    long w = require(j, "weight").get<long>();
    if (w < 0) fail(ErrorKind::Schema, "weight must be nonnegative");
    c.weight = static_cast<int>(w);
    c.form = rational_matrix_from_json(require(j, "form"));
    if (j.contains("symmetry")) {
        std::string s = j.at("symmetry").get<std::string>();
        if (s == "symmetric") c.symmetry = FormSymmetry::Symmetric;
        else if (s == "alternating") c.symmetry = FormSymmetry::Alternating;
        else fail(ErrorKind::Schema, "symmetry must be 'symmetric' or 'alternating'");
    } else {
        c.symmetry = c.weight % 2 ? FormSymmetry::Alternating : FormSymmetry::Symmetric;
    }
    const Json& gens = require(j, "generators");
    require_array(gens, "generators");
    for (const auto& g : gens) c.generators.push_back(rational_matrix_from_json(g));
    c.validate();
    return c;
}

Json cone_to_json(const NilpotentCone& c) {
    Json gens = Json::array();
    for (const auto& g : c.generators) gens.push_back(rational_matrix_to_json(g));
    return {{"dim", c.dim},
            {"weight", c.weight},
            {"form", rational_matrix_to_json(c.form)},
            {"symmetry", c.symmetry == FormSymmetry::Symmetric ? "symmetric" : "alternating"},
            {"generators", gens}};
}

NCDSurface surface_from_json(const Json& j) {
    NCDSurface x;
    const Json& comps = require(j, "components");
    require_array(comps, "components");
    for (const auto& c : comps) {
        const Json& h = require(c, "h");
        require_array(h, "h");
        if (h.size() != 5) fail(ErrorKind::Schema, "h must list h^0..h^4");
        SurfaceComponent s;
        for (int i = 0; i < 5; ++i) s.h[i] = h[i].get<long>();
        x.components.push_back(s);
    }
    if (j.contains("curves")) {
        require_array(j.at("curves"), "curves");
        for (const auto& c : j.at("curves")) {
            DoubleCurve d;
            const Json& between = require(c, "components");
            if (!between.is_array() || between.size() != 2) fail(ErrorKind::Schema, "curve components must be a pair");
            d.a = between[0].get<int>() - 1;
            d.b = between[1].get<int>() - 1;
            d.genus = c.value("genus", 0L);
            const Json& self = require(c, "self_intersection");
            if (!self.is_array() || self.size() != 2) fail(ErrorKind::Schema, "self_intersection must be a pair");
            d.self_a = self[0].get<long>();
            d.self_b = self[1].get<long>();
            if (d.a > d.b) {
                std::swap(d.a, d.b);
                std::swap(d.self_a, d.self_b);
            }
            x.curves.push_back(d);
        }
    }
    if (j.contains("triple_points")) {
        require_array(j.at("triple_points"), "triple_points");
        for (const auto& p : j.at("triple_points")) {
            TriplePoint t;
            const Json& cs = require(p, "components");
            const Json& cv = require(p, "curves");
            if (!cs.is_array() || cs.size() != 3 || !cv.is_array() || cv.size() != 3)
                fail(ErrorKind::Schema, "triple points list three components and three curves");
            for (int i = 0; i < 3; ++i) {
                t.comps[i] = cs[i].get<int>() - 1;
                t.curves[i] = cv[i].get<int>() - 1;
            }
            x.points.push_back(t);
        }
    }
    if (j.contains("r_odd")) x.r_odd = rational_matrix_from_json(j.at("r_odd"));
    if (j.contains("g_odd")) x.g_odd = rational_matrix_from_json(j.at("g_odd"));
    x.validate();
    return x;
}

DualGraph dual_graph_from_json(const Json& j) {
    DualGraph g;
    const Json& genus = require(j, "genus");
    require_array(genus, "genus");
    for (const auto& x : genus) {
        long v = x.get<long>();
        if (v < 0) fail(ErrorKind::Schema, "negative genus");
        g.genus.push_back(v);
    }
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) fail(ErrorKind::Schema, "edges are vertex pairs");
            int a = e[0].get<int>() - 1, b = e[1].get<int>() - 1;
            if (a < 0 || b < 0 || a >= static_cast<int>(g.genus.size()) || b >= static_cast<int>(g.genus.size()))
                fail(ErrorKind::IncidenceError, "edge references a missing vertex");
            g.edges.push_back({a, b});
        }
    }
    return g;
}

OrbitSpec orbit_from_json(const Json& j) {
    NilpotentCone cone = cone_from_json(require(j, "cone"));
    const Json& flag = require(j, "flag");
    FlagPoint f;
    f.n = cone.weight;
    for (const auto& d : require(flag, "dims")) f.dims.push_back(d.get<std::size_t>());
    f.basis = complex_matrix_from_json(require(flag, "basis"));
    Twist tw;
    if (j.contains("twist")) {
        const Json& t = j.at("twist");
        std::string kind = t.value("kind", std::string("none"));
        if (kind == "exp_linear") {
            const Json& gens = require(t, "generators");
            require_array(gens, "twist generators");
            for (const auto& g : gens) tw.generators.push_back(complex_matrix_from_json(g));
        } else if (kind != "none") {
            fail(ErrorKind::Schema, "twist kind must be 'none' or 'exp_linear'");
        }
    }
    OrbitSpec o = make_orbit(std::move(cone), std::move(f), std::move(tw));
    o.validate();
    return o;
}

ConeSpec siegel_cone_from_json(const Json& j) {
    ConeSpec c;
    const Json& gens = require(j, "generators");
    require_array(gens, "generators");
    for (const auto& g : gens)
        c.generators.push_back({require(g, "p").get<double>(), require(g, "q").get<double>(), g.value("r", 0.0)});
    c.validate();
    return c;
}

CurvatureTriple triple_from_json(const Json& j) { return triple_impl<Rational>(j, j.value("exact", true) == false); }

FloatCurvatureTriple float_triple_from_json(const Json& j) { return triple_impl<double>(j, true); }

Json relation_data_to_json(const RelationData& r) {
    return {{"I", index_set_to_json(r.I)},
            {"S_basis", subspace_to_json(r.S)},
            {"S_perp_basis", subspace_to_json(orthogonal_complement(r.S))},
            {"K", index_set_to_json(r.K)},
            {"C", int_matrix_to_json(r.C)},
            {"certificates", {{"v", rational_vector_to_json(r.v)}, {"v_tilde", rational_vector_to_json(r.v_tilde)}}}};
}

Json atlas_to_json(const MonomialAtlas& a) {
    Json charts = Json::array();
    for (const auto& c : a.charts) {
        Json strata = Json::array();
        for (const auto& I : c.strata) strata.push_back(index_set_to_json(I));
        charts.push_back({{"K", index_set_to_json(c.K)}, {"strata", strata}, {"exponents", int_matrix_to_json(c.exponents)}});
    }
    IntMatrix all = a.assembled();
    IntMatrix rel = binomial_relations(all);
    Json rendered = Json::array();
    for (const auto& u : rel.row_list()) rendered.push_back(render_relation(u));
    return {{"charts", charts},
            {"assembled", int_matrix_to_json(all)},
            {"monomial_count", a.monomial_count()},
            {"relations", int_matrix_to_json(rel)},
            {"relations_rendered", rendered}};
}

Report charts_report(const Json& input, const ReportOptions& opt) {
    return charts_report(cone_from_json(input.contains("cone") ? input.at("cone") : input), input, opt);
}

Report charts_report(const NilpotentCone& cone, const Json& input, const ReportOptions& opt) {
    IndexMap map = k_index_map(cone, opt.jobs);
    MonomialAtlas atlas = atlas_from_index_map(map, cone.size());
    Report rep;
    Json& out = rep.json;
    out["cone"] = {{"dim", cone.dim}, {"weight", cone.weight}, {"generators", cone.size()}};
    Json table = Json::array();
    for (const auto& r : map.table) table.push_back(relation_data_to_json(r));
    out["relation_table"] = table;
    Json image = Json::array();
    for (const auto& K : map.image) image.push_back(index_set_to_json(K));
    Json kmap = Json::array();
    for (const auto& r : map.table) kmap.push_back(render_index_set(r.I) + " -> " + render_index_set(r.K));
    out["index_map"] = {{"image", image}, {"rendered", kmap}};
    out["atlas"] = atlas_to_json(atlas);
    SeparationReport sep = separation_check(atlas);
    Json pairs = Json::array();
    for (const auto& p : sep.pairs)
        pairs.push_back({{"K1", index_set_to_json(p.K1)}, {"K2", index_set_to_json(p.K2)}, {"witness", p.witness < 0 ? Json(nullptr) : Json(p.witness + 1)}});
    out["separation"] = {{"separated", sep.separated}, {"pairs", pairs}};

    Json wf = Json::array();
    for (const auto& I : all_index_sets(cone.size())) {
        if (I.empty()) continue;
        WeightFiltration w = weight_filtration(cone.sum(I), cone.weight);
        Json dims = Json::array();
        for (const auto& g : graded_pieces(w)) dims.push_back({g.level, g.dimension});
        wf.push_back({{"I", index_set_to_json(I)}, {"graded_dims", dims}});
    }
    out["weight_filtrations"] = wf;

    if (input.contains("extra_charts")) {
        Json extra = Json::array();
        for (const auto& c : input.at("extra_charts")) {
            IntMatrix rows = int_matrix_from_json(require(c, "rows"));
            if (rows.rows() > 0 && rows.cols() != cone.size()) fail(ErrorKind::Schema, "extra chart rows must have k entries");
            IntMatrix rel = binomial_relations(rows);
            Json rendered = Json::array();
            for (const auto& u : rel.row_list()) rendered.push_back(render_relation(u));
            extra.push_back({{"name", c.value("name", std::string())},
                             {"rows", int_matrix_to_json(rows)},
                             {"relations", int_matrix_to_json(rel)},
                             {"relations_rendered", rendered}});
        }
        out["extra_charts"] = extra;
    }
    if (input.contains("membership")) {
        Json mem = Json::array();
        for (const auto& q : input.at("membership")) {
            IndexSet I = index_set_from_json(require(q, "I"), cone.size());
            RVec a = rational_vector_from_json(require(q, "a"));
            if (a.size() != cone.size()) fail(ErrorKind::Schema, "membership vector must have k entries");
            mem.push_back({{"I", index_set_to_json(I)}, {"a", rational_vector_to_json(a)},
                           {"member", relation_space(cone, I).contains(a)}});
        }
        out["membership"] = mem;
    }
    return rep;
}

Report lmhs_report(const Json& input, const ReportOptions&) {
    Report rep;
    if (input.contains("dual_graph")) {
        auto dims = curve_lmhs(dual_graph_from_json(input.at("dual_graph")));
        rep.json = {{"kind", "curve"}, {"graded_dims", {dims[0], dims[1], dims[2]}}};
        return rep;
    }
    NCDSurface x = surface_from_json(input.contains("surface") ? input.at("surface") : input);
    WeightComplexes w = build_weight_complexes(x);
    auto tp = triple_point_check(x);
    bool friedman = friedman_check(w);
    bool complex = compositions_vanish(w);
    Json shapes;
    auto shape = [](const RationalMatrix& m) { return Json::array({m.rows(), m.cols()}); };
    shapes["r1"] = shape(w.r1);
    shapes["r2"] = shape(w.r2);
    shapes["g3"] = shape(w.g3);
    shapes["g2"] = shape(w.g2);
    shapes["a"] = shape(w.a);
    shapes["b"] = shape(w.b);
    shapes["r_odd"] = shape(w.r_odd);
    shapes["g_odd"] = shape(w.g_odd);
    rep.json["kind"] = "surface";
    rep.json["triple_point_check"] = tp;
    rep.json["complex_shapes"] = shapes;
    rep.json["h2_model_dim"] = w.h2_model_dim;
    rep.json["friedman_check"] = friedman;
    rep.json["compositions_vanish"] = complex;
    if (!complex) {
        std::string bad;
        for (std::size_t i = 0; i < tp.size(); ++i)
            if (!tp[i]) bad += (bad.empty() ? "" : ",") + std::to_string(i + 1);
        fail(ErrorKind::NotAComplex, "weight complexes do not compose to zero; triple point formula fails on curves [" + bad + "]");
    }
    GradedDims g = graded_dims(w);
    rep.json["graded_dims"] = g.dims;
    rep.json["duality"] = {{"I4_eq_I0", g.dims[4] == g.dims[0]}, {"I3_eq_I1", g.dims[3] == g.dims[1]}};
    MonodromyGradedReport m = monodromy_graded_maps(w);
    rep.json["monodromy"] = {{"even", {{"source", m.even_source}, {"target", m.even_target}, {"iso", m.even_iso}}},
                             {"odd", {{"source", m.odd_source}, {"target", m.odd_target}, {"iso", m.odd_iso}}}};
    return rep;
}

namespace {

Report curvature_limit_task(const Json& in, double tol) {
    OrbitSpec orbit = orbit_from_json(require(in, "orbit"));
    CurvatureOptions co;
    co.I = index_set_from_json(require(in, "I"), orbit.n.size());
    if (in.contains("t_fixed")) co.t_fixed = complex_vector_from_json(in.at("t_fixed"));
    if (in.contains("w0")) co.w0 = complex_vector_from_json(in.at("w0"));
    if (in.contains("direction")) co.direction = complex_vector_from_json(in.at("direction"));
    if (in.contains("abs_t")) co.abs_t = in.at("abs_t").get<std::vector<double>>();
    if (in.contains("step")) co.step = in.at("step").get<double>();
    CurvatureReport cr = curvature_limit_check(orbit, co);
    Report rep;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "abs_t,value,boundary_value,error\n";
    for (const auto& r : cr.rows) {
        rows.push_back({{"abs_t", r.abs_t}, {"value", r.value}, {"boundary_value", r.boundary_value}, {"error", r.error}});
        csv << format_double(r.abs_t) << ',' << format_double(r.value) << ',' << format_double(r.boundary_value) << ','
            << format_double(r.error) << '\n';
    }
    rep.json = {{"task", "curvature_limit"},
                {"I", index_set_to_json(co.I)},
                {"rows", rows},
                {"decreasing", cr.decreasing},
                {"error_kind", cr.relative ? "relative" : "absolute"},
                {"final_error", cr.final_error},
                {"within_tolerance", cr.final_error < tol}};
    rep.csv = csv.str();
    return rep;
}

Report expansion_task(const Json& in, double tol) {
    OrbitSpec orbit = orbit_from_json(require(in, "orbit"));
    std::vector<cplx> w = in.contains("w") ? complex_vector_from_json(in.at("w")) : std::vector<cplx>(orbit.w_count);
    const Json& rays = require(in, "rays");
    require_array(rays, "rays");
    Report rep;
    Json fits = Json::array();
    std::ostringstream csv;
    csv << "ray,L,h\n";
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const Json& r = rays[i];
        Ray ray;
        ray.alpha = require(r, "alpha").get<std::vector<double>>();
        if (r.contains("c")) ray.c = complex_vector_from_json(r.at("c"));
        if (r.contains("L")) ray.L = r.at("L").get<std::vector<double>>();
        int section = r.value("section", -1);
        ExpansionFit f = expansion_fit(orbit, ray, w, section, tol);
        std::string name = r.value("name", "ray" + std::to_string(i + 1));
        fits.push_back({{"name", name},
                        {"alpha", double_vector(ray.alpha)},
                        {"section", section},
                        {"m", f.m},
                        {"A", f.A},
                        {"residual", f.residual},
                        {"candidate_residuals", double_vector(f.candidate_residuals)}});
        for (std::size_t s = 0; s < f.L.size(); ++s) csv << name << ',' << format_double(f.L[s]) << ',' << format_double(f.h[s]) << '\n';
    }
    rep.json = {{"task", "expansion_fit"}, {"fits", fits}, {"threshold", tol}};
    rep.csv = csv.str();
    return rep;
}

Report residue_task(const Json& in) {
    Polynomial2 g;
    const Json& terms = require(in, "g");
    require_array(terms, "g");
    for (const auto& t : terms) {
        int a = require(t, "x").get<int>(), b = require(t, "y").get<int>();
        if (a < 0 || b < 0) fail(ErrorKind::Schema, "polynomial exponents must be nonnegative");
        g[{a, b}] += complex_from_json(require(t, "c"));
    }
    std::vector<double> abs_t =
        in.contains("abs_t") ? in.at("abs_t").get<std::vector<double>>() : std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5};
    ResidueSweep s = residue_sweep(g, abs_t);
    cplx g00 = g.count({0, 0}) ? g.at({0, 0}) : cplx{0, 0};
    Report rep;
    std::ostringstream csv;
    csv << "abs_t,value\n";
    for (std::size_t i = 0; i < s.abs_t.size(); ++i) csv << format_double(s.abs_t[i]) << ',' << format_double(s.value[i]) << '\n';
    rep.json = {{"task", "residue"},
                {"abs_t", double_vector(s.abs_t)},
                {"values", double_vector(s.value)},
                {"slope", s.slope},
                {"normalization", kResidueNormalization},
                {"normalized_slope", s.normalized_slope},
                {"expected_normalized_slope", std::norm(g00)}};
    rep.csv = csv.str();
    return rep;
}

Report metric_task(const Json& in) {
    OrbitSpec orbit = orbit_from_json(require(in, "orbit"));
    const Json& pts = require(in, "points");
    require_array(pts, "points");
    Report rep;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "index,log_det_lambda,augmented_log_det\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<cplx> t = complex_vector_from_json(require(pts[i], "t"));
        std::vector<cplx> w = pts[i].contains("w") ? complex_vector_from_json(pts[i].at("w")) : std::vector<cplx>(orbit.w_count);
        std::vector<cplx> z = z_from_t(t);
        FlagPoint f = orbit_flag(orbit, z, w);
        HodgeDecomposition hd = hodge_decomposition(f, orbit.q);
        double ld = log_det_lambda_z(orbit, z, w);
        double ald = augmented_log_det_z(orbit, z, w);
        Json dims = Json::array();
        for (const auto& p : hd.pieces) dims.push_back(p.cols());
        rows.push_back({{"index", i + 1}, {"hodge_dims", dims}, {"independence", hd.independence},
                        {"log_det_lambda", ld}, {"augmented_log_det", ald}});
        csv << i + 1 << ',' << format_double(ld) << ',' << format_double(ald) << '\n';
    }
    rep.json = {{"task", "metric"}, {"points", rows}};
    rep.csv = csv.str();
    return rep;
}

}  // namespace

Report curvature_report(const Json& input, const ReportOptions& opt) {
    std::string task = require(input, "task").get<std::string>();
    double tol = tol_or(opt, "curvature");
    if (task == "curvature_limit") return curvature_limit_task(input, tol);
    if (task == "expansion_fit") return expansion_task(input, tol);
    if (task == "residue") return residue_task(input);
    if (task == "metric") return metric_task(input);
    fail(ErrorKind::Schema, "task must be curvature_limit, expansion_fit, residue or metric");
}

Report siegel_report(const Json& cone_json, const std::string& family_text, const std::string& parabolic_text,
                     const ReportOptions& opt) {
    build_setup();
    ConeSpec cone = siegel_cone_from_json(cone_json);
    std::string fam = family_text.empty() ? cone_json.value("family", std::string()) : family_text;
    std::string par = parabolic_text.empty() ? cone_json.value("parabolic", std::string()) : parabolic_text;
    if (fam.empty()) fail(ErrorKind::Schema, "no family given");
    if (par.empty()) fail(ErrorKind::Schema, "no parabolic given");
    Family family = parse_family(fam);
    Parabolic p = parse_parabolic(par);
    std::vector<double> grid = cone_json.contains("T_grid") ? cone_json.at("T_grid").get<std::vector<double>>() : default_T_grid();
    for (double t : grid)
        if (!(t > 0)) fail(ErrorKind::Schema, "T grid values must be positive");
    ProbeResult res = boundedness_probe(cone, family, p, grid, tol_or(opt, "siegel"));
    Report rep;
    Json monitors = Json::array();
    for (const auto& m : res.monitors)
        monitors.push_back({{"name", m.name},
                            {"bound", m.bounded_below ? "below" : "above"},
                            {"slope", m.slope},
                            {"escapes", m.escapes},
                            {"values", double_vector(m.values)}});
    rep.json = {{"parabolic", parabolic_name(p)},
                {"family", fam},
                {"T", double_vector(res.T)},
                {"monitors", monitors},
                {"verdict", res.verdict},
                {"max_roundtrip_error", res.max_roundtrip_error},
                {"setup_verified", true}};
    std::ostringstream csv;
    csv << 'T';
    for (std::size_t j = 0; j < family.size(); ++j) csv << ",y" << j + 1;
    for (const auto& m : res.monitors) csv << ',' << m.name;
    csv << '\n';
    for (std::size_t i = 0; i < res.T.size(); ++i) {
        csv << format_double(res.T[i]);
        for (double y : family_at(family, res.T[i])) csv << ',' << format_double(y);
        for (const auto& m : res.monitors) csv << ',' << format_double(m.values[i]);
        csv << '\n';
    }
    rep.csv = csv.str();
    return rep;
}

Report positivity_report(const Json& input, const std::string& mode, const ReportOptions& opt) {
    Report rep;
    if (mode == "sigma1") {
        RationalMatrix q = rational_matrix_from_json(require(input, "Q"));
        SigmaResult s = sigma_weight1(q);
        rep.json = {{"mode", "sigma1"},
                    {"matrix", rational_matrix_to_json(s.matrix)},
                    {"rank", s.rank},
                    {"dim_S2W", s.matrix.cols()},
                    {"injective", s.injective}};
        return rep;
    }
    if (mode == "sigma2") {
        CurvatureTriple t = triple_from_json(require(input, "triple"));
        RationalMatrix q = rational_matrix_from_json(require(input, "Q"));
        Sigma2Result s = sigma_weight2(t, q);
        rep.json = {{"mode", "sigma2"},
                    {"matrix", rational_matrix_to_json(s.matrix)},
                    {"rank", s.rank},
                    {"dim_T", t.dim_t},
                    {"injective", s.injective},
                    {"A_injective", s.a_injective},
                    {"integrable", s.integrable}};
        return rep;
    }
    if (mode == "ndim") {
        CurvatureTriple t = input.contains("sigma1_dim_w")
                                ? sigma1_triple(input.at("sigma1_dim_w").get<std::size_t>())
                                : triple_from_json(require(input, "triple"));
        std::vector<RVec> samples;
        if (input.contains("samples")) {
            for (const auto& s : input.at("samples")) samples.push_back(rational_vector_from_json(s));
        } else {
            samples = generic_samples(t.dim_w, opt.seed);
        }
        NumericalDimension nd = numerical_dimension(t, samples);
        std::vector<RVec> xis = generic_samples(t.dim_t, opt.seed + 1, samples.size());
        bool all_match = true;
        Json checks = Json::array();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            auto c = curvature_identity_check(t, samples[i], xis[i]);
            all_match = all_match && c.match;
            checks.push_back({{"lhs", rational_to_json(c.lhs)}, {"rhs", rational_to_json(c.rhs)}, {"match", c.match}});
        }
        rep.json = {{"mode", "ndim"},
                    {"rho", nd.rho},
                    {"n", nd.n},
                    {"r", t.dim_w},
                    {"ranks", nd.ranks},
                    {"samples", samples.size()},
                    {"sample_seed", opt.seed},
                    {"identity_checks", checks},
                    {"identity_all_match", all_match}};
        return rep;
    }
    fail(ErrorKind::Schema, "mode must be sigma1, sigma2 or ndim");
}

}  // namespace hodgechart
