#include "hodgechart/siegel.hpp"

#include "hodgechart/errors.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace hodgechart {

namespace {

using cplx = std::complex<double>;
const cplx kI{0.0, 1.0};

double fit_slope(const std::vector<double>& T, const std::vector<double>& v) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
        double x = std::log(T[i]), y = std::log(v[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpanMatrix base_point() {
    SpanMatrix s = SpanMatrix::Zero();
    s(2, 0) = 1.0;
    s(1, 0) = -kI;
    s(3, 1) = 1.0;
    s(0, 1) = -kI;
    return s;
}

}  // namespace

RationalMatrix matrix_unit(std::size_t i, std::size_t j, std::size_t d) {
    RationalMatrix m(d, d);
    m(i - 1, j - 1) = 1;
    return m;
}

Sp4Setup build_setup() {
    Sp4Setup s;
    s.q = RationalMatrix::from_ints({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}});
    auto e = [](std::size_t i, std::size_t j) { return matrix_unit(i, j); };
    s.triples.push_back({e(1, 4).scaled(-1), e(4, 4) - e(1, 1), e(4, 1).scaled(-1)});
    s.triples.push_back({e(2, 3).scaled(-1), e(3, 3) - e(2, 2), e(3, 2).scaled(-1)});
    for (const auto& t : s.triples) {
        if (commutator(t.y, t.n) != t.n.scaled(-2) || commutator(t.y, t.n_plus) != t.n_plus.scaled(2) ||
            commutator(t.n_plus, t.n) != t.y)
            fail(ErrorKind::Internal, "Sp(4) setup: standard triple relations fail");
        for (const auto* m : {&t.n, &t.y, &t.n_plus})
            if (!(m->transpose() * s.q + s.q * *m).is_zero())
                fail(ErrorKind::Internal, "Sp(4) setup: triple element not in sp(q)");
    }
    const auto& a = s.triples[0];
    const auto& b = s.triples[1];
    for (const auto* x : {&a.n, &a.y, &a.n_plus})
        for (const auto* y : {&b.n, &b.y, &b.n_plus})
            if (!commutator(*x, *y).is_zero()) fail(ErrorKind::Internal, "Sp(4) setup: triples do not commute");
    return s;
}

void ConeSpec::validate(double tol) const {
    if (generators.empty()) fail(ErrorKind::Schema, "Siegel cone: no generators");
    for (std::size_t j = 0; j < generators.size(); ++j) {
        const auto& g = generators[j];
        if (!std::isfinite(g.p) || !std::isfinite(g.q) || !std::isfinite(g.r))
            fail(ErrorKind::Schema, "Siegel cone: non-finite entry");
        if (g.p < 0 || g.q < 0) fail(ErrorKind::Schema, "Siegel cone: p_j and q_j must be nonnegative");
        double gap = g.p * g.q - g.r * g.r;
        double scale = std::max(1.0, g.p * g.q + g.r * g.r);
        if (gap < -tol * scale) fail(ErrorKind::Schema, "Siegel cone: r_j^2 exceeds p_j q_j");
        if (generators.size() > 1 && std::abs(gap) > tol * scale) {
            std::ostringstream os;
            os << "Siegel cone: generator " << j + 1 << " violates r^2 = p q";
            fail(ErrorKind::Schema, os.str());
        }
    }
}

std::vector<RationalMatrix> ConeSpec::nilpotents() const {
    std::vector<RationalMatrix> out;
    for (const auto& g : generators) {
        RationalMatrix n = (matrix_unit(1, 3) + matrix_unit(2, 4)).scaled(-Rational(g.r));
        n = n - matrix_unit(2, 3).scaled(Rational(g.p)) - matrix_unit(1, 4).scaled(Rational(g.q));
        out.push_back(n);
    }
    return out;
}

PQR evaluate(const ConeSpec& cone, const std::vector<double>& y) {
    if (y.size() != cone.generators.size()) fail(ErrorKind::Schema, "Siegel: y must have one entry per generator");
    PQR v;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(y[j] > 0)) throw DomainError("NotInDomain", "Siegel: y_j must be positive");
        v.p += cone.generators[j].p * y[j];
        v.q += cone.generators[j].q * y[j];
        v.r += cone.generators[j].r * y[j];
    }
    return v;
}

// p(y) q(y) - r(y)^2 expanded over generator pairs; avoids the cancellation of the direct product
double discriminant(const ConeSpec& cone, const std::vector<double>& y) {
    evaluate(cone, y);
    const auto& g = cone.generators;
    double d = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        d += y[j] * y[j] * (g[j].p * g[j].q - g[j].r * g[j].r);
        for (std::size_t k = j + 1; k < g.size(); ++k)
            d += y[j] * y[k] * (g[j].p * g[k].q + g[k].p * g[j].q - 2 * g[j].r * g[k].r);
    }
    return d;
}

SpanMatrix orbit_point(const ConeSpec& cone, const std::vector<double>& y) {
    PQR v = evaluate(cone, y);
    SpanMatrix s = SpanMatrix::Zero();
    s(2, 0) = 1.0;
    s(0, 0) = -kI * v.r;
    s(1, 0) = -kI * v.p;
    s(3, 1) = 1.0;
    s(0, 1) = -kI * v.q;
    s(1, 1) = -kI * v.r;
    return s;
}

double span_distance(const SpanMatrix& a, const SpanMatrix& b) {
    // compare as graphs Z = X Y^{-1} over span{e3, e4} when both are graphs
    Eigen::Matrix2cd ya = a.bottomRows<2>(), yb = b.bottomRows<2>();
    auto graph_ok = [](const Eigen::Matrix2cd& y) {
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(y);
        return svd.singularValues()(1) > 1e-12 * std::max(1.0, svd.singularValues()(0));
    };
    if (graph_ok(ya) && graph_ok(yb)) {
        Eigen::Matrix2cd za = a.topRows<2>() * ya.inverse(), zb = b.topRows<2>() * yb.inverse();
        return (za - zb).norm() / std::max(1.0, za.norm());
    }
    auto proj = [](const SpanMatrix& m) {
        Eigen::Matrix<cplx, 4, 4> p = m * (m.adjoint() * m).inverse() * m.adjoint();
        return p;
    };
    return (proj(a) - proj(b)).norm();
}

MinimalSolution solve_minimal(const ConeSpec& cone, const std::vector<double>& y) {
    PQR v = evaluate(cone, y);
    if (v.p <= 0) throw DomainError("PZero", "minimal parabolic: p(y) = 0");
    double e2a = discriminant(cone, y) / v.p;
    if (!(e2a > 0)) throw DomainError("NotInDomain", "minimal parabolic: q(y) p(y) <= r(y)^2");
    return {0.5 * std::log(e2a), 0.5 * std::log(v.p), v.r / v.p};
}

MaximalSolution solve_maximal(const ConeSpec& cone, const std::vector<double>& y) {
    PQR v = evaluate(cone, y);
    double disc = discriminant(cone, y);
    if (!(disc > 0)) throw DomainError("NotInDomain", "maximal parabolic: p(y) q(y) <= r(y)^2");
    double e2a = std::sqrt(disc);
    Eigen::Matrix2d g;
    g << v.q, v.r, v.r, v.p;
    g /= e2a;
    MaximalSolution s;
    s.a = 0.5 * std::log(e2a);
    s.B = g.llt().matrixL();
    return s;
}

SpanMatrix reconstruct(const MinimalSolution& s) {
    Eigen::Matrix4d nu = Eigen::Matrix4d::Identity();
    nu(0, 1) = s.beta;
    nu(2, 3) = -s.beta;
    Eigen::Vector4d g(std::exp(s.a), std::exp(s.d), std::exp(-s.d), std::exp(-s.a));
    Eigen::Matrix4d m = nu * g.asDiagonal();
    return m.cast<cplx>() * base_point();
}

SpanMatrix reconstruct(const MaximalSolution& s) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.topLeftCorner<2, 2>() = s.B;
    Eigen::Matrix2d bp;
    bp << s.B(0, 0), -s.B(0, 1), -s.B(1, 0), s.B(1, 1);
    m.bottomRightCorner<2, 2>() = bp;
    Eigen::Vector4d g(std::exp(s.a), std::exp(s.a), std::exp(-s.a), std::exp(-s.a));
    return (g.asDiagonal() * m).cast<cplx>() * base_point();
}

Parabolic parse_parabolic(const std::string& s) {
    if (s == "minimal") return Parabolic::Minimal;
    if (s == "maximal") return Parabolic::Maximal;
    fail(ErrorKind::Schema, "parabolic must be 'minimal' or 'maximal'");
}

std::string parabolic_name(Parabolic p) { return p == Parabolic::Minimal ? "minimal" : "maximal"; }

Family parse_family(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("y=", 0) == 0) s = s.substr(2);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        fail(ErrorKind::Schema, "family must look like y=(T,1)");
    s = s.substr(1, s.size() - 2);
    static const std::regex term(R"(^(?:([0-9.eE+\-]+)\*?)?(T)?(?:\^([0-9.eE+\-]+))?$)");
    Family out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::smatch m;
        if (item.empty() || !std::regex_match(item, m, term)) fail(ErrorKind::Schema, "family: cannot parse '" + item + "'");
        FamilyComponent c;
        bool has_t = m[2].matched;
        if (!has_t && m[3].matched) fail(ErrorKind::Schema, "family: exponent without T in '" + item + "'");
        if (!has_t && !m[1].matched) fail(ErrorKind::Schema, "family: empty component");
        try {
            if (m[1].matched) c.coef = std::stod(m[1].str());
            if (has_t) c.exponent = m[3].matched ? std::stod(m[3].str()) : 1.0;
        } catch (const std::exception&) {
            fail(ErrorKind::Schema, "family: bad number in '" + item + "'");
        }
        out.push_back(c);
    }
    return out;
}

std::vector<double> family_at(const Family& f, double T) {
    std::vector<double> y;
    for (const auto& c : f) y.push_back(c.coef * std::pow(T, c.exponent));
    return y;
}

std::vector<double> default_T_grid() { return {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}; }

ProbeResult boundedness_probe(const ConeSpec& cone, const Family& family, Parabolic parabolic,
                              const std::vector<double>& T, double slope_threshold) {
    cone.validate();
    if (family.size() != cone.generators.size())
        fail(ErrorKind::Schema, "family length does not match the number of generators");
    if (T.size() < 2) fail(ErrorKind::Schema, "T grid needs at least two points");
    ProbeResult res;
    res.parabolic = parabolic;
    res.T = T;
    if (parabolic == Parabolic::Minimal) {
        res.monitors = {{"exp(2(a-d))", true, {}, 0, false},
                        {"exp(2d)", true, {}, 0, false},
                        {"1+|beta|", false, {}, 0, false}};
    } else {
        res.monitors = {{"exp(2a)", true, {}, 0, false},
                        {"|B1|^4", false, {}, 0, false},
                        {"|B2|^4", false, {}, 0, false},
                        {"|B|", false, {}, 0, false}};
    }
    for (double t : T) {
        auto y = family_at(family, t);
        SpanMatrix direct = orbit_point(cone, y);
        if (parabolic == Parabolic::Minimal) {
            auto s = solve_minimal(cone, y);
            res.monitors[0].values.push_back(std::exp(2 * (s.a - s.d)));
            res.monitors[1].values.push_back(std::exp(2 * s.d));
            res.monitors[2].values.push_back(1 + std::abs(s.beta));
            res.max_roundtrip_error = std::max(res.max_roundtrip_error, span_distance(direct, reconstruct(s)));
        } else {
            auto s = solve_maximal(cone, y);
            res.monitors[0].values.push_back(std::exp(2 * s.a));
            res.monitors[1].values.push_back(std::pow(s.B.row(0).norm(), 4));
            res.monitors[2].values.push_back(std::pow(s.B.row(1).norm(), 4));
            res.monitors[3].values.push_back(s.B.norm());
            res.max_roundtrip_error = std::max(res.max_roundtrip_error, span_distance(direct, reconstruct(s)));
        }
    }
    for (auto& m : res.monitors) {
        m.slope = fit_slope(T, m.values);
        m.escapes = m.bounded_below ? m.slope < -slope_threshold : m.slope > slope_threshold;
        res.escapes = res.escapes || m.escapes;
    }
    res.verdict = res.escapes ? "escapes-every-Siegel-set" : "contained";
    return res;
}

}  // namespace hodgechart
