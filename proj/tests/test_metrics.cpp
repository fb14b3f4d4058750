#include "hodgechart/errors.hpp"
#include "hodgechart/io.hpp"
#include "hodgechart/metrics.hpp"
#include "common.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace hodgechart;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

Json load(const std::string& name) {
    std::ifstream in(fixtures::fixture_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

// Period-matrix oracle for the genus-2 orbit: F^1 = span [Z; I],
// Z = Z0 + sum z_j S_j (+ w S_2 with the twist), and Gram = 2 Im Z.
struct PeriodOracle {
    Eigen::Matrix2cd z0;
    std::vector<Eigen::Matrix2d> s;
    PeriodOracle() {
        z0 << kI, 0.05 * kI, 0.05 * kI, kI;
        Eigen::Matrix2d s1, s2, s3;
        s1 << 1, 0, 0, 0;
        s2 << 0, 0, 0, 1;
        s3 << 1, 1, 1, 1;
        s = {s1, s2, s3};
    }
    double log_det(const std::vector<cplx>& z, cplx w = 0.0) const {
        Eigen::Matrix2cd m = z0;
        for (std::size_t j = 0; j < 3; ++j) m += z[j] * s[j].cast<cplx>();
        m += w * s[1].cast<cplx>();
        Eigen::Matrix2d im = 2.0 * m.imag();
        return std::log(im.determinant());
    }
};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RationalMatrix rkron(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

}  // namespace

TEST_CASE("genus-2 log det against the period-matrix oracle") {
    OrbitSpec o = orbit_from_json(load("genus2_metric.json")["orbit"]);
    PeriodOracle oracle;
    oracle::Rng rng(12345);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<cplx> t;
        for (int j = 0; j < 3; ++j) t.push_back(std::polar(std::exp(rng.real(-9.0, -0.1)), rng.real(-kPi, kPi)));
        double v = log_det_lambda(o, t, {});
        CHECK(v == doctest::Approx(oracle.log_det(z_from_t(t))).epsilon(1e-10));
    }
    auto hd = hodge_decomposition(orbit_flag(o, z_from_t({1e-3, 1e-3, 1e-3}), {}), o.q);
    CHECK(hd.pieces[1].cols() == 2);
    CHECK(hd.pieces[0].cols() == 2);
    CHECK(hd.residual < 1e-8);
}

TEST_CASE("metric invariances") {
    OrbitSpec o = orbit_from_json(load("genus2_metric.json")["orbit"]);
    oracle::Rng rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> z;
        for (int j = 0; j < 3; ++j) z.push_back(cplx(rng.real(-2, 2), rng.real(0.2, 3)));
        double base = log_det_lambda_z(o, z, {});
        for (std::size_t j = 0; j < 3; ++j) {
            auto zs = z;
            zs[j] += 1.0;
            CHECK(log_det_lambda_z(o, zs, {}) == doctest::Approx(base).epsilon(1e-9));
        }
        // swapping the two halves of the symplectic basis exchanges N1 and N2 and fixes N3, Z0
        auto zp = z;
        std::swap(zp[0], zp[1]);
        CHECK(log_det_lambda_z(o, zp, {}) == doctest::Approx(base).epsilon(1e-9));
    }

    // twist evaluated at w = 0 is the untwisted metric
    OrbitSpec tw = orbit_from_json(load("genus2_curvature.json")["orbit"]);
    std::vector<cplx> z{cplx(0.3, 1.1), cplx(0, 0.7), cplx(-0.2, 0.4)};
    CHECK(log_det_lambda_z(tw, z, {cplx(0, 0)}) == doctest::Approx(log_det_lambda_z(o, z, {})).epsilon(1e-12));
}

TEST_CASE("Gram matrices are positive definite in the domain") {
    OrbitSpec o = orbit_from_json(load("weight2_metric.json")["orbit"]);
    oracle::Rng rng(31337);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> t;
        for (int j = 0; j < 2; ++j) t.push_back(std::polar(std::exp(rng.real(-8.0, -1.0)), rng.real(-kPi, kPi)));
        CMatrix g = top_gram(o, z_from_t(t), {});
        CHECK((g - g.adjoint()).norm() < 1e-10 * g.norm());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
        CHECK(es.eigenvalues().minCoeff() > 0);
        // n = 2: augmented and plain determinants agree
        CHECK(augmented_log_det(o, t, {}) == doctest::Approx(log_det_lambda(o, t, {})).epsilon(1e-10));
    }
    OrbitSpec g2 = orbit_from_json(load("genus2_metric.json")["orbit"]);
    for (const auto& t : std::vector<std::vector<cplx>>{{1e-3, 1e-3, 1e-3}, {0.5, 0.2, 0.1}})
        CHECK(augmented_log_det(g2, t, {}) == doctest::Approx(log_det_lambda(g2, t, {})).epsilon(1e-12));
}

TEST_CASE("leaving the domain raises NotPolarized") {
    OrbitSpec o = orbit_from_json(load("genus2_metric.json")["orbit"]);
    try {
        log_det_lambda_z(o, {cplx(0, -2.0), 0.0, 0.0}, {});
        FAIL("expected NotPolarized");
    } catch (const DomainError& e) {
        CHECK(e.label() == "NotPolarized");
        CHECK(e.kind() == ErrorKind::NumericDomain);
    }
    CHECK_THROWS_AS(z_from_t({0.0, 0.5, 0.5}), DomainError);
}

TEST_CASE("twist validation") {
    Json j = load("genus2_curvature.json")["orbit"];
    // lower-left block: does not commute with N1
    j["twist"]["generators"][0] = Json::array();
    for (int r = 0; r < 4; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 4; ++c) row.push_back(Json::array({(r == 2 && c == 0) ? 1.0 : 0.0, 0.0}));
        j["twist"]["generators"][0].push_back(row);
    }
    try {
        orbit_from_json(j);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Schema);
    }
}

TEST_CASE("mixed second derivative") {
    auto abs2 = [](cplx w) { return std::norm(w); };
    auto rew2 = [](cplx w) { return (w * w).real(); };
    auto log1p = [](cplx w) { return std::log(1.0 + std::norm(w)); };
    CHECK(mixed_second_derivative(abs2, cplx(0.3, -0.2), 1e-2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(mixed_second_derivative(rew2, cplx(0.3, -0.2), 1e-2)) < 1e-10);
    CHECK(mixed_second_derivative(log1p, 0.0, 1e-2) == doctest::Approx(1.0).epsilon(1e-8));
    // log(1 + |w|^2) at w0: 1 / (1 + |w0|^2)^2
    cplx w0(0.4, 0.7);
    double exact = 1.0 / std::pow(1.0 + std::norm(w0), 2);
    CHECK(mixed_second_derivative(log1p, w0, 1e-2) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("curvature form is semi-negative on log h (Omega >= 0)") {
    OrbitSpec o = orbit_from_json(load("genus2_curvature.json")["orbit"]);
    oracle::Rng rng(4711);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<cplx> z, dz;
        for (int j = 0; j < 3; ++j) {
            z.push_back(cplx(rng.real(-1, 1), rng.real(0.3, 2)));
            dz.push_back(cplx(rng.real(-1, 1), rng.real(-1, 1)));
        }
        cplx w(rng.real(-1, 1), rng.real(-0.2, 0.5)), dw(rng.real(-1, 1), rng.real(-1, 1));
        auto f = [&](cplx s) {
            std::vector<cplx> zs = z;
            for (int j = 0; j < 3; ++j) zs[j] += s * dz[j];
            return log_det_lambda_z(o, zs, {w + s * dw});
        };
        CHECK(mixed_second_derivative(f, 0.0, 1e-3) <= 1e-8);
    }
}

TEST_CASE("curvature limit along the genus-2 twisted orbit") {
    Json j = load("genus2_curvature.json");
    OrbitSpec o = orbit_from_json(j["orbit"]);
    CurvatureOptions opt;
    opt.I = {0};
    CurvatureReport rep = curvature_limit_check(o, opt);
    CHECK(rep.decreasing);
    CHECK(rep.final_error < 1e-2);
    // Im Z = [[a, c], [c, 1 + Im w]], a = 1 + log(1/|t|) / 2pi: d d-bar log det = -(1/4) a^2 / (a - c^2)^2
    const double c2 = 0.05 * 0.05;
    CHECK(rep.rows[0].boundary_value == doctest::Approx(-0.25).epsilon(1e-6));
    for (const auto& row : rep.rows) {
        double a = 1.0 + std::log(1.0 / row.abs_t) / (2 * kPi);
        double exact = -0.25 * a * a / ((a - c2) * (a - c2));
        CHECK(row.value == doctest::Approx(exact).epsilon(1e-6));
    }

    OrbitSpec flat = orbit_from_json(load("genus2_curvature_untwisted.json")["orbit"]);
    CurvatureReport z = curvature_limit_check(flat, opt);
    for (const auto& row : z.rows) {
        CHECK(std::abs(row.value) < 1e-9);
        CHECK(std::abs(row.boundary_value) < 1e-9);
    }
    CHECK(z.decreasing);
}

TEST_CASE("weight-3 product flag: augmented weights (2, 1)") {
    // V = V1 (x) V2 (x) V3, each V_k elliptic with period tau_k
    RationalMatrix q1 = RationalMatrix::from_ints({{0, -1}, {1, 0}});
    RationalMatrix id2 = RationalMatrix::identity(2);
    NilpotentCone cone;
    cone.dim = 8;
    cone.weight = 3;
    cone.symmetry = FormSymmetry::Alternating;
    cone.form = rkron(rkron(q1, q1), q1);
    cone.generators = {rkron(rkron(RationalMatrix::from_ints({{0, 1}, {0, 0}}), id2), id2)};
    cone.validate();

    const cplx tau[3] = {cplx(0.2, 1.3), cplx(-0.4, 0.8), cplx(0.1, 2.1)};
    // columns ordered by Hodge type p = 3, 2, 1, 0
    std::vector<std::array<int, 3>> types;
    for (int p = 3; p >= 0; --p)
        for (int m = 7; m >= 0; --m) {
            std::array<int, 3> bits{m >> 2 & 1, m >> 1 & 1, m & 1};
            if (bits[0] + bits[1] + bits[2] == p) types.push_back(bits);
        }
    CMatrix frame(8, 8);
    for (std::size_t c = 0; c < 8; ++c) {
        CMatrix v = CMatrix::Ones(1, 1);
        for (int k = 0; k < 3; ++k) {
            CMatrix e(2, 1);
            cplx t = types[c][static_cast<std::size_t>(k)] ? tau[k] : std::conj(tau[k]);
            e << t, 1.0;
            v = kron(v, e);
        }
        frame.col(static_cast<Eigen::Index>(c)) = v;
    }
    // flag-preserving unipotent change of frame
    oracle::Rng rng(33);
    CMatrix u = CMatrix::Identity(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) u(i, j) = cplx(rng.real(-1, 1), rng.real(-1, 1));
    FlagPoint f;
    f.n = 3;
    f.dims = {8, 7, 4, 1};
    f.basis = frame * u;
    OrbitSpec o = make_orbit(cone, f, Twist{});
    o.validate();

    for (cplx z : {cplx(0, 0), cplx(0.7, 0.5), cplx(-1.3, 2.0)}) {
        double h = 8.0 * (tau[0] + z).imag() * tau[1].imag() * tau[2].imag();
        // the transported frame vector (conj(tau1) + z, 1) (x) w2 (x) w3 has
        // coefficient beta on the (2,1) line conj(w1') (x) w2 (x) w3
        double beta = tau[0].imag() / (tau[0] + z).imag();
        double top = std::log(h), gr2 = 3.0 * std::log(h) + 2.0 * std::log(beta);
        CHECK(log_det_lambda_z(o, {z}, {}) == doctest::Approx(top).epsilon(1e-10));
        CHECK(augmented_log_det_z(o, {z}, {}) == doctest::Approx(2.0 * top + 1.0 * gr2).epsilon(1e-10));
    }
}

TEST_CASE("expansion fits on the weight-2 orbit") {
    OrbitSpec o = orbit_from_json(load("weight2_expansion.json")["orbit"]);
    struct Case {
        std::vector<double> alpha;
        int section;
        int m;
    };
    for (const Case& c : {Case{{1, 1}, 0, 2}, Case{{1, 0}, 0, 1}, Case{{1, 1}, 1, 0}}) {
        Ray ray;
        ray.alpha = c.alpha;
        ray.c = {cplx(1, 0), cplx(1, 0)};
        ray.L = default_L_grid();
        ExpansionFit fit = expansion_fit(o, ray, {}, c.section);
        CHECK(fit.m == c.m);
        CHECK(fit.A > 0);
        CHECK(fit.residual < 1e-2);
        CHECK(fit.candidate_residuals.size() == 5);
        // independent recheck: h / L^m levels off along the ray
        std::size_t last = fit.L.size() - 1;
        double r1 = fit.h[last] / std::pow(fit.L[last], c.m);
        double r0 = fit.h[last - 1] / std::pow(fit.L[last - 1], c.m);
        CHECK(std::abs(r1 / r0 - 1.0) < 2e-2);
    }
    Ray bad;
    bad.alpha = {1, 1};
    bad.c = {cplx(1, 0), cplx(1, 0)};
    bad.L = default_L_grid();
    try {
        expansion_fit(o, bad, {}, 0, 1e-12);
        FAIL("expected PoorFit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoorFit);
    }
}

TEST_CASE("residue integral against closed forms") {
    for (double at : {1e-2, 1e-4, 1e-6}) {
        cplx t = std::polar(at, 0.7);
        double L = std::log(1.0 / at);
        CHECK(residue_integral({{{0, 0}, 1.0}}, t) == doctest::Approx(4 * kPi * L).epsilon(1e-10));
        CHECK(residue_integral({{{0, 0}, 2.0}}, t) == doctest::Approx(16 * kPi * L).epsilon(1e-10));
        CHECK(residue_integral({{{1, 0}, 1.0}}, t) == doctest::Approx(2 * kPi * (1 - at * at)).epsilon(1e-8));
        // g = x + y = x + t/x on the curve; cross terms average out in theta
        CHECK(residue_integral({{{1, 0}, 1.0}, {{0, 1}, 1.0}}, t) == doctest::Approx(4 * kPi * (1 - at * at)).epsilon(1e-8));
    }
    auto s1 = residue_sweep({{{0, 0}, 1.0}}, {1e-2, 1e-3, 1e-4, 1e-5});
    CHECK(s1.normalized_slope == doctest::Approx(1.0).epsilon(2e-2));
    auto s2 = residue_sweep({{{0, 0}, 2.0}}, {1e-2, 1e-3, 1e-4, 1e-5});
    CHECK(s2.slope == doctest::Approx(4 * s1.slope).epsilon(1e-10));
    auto sx = residue_sweep({{{1, 0}, 1.0}}, {1e-2, 1e-3, 1e-4, 1e-5});
    CHECK(std::abs(sx.normalized_slope) < 1e-3);
    for (double v : sx.value) CHECK(v < 2 * kPi + 1e-9);
}
