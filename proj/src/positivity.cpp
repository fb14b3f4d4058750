#include "hodgechart/positivity.hpp"

#include "hodgechart/errors.hpp"

#include <cmath>
#include <random>

namespace hodgechart {

template <class S>
void CurvatureTripleT<S>::validate() const {
    if (dim_t == 0 || dim_w == 0 || dim_u == 0) fail(ErrorKind::Schema, "triple: dimensions must be positive");
    if (A.size() != dim_t) fail(ErrorKind::Schema, "triple: A must have dim_t slices");
    for (const auto& s : A) {
        if (s.size() != dim_w) fail(ErrorKind::Schema, "triple: each slice must have dim_w rows");
        for (const auto& r : s)
            if (r.size() != dim_u) fail(ErrorKind::Schema, "triple: each row must have dim_u entries");
    }
    if (metric.size() != dim_u) fail(ErrorKind::Schema, "triple: metric must be dim_u x dim_u");
    for (std::size_t i = 0; i < dim_u; ++i) {
        if (metric[i].size() != dim_u) fail(ErrorKind::Schema, "triple: metric must be dim_u x dim_u");
        for (std::size_t j = 0; j < i; ++j)
            if (metric[i][j] != metric[j][i]) fail(ErrorKind::Schema, "triple: metric must be symmetric");
    }
    // positive definiteness via leading principal minors (Gaussian elimination without pivoting)
    std::vector<std::vector<S>> m = metric;
    for (std::size_t k = 0; k < dim_u; ++k) {
        if (!(m[k][k] > 0)) fail(ErrorKind::Schema, "triple: metric must be positive definite");
        for (std::size_t i = k + 1; i < dim_u; ++i) {
            S f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < dim_u; ++j) m[i][j] -= f * m[k][j];
        }
    }
}

template <class S>
std::vector<std::vector<S>> CurvatureTripleT<S>::slice(const std::vector<S>& xi) const {
    std::vector<std::vector<S>> out(dim_u, std::vector<S>(dim_w, S(0)));
    for (std::size_t al = 0; al < dim_t; ++al) {
        if (xi[al] == 0) continue;
        for (std::size_t a = 0; a < dim_w; ++a)
            for (std::size_t u = 0; u < dim_u; ++u) out[u][a] += xi[al] * A[al][a][u];
    }
    return out;
}

template struct CurvatureTripleT<Rational>;
template struct CurvatureTripleT<double>;

namespace {

template <class S>
IdentityCheck<S> identity_impl(const CurvatureTripleT<S>& t, const std::vector<S>& e, const std::vector<S>& xi) {
    t.validate();
    if (e.size() != t.dim_w || xi.size() != t.dim_t) fail(ErrorKind::Schema, "identity check: vector sizes");
    IdentityCheck<S> out;
    // route 1: H[a][b][alpha][beta] = sum g_uv A[alpha][b][u] A[beta][a][v], contracted with e, e, xi, xi
    out.lhs = S(0);
    for (std::size_t a = 0; a < t.dim_w; ++a)
        for (std::size_t b = 0; b < t.dim_w; ++b)
            for (std::size_t al = 0; al < t.dim_t; ++al)
                for (std::size_t be = 0; be < t.dim_t; ++be) {
                    S h(0);
                    for (std::size_t u = 0; u < t.dim_u; ++u)
                        for (std::size_t v = 0; v < t.dim_u; ++v)
                            h += t.metric[u][v] * t.A[al][b][u] * t.A[be][a][v];
                    out.lhs += h * e[a] * e[b] * xi[al] * xi[be];
                }
    // route 2: the vector A(xi) e, then its squared norm
    auto m = t.slice(xi);
    std::vector<S> v(t.dim_u, S(0));
    for (std::size_t u = 0; u < t.dim_u; ++u)
        for (std::size_t a = 0; a < t.dim_w; ++a) v[u] += m[u][a] * e[a];
    out.rhs = S(0);
    for (std::size_t u = 0; u < t.dim_u; ++u)
        for (std::size_t w = 0; w < t.dim_u; ++w) out.rhs += t.metric[u][w] * v[u] * v[w];
    return out;
}

}  // namespace

IdentityCheck<Rational> curvature_identity_check(const CurvatureTriple& t, const RVec& e, const RVec& xi) {
    auto out = identity_impl(t, e, xi);
    out.match = out.lhs == out.rhs;
    return out;
}

IdentityCheck<double> curvature_identity_check(const FloatCurvatureTriple& t, const std::vector<double>& e,
                                               const std::vector<double>& xi, double tol) {
    auto out = identity_impl(t, e, xi);
    out.match = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, std::abs(out.rhs));
    return out;
}

NumericalDimension numerical_dimension(const CurvatureTriple& t, const std::vector<RVec>& samples) {
    t.validate();
    NumericalDimension out;
    for (const auto& e : samples) {
        if (e.size() != t.dim_w) fail(ErrorKind::Schema, "numerical dimension: sample has wrong size");
        RationalMatrix m(t.dim_u, t.dim_t);
        for (std::size_t al = 0; al < t.dim_t; ++al)
            for (std::size_t a = 0; a < t.dim_w; ++a) {
                if (e[a] == 0) continue;
                for (std::size_t u = 0; u < t.dim_u; ++u) m(u, al) += t.A[al][a][u] * e[a];
            }
        std::size_t r = rank(m);
        out.ranks.push_back(r);
        out.rho = std::max(out.rho, r);
    }
    out.n = static_cast<long>(t.dim_w) - 1 + static_cast<long>(out.rho);
    return out;
}

std::vector<RVec> generic_samples(std::size_t dim, std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    std::vector<RVec> out;
    for (std::size_t s = 0; s < count; ++s) {
        RVec v(dim);
        for (auto& x : v) x = dist(rng);
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sym2_basis(std::size_t dim) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) out.emplace_back(i, j);
    return out;
}

SigmaResult sigma_weight1(const RationalMatrix& q) {
    const std::size_t d = q.rows();
    if (q.cols() != d || d == 0) fail(ErrorKind::Schema, "sigma1: Q must be square");
    if (q != q.transpose()) fail(ErrorKind::Schema, "sigma1: Q must be symmetric");
    auto basis = sym2_basis(d);
    SigmaResult out;
    out.matrix = RationalMatrix(d * d, basis.size());
    const Rational half(1, 2);
    for (std::size_t c = 0; c < basis.size(); ++c) {
        auto [i, j] = basis[c];
        for (std::size_t k = 0; k < d; ++k) {
            out.matrix(k * d + j, c) += half * q(i, k);
            out.matrix(k * d + i, c) += half * q(j, k);
        }
    }
    out.rank = rank(out.matrix);
    out.injective = out.rank == basis.size();
    return out;
}

CurvatureTriple sigma1_triple(std::size_t dim_w) {
    auto basis = sym2_basis(dim_w);
    CurvatureTriple t;
    t.dim_t = basis.size();
    t.dim_w = basis.size();
    t.dim_u = dim_w * dim_w;
    t.metric.assign(t.dim_u, std::vector<Rational>(t.dim_u, Rational(0)));
    for (std::size_t u = 0; u < t.dim_u; ++u) t.metric[u][u] = 1;
    for (std::size_t al = 0; al < basis.size(); ++al) {
        RationalMatrix q(dim_w, dim_w);
        q(basis[al].first, basis[al].second) = 1;
        q(basis[al].second, basis[al].first) = 1;
        auto s = sigma_weight1(q);
        std::vector<std::vector<Rational>> sl(t.dim_w, std::vector<Rational>(t.dim_u));
        for (std::size_t a = 0; a < t.dim_w; ++a)
            for (std::size_t u = 0; u < t.dim_u; ++u) sl[a][u] = s.matrix(u, a);
        t.A.push_back(sl);
    }
    return t;
}

Sigma2Result sigma_weight2(const CurvatureTriple& t, const RationalMatrix& q) {
    t.validate();
    if (q.rows() != t.dim_w || q.cols() != t.dim_w) fail(ErrorKind::Schema, "sigma2: Q must be dim_w x dim_w");
    if (q != q.transpose()) fail(ErrorKind::Schema, "sigma2: Q must be symmetric");
    Sigma2Result out;
    out.matrix = RationalMatrix(t.dim_w * t.dim_u, t.dim_t);
    RationalMatrix amat(t.dim_w * t.dim_u, t.dim_t);
    for (std::size_t al = 0; al < t.dim_t; ++al)
        for (std::size_t a = 0; a < t.dim_w; ++a)
            for (std::size_t u = 0; u < t.dim_u; ++u) {
                amat(a * t.dim_u + u, al) = t.A[al][a][u];
                Rational s(0);
                for (std::size_t b = 0; b < t.dim_w; ++b) s += q(a, b) * t.A[al][b][u];
                out.matrix(a * t.dim_u + u, al) = s;
            }
    out.rank = rank(out.matrix);
    out.injective = out.rank == t.dim_t;
    out.a_injective = rank(amat) == t.dim_t;
    // integrability: A(xi)^t g A(eta) symmetric in (xi, eta)
    out.integrable = true;
    for (std::size_t al = 0; al < t.dim_t && out.integrable; ++al)
        for (std::size_t be = al + 1; be < t.dim_t && out.integrable; ++be)
            for (std::size_t a = 0; a < t.dim_w && out.integrable; ++a)
                for (std::size_t b = 0; b < t.dim_w && out.integrable; ++b) {
                    Rational x(0), y(0);
                    for (std::size_t u = 0; u < t.dim_u; ++u)
                        for (std::size_t v = 0; v < t.dim_u; ++v) {
                            x += t.A[al][a][u] * t.metric[u][v] * t.A[be][b][v];
                            y += t.A[be][a][u] * t.metric[u][v] * t.A[al][b][v];
                        }
                    if (x != y) out.integrable = false;
                }
    return out;
}

}  // namespace hodgechart
