#pragma once

// Checks shared by the unit suites and the acceptance binary. None of them use doctest.

#include "hodgechart/filtrations.hpp"
#include "hodgechart/positivity.hpp"
#include "hodgechart/relations.hpp"
#include "common.hpp"

namespace suites {

using namespace hodgechart;

// Steps W_lo..W_hi, W_{lo-1} = 0, W_{hi+1..} = full
struct Steps {
    int lo;
    std::vector<Subspace> s;
    std::size_t d;
    Subspace at(int l) const {
        if (l < lo) return Subspace(d);
        if (l >= lo + static_cast<int>(s.size())) return Subspace::full(d);
        return s[static_cast<std::size_t>(l - lo)];
    }
};

// Both defining properties, checked directly from subspace dimensions.
inline bool defining_properties(const RationalMatrix& n, int c, const Steps& w) {
    int lo = w.lo - 2, hi = w.lo + static_cast<int>(w.s.size()) + 2;
    for (int l = lo; l <= hi; ++l) {
        if (!w.at(l - 1).is_zero() && !w.at(l).contains(w.at(l - 1))) return false;
        if (!w.at(l - 2).contains(apply(n, w.at(l)))) return false;
    }
    for (int l = 1; c + l <= hi; ++l) {
        RationalMatrix nl = n.power(static_cast<unsigned>(l));
        std::size_t top = w.at(c + l).dim() - w.at(c + l - 1).dim();
        std::size_t bot = w.at(c - l).dim() - w.at(c - l - 1).dim();
        if (top != bot) return false;
        if (!w.at(c - l).contains(apply(nl, w.at(c + l)))) return false;
        if (apply(nl, w.at(c + l)) + w.at(c - l - 1) != w.at(c - l)) return false;
    }
    return true;
}

inline Steps to_steps(const WeightFiltration& w) {
    Steps st{w.lowest(), {}, w.ambient_dim()};
    for (int l = w.lowest(); l <= w.highest(); ++l) st.s.push_back(w.step(l));
    return st;
}

inline oracle::Mat to_mat(const std::vector<RVec>& rows) { return oracle::Mat(rows.begin(), rows.end()); }

inline std::vector<bool> mask_of(const IndexSet& K, std::size_t k) {
    std::vector<bool> m(k, false);
    for (int i : K) m[static_cast<std::size_t>(i)] = true;
    return m;
}

inline Subspace random_subspace(oracle::Rng& rng, std::size_t k) {
    std::size_t gens = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(k)));
    std::vector<RVec> vs;
    for (std::size_t g = 0; g < gens; ++g) {
        RVec v(k);
        // sparse-ish entries make nontrivial supports likely
        for (auto& x : v) x = rng.uniform(0, 2) == 0 ? Rational(0) : oracle::qq(rng.uniform(-3, 3), rng.uniform(1, 2));
        vs.push_back(v);
    }
    return Subspace::span(vs, k);
}

inline CurvatureTriple random_triple(oracle::Rng& rng, std::size_t t, std::size_t w, std::size_t u) {
    CurvatureTriple tr;
    tr.dim_t = t;
    tr.dim_w = w;
    tr.dim_u = u;
    tr.A.assign(t, std::vector<RVec>(w, RVec(u)));
    for (auto& s : tr.A)
        for (auto& r : s)
            for (auto& x : r) x = oracle::qq(rng.uniform(-4, 4), rng.uniform(1, 3));
    // metric = L L^T + I with random integer L
    std::vector<RVec> l(u, RVec(u));
    for (auto& r : l)
        for (auto& x : r) x = rng.uniform(-2, 2);
    tr.metric.assign(u, RVec(u));
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = 0; j < u; ++j) {
            Rational s = i == j ? 1 : 0;
            for (std::size_t k = 0; k < u; ++k) s += l[i][k] * l[j][k];
            tr.metric[i][j] = s;
        }
    return tr;
}

inline RVec random_vec(oracle::Rng& rng, std::size_t n) {
    RVec v(n);
    for (auto& x : v) x = oracle::qq(rng.uniform(-5, 5), rng.uniform(1, 4));
    return v;
}

// sum over (alpha, beta, a, b, u, v) of xi xi e e A g A, accumulated in a different order
inline Rational oracle_theta(const CurvatureTriple& t, const RVec& e, const RVec& xi) {
    std::vector<RVec> m(t.dim_t, RVec(t.dim_u));  // m[alpha][u] = sum_a e_a A[alpha][a][u]
    for (std::size_t al = 0; al < t.dim_t; ++al)
        for (std::size_t a = 0; a < t.dim_w; ++a)
            for (std::size_t u = 0; u < t.dim_u; ++u) m[al][u] += e[a] * t.A[al][a][u];
    Rational s = 0;
    for (std::size_t al = 0; al < t.dim_t; ++al)
        for (std::size_t be = 0; be < t.dim_t; ++be) {
            Rational g = 0;
            for (std::size_t u = 0; u < t.dim_u; ++u)
                for (std::size_t v = 0; v < t.dim_u; ++v) g += m[al][u] * t.metric[u][v] * m[be][v];
            s += xi[al] * xi[be] * g;
        }
    return s;
}

inline RationalMatrix random_symmetric(oracle::Rng& rng, std::size_t d) {
    RationalMatrix q(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) q(i, j) = q(j, i) = rng.uniform(-3, 3);
    return q;
}

inline Rational det(RationalMatrix m) {
    const std::size_t n = m.rows();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}


}  // namespace suites
