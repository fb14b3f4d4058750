#pragma once

#include "hodgechart/filtrations.hpp"
#include "oracles.hpp"

#include <string>

namespace fixtures {

using namespace hodgechart;

inline RationalMatrix block_n(long a, long b, long c, long d) {
    return RationalMatrix::from_ints({{0, 0, a, b}, {0, 0, c, d}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}

// N_i = [[0, S_i], [0, 0]] on (e1, e2, f1, f2)
inline NilpotentCone genus2(int form_sign = 1) {
    NilpotentCone c;
    c.dim = 4;
    c.weight = 1;
    c.symmetry = FormSymmetry::Alternating;
    long s = form_sign;
    c.form = RationalMatrix::from_ints({{0, 0, s, 0}, {0, 0, 0, s}, {-s, 0, 0, 0}, {0, -s, 0, 0}});
    c.generators = {block_n(1, 0, 0, 0), block_n(0, 0, 0, 1), block_n(1, 1, 1, 1)};
    c.validate();
    return c;
}

inline NilpotentCone single(long scale2 = 0) {
    NilpotentCone c;
    c.dim = 2;
    c.weight = 1;
    c.symmetry = FormSymmetry::Alternating;
    c.form = RationalMatrix::from_ints({{0, 1}, {-1, 0}});
    c.generators = {RationalMatrix::from_ints({{0, 1}, {0, 0}})};
    if (scale2) c.generators.push_back(RationalMatrix::from_ints({{0, scale2}, {0, 0}}));
    c.validate();
    return c;
}

inline std::string fixture_path(const std::string& name) { return std::string(HC_FIXTURE_DIR) + "/" + name; }

// Random nilpotent of dimension d: a Jordan matrix conjugated by a random
// invertible integer matrix. Also returns the Jordan-type weights of the
// conjugated basis so that the weight filtration can be rebuilt independently.
struct RandomNilpotent {
    RationalMatrix n;
    std::vector<RVec> basis;   // P e_i
    std::vector<int> weight;   // weight (relative to the center) of P e_i
};

inline RandomNilpotent random_nilpotent(oracle::Rng& rng, std::size_t d) {
    // random partition of d into Jordan blocks
    std::vector<std::size_t> blocks;
    std::size_t left = d;
    while (left > 0) {
        std::size_t s = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(left)));
        blocks.push_back(s);
        left -= s;
    }
    RationalMatrix j(d, d);
    std::vector<int> w(d);
    std::size_t pos = 0;
    for (std::size_t s : blocks) {
        // basis v, Nv, ..., N^{s-1} v at positions pos..pos+s-1; J maps column i to column i+1
        for (std::size_t i = 0; i + 1 < s; ++i) j(pos + i + 1, pos + i) = 1;
        for (std::size_t i = 0; i < s; ++i) w[pos + i] = static_cast<int>(s - 1) - 2 * static_cast<int>(i);
        pos += s;
    }
    // P = product of elementary matrices, so it is invertible
    RationalMatrix p = RationalMatrix::identity(d);
    for (int step = 0; step < static_cast<int>(3 * d); ++step) {
        std::size_t a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(d) - 1));
        std::size_t b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(d) - 1));
        if (a == b) continue;
        long f = rng.uniform(-2, 2);
        for (std::size_t c = 0; c < d; ++c) p(a, c) += Rational(f) * p(b, c);
    }
    // P^{-1} via solving, column by column
    RationalMatrix pinv(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        oracle::Mat a(d, oracle::Vec(d));
        oracle::Vec e(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k) a[r][k] = p(r, k);
        e[c] = 1;
        auto x = oracle::solve_unique(a, e);
        for (std::size_t r = 0; r < d; ++r) pinv(r, c) = (*x)[r];
    }
    RandomNilpotent out;
    out.n = p * j * pinv;
    for (std::size_t c = 0; c < d; ++c) out.basis.push_back(p.col(c));
    out.weight = w;
    return out;
}

}  // namespace fixtures
