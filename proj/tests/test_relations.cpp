#include "hodgechart/errors.hpp"
#include "hodgechart/relations.hpp"
#include "hodgechart/siegel.hpp"
#include "common.hpp"
#include "suites.hpp"

#include <doctest.h>

#include <map>

using namespace hodgechart;
using namespace suites;

namespace {

RVec rv(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

NilpotentCone siegel_cone(const std::vector<SiegelGenerator>& gens) {
    ConeSpec spec{gens};
    spec.validate();
    NilpotentCone c;
    c.dim = 4;
    c.weight = 1;
    c.symmetry = FormSymmetry::Alternating;
    c.form = build_setup().q;
    c.generators = spec.nilpotents();
    c.validate();
    return c;
}

RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

NilpotentCone genus2_plus_single() {
    auto a = fixtures::genus2();
    auto b = fixtures::single();
    NilpotentCone c;
    c.dim = 6;
    c.weight = 1;
    c.symmetry = FormSymmetry::Alternating;
    c.form = direct_sum(a.form, b.form);
    for (const auto& n : a.generators) c.generators.push_back(direct_sum(n, RationalMatrix(2, 2)));
    c.generators.push_back(direct_sum(RationalMatrix(4, 4), b.generators[0]));
    c.validate();
    return c;
}

std::vector<NilpotentCone> tested_cones() {
    return {fixtures::genus2(),
            fixtures::single(),
            fixtures::single(2),
            genus2_plus_single(),
            siegel_cone({{1, 0, 0}, {0, 1, 0}}),
            siegel_cone({{1, 4, 2}, {4, 1, -2}}),
            siegel_cone({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}})};
}

bool subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("relation spaces of the genus-2 cone") {
    auto c = fixtures::genus2();
    CHECK(relation_space(c, {}).is_zero());
    CHECK(relation_space(c, {0}) == Subspace::span({rv({1, 0, 0}), rv({0, 1, -1})}, 3));
    CHECK(relation_space(c, {0, 1}).is_full());
    CHECK(relation_space(c, {0, 1, 2}).is_full());
}

TEST_CASE("farkas alternative examples") {
    auto r = farkas_alternative(RationalMatrix::identity(2), rv({1, 1}));
    CHECK(r.feasible);
    CHECK(r.x == rv({1, 1}));
    auto s = farkas_alternative(RationalMatrix::from_ints({{1, -1}}), rv({-1}));
    CHECK(s.feasible);
    auto t = farkas_alternative(RationalMatrix::from_ints({{1, 1}}), rv({-1}));
    CHECK_FALSE(t.feasible);
    CHECK(t.y[0] * Rational(-1) < 0);
}

TEST_CASE("farkas alternative against exhaustive oracles") {
    oracle::Rng rng(1618);
    int infeasible = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 4));
        std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 5));
        RationalMatrix a(rows, cols);
        oracle::Mat oa(rows, oracle::Vec(cols));
        RVec b(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) oa[i][j] = a(i, j) = rng.uniform(-3, 3);
            b[i] = rng.uniform(-3, 3);
        }
        auto res = farkas_alternative(a, b);
        bool brute = oracle::nonneg_feasible(oa, b);
        // Fourier-Motzkin on {x >= 0, Ax >= b, -Ax >= -b}
        std::vector<std::pair<oracle::Vec, oracle::Q>> sys;
        for (std::size_t j = 0; j < cols; ++j) {
            oracle::Vec g(cols);
            g[j] = 1;
            sys.emplace_back(g, 0);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            oracle::Vec neg(cols);
            for (std::size_t j = 0; j < cols; ++j) neg[j] = -oa[i][j];
            sys.emplace_back(oa[i], b[i]);
            sys.emplace_back(neg, -b[i]);
        }
        bool fm = oracle::fm_feasible(sys, cols);
        CHECK(brute == fm);
        CHECK(res.feasible == brute);
        if (res.feasible) {
            CHECK(a.apply(res.x) == b);
            for (const auto& x : res.x) CHECK(x >= 0);
        } else {
            ++infeasible;
            RVec aty = a.transpose().apply(res.y);
            for (const auto& x : aty) CHECK(x >= 0);
            CHECK(dot(res.y, b) < 0);
        }
    }
    CHECK(infeasible > 10);
}

TEST_CASE("farkas split examples") {
    auto z = farkas_split(Subspace(3));
    CHECK(z.K.empty());
    for (const auto& x : z.v_tilde) CHECK(x > 0);
    auto f = farkas_split(Subspace::full(3));
    CHECK(f.K == IndexSet{0, 1, 2});
    auto d = farkas_split(Subspace::span({rv({1, -1})}, 2));
    CHECK(d.K.empty());
    CHECK(d.v_tilde[0] == d.v_tilde[1]);
    CHECK(d.v_tilde[0] > 0);
}

TEST_CASE("farkas split: the support pattern is unique and certified") {
    oracle::Rng rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t k = static_cast<std::size_t>(rng.uniform(1, 6));
        Subspace s = random_subspace(rng, k);
        oracle::Mat sb = to_mat(s.vectors());
        oracle::Mat perp = oracle::complement(sb, k);

        auto split = farkas_split(s);
        // certificates
        CHECK(s.contains(split.v));
        CHECK(orthogonal_complement(s).contains(split.v_tilde));
        CHECK(dot(split.v, split.v_tilde) == 0);
        auto m = mask_of(split.K, k);
        for (std::size_t i = 0; i < k; ++i) {
            CHECK((split.v[i] > 0) == m[i]);
            CHECK(split.v[i] >= 0);
            CHECK((split.v_tilde[i] > 0) == !m[i]);
            CHECK(split.v_tilde[i] >= 0);
        }
        // exhaustive: exactly one support admits both vectors
        int count = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            std::vector<bool> sup(k), co(k);
            for (std::size_t i = 0; i < k; ++i) {
                sup[i] = mask >> i & 1;
                co[i] = !sup[i];
            }
            if (oracle::exact_support_vector(sb, sup) && oracle::exact_support_vector(perp, co)) {
                ++count;
                CHECK(sup == m);
            }
        }
        CHECK(count == 1);
    }
}

TEST_CASE("positive bases") {
    // S^perp = span{(0,1,1)}, K = {1}
    Subspace s = Subspace::span({rv({1, 0, 0}), rv({0, 1, -1})}, 3);
    IntMatrix c = positive_basis(s, {0});
    REQUIRE(c.rows() == 1);
    CHECK(c.row(0) == ZVec{0, 1, 1});
    CHECK(positive_basis(Subspace::full(3), {0, 1, 2}).rows() == 0);

    IntMatrix z = positive_basis(Subspace(3), {});
    CHECK(z.rows() == 3);
    CHECK(rank(z.to_rational()) == 3);
    for (const auto& r : z.row_list())
        for (const auto& x : r) CHECK(x > 0);

    try {
        positive_basis(s, {});
        FAIL("expected InvalidSplit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidSplit);
    }

    // Rows zero on K exist only when Q^K lies in S, which holds for relation
    // spaces but not for arbitrary S; the other case must be refused.
    oracle::Rng rng(777);
    int valid = 0, refused = 0;
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t k = static_cast<std::size_t>(rng.uniform(1, 6));
        Subspace r = random_subspace(rng, k);
        for (std::size_t i = 0; i < k; ++i)
            if (rng.uniform(0, 3) == 0) {
                RVec e(k);
                e[i] = 1;
                r = r + Subspace::span({e}, k);
            }
        auto split = farkas_split(r);
        Subspace perp = orthogonal_complement(r);
        bool supported = true;
        for (const auto& v : perp.vectors())
            for (int i : split.K)
                if (v[static_cast<std::size_t>(i)] != 0) supported = false;
        if (!supported) {
            ++refused;
            CHECK_THROWS_AS(positive_basis(r, split.K), Error);
            continue;
        }
        ++valid;
        IntMatrix b = positive_basis(r, split.K);
        CHECK(b.rows() == perp.dim());
        std::vector<RVec> rows;
        for (const auto& row : b.row_list()) {
            RVec v(row.begin(), row.end());
            rows.push_back(v);
            for (std::size_t i = 0; i < k; ++i) {
                bool inK = std::find(split.K.begin(), split.K.end(), static_cast<int>(i)) != split.K.end();
                if (inK) CHECK(row[i] == 0);
                else CHECK(row[i] > 0);
            }
        }
        CHECK(Subspace::span(rows, k) == perp);
    }
    CHECK(valid > 30);
    CHECK(refused > 0);
}

TEST_CASE("index map of the genus-2 cone") {
    auto c = fixtures::genus2();
    IndexMap m = k_index_map(c);
    std::map<IndexSet, IndexSet> K;
    for (const auto& d : m.table) K[d.I] = d.K;
    CHECK(K[{}] == IndexSet{});
    for (int i = 0; i < 3; ++i) CHECK(K[{i}] == IndexSet{i});
    CHECK(K[{0, 1}] == IndexSet{0, 1, 2});
    CHECK(K[{0, 2}] == IndexSet{0, 1, 2});
    CHECK(K[{1, 2}] == IndexSet{0, 1, 2});
    CHECK(K[{0, 1, 2}] == IndexSet{0, 1, 2});
    CHECK(m.image.size() == 5);
    CHECK(m.strata[IndexSet{0, 1, 2}].size() == 4);
    for (const auto& d : m.table) {
        if (d.I == IndexSet{0}) {
            REQUIRE(d.C.rows() == 1);
            CHECK(d.C.row(0) == ZVec{0, 1, 1});
        }
    }
}

TEST_CASE("index map of small cones") {
    IndexMap one = k_index_map(fixtures::single());
    REQUIRE(one.table.size() == 2);
    CHECK(one.table[0].K.empty());
    CHECK(one.table[1].K == IndexSet{0});

    IndexMap two = k_index_map(fixtures::single(2));
    for (const auto& d : two.table)
        if (d.I == IndexSet{0}) {
            CHECK(d.K == IndexSet{0, 1});
            CHECK(d.S.contains(rv({2, -1})));
        }
}

TEST_CASE("too many generators") {
    NilpotentCone c = fixtures::single();
    for (int i = 0; i < 12; ++i) c.generators.push_back(c.generators[0]);
    try {
        k_index_map(c);
        FAIL("expected ConeTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConeTooLarge);
    }
}

TEST_CASE("index map structure on tested cones") {
    for (const auto& c : tested_cones()) {
        IndexMap m = k_index_map(c, 1);
        IndexMap par = k_index_map(c, 4);
        REQUIRE(par.table.size() == m.table.size());
        std::map<IndexSet, const RelationData*> by;
        for (std::size_t i = 0; i < m.table.size(); ++i) {
            CHECK(par.table[i].K == m.table[i].K);
            CHECK(par.table[i].C == m.table[i].C);
            by[m.table[i].I] = &m.table[i];
        }
        for (const auto& d : m.table) {
            CHECK(subset(d.I, d.K));
            const RelationData& kk = *by.at(d.K);
            CHECK(kk.K == d.K);
            CHECK(kk.S == d.S);
            CHECK(d.S == relation_space(c, d.I));
            CHECK(dot(d.v, d.v_tilde) == 0);
            for (const auto& e : m.table) {
                if (!subset(d.I, e.I)) continue;
                CHECK(e.S.contains(d.S));
                if (subset(e.I, d.K)) CHECK(e.S == d.S);
            }
        }
    }
}
