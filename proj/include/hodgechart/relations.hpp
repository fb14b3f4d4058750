#pragma once

#include "hodgechart/filtrations.hpp"
#include "hodgechart/linalg.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hodgechart {

Subspace relation_space(const NilpotentCone& cone, const IndexSet& I);

struct FarkasResult {
    bool feasible = false;  // true: x >= 0 with Ax = b; false: y with A^T y >= 0, y.b < 0
    RVec x;
    RVec y;
};
FarkasResult farkas_alternative(const RationalMatrix& a, const RVec& b);
// Exact feasibility of {x >= 0, Ax = b}, with the witness.
std::optional<RVec> nonnegative_solution(const RationalMatrix& a, const RVec& b);

struct FarkasSplit {
    IndexSet K;
    RVec v;        // in S, >= 0, support K
    RVec v_tilde;  // in S^perp, >= 0, support complement of K
};
FarkasSplit farkas_split(const Subspace& s);

IntMatrix positive_basis(const Subspace& s, const IndexSet& K);

struct RelationData {
    IndexSet I;
    Subspace S;
    IndexSet K;
    IntMatrix C;
    RVec v, v_tilde;
};
RelationData relation_data(const NilpotentCone& cone, const IndexSet& I);

struct IndexMap {
    std::vector<RelationData> table;            // all I, ordered by (|I|, lex)
    std::vector<IndexSet> image;                // the set of K_I, same ordering
    std::map<IndexSet, std::vector<IndexSet>> strata;  // K -> {I : K_I = K}
};

constexpr std::size_t kDefaultMaxGenerators = 12;
std::vector<IndexSet> all_index_sets(std::size_t k);  // ordered by (|I|, lex)
IndexMap k_index_map(const NilpotentCone& cone, unsigned jobs = 1,
                     std::size_t max_generators = kDefaultMaxGenerators);

}  // namespace hodgechart
