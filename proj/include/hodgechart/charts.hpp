#pragma once

#include "hodgechart/relations.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace hodgechart {

struct MonomialMap {
    IndexSet K;
    std::vector<IndexSet> strata;  // index sets I with K_I = K
    IntMatrix exponents;           // one row per monomial t^c
};

struct MonomialAtlas {
    std::size_t k = 0;
    std::vector<MonomialMap> charts;
    IntMatrix assembled() const;
    std::size_t monomial_count() const;
};

MonomialAtlas atlas_from_index_map(const IndexMap& map, std::size_t k);
MonomialAtlas build_atlas(const NilpotentCone& cone, unsigned jobs = 1);

// Rows u of the HNF basis of {u in Z^m : sum_j u_j c_j = 0}.
IntMatrix binomial_relations(const IntMatrix& rows);
std::string render_relation(const ZVec& u);

// t^c vanishes identically on the stratum of J iff c_i > 0 for some i in J.
std::vector<bool> vanishing_pattern(const IntMatrix& rows, const IndexSet& J);
// Span of the exponent rows that do not vanish on the stratum of J.
Subspace nonvanishing_span(const IntMatrix& rows, const IndexSet& J);

struct SeparationPair {
    IndexSet K1, K2;
    long witness = -1;  // a coordinate separating every stratum pair uniformly, or -1
};
struct SeparationReport {
    bool separated = true;
    std::vector<SeparationPair> pairs;
};
SeparationReport separation_check(const MonomialAtlas& atlas);

// True iff sum_i a_i c_i = 0 for every row c.
bool fiber_tangency(const IntMatrix& rows, const RVec& a);

using CMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

struct FiberSample {
    std::vector<cplx> t, w;
    std::vector<CMatrix> dX_dt;  // derivative of X^{-1} along t_i
    std::vector<CMatrix> dX_dw;  // derivative of X^{-1} along w_j
};

struct DecoupledReport {
    bool exact_part = false;        // sum a_i N_i vanishes (I empty) or lies in W_{-1}(ad N_I)
    std::vector<bool> numeric_part; // |v X^{-1}| <= tol per sample
    std::vector<double> residuals;
    std::vector<bool> tangent;      // both parts per sample
};
DecoupledReport decoupled_fiber_check(const NilpotentCone& cone, const IndexSet& I, const RVec& a,
                                      const std::vector<cplx>& b, const std::vector<FiberSample>& samples,
                                      double tol = 1e-9);

}  // namespace hodgechart
