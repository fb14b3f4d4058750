#pragma once

#include "hodgechart/linalg.hpp"

#include <cstdint>
#include <vector>

namespace hodgechart {

// A: T ⊗ W -> U stored as A[alpha][a][u]; metric g on U.
template <class S>
struct CurvatureTripleT {
    std::size_t dim_t = 0, dim_w = 0, dim_u = 0;
    std::vector<std::vector<std::vector<S>>> A;
    std::vector<std::vector<S>> metric;
    void validate() const;
    // U x W matrix of A(xi)
    std::vector<std::vector<S>> slice(const std::vector<S>& xi) const;
};
using CurvatureTriple = CurvatureTripleT<Rational>;
using FloatCurvatureTriple = CurvatureTripleT<double>;

template <class S>
struct IdentityCheck {
    S lhs{}, rhs{};
    bool match = false;
};
// lhs: contraction of the curvature tensor against (e, xi); rhs: |A(xi) e|^2 in the metric
IdentityCheck<Rational> curvature_identity_check(const CurvatureTriple& t, const RVec& e, const RVec& xi);
IdentityCheck<double> curvature_identity_check(const FloatCurvatureTriple& t, const std::vector<double>& e,
                                               const std::vector<double>& xi, double tol = 1e-10);

struct NumericalDimension {
    std::size_t rho = 0;
    long n = 0;                       // r - 1 + rho
    std::vector<std::size_t> ranks;   // per sample
};
NumericalDimension numerical_dimension(const CurvatureTriple& t, const std::vector<RVec>& samples);
// seeded integer vectors in [-9, 9]
std::vector<RVec> generic_samples(std::size_t dim, std::uint64_t seed, std::size_t count = 20);

struct SigmaResult {
    RationalMatrix matrix;
    std::size_t rank = 0;
    bool injective = false;
};
// S^2 W -> W* ⊗ W; columns indexed by pairs i <= j, rows by k * dim + l
SigmaResult sigma_weight1(const RationalMatrix& q);
std::vector<std::pair<std::size_t, std::size_t>> sym2_basis(std::size_t dim);
// T = S^2 W*, E = S^2 W, U = W* ⊗ W, A(xi) e = sigma(xi)(e); metric is the identity
CurvatureTriple sigma1_triple(std::size_t dim_w);

struct Sigma2Result {
    RationalMatrix matrix;   // rows (a, u) -> a * dim_u + u, columns alpha
    std::size_t rank = 0;
    bool injective = false;
    bool a_injective = false;
    bool integrable = false;
};
Sigma2Result sigma_weight2(const CurvatureTriple& t, const RationalMatrix& q);

}  // namespace hodgechart
