#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hodgechart {

using Rational = mpq_class;
using Integer = mpz_class;
using RVec = std::vector<Rational>;
using ZVec = std::vector<Integer>;

Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RVec>& rows, std::size_t cols);
    static RationalMatrix from_ints(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RVec row(std::size_t i) const;
    RVec col(std::size_t j) const;
    std::vector<RVec> row_list() const;
    void append_row(const RVec& v);

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix scaled(const Rational& c) const;
    RVec apply(const RVec& v) const;  // M v
    RationalMatrix power(unsigned e) const;
    bool is_zero() const;
    bool operator==(const RationalMatrix& o) const;
    bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

    // row-major flattening, used for End(V) as Q^{d^2}
    RVec flatten() const;
    static RationalMatrix unflatten(const RVec& v, std::size_t n);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

Rational dot(const RVec& a, const RVec& b);
RVec axpy(const RVec& x, const Rational& a, const RVec& y);  // x + a y
bool is_zero_vec(const RVec& v);

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(RationalMatrix& m);

class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
    static Subspace span(const std::vector<RVec>& vectors, std::size_t ambient);
    static Subspace row_space(const RationalMatrix& m);
    static Subspace full(std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<RVec> vectors() const { return basis_.row_list(); }

    bool contains(const RVec& v) const;
    bool contains(const Subspace& s) const;
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }
    // coordinates of v in the canonical basis; nullopt when v is not in the span
    std::optional<RVec> coordinates(const RVec& v) const;

    Subspace operator+(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

  private:
    std::size_t ambient_ = 0;
    RationalMatrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel(const RationalMatrix& m);
Subspace image(const RationalMatrix& m);
Subspace orthogonal_complement(const Subspace& s);
std::size_t rank(const RationalMatrix& m);
std::optional<RVec> solve(const RationalMatrix& m, const RVec& b);
Subspace apply(const RationalMatrix& m, const Subspace& s);
// Induced map in the canonical bases: column j = coordinates of M b_j.
RationalMatrix restrict_map(const RationalMatrix& m, const Subspace& domain, const Subspace& codomain);
// Complete `sub` (contained in `super`) to a basis of `super`; returns the added vectors.
std::vector<RVec> complement_basis(const Subspace& sub, const Subspace& super);

// Integer lattices.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix from_rows(const std::vector<ZVec>& rows, std::size_t cols);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    ZVec row(std::size_t i) const;
    std::vector<ZVec> row_list() const;
    void append_row(const ZVec& v);
    RationalMatrix to_rational() const;
    bool operator==(const IntMatrix& o) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

// Row Hermite normal form of the lattice generated by the rows (zero rows dropped).
IntMatrix hermite_normal_form(const IntMatrix& m);
ZVec primitive_integer(const RVec& v);
IntMatrix integer_kernel(const IntMatrix& m);  // rows u with m u^T = 0, HNF
IntMatrix lattice_basis(const Subspace& s);    // S ∩ Z^k, HNF
// Coefficients of v in the given lattice basis (rows); nullopt if v not in the lattice.
std::optional<ZVec> lattice_coordinates(const IntMatrix& basis, const ZVec& v);

}  // namespace hodgechart
