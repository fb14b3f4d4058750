#include "hodgechart/linalg.hpp"

#include "hodgechart/errors.hpp"

#include <algorithm>
#include <utility>

namespace hodgechart {

Rational parse_rational(const std::string& s) {
    if (s.empty()) fail(ErrorKind::Schema, "empty rational");
    std::size_t slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) fail(ErrorKind::Schema, "malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) fail(ErrorKind::Schema, "zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---- RationalMatrix

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RVec>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::Schema, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].at(j);
    return m;
}

RVec RationalMatrix::row(std::size_t i) const {
    return RVec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

RVec RationalMatrix::col(std::size_t j) const {
    RVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<RVec> RationalMatrix::row_list() const {
    std::vector<RVec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

void RationalMatrix::append_row(const RVec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) fail(ErrorKind::Internal, "append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::Internal, "matrix product: shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) r(i, j) += a * o(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Internal, "matrix sum: shape mismatch");
    RationalMatrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Internal, "matrix difference: shape mismatch");
    RationalMatrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

RationalMatrix RationalMatrix::scaled(const Rational& c) const {
    RationalMatrix r(*this);
    for (auto& x : r.data_) x *= c;
    return r;
}

RVec RationalMatrix::apply(const RVec& v) const {
    if (v.size() != cols_) fail(ErrorKind::Internal, "apply: length mismatch");
    RVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

RationalMatrix RationalMatrix::power(unsigned e) const {
    RationalMatrix r = identity(rows_);
    for (unsigned i = 0; i < e; ++i) r = r * (*this);
    return r;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RVec RationalMatrix::flatten() const { return data_; }

RationalMatrix RationalMatrix::unflatten(const RVec& v, std::size_t n) {
    if (v.size() != n * n) fail(ErrorKind::Internal, "unflatten: length mismatch");
    RationalMatrix m(n, n);
    m.data_ = v;
    return m;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

Rational dot(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) fail(ErrorKind::Internal, "dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

RVec axpy(const RVec& x, const Rational& a, const RVec& y) {
    RVec r(x);
    if (a == 0) return r;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (y[i] != 0) r[i] += a * y[i];
    return r;
}

bool is_zero_vec(const RVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::vector<std::size_t> rref_in_place(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// ---- Subspace

Subspace Subspace::row_space(const RationalMatrix& m) {
    RationalMatrix r = m;
    auto piv = rref_in_place(r);
    Subspace s(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) s.basis_.append_row(r.row(i));
    if (piv.empty()) s.basis_ = RationalMatrix(0, m.cols());
    s.pivots_ = std::move(piv);
    return s;
}

Subspace Subspace::span(const std::vector<RVec>& vectors, std::size_t ambient) {
    return row_space(RationalMatrix::from_rows(vectors, ambient));
}

Subspace Subspace::full(std::size_t ambient) { return row_space(RationalMatrix::identity(ambient)); }

std::optional<RVec> Subspace::coordinates(const RVec& v) const {
    if (v.size() != ambient_) fail(ErrorKind::Internal, "coordinates: length mismatch");
    RVec c(dim());
    RVec rest = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        c[i] = v[pivots_[i]];
        if (c[i] != 0)
            for (std::size_t j = 0; j < ambient_; ++j)
                if (basis_(i, j) != 0) rest[j] -= c[i] * basis_(i, j);
    }
    if (!is_zero_vec(rest)) return std::nullopt;
    return c;
}

bool Subspace::contains(const RVec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& s) const {
    if (s.ambient_ != ambient_) fail(ErrorKind::Internal, "contains: ambient mismatch");
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!contains(s.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
    if (o.ambient_ != ambient_) fail(ErrorKind::Internal, "sum: ambient mismatch");
    auto rows = vectors();
    for (auto& v : o.vectors()) rows.push_back(v);
    return span(rows, ambient_);
}

Subspace Subspace::intersect(const Subspace& o) const {
    return orthogonal_complement(orthogonal_complement(*this) + orthogonal_complement(o));
}

bool Subspace::operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

Subspace kernel(const RationalMatrix& m) {
    RationalMatrix r = m;
    auto piv = rref_in_place(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RVec> vecs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RVec v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, m.cols());
}

Subspace image(const RationalMatrix& m) { return Subspace::row_space(m.transpose()); }

Subspace orthogonal_complement(const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(s.ambient_dim());
    return kernel(s.basis());
}

std::size_t rank(const RationalMatrix& m) {
    RationalMatrix r = m;
    return rref_in_place(r).size();
}

std::optional<RVec> solve(const RationalMatrix& m, const RVec& b) {
    if (b.size() != m.rows()) fail(ErrorKind::Internal, "solve: length mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto piv = rref_in_place(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    RVec x(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
    return x;
}

Subspace apply(const RationalMatrix& m, const Subspace& s) {
    std::vector<RVec> out;
    for (auto& v : s.vectors()) out.push_back(m.apply(v));
    return Subspace::span(out, m.rows());
}

RationalMatrix restrict_map(const RationalMatrix& m, const Subspace& domain, const Subspace& codomain) {
    if (m.cols() != domain.ambient_dim() || m.rows() != codomain.ambient_dim())
        fail(ErrorKind::Internal, "restrict_map: shape mismatch");
    RationalMatrix out(codomain.dim(), domain.dim());
    for (std::size_t j = 0; j < domain.dim(); ++j) {
        auto c = codomain.coordinates(m.apply(domain.basis().row(j)));
        if (!c) fail(ErrorKind::NotInvariant, "image of basis vector " + std::to_string(j + 1) + " leaves the codomain");
        for (std::size_t i = 0; i < codomain.dim(); ++i) out(i, j) = (*c)[i];
    }
    return out;
}

std::vector<RVec> complement_basis(const Subspace& sub, const Subspace& super) {
    std::vector<RVec> added;
    Subspace cur = sub;
    for (auto& v : super.vectors()) {
        if (cur.contains(v)) continue;
        added.push_back(v);
        cur = cur + Subspace::span({v}, super.ambient_dim());
    }
    return added;
}

// ---- integer lattices

IntMatrix IntMatrix::from_rows(const std::vector<ZVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::Schema, "ragged integer matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

ZVec IntMatrix::row(std::size_t i) const {
    return ZVec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<ZVec> IntMatrix::row_list() const {
    std::vector<ZVec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

void IntMatrix::append_row(const ZVec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) fail(ErrorKind::Internal, "append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

RationalMatrix IntMatrix::to_rational() const {
    RationalMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = Rational((*this)(i, j));
    return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
    std::vector<ZVec> a = m.row_list();
    const std::size_t n = m.cols();
    std::size_t r = 0;
    auto sub_row = [&](ZVec& x, const Integer& q, const ZVec& y) {
        if (q == 0) return;
        for (std::size_t j = 0; j < n; ++j) x[j] -= q * y[j];
    };
    for (std::size_t c = 0; c < n && r < a.size(); ++c) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
            if (best == a.size()) break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                sub_row(a[i], q, a[r]);
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= a.size() || a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (auto& x : a[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            sub_row(a[i], q, a[r]);
        }
        ++r;
    }
    a.resize(r);
    IntMatrix out(0, n);
    for (auto& row : a) out.append_row(row);
    return out;
}

ZVec primitive_integer(const RVec& v) {
    Integer l = 1;
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    ZVec z(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        z[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : z) x /= g;
    return z;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const std::size_t r = m.rows(), k = m.cols();
    IntMatrix aug(k, r + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = m(j, i);
        aug(i, r + i) = 1;
    }
    IntMatrix h = hermite_normal_form(aug);
    IntMatrix ker(0, k);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < r && zero; ++j) zero = h(i, j) == 0;
        if (!zero) continue;
        ZVec u(k);
        for (std::size_t j = 0; j < k; ++j) u[j] = h(i, r + j);
        ker.append_row(u);
    }
    return hermite_normal_form(ker);
}

IntMatrix lattice_basis(const Subspace& s) {
    const std::size_t k = s.ambient_dim();
    if (s.dim() == 0) return IntMatrix(0, k);
    Subspace perp = orthogonal_complement(s);
    IntMatrix p(0, k);
    for (auto& v : perp.vectors()) p.append_row(primitive_integer(v));
    if (perp.dim() == 0) {
        IntMatrix id(k, k);
        for (std::size_t i = 0; i < k; ++i) id(i, i) = 1;
        return id;
    }
    return integer_kernel(p);
}

std::optional<ZVec> lattice_coordinates(const IntMatrix& basis, const ZVec& v) {
    RVec rv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rv[i] = Rational(v[i]);
    auto x = solve(basis.to_rational().transpose(), rv);
    if (!x) return std::nullopt;
    ZVec z(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        if ((*x)[i].get_den() != 1) return std::nullopt;
        z[i] = (*x)[i].get_num();
    }
    return z;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Internal: return "Internal";
        case ErrorKind::Schema: return "SchemaError";
        case ErrorKind::ConeTooLarge: return "ConeTooLarge";
        case ErrorKind::NumericDomain: return "NumericDomain";
        case ErrorKind::NotNilpotent: return "NotNilpotent";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NotFiltrationCompatible: return "NotFiltrationCompatible";
        case ErrorKind::InvalidSplit: return "InvalidSplit";
        case ErrorKind::SeparationFailure: return "SeparationFailure";
        case ErrorKind::SampleInconsistent: return "SampleInconsistent";
        case ErrorKind::IncidenceError: return "IncidenceError";
        case ErrorKind::NotAComplex: return "NotAComplex";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::PoorFit: return "PoorFit";
    }
    return "Unknown";
}

}  // namespace hodgechart
