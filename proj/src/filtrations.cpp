#include "hodgechart/filtrations.hpp"

#include "hodgechart/errors.hpp"

#include <algorithm>

namespace hodgechart {

RationalMatrix NilpotentCone::sum(const IndexSet& I) const {
    RationalMatrix s(dim, dim);
    for (int i : I) s = s + generators.at(static_cast<std::size_t>(i));
    return s;
}

void NilpotentCone::validate() const {
    if (dim == 0) fail(ErrorKind::Schema, "cone dimension must be positive");
    if (weight < 0) fail(ErrorKind::Schema, "weight must be nonnegative");
    if (form.rows() != dim || form.cols() != dim) fail(ErrorKind::Schema, "form must be dim x dim");
    bool want_symmetric = weight % 2 == 0;
    if ((symmetry == FormSymmetry::Symmetric) != want_symmetric)
        fail(ErrorKind::Schema, "form symmetry does not match (-1)^weight");
    RationalMatrix qt = form.transpose();
    if (want_symmetric ? qt != form : qt != form.scaled(-1))
        fail(ErrorKind::Schema, "form is not (-1)^weight-symmetric");
    if (rank(form) != dim) fail(ErrorKind::Schema, "form is degenerate");
    if (generators.empty()) fail(ErrorKind::Schema, "cone has no generators");
    bool all_zero = true;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& n = generators[i];
        if (n.rows() != dim || n.cols() != dim)
            fail(ErrorKind::Schema, "generator " + std::to_string(i + 1) + " must be dim x dim");
        if (!n.power(static_cast<unsigned>(dim)).is_zero())
            fail(ErrorKind::NotNilpotent, "generator " + std::to_string(i + 1));
        if (!(n.transpose() * form + form * n).is_zero())
            fail(ErrorKind::Schema, "generator " + std::to_string(i + 1) + " does not preserve the form");
        all_zero = all_zero && n.is_zero();
    }
    if (all_zero) fail(ErrorKind::Schema, "all generators vanish");
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!commutator(generators[i], generators[j]).is_zero())
                fail(ErrorKind::Schema, "generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " do not commute");
}

IndexSet normalize_index_set(IndexSet I, std::size_t k) {
    std::sort(I.begin(), I.end());
    if (std::adjacent_find(I.begin(), I.end()) != I.end()) fail(ErrorKind::Schema, "index set has duplicates");
    for (int i : I)
        if (i < 0 || static_cast<std::size_t>(i) >= k) fail(ErrorKind::Schema, "index out of range");
    return I;
}

WeightFiltration::WeightFiltration(int center, int lo, std::vector<Subspace> steps)
    : center_(center), lo_(lo), steps_(std::move(steps)) {
    if (steps_.empty()) fail(ErrorKind::Internal, "empty filtration");
    ambient_ = steps_.back().ambient_dim();
}

Subspace WeightFiltration::step(int l) const {
    if (l < lo_) return Subspace(ambient_);
    if (l > highest()) return steps_.back();
    return steps_[static_cast<std::size_t>(l - lo_)];
}

bool WeightFiltration::operator==(const WeightFiltration& o) const {
    if (ambient_ != o.ambient_) return false;
    int lo = std::min(lo_, o.lo_), hi = std::max(highest(), o.highest());
    for (int l = lo; l <= hi; ++l)
        if (step(l) != o.step(l)) return false;
    return true;
}

WeightFiltration weight_filtration(const RationalMatrix& n, int center) {
    const std::size_t d = n.rows();
    if (n.cols() != d) fail(ErrorKind::Internal, "weight_filtration: matrix not square");
    std::vector<RationalMatrix> pw{RationalMatrix::identity(d)};
    for (std::size_t j = 1; j <= d; ++j) pw.push_back(pw.back() * n);
    if (!pw[d].is_zero()) fail(ErrorKind::NotNilpotent, "N^dim != 0");
    int m = 0;
    while (static_cast<std::size_t>(m + 1) <= d && !pw[static_cast<std::size_t>(m + 1)].is_zero()) ++m;
    std::vector<Subspace> ker, im;
    for (int j = 0; j <= m + 1; ++j) {
        ker.push_back(kernel(pw[static_cast<std::size_t>(j)]));
        im.push_back(image(pw[static_cast<std::size_t>(j)]));
    }
    // W_k = sum_j ker N^{j+1} ∩ im N^{max(j-k,0)}, centered at 0
    std::vector<Subspace> steps;
    for (int k = -m; k <= m; ++k) {
        Subspace w(d);
        for (int j = 0; j <= m; ++j) {
            int e = std::max(j - k, 0);
            if (e > m) continue;
            w = w + ker[static_cast<std::size_t>(j + 1)].intersect(im[static_cast<std::size_t>(e)]);
        }
        steps.push_back(std::move(w));
    }
    return WeightFiltration(center, center - m, std::move(steps));
}

Subspace isometry_algebra(const RationalMatrix& q) {
    const std::size_t d = q.rows();
    RationalMatrix l(d * d, d * d);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t r = 0; r < d; ++r) {
            RationalMatrix e(d, d);
            e(p, r) = 1;
            RVec img = (e.transpose() * q + q * e).flatten();
            for (std::size_t i = 0; i < d * d; ++i) l(i, p * d + r) = img[i];
        }
    return kernel(l);
}

RationalMatrix adjoint_matrix(const RationalMatrix& x, const Subspace& g) {
    const std::size_t d = x.rows();
    RationalMatrix a(g.dim(), g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j) {
        RationalMatrix b = RationalMatrix::unflatten(g.basis().row(j), d);
        auto c = g.coordinates(commutator(x, b).flatten());
        if (!c) fail(ErrorKind::NotInvariant, "ad X does not preserve the algebra");
        for (std::size_t i = 0; i < g.dim(); ++i) a(i, j) = (*c)[i];
    }
    return a;
}

WeightFiltration adjoint_filtration(const NilpotentCone& cone, const IndexSet& I) {
    if (I.empty()) fail(ErrorKind::Schema, "adjoint_filtration needs a nonempty index set");
    RationalMatrix n = cone.sum(I);
    Subspace g = isometry_algebra(cone.form);
    WeightFiltration wf = weight_filtration(adjoint_matrix(n, g), 0);
    const std::size_t dd = cone.dim * cone.dim;
    std::vector<Subspace> steps;
    for (int l = wf.lowest(); l <= wf.highest(); ++l) {
        std::vector<RVec> vs;
        for (auto& c : wf.step(l).vectors()) {
            RVec v(dd);
            for (std::size_t i = 0; i < c.size(); ++i) v = axpy(v, c[i], g.basis().row(i));
            vs.push_back(std::move(v));
        }
        steps.push_back(Subspace::span(vs, dd));
    }
    return WeightFiltration(0, wf.lowest(), std::move(steps));
}

GradedPiece graded_piece(const WeightFiltration& w, int level) {
    GradedPiece p;
    p.level = level;
    p.representatives = complement_basis(w.step(level - 1), w.step(level));
    p.dimension = p.representatives.size();
    return p;
}

std::vector<GradedPiece> graded_pieces(const WeightFiltration& w) {
    std::vector<GradedPiece> out;
    for (int l = w.lowest(); l <= w.highest(); ++l) out.push_back(graded_piece(w, l));
    return out;
}

RationalMatrix induced_map_at(const RationalMatrix& m, const WeightFiltration& w, int shift, int level) {
    GradedPiece src = graded_piece(w, level);
    GradedPiece dst = graded_piece(w, level + shift);
    Subspace lower = w.step(level + shift - 1);
    std::vector<RVec> cols = lower.vectors();
    for (auto& r : dst.representatives) cols.push_back(r);
    RationalMatrix basis = RationalMatrix::from_rows(cols, w.ambient_dim()).transpose();
    RationalMatrix out(dst.dimension, src.dimension);
    for (std::size_t j = 0; j < src.dimension; ++j) {
        auto x = solve(basis, m.apply(src.representatives[j]));
        if (!x)
            fail(ErrorKind::NotFiltrationCompatible,
                 "M W_" + std::to_string(level) + " not inside W_" + std::to_string(level + shift));
        for (std::size_t i = 0; i < dst.dimension; ++i) out(i, j) = (*x)[lower.dim() + i];
    }
    return out;
}

std::vector<InducedMap> induced_map(const RationalMatrix& m, const WeightFiltration& w, int shift) {
    for (int l = w.lowest(); l <= w.highest(); ++l)
        if (!w.step(l + shift).contains(apply(m, w.step(l))))
            fail(ErrorKind::NotFiltrationCompatible,
                 "M W_" + std::to_string(l) + " not inside W_" + std::to_string(l + shift));
    std::vector<InducedMap> out;
    for (int l = w.lowest(); l <= w.highest(); ++l) out.push_back({l, induced_map_at(m, w, shift, l)});
    return out;
}

PrimitivePiece primitive_subspace(const NilpotentCone& cone, const IndexSet& I, int a) {
    const int n = cone.weight;
    if (a < 0 || a > n) fail(ErrorKind::Schema, "primitive level a must satisfy 0 <= a <= n");
    RationalMatrix ni = cone.sum(I);
    WeightFiltration w = weight_filtration(ni, n);
    PrimitivePiece p;
    p.a = a;
    p.level = a + n;
    p.graded = graded_piece(w, a + n);
    RationalMatrix map = induced_map_at(ni.power(static_cast<unsigned>(a + 1)), w, -2 * (a + 1), a + n);
    Subspace ker = kernel(map);
    for (auto& c : ker.vectors()) {
        RVec v(cone.dim);
        for (std::size_t i = 0; i < c.size(); ++i) v = axpy(v, c[i], p.graded.representatives[i]);
        p.representatives.push_back(std::move(v));
    }
    return p;
}

RationalMatrix polarization_form_on(const NilpotentCone& cone, const IndexSet& I, int a,
                                    const std::vector<RVec>& reps) {
    RationalMatrix qn = cone.form * cone.sum(I).power(static_cast<unsigned>(a));
    RationalMatrix out(reps.size(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        RVec row(cone.dim);
        for (std::size_t j = 0; j < cone.dim; ++j)
            for (std::size_t k = 0; k < cone.dim; ++k)
                if (reps[i][k] != 0) row[j] += reps[i][k] * qn(k, j);
        for (std::size_t j = 0; j < reps.size(); ++j) out(i, j) = dot(row, reps[j]);
    }
    return out;
}

RationalMatrix polarization_form(const NilpotentCone& cone, const IndexSet& I, int a) {
    return polarization_form_on(cone, I, a, primitive_subspace(cone, I, a).representatives);
}

RwfpReport rwfp_consequence_check(const NilpotentCone& cone, const IndexSet& I, const IndexSet& I_prime) {
    if (!std::includes(I_prime.begin(), I_prime.end(), I.begin(), I.end()))
        fail(ErrorKind::Schema, "rwfp_consequence_check needs I contained in I'");
    RwfpReport r;
    r.I = I;
    r.I_prime = I_prime;
    r.w_I = adjoint_filtration(cone, I);
    r.w_I_prime = adjoint_filtration(cone, I_prime);
    r.premise = r.w_I.step(-1).contains(cone.sum(I_prime).flatten());
    r.filtrations_equal = r.w_I == r.w_I_prime;
    r.consistent = !r.premise || r.filtrations_equal;
    return r;
}

}  // namespace hodgechart
