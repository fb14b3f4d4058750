#include "hodgechart/charts.hpp"

#include "hodgechart/errors.hpp"

#include <algorithm>

namespace hodgechart {

IntMatrix MonomialAtlas::assembled() const {
    IntMatrix out(0, k);
    for (auto& c : charts)
        for (auto& r : c.exponents.row_list()) out.append_row(r);
    return out;
}

std::size_t MonomialAtlas::monomial_count() const {
    std::size_t m = 0;
    for (auto& c : charts) m += c.exponents.rows();
    return m;
}

MonomialAtlas atlas_from_index_map(const IndexMap& map, std::size_t k) {
    MonomialAtlas atlas;
    atlas.k = k;
    for (auto& K : map.image) {
        MonomialMap mm;
        mm.K = K;
        mm.strata = map.strata.at(K);
        auto it = std::find_if(map.table.begin(), map.table.end(), [&](const RelationData& d) { return d.I == K; });
        if (it == map.table.end()) fail(ErrorKind::Internal, "index set missing from the table");
        mm.exponents = it->C;
        atlas.charts.push_back(std::move(mm));
    }
    return atlas;
}

MonomialAtlas build_atlas(const NilpotentCone& cone, unsigned jobs) {
    return atlas_from_index_map(k_index_map(cone, jobs), cone.size());
}

IntMatrix binomial_relations(const IntMatrix& rows) {
    const std::size_t m = rows.rows();
    if (m == 0) return IntMatrix(0, 0);
    return lattice_basis(kernel(rows.to_rational().transpose()));
}

std::string render_relation(const ZVec& u) {
    auto side = [&](int sgn) {
        std::string s;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (sgn * u[j] <= 0) continue;
            Integer e = sgn * u[j];
            if (!s.empty()) s += "*";
            s += "z" + std::to_string(j + 1);
            if (e != 1) s += "^" + e.get_str();
        }
        return s.empty() ? std::string("1") : s;
    };
    return side(1) + " = " + side(-1);
}

std::vector<bool> vanishing_pattern(const IntMatrix& rows, const IndexSet& J) {
    std::vector<bool> out(rows.rows(), false);
    for (std::size_t r = 0; r < rows.rows(); ++r)
        for (int i : J)
            if (rows(r, static_cast<std::size_t>(i)) > 0) out[r] = true;
    return out;
}

Subspace nonvanishing_span(const IntMatrix& rows, const IndexSet& J) {
    auto pat = vanishing_pattern(rows, J);
    std::vector<RVec> vs;
    for (std::size_t r = 0; r < rows.rows(); ++r)
        if (!pat[r]) {
            RVec v(rows.cols());
            for (std::size_t j = 0; j < rows.cols(); ++j) v[j] = Rational(rows(r, j));
            vs.push_back(std::move(v));
        }
    return Subspace::span(vs, rows.cols());
}

SeparationReport separation_check(const MonomialAtlas& atlas) {
    IntMatrix all = atlas.assembled();
    SeparationReport rep;
    for (std::size_t p = 0; p < atlas.charts.size(); ++p)
        for (std::size_t q = p + 1; q < atlas.charts.size(); ++q) {
            const auto& A = atlas.charts[p];
            const auto& B = atlas.charts[q];
            std::vector<std::vector<bool>> pa, pb;
            for (auto& I : A.strata) pa.push_back(vanishing_pattern(all, I));
            for (auto& I : B.strata) pb.push_back(vanishing_pattern(all, I));
            for (std::size_t x = 0; x < pa.size(); ++x)
                for (std::size_t y = 0; y < pb.size(); ++y)
                    if (pa[x] == pb[y]) {
                        std::string msg = "strata of K=" + std::to_string(p) + " and K=" + std::to_string(q) +
                                          " have identical vanishing patterns";
                        fail(ErrorKind::SeparationFailure, msg);
                    }
            SeparationPair sp{A.K, B.K, -1};
            for (std::size_t j = 0; j < all.rows() && sp.witness < 0; ++j) {
                if (pa.empty() || pb.empty()) break;
                bool va = pa[0][j], vb = pb[0][j];
                if (va == vb) continue;
                bool uniform = std::all_of(pa.begin(), pa.end(), [&](auto& v) { return v[j] == va; }) &&
                               std::all_of(pb.begin(), pb.end(), [&](auto& v) { return v[j] == vb; });
                if (uniform) sp.witness = static_cast<long>(j);
            }
            rep.pairs.push_back(sp);
        }
    return rep;
}

bool fiber_tangency(const IntMatrix& rows, const RVec& a) {
    if (a.size() != rows.cols()) fail(ErrorKind::Schema, "tangent vector length does not match the exponents");
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        Rational s = 0;
        for (std::size_t j = 0; j < rows.cols(); ++j) s += a[j] * Rational(rows(r, j));
        if (s != 0) return false;
    }
    return true;
}

DecoupledReport decoupled_fiber_check(const NilpotentCone& cone, const IndexSet& I, const RVec& a,
                                      const std::vector<cplx>& b, const std::vector<FiberSample>& samples,
                                      double tol) {
    const std::size_t k = cone.size(), d = cone.dim;
    if (a.size() != k) fail(ErrorKind::Schema, "a must have one entry per generator");
    DecoupledReport rep;
    RationalMatrix na(d, d);
    for (std::size_t i = 0; i < k; ++i) na = na + cone.generators[i].scaled(a[i]);
    rep.exact_part = I.empty() ? na.is_zero() : adjoint_filtration(cone, I).step(-1).contains(na.flatten());

    // span of the N_i inside C^{d x d}, for the decoupling consistency test
    Eigen::MatrixXcd span(d * d, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) span(static_cast<long>(r * d + c), static_cast<long>(i)) =
                    cone.generators[i](r, c).get_d();

    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& smp = samples[s];
        if (smp.t.size() != k || smp.dX_dt.size() != k || smp.w.size() != b.size() || smp.dX_dw.size() != b.size())
            fail(ErrorKind::Schema, "sample " + std::to_string(s) + " has inconsistent lengths");
        CMatrix dv = CMatrix::Zero(static_cast<long>(d), static_cast<long>(d));
        for (std::size_t i = 0; i < k; ++i) dv += a[i].get_d() * smp.t[i] * smp.dX_dt[i];
        for (std::size_t j = 0; j < b.size(); ++j) dv += b[j] * smp.dX_dw[j];
        Eigen::VectorXcd flat(static_cast<long>(d * d));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) flat(static_cast<long>(r * d + c)) = dv(static_cast<long>(r), static_cast<long>(c));
        if (k > 0 && span.norm() > 0) {
            Eigen::VectorXcd coef = span.completeOrthogonalDecomposition().solve(flat);
            double along = (span * coef).norm();
            if (along > tol)
                fail(ErrorKind::SampleInconsistent,
                     "sample " + std::to_string(s) + ": derivative of X^{-1} has a component along span{N_i}");
        }
        double res = dv.norm();
        rep.residuals.push_back(res);
        rep.numeric_part.push_back(res <= tol);
        rep.tangent.push_back(rep.exact_part && res <= tol);
    }
    return rep;
}

}  // namespace hodgechart
