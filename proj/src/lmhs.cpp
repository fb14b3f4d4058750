#include "hodgechart/lmhs.hpp"

#include "hodgechart/errors.hpp"

#include <numeric>

namespace hodgechart {

void NCDSurface::validate() const {
    const int n = static_cast<int>(components.size());
    if (n == 0) fail(ErrorKind::Schema, "surface has no components");
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& h = components[i].h;
        for (long x : h)
            if (x < 0) fail(ErrorKind::Schema, "negative Betti number on component " + std::to_string(i + 1));
        if (h[0] != 1 || h[4] != 1) fail(ErrorKind::Schema, "components must be connected (h0 = h4 = 1)");
        if (h[1] != h[3]) fail(ErrorKind::Schema, "h1 != h3 on component " + std::to_string(i + 1));
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& d = curves[c];
        if (d.a < 0 || d.b >= n || d.a >= d.b)
            fail(ErrorKind::IncidenceError, "double curve " + std::to_string(c + 1) + " needs components a < b in range");
        if (d.genus < 0) fail(ErrorKind::Schema, "negative genus on curve " + std::to_string(c + 1));
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& t = points[p];
        const auto& [i, j, k] = t.comps;
        if (!(0 <= i && i < j && j < k && k < n))
            fail(ErrorKind::IncidenceError, "triple point " + std::to_string(p + 1) + " needs components i < j < k");
        const std::array<std::array<int, 2>, 3> pairs{{{i, j}, {i, k}, {j, k}}};
        for (int s = 0; s < 3; ++s) {
            int c = t.curves[static_cast<std::size_t>(s)];
            if (c < 0 || c >= static_cast<int>(curves.size()))
                fail(ErrorKind::IncidenceError, "triple point " + std::to_string(p + 1) + " references a missing curve");
            const auto& d = curves[static_cast<std::size_t>(c)];
            if (d.a != pairs[static_cast<std::size_t>(s)][0] || d.b != pairs[static_cast<std::size_t>(s)][1])
                fail(ErrorKind::IncidenceError,
                     "triple point " + std::to_string(p + 1) + " curve " + std::to_string(c + 1) + " joins the wrong components");
        }
    }
    long h1 = 0, g2 = 0;
    for (auto& c : components) h1 += c.h[1];
    for (auto& d : curves) g2 += 2 * d.genus;
    if (r_odd && (r_odd->rows() != static_cast<std::size_t>(g2) || r_odd->cols() != static_cast<std::size_t>(h1)))
        fail(ErrorKind::Schema, "r_odd must be (2 sum g) x (sum h1)");
    if (g_odd && (g_odd->rows() != static_cast<std::size_t>(h1) || g_odd->cols() != static_cast<std::size_t>(g2)))
        fail(ErrorKind::Schema, "g_odd must be (sum h3) x (2 sum g)");
}

namespace {

// sign of curve slot s in the coboundary H^0(X^[2]) -> H^0(X^[3]) at p = (i<j<k):
// slots (ij, ik, jk) carry (+1, -1, +1)
constexpr int kSlotSign[3] = {1, -1, 1};

}  // namespace

WeightComplexes build_weight_complexes(const NCDSurface& x) {
    x.validate();
    const std::size_t n1 = x.components.size(), n2 = x.curves.size(), n3 = x.points.size();
    WeightComplexes w;
    w.r1 = RationalMatrix(n2, n1);
    for (std::size_t c = 0; c < n2; ++c) {
        w.r1(c, static_cast<std::size_t>(x.curves[c].b)) += 1;
        w.r1(c, static_cast<std::size_t>(x.curves[c].a)) -= 1;
    }
    w.r2 = RationalMatrix(n3, n2);
    for (std::size_t p = 0; p < n3; ++p)
        for (int s = 0; s < 3; ++s)
            w.r2(p, static_cast<std::size_t>(x.points[p].curves[static_cast<std::size_t>(s)])) += kSlotSign[s];
    w.g3 = w.r2.transpose();
    w.g2 = w.r1.transpose();

    // H^2(X_i) model: span of curve classes (via intersection vectors against the
    // curves lying on X_i) plus an orthogonal remainder of dimension h2 - rank.
    std::vector<std::vector<std::size_t>> on(n1);
    for (std::size_t c = 0; c < n2; ++c) {
        on[static_cast<std::size_t>(x.curves[c].a)].push_back(c);
        on[static_cast<std::size_t>(x.curves[c].b)].push_back(c);
    }
    std::vector<Subspace> span(n1);
    std::vector<RationalMatrix> inter(n1);
    std::vector<std::size_t> offset(n1);
    std::size_t vdim = 0;
    for (std::size_t i = 0; i < n1; ++i) {
        const auto& cs = on[i];
        RationalMatrix m(cs.size(), cs.size());
        for (std::size_t u = 0; u < cs.size(); ++u) {
            const auto& d = x.curves[cs[u]];
            m(u, u) = static_cast<long>(i) == d.a ? d.self_a : d.self_b;
        }
        for (const auto& p : x.points) {
            if (p.comps[0] != static_cast<int>(i) && p.comps[1] != static_cast<int>(i) && p.comps[2] != static_cast<int>(i))
                continue;
            std::vector<std::size_t> through;
            for (int c : p.curves) {
                const auto& d = x.curves[static_cast<std::size_t>(c)];
                if (d.a == static_cast<int>(i) || d.b == static_cast<int>(i)) {
                    for (std::size_t u = 0; u < cs.size(); ++u)
                        if (cs[u] == static_cast<std::size_t>(c)) through.push_back(u);
                }
            }
            if (through.size() == 2 && through[0] != through[1]) {
                m(through[0], through[1]) += 1;
                m(through[1], through[0]) += 1;
            }
        }
        inter[i] = m;
        span[i] = image(m);
        long h2 = x.components[i].h[2];
        if (static_cast<long>(span[i].dim()) > h2)
            fail(ErrorKind::IncidenceError, "curve classes on component " + std::to_string(i + 1) + " span more than h2");
        offset[i] = vdim;
        vdim += static_cast<std::size_t>(h2);
        w.h2_class_rank.push_back(span[i].dim());
    }
    w.h2_model_dim = vdim;

    // A: 1_D -> ([D]|X_a - [D]|X_b, R(1_D))
    w.a = RationalMatrix(vdim + n3, n2);
    for (std::size_t c = 0; c < n2; ++c) {
        const auto& d = x.curves[c];
        for (int side = 0; side < 2; ++side) {
            std::size_t i = static_cast<std::size_t>(side == 0 ? d.a : d.b);
            const auto& cs = on[i];
            std::size_t u = 0;
            while (cs[u] != c) ++u;
            auto coords = span[i].coordinates(inter[i].col(u));
            for (std::size_t s = 0; s < coords->size(); ++s)
                w.a(offset[i] + s, c) += (side == 0 ? 1 : -1) * (*coords)[s];
        }
        for (std::size_t p = 0; p < n3; ++p) w.a(vdim + p, c) = w.r2(p, c);
    }
    // B: (x, z) -> R'(x) + G(z), R'(x)_{D_uv} = x_u.D - x_v.D
    w.b = RationalMatrix(n2, vdim + n3);
    for (std::size_t i = 0; i < n1; ++i) {
        const auto& cs = on[i];
        for (std::size_t s = 0; s < span[i].dim(); ++s)
            for (std::size_t u = 0; u < cs.size(); ++u) {
                const auto& d = x.curves[cs[u]];
                int sgn = d.a == static_cast<int>(i) ? 1 : -1;
                w.b(cs[u], offset[i] + s) += sgn * span[i].basis()(s, u);
            }
    }
    for (std::size_t p = 0; p < n3; ++p)
        for (std::size_t c = 0; c < n2; ++c) w.b(c, vdim + p) = w.g3(c, p);

    long h1 = 0, g2 = 0;
    for (auto& c : x.components) h1 += c.h[1];
    for (auto& d : x.curves) g2 += 2 * d.genus;
    w.r_odd = x.r_odd ? *x.r_odd : RationalMatrix(static_cast<std::size_t>(g2), static_cast<std::size_t>(h1));
    w.g_odd = x.g_odd ? *x.g_odd : w.r_odd.transpose();
    return w;
}

std::vector<bool> triple_point_check(const NCDSurface& x) {
    std::vector<long> t(x.curves.size(), 0);
    for (auto& p : x.points)
        for (int c : p.curves) t.at(static_cast<std::size_t>(c)) += 1;
    std::vector<bool> out;
    for (std::size_t c = 0; c < x.curves.size(); ++c)
        out.push_back(x.curves[c].self_a + x.curves[c].self_b + t[c] == 0);
    return out;
}

namespace {
bool product_zero(const RationalMatrix& second, const RationalMatrix& first) {
    if (first.rows() == 0 || first.cols() == 0 || second.rows() == 0) return true;
    return (second * first).is_zero();
}
}  // namespace

bool friedman_check(const WeightComplexes& w) { return product_zero(w.b, w.a); }

bool compositions_vanish(const WeightComplexes& w) {
    return product_zero(w.r2, w.r1) && product_zero(w.g2, w.g3) && product_zero(w.b, w.a);
}

GradedDims graded_dims(const WeightComplexes& w) {
    if (!compositions_vanish(w)) fail(ErrorKind::NotAComplex, "a composition of consecutive maps is nonzero");
    GradedDims g;
    g.dims[4] = w.g3.cols() - rank(w.g3);
    g.dims[0] = w.r2.rows() - rank(w.r2);
    g.dims[2] = w.a.rows() - rank(w.b) - rank(w.a);
    g.dims[3] = w.g_odd.cols() - rank(w.g_odd);
    g.dims[1] = w.r_odd.rows() - rank(w.r_odd);
    return g;
}

namespace {

// ker(g) -> coker(r), both inside the same space
RationalMatrix kernel_to_cokernel(const RationalMatrix& g, const RationalMatrix& r, std::size_t n) {
    Subspace ker = g.rows() == 0 ? Subspace::full(n) : kernel(g);
    Subspace im = r.cols() == 0 ? Subspace(n) : image(r);
    auto reps = complement_basis(im, Subspace::full(n));
    std::vector<RVec> cols = im.vectors();
    for (auto& v : reps) cols.push_back(v);
    RationalMatrix basis = RationalMatrix::from_rows(cols, n).transpose();
    RationalMatrix out(reps.size(), ker.dim());
    for (std::size_t j = 0; j < ker.dim(); ++j) {
        auto c = solve(basis, ker.basis().row(j));
        for (std::size_t i = 0; i < reps.size(); ++i) out(i, j) = (*c)[im.dim() + i];
    }
    return out;
}

}  // namespace

MonodromyGradedReport monodromy_graded_maps(const WeightComplexes& w) {
    if (!compositions_vanish(w)) fail(ErrorKind::NotAComplex, "a composition of consecutive maps is nonzero");
    MonodromyGradedReport rep;
    rep.even_map = kernel_to_cokernel(w.g3, w.r2, w.g3.cols());
    rep.odd_map = kernel_to_cokernel(w.g_odd, w.r_odd, w.g_odd.cols());
    rep.even_source = rep.even_map.cols();
    rep.even_target = rep.even_map.rows();
    rep.odd_source = rep.odd_map.cols();
    rep.odd_target = rep.odd_map.rows();
    rep.even_iso = rep.even_source == rep.even_target && rank(rep.even_map) == rep.even_source;
    rep.odd_iso = rep.odd_source == rep.odd_target && rank(rep.odd_map) == rep.odd_source;
    return rep;
}

std::array<long, 3> curve_lmhs(const DualGraph& g) {
    const std::size_t v = g.genus.size();
    if (v == 0) fail(ErrorKind::Schema, "dual graph has no vertices");
    std::vector<std::size_t> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto& e : g.edges) {
        if (e[0] < 0 || e[1] < 0 || static_cast<std::size_t>(e[0]) >= v || static_cast<std::size_t>(e[1]) >= v)
            fail(ErrorKind::Schema, "edge endpoint out of range");
        parent[find(static_cast<std::size_t>(e[0]))] = find(static_cast<std::size_t>(e[1]));
    }
    for (std::size_t i = 1; i < v; ++i)
        if (find(i) != find(0)) fail(ErrorKind::Disconnected, "dual graph is not connected");
    long genus = 0;
    for (long x : g.genus) {
        if (x < 0) fail(ErrorKind::Schema, "negative genus");
        genus += x;
    }
    long b1 = static_cast<long>(g.edges.size()) - static_cast<long>(v) + 1;
    return {b1, 2 * genus, b1};
}

}  // namespace hodgechart
