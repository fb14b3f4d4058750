#include "hodgechart/relations.hpp"

#include "hodgechart/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace hodgechart {

Subspace relation_space(const NilpotentCone& cone, const IndexSet& I) {
    const std::size_t k = cone.size(), dd = cone.dim * cone.dim;
    std::vector<RVec> flat;
    for (auto& n : cone.generators) flat.push_back(n.flatten());
    if (I.empty()) {
        RationalMatrix m(dd, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t r = 0; r < dd; ++r) m(r, i) = flat[i][r];
        return kernel(m);
    }
    Subspace perp = orthogonal_complement(adjoint_filtration(cone, I).step(-1));
    if (perp.dim() == 0) return Subspace::full(k);
    RationalMatrix m(perp.dim(), k);
    for (std::size_t r = 0; r < perp.dim(); ++r) {
        RVec phi = perp.basis().row(r);
        for (std::size_t i = 0; i < k; ++i) m(r, i) = dot(phi, flat[i]);
    }
    return kernel(m);
}

namespace {

// Phase I of the simplex method on {A'x + s = b', x, s >= 0} with b' >= 0,
// Bland's rule for entering and leaving variables.
struct PhaseOne {
    std::size_t m, n;
    RationalMatrix t;              // m x (n + m + 1)
    std::vector<std::size_t> basis;
    RVec rc;                       // reduced costs, length n + m

    PhaseOne(const RationalMatrix& a, const RVec& b) : m(a.rows()), n(a.cols()), t(a.rows(), a.cols() + a.rows() + 1) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
            t(i, n + i) = 1;
            t(i, n + m) = b[i];
            basis.push_back(n + i);
        }
        rc.assign(n + m, Rational(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) rc[j] -= t(i, j);
    }

    void pivot(std::size_t r, std::size_t e) {
        const std::size_t w = n + m + 1;
        Rational inv = 1 / t(r, e);
        for (std::size_t j = 0; j < w; ++j) t(r, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t(i, e) == 0) continue;
            Rational f = t(i, e);
            for (std::size_t j = 0; j < w; ++j)
                if (t(r, j) != 0) t(i, j) -= f * t(r, j);
        }
        if (rc[e] != 0) {
            Rational f = rc[e];
            for (std::size_t j = 0; j < n + m; ++j)
                if (t(r, j) != 0) rc[j] -= f * t(r, j);
        }
        basis[r] = e;
    }

    void run() {
        for (;;) {
            std::size_t e = n + m;
            for (std::size_t j = 0; j < n + m; ++j)
                if (rc[j] < 0) {
                    e = j;
                    break;
                }
            if (e == n + m) return;
            std::size_t r = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, e) <= 0) continue;
                Rational ratio = t(i, n + m) / t(i, e);
                if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r == m) fail(ErrorKind::Internal, "phase one unbounded");
            pivot(r, e);
        }
    }

    Rational objective() const {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) s += t(i, n + m);
        return s;
    }
};

}  // namespace

FarkasResult farkas_alternative(const RationalMatrix& a, const RVec& b) {
    if (b.size() != a.rows()) fail(ErrorKind::Internal, "farkas_alternative: dimension mismatch");
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<int> sign(m, 1);
    RationalMatrix an = a;
    RVec bn = b;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            sign[i] = -1;
            bn[i] = -b[i];
            for (std::size_t j = 0; j < n; ++j) an(i, j) = -a(i, j);
        }
    PhaseOne lp(an, bn);
    lp.run();
    FarkasResult res;
    if (lp.objective() == 0) {
        res.feasible = true;
        res.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (lp.basis[i] < n) res.x[lp.basis[i]] = lp.t(i, n + m);
        if (a.apply(res.x) != b) fail(ErrorKind::Internal, "simplex primal witness does not solve Ax = b");
        return res;
    }
    // dual multipliers of the phase-one problem give the certificate
    res.y.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) res.y[i] = -sign[i] * (1 - lp.rc[n + i]);
    RVec aty = a.transpose().apply(res.y);
    bool ok = dot(res.y, b) < 0;
    for (auto& x : aty) ok = ok && x >= 0;
    if (!ok) fail(ErrorKind::Internal, "simplex dual certificate check failed");
    return res;
}

std::optional<RVec> nonnegative_solution(const RationalMatrix& a, const RVec& b) {
    auto r = farkas_alternative(a, b);
    if (!r.feasible) return std::nullopt;
    return r.x;
}

FarkasSplit farkas_split(const Subspace& s) {
    const std::size_t k = s.ambient_dim();
    Subspace perp = orthogonal_complement(s);
    const std::size_t r = perp.dim();
    RationalMatrix a(r + 1, k);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t j = 0; j < k; ++j) a(p, j) = perp.basis()(p, j);
    RVec b(r + 1);
    b[r] = 1;
    FarkasSplit out;
    out.v.assign(k, Rational(0));
    out.v_tilde.assign(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(r, j) = (j == i) ? 1 : 0;
        FarkasResult f = farkas_alternative(a, b);
        if (f.feasible) {
            out.K.push_back(static_cast<int>(i));
            for (std::size_t j = 0; j < k; ++j) out.v[j] += f.x[j];
            continue;
        }
        RVec xt(k);
        for (std::size_t p = 0; p < r; ++p) xt = axpy(xt, f.y[p], perp.basis().row(p));
        Rational scale = 1 / xt[i];
        for (std::size_t j = 0; j < k; ++j) out.v_tilde[j] += xt[j] * scale;
    }
    for (std::size_t j = 0; j < k; ++j) {
        bool in_k = std::binary_search(out.K.begin(), out.K.end(), static_cast<int>(j));
        if ((out.v[j] > 0) != in_k || (out.v_tilde[j] > 0) != !in_k || out.v[j] < 0 || out.v_tilde[j] < 0)
            fail(ErrorKind::Internal, "farkas_split supports do not partition the index set");
    }
    return out;
}

IntMatrix positive_basis(const Subspace& s, const IndexSet& K) {
    const std::size_t k = s.ambient_dim();
    FarkasSplit fs = farkas_split(s);
    if (fs.K != K) fail(ErrorKind::InvalidSplit, "K does not match the Farkas split of S");
    Subspace perp = orthogonal_complement(s);
    for (auto& v : perp.vectors())
        for (int i : K)
            if (v[static_cast<std::size_t>(i)] != 0)
                fail(ErrorKind::InvalidSplit, "S^perp is not supported off K");
    IntMatrix lat = lattice_basis(perp);
    if (lat.rows() == 0) return IntMatrix(0, k);
    ZVec c = primitive_integer(fs.v_tilde);
    auto alpha = lattice_coordinates(lat, c);
    if (!alpha) fail(ErrorKind::Internal, "positivity certificate outside the lattice");
    std::size_t swap_row = lat.rows();
    for (std::size_t j = lat.rows(); j-- > 0;)
        if ((*alpha)[j] != 0) {
            swap_row = j;
            break;
        }
    IntMatrix out(0, k);
    for (std::size_t j = 0; j < lat.rows(); ++j) {
        if (j == swap_row) {
            out.append_row(c);
            continue;
        }
        ZVec row = lat.row(j);
        Integer shift = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i] == 0) continue;  // i in K
            if (row[i] > 0) continue;
            Integer need;
            Integer neg = -row[i];
            mpz_fdiv_q(need.get_mpz_t(), neg.get_mpz_t(), c[i].get_mpz_t());
            need += 1;
            if (need > shift) shift = need;
        }
        for (std::size_t i = 0; i < k; ++i) row[i] += shift * c[i];
        out.append_row(row);
    }
    return out;
}

RelationData relation_data(const NilpotentCone& cone, const IndexSet& I) {
    RelationData d;
    d.I = I;
    d.S = relation_space(cone, I);
    FarkasSplit fs = farkas_split(d.S);
    d.K = fs.K;
    d.v = fs.v;
    d.v_tilde = fs.v_tilde;
    d.C = positive_basis(d.S, d.K);
    return d;
}

std::vector<IndexSet> all_index_sets(std::size_t k) {
    std::vector<IndexSet> out;
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        IndexSet I;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1UL << i)) I.push_back(static_cast<int>(i));
        out.push_back(I);
    }
    std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

IndexMap k_index_map(const NilpotentCone& cone, unsigned jobs, std::size_t max_generators) {
    if (cone.size() > max_generators)
        fail(ErrorKind::ConeTooLarge,
             std::to_string(cone.size()) + " generators exceed the cap of " + std::to_string(max_generators));
    std::vector<IndexSet> sets = all_index_sets(cone.size());
    std::vector<RelationData> table(sets.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::size_t err_index = sets.size();
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= sets.size()) return;
            try {
                table[i] = relation_data(cone, sets[i]);
            } catch (...) {
                // keep the failure of the first index set so reports do not depend on scheduling
                std::lock_guard<std::mutex> lk(err_mu);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(sets.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
    IndexMap out;
    out.table = std::move(table);
    std::set<IndexSet> seen;
    for (auto& d : out.table) {
        out.strata[d.K].push_back(d.I);
        seen.insert(d.K);
    }
    for (auto& I : sets)
        if (seen.count(I)) out.image.push_back(I);
    return out;
}

}  // namespace hodgechart
