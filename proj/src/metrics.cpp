#include "hodgechart/metrics.hpp"

#include "hodgechart/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hodgechart {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
// errors below this are roundoff and count as converged
constexpr double kConvergedFloor = 1e-9;

cplx ipow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

CMatrix to_complex(const RationalMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
    return out;
}

// Orthonormal basis of the null space of m, rank cut at threshold * sigma_max.
CMatrix null_space(const CMatrix& m, double threshold) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0) return CMatrix::Identity(cols, cols);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double smax = s.size() > 0 ? s(0) : 0.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold * std::max(smax, 1.0)) ++r;
    return svd.matrixV().rightCols(cols - r);
}

CMatrix orthonormalize(const CMatrix& m, double threshold) {
    if (m.cols() == 0) return m;
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    double smax = s(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold * std::max(smax, 1.0)) ++r;
    return svd.matrixU().leftCols(r);
}

// Intersection of column spans.
CMatrix intersect_spans(const CMatrix& a, const CMatrix& b, double threshold) {
    CMatrix qa = orthonormalize(a, threshold), qb = orthonormalize(b, threshold);
    CMatrix stacked(a.rows(), qa.cols() + qb.cols());
    stacked << qa, -qb;
    CMatrix ns = null_space(stacked, threshold);
    return orthonormalize(qa * ns.topRows(qa.cols()), threshold);
}

double hermitian_log_det(const CMatrix& g, double floor, const char* what) {
    CMatrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    double total = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (!(ev(i) > floor * scale)) {
            std::ostringstream os;
            os << what << ": Gram matrix not positive definite (eigenvalue " << ev(i) << ")";
            throw DomainError("NotPolarized", os.str());
        }
        total += std::log(ev(i));
    }
    return total;
}

void check_args(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w) {
    if (z.size() != orbit.n.size()) fail(ErrorKind::Schema, "orbit: expected one coordinate per generator");
    if (w.size() < orbit.w_count) fail(ErrorKind::Schema, "orbit: too few twist coordinates");
}

}  // namespace

CMatrix FlagPoint::level(int p) const {
    if (p < 0) p = 0;
    if (p > n) return CMatrix(basis.rows(), 0);
    return basis.leftCols(static_cast<Eigen::Index>(dims[p]));
}

HodgeDecomposition hodge_decomposition(const FlagPoint& f, const CMatrix& q, const MetricOptions& opt) {
    const Eigen::Index d = f.basis.rows();
    HodgeDecomposition out;
    std::vector<Eigen::Index> widths;
    Eigen::Index total = 0;
    for (int p = 0; p <= f.n; ++p) {
        CMatrix fp = f.level(p);
        CMatrix fq = f.level(f.n - p).conjugate();
        CMatrix piece = intersect_spans(fp, fq, opt.svd_threshold);
        auto expected = static_cast<Eigen::Index>(f.dims[p] - (p + 1 <= f.n ? f.dims[p + 1] : 0));
        if (piece.cols() != expected) {
            std::ostringstream os;
            os << "H^{" << p << "," << f.n - p << "} has dimension " << piece.cols() << ", expected " << expected;
            throw DomainError("NotPolarized", os.str());
        }
        if (piece.cols() > 0) {
            out.residual = std::max(out.residual, (fp * fp.completeOrthogonalDecomposition().solve(piece) - piece).norm());
        }
        total += piece.cols();
        widths.push_back(piece.cols());
        out.pieces.push_back(piece);
    }
    if (total != d) throw DomainError("NotPolarized", "Hodge pieces do not span the space");
    CMatrix stacked(d, d);
    Eigen::Index c = 0;
    for (const auto& piece : out.pieces) {
        stacked.middleCols(c, piece.cols()) = piece;
        c += piece.cols();
    }
    Eigen::JacobiSVD<CMatrix> svd(stacked);
    const auto& s = svd.singularValues();
    out.independence = d > 0 ? s(d - 1) / s(0) : 1.0;
    if (out.independence < 1e-8) throw DomainError("NotPolarized", "Hodge pieces are not in direct sum");

    // first bilinear relation Q(F^p, F^{n-p+1}) = 0
    double qscale = std::max(1.0, q.norm());
    for (int p = 1; p <= f.n; ++p) {
        CMatrix a = f.level(p), b = f.level(f.n - p + 1);
        if (a.cols() == 0 || b.cols() == 0) continue;
        if ((a.transpose() * q * b).norm() > 1e-8 * qscale * std::max(1.0, a.norm() * b.norm()))
            throw DomainError("NotPolarized", "first bilinear relation fails");
    }
    for (int p = 0; p <= f.n; ++p) {
        const CMatrix& u = out.pieces[p];
        if (u.cols() == 0) continue;
        CMatrix g = ipow(2 * p - f.n) * (u.transpose() * q * u.conjugate());
        hermitian_log_det(g, opt.positivity_floor, "second bilinear relation");
    }
    return out;
}

CMatrix Twist::eval(const std::vector<cplx>& w, std::size_t dim) const {
    CMatrix x = CMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < generators.size(); ++j) x += w[j] * generators[j];
    if (generators.empty()) return CMatrix::Identity(dim, dim);
    return x.exp();
}

void OrbitSpec::validate(double tol) const {
    cone.validate();
    const auto d = static_cast<Eigen::Index>(cone.dim);
    if (f0.n != cone.weight) fail(ErrorKind::Schema, "orbit: flag length does not match the weight");
    if (f0.basis.rows() != d || f0.basis.cols() != d) fail(ErrorKind::Schema, "orbit: flag basis must be square of size dim");
    if (f0.dims.size() != static_cast<std::size_t>(f0.n) + 1 || f0.dims[0] != cone.dim)
        fail(ErrorKind::Schema, "orbit: dims must list dim F^p for p = 0..n with F^0 = V");
    for (int p = 1; p <= f0.n; ++p)
        if (f0.dims[p] > f0.dims[p - 1]) fail(ErrorKind::Schema, "orbit: flag dims must decrease");
    for (const auto& xi : twist.generators) {
        if (xi.rows() != d || xi.cols() != d) fail(ErrorKind::Schema, "orbit: twist generator has wrong shape");
        for (const auto& nj : n)
            if ((xi * nj - nj * xi).norm() > tol * std::max(1.0, xi.norm() * nj.norm()))
                fail(ErrorKind::Schema, "orbit: twist generator does not commute with the monodromy");
        if ((xi.transpose() * q + q * xi).norm() > tol * std::max(1.0, xi.norm()))
            fail(ErrorKind::Schema, "orbit: twist generator does not preserve the form");
    }
    // horizontality: N_j F^p ⊆ F^{p-1}
    for (const auto& nj : n) {
        for (int p = 1; p <= f0.n; ++p) {
            CMatrix img = nj * f0.level(p);
            CMatrix target = orthonormalize(f0.level(p - 1), 1e-10);
            if ((img - target * (target.adjoint() * img)).norm() > 1e-8 * std::max(1.0, img.norm()))
                fail(ErrorKind::Schema, "orbit: monodromy is not horizontal at the base flag");
        }
    }
}

OrbitSpec make_orbit(NilpotentCone cone, FlagPoint f0, Twist twist) {
    OrbitSpec o;
    o.q = to_complex(cone.form);
    for (const auto& g : cone.generators) o.n.push_back(to_complex(g));
    o.cone = std::move(cone);
    o.f0 = std::move(f0);
    o.w_count = twist.generators.size();
    o.twist = std::move(twist);
    return o;
}

std::vector<cplx> z_from_t(const std::vector<cplx>& t) {
    std::vector<cplx> z;
    for (const auto& tj : t) {
        if (std::abs(tj) == 0.0) throw DomainError("NotInDomain", "t must be nonzero");
        z.push_back(std::log(tj) / (2.0 * kPi * kI));
    }
    return z;
}

CMatrix nilpotent_exp(const CMatrix& x) {
    const Eigen::Index d = x.rows();
    CMatrix out = CMatrix::Identity(d, d), term = CMatrix::Identity(d, d);
    for (Eigen::Index k = 1; k <= d; ++k) {
        term = term * x / static_cast<double>(k);
        if (term.norm() == 0.0) break;
        out += term;
    }
    return out;
}

CMatrix orbit_transform(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w) {
    check_args(orbit, z, w);
    const auto d = static_cast<Eigen::Index>(orbit.cone.dim);
    CMatrix x = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < z.size(); ++j) x += z[j] * orbit.n[j];
    return nilpotent_exp(x) * orbit.twist.eval(w, orbit.cone.dim);
}

FlagPoint orbit_flag(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w) {
    FlagPoint f = orbit.f0;
    f.basis = orbit_transform(orbit, z, w) * orbit.f0.basis;
    return f;
}

CMatrix top_gram(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w) {
    CMatrix top = orbit_flag(orbit, z, w).level(orbit.f0.n);
    return ipow(orbit.f0.n) * (top.transpose() * orbit.q * top.conjugate());
}

double log_det_lambda_z(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w,
                        const MetricOptions& opt) {
    return hermitian_log_det(top_gram(orbit, z, w), opt.positivity_floor, "Hodge bundle metric");
}

double log_det_lambda(const OrbitSpec& orbit, const std::vector<cplx>& t, const std::vector<cplx>& w,
                      const MetricOptions& opt) {
    return log_det_lambda_z(orbit, z_from_t(t), w, opt);
}

double hodge_log_det(const FlagPoint& f, const CMatrix& q, int p, const MetricOptions& opt) {
    if (p > f.n || f.dims[p] == 0) return 0.0;
    HodgeDecomposition hd = hodge_decomposition(f, q, opt);
    const Eigen::Index d = f.basis.rows();
    CMatrix stacked(d, d);
    Eigen::VectorXcd weights(d);
    Eigen::Index c = 0;
    for (int k = 0; k <= f.n; ++k) {
        const auto& piece = hd.pieces[k];
        stacked.middleCols(c, piece.cols()) = piece;
        weights.segment(c, piece.cols()).setConstant(ipow(2 * k - f.n));
        c += piece.cols();
    }
    // Weil operator C = i^{p-q} on H^{p,q}
    CMatrix weil = stacked * weights.asDiagonal() * stacked.inverse();
    CMatrix frame = f.level(p);
    CMatrix g = (weil * frame).transpose() * q * frame.conjugate();
    return hermitian_log_det(g, opt.positivity_floor, "Hodge metric");
}

double augmented_log_det_z(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w,
                           const MetricOptions& opt) {
    FlagPoint f = orbit_flag(orbit, z, w);
    const int n = f.n;
    double total = 0;
    for (int p = 0; 2 * p <= n - 1; ++p) {
        int np = (n - p + 1) / 2;
        double upper = hodge_log_det(f, orbit.q, n - p, opt);
        double lower = n - p + 1 <= n ? hodge_log_det(f, orbit.q, n - p + 1, opt) : 0.0;
        total += np * (upper - lower);
    }
    return total;
}

double augmented_log_det(const OrbitSpec& orbit, const std::vector<cplx>& t, const std::vector<cplx>& w,
                         const MetricOptions& opt) {
    return augmented_log_det_z(orbit, z_from_t(t), w, opt);
}

double boundary_log_det(const OrbitSpec& orbit, const IndexSet& I, const std::vector<cplx>& z,
                        const std::vector<cplx>& w, const MetricOptions& opt) {
    check_args(orbit, z, w);
    IndexSet idx = normalize_index_set(I, orbit.cone.size());
    if (idx.empty()) return log_det_lambda_z(orbit, z, w, opt);
    const int n = orbit.f0.n;
    const auto d = static_cast<Eigen::Index>(orbit.cone.dim);

    std::vector<cplx> zr = z;
    for (int i : idx) zr[i] = 0.0;
    CMatrix phi = orbit_transform(orbit, zr, w) * orbit.f0.level(n);
    const Eigen::Index r = phi.cols();

    RationalMatrix nI = orbit.cone.sum(idx);
    CMatrix nIc = to_complex(nI);
    WeightFiltration wf = weight_filtration(nI, n);

    CMatrix taken(r, 0);
    double total = 0;
    for (int l = wf.lowest(); l <= wf.highest(); ++l) {
        Subspace wl = wf.step(l);
        CMatrix proj_perp = CMatrix::Identity(d, d);
        if (wl.dim() > 0) {
            CMatrix b = to_complex(wl.basis()).transpose();
            proj_perp -= b * (b.adjoint() * b).inverse() * b.adjoint();
        }
        CMatrix cl = null_space(proj_perp * phi, opt.svd_threshold);
        // new directions at this level: orthogonal complement of the previous levels inside C_l
        CMatrix fresh = cl;
        if (taken.cols() > 0) fresh = cl - taken * (taken.adjoint() * cl);
        fresh = orthonormalize(fresh, 1e-8);
        if (fresh.cols() == 0) continue;
        if (l < n) throw DomainError("NotPolarized", "limit of F^n meets W_{n-1}(N_I)");
        int a = l - n;
        CMatrix u = phi * fresh;
        CMatrix g = ipow(n - a) * (u.transpose() * orbit.q * nIc.pow(a) * u.conjugate());
        if (a == 0) g = ipow(n) * (u.transpose() * orbit.q * u.conjugate());
        total += hermitian_log_det(g, opt.positivity_floor, "graded boundary metric");
        CMatrix next(r, taken.cols() + fresh.cols());
        next << taken, fresh;
        taken = next;
    }
    if (taken.cols() != r) fail(ErrorKind::Internal, "boundary metric: incomplete adapted basis");
    return total;
}

std::vector<double> default_L_grid() {
    std::vector<double> out;
    for (int i = 0; i < 16; ++i) out.push_back(std::pow(10.0, 3.0 + 3.0 * i / 15.0));
    return out;
}

ExpansionFit expansion_fit(const OrbitSpec& orbit, const Ray& ray, const std::vector<cplx>& w, int section,
                           double threshold) {
    const std::size_t k = orbit.n.size();
    if (ray.alpha.size() != k) fail(ErrorKind::Schema, "ray: alpha must have one entry per generator");
    std::vector<cplx> c = ray.c.empty() ? std::vector<cplx>(k, cplx{1.0, 0.0}) : ray.c;
    if (c.size() != k) fail(ErrorKind::Schema, "ray: c must have one entry per generator");
    ExpansionFit fit;
    fit.L = ray.L.empty() ? default_L_grid() : ray.L;
    if (fit.L.size() < 3) fail(ErrorKind::Schema, "ray: need at least three samples");
    std::vector<double> logh, logL;
    for (double L : fit.L) {
        std::vector<cplx> z(k);
        for (std::size_t j = 0; j < k; ++j) {
            if (std::abs(c[j]) == 0.0) throw DomainError("NotInDomain", "ray: c_j must be nonzero");
            z[j] = (std::log(c[j]) - ray.alpha[j] * L) / (2.0 * kPi * kI);
        }
        CMatrix g = top_gram(orbit, z, w);
        double h;
        if (section < 0) {
            h = std::exp(hermitian_log_det(g, 1e-300, "expansion fit"));
        } else {
            if (section >= g.rows()) fail(ErrorKind::Schema, "ray: section index out of range");
            h = g(section, section).real();
            if (!(h > 0)) throw DomainError("NotPolarized", "section norm not positive");
        }
        fit.h.push_back(h);
        logh.push_back(std::log(h));
        logL.push_back(std::log(L));
    }
    const int max_m = 2 * orbit.f0.n;
    fit.residual = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= max_m; ++m) {
        std::vector<double> rest(logh.size());
        double mean = 0;
        for (std::size_t i = 0; i < logh.size(); ++i) {
            rest[i] = logh[i] - m * logL[i];
            mean += rest[i];
        }
        mean /= static_cast<double>(rest.size());
        double ss = 0;
        for (double v : rest) ss += (v - mean) * (v - mean);
        double rms = std::sqrt(ss / static_cast<double>(rest.size()));
        fit.candidate_residuals.push_back(rms);
        if (rms < fit.residual) {
            fit.residual = rms;
            fit.m = m;
            fit.A = std::exp(mean);
        }
    }
    if (fit.residual > threshold) {
        std::ostringstream os;
        os << "expansion fit residual " << fit.residual << " exceeds " << threshold << " (best m = " << fit.m << ")";
        fail(ErrorKind::PoorFit, os.str());
    }
    return fit;
}

double mixed_second_derivative(const std::function<double(cplx)>& f, cplx w0, double step) {
    auto estimate = [&](double h) {
        const double f0 = f(w0);
        auto second = [&](cplx dir) {
            double p2 = f(w0 + 2.0 * h * dir) - f0, p1 = f(w0 + h * dir) - f0;
            double m1 = f(w0 - h * dir) - f0, m2 = f(w0 - 2.0 * h * dir) - f0;
            return (16.0 * (p1 + m1) - (p2 + m2)) / (12.0 * h * h);
        };
        return 0.25 * (second({1, 0}) + second({0, 1}));
    };
    return (16.0 * estimate(step / 2) - estimate(step)) / 15.0;
}

CurvatureReport curvature_limit_check(const OrbitSpec& orbit, const CurvatureOptions& opt) {
    const std::size_t k = orbit.n.size();
    IndexSet I = normalize_index_set(opt.I, k);
    if (I.empty()) fail(ErrorKind::Schema, "curvature: index set must be nonempty");
    std::vector<cplx> tf = opt.t_fixed.empty() ? std::vector<cplx>(k, cplx{1.0, 0.0}) : opt.t_fixed;
    if (tf.size() != k) fail(ErrorKind::Schema, "curvature: t_fixed must have one entry per generator");
    std::vector<cplx> w0 = opt.w0.empty() ? std::vector<cplx>(orbit.w_count, cplx{0.0, 0.0}) : opt.w0;
    std::vector<cplx> dir = opt.direction;
    if (dir.empty()) {
        dir.assign(orbit.w_count, cplx{0.0, 0.0});
        if (!dir.empty()) dir[0] = 1.0;
    }
    if (w0.size() != orbit.w_count || dir.size() != orbit.w_count)
        fail(ErrorKind::Schema, "curvature: w0 and direction must match the twist dimension");

    auto shifted = [&](cplx s) {
        std::vector<cplx> w = w0;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += s * dir[j];
        return w;
    };
    std::vector<cplx> zfix = z_from_t(tf);
    auto boundary_f = [&](cplx s) { return boundary_log_det(orbit, I, zfix, shifted(s), {}); };
    double boundary = mixed_second_derivative(boundary_f, 0.0, opt.step);

    CurvatureReport rep;
    rep.relative = std::abs(boundary) > 1e-12;
    for (double at : opt.abs_t) {
        if (!(at > 0 && at < 1)) throw DomainError("NotInDomain", "curvature: |t| must lie in (0,1)");
        std::vector<cplx> t = tf;
        for (int i : I) t[i] = at;
        std::vector<cplx> z = z_from_t(t);
        auto f = [&](cplx s) { return log_det_lambda_z(orbit, z, shifted(s), {}); };
        CurvatureRow row;
        row.abs_t = at;
        row.value = mixed_second_derivative(f, 0.0, opt.step);
        row.boundary_value = boundary;
        row.error = std::abs(row.value - boundary) / (rep.relative ? std::abs(boundary) : 1.0);
        rep.rows.push_back(row);
    }
    rep.decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].error <= rep.rows[i - 1].error || rep.rows[i].error < kConvergedFloor))
            rep.decreasing = false;
    rep.final_error = rep.rows.empty() ? 0.0 : rep.rows.back().error;
    return rep;
}

double residue_integral(const Polynomial2& g, cplx t) {
    double at = std::abs(t);
    if (!(at > 0 && at < 1)) throw DomainError("NotInDomain", "residue: need 0 < |t| < 1");
    constexpr int kTheta = 64;
    auto ring = [&](double s) {
        double acc = 0;
        for (int j = 0; j < kTheta; ++j) {
            double theta = 2.0 * kPi * j / kTheta;
            cplx x = std::exp(cplx{s, theta});
            cplx y = t / x;
            cplx val = 0;
            for (const auto& [ab, coef] : g) val += coef * std::pow(x, ab.first) * std::pow(y, ab.second);
            acc += std::norm(val);
        }
        return 2.0 * acc * (2.0 * kPi / kTheta);
    };
    double lo = std::log(at);
    int panels = std::max(1, static_cast<int>(std::ceil(-lo)));
    double width = -lo / panels;
    double total = 0;
    for (int i = 0; i < panels; ++i) {
        double a = lo + i * width;
        total += boost::math::quadrature::gauss<double, 20>::integrate(ring, a, a + width);
    }
    return total;
}

ResidueSweep residue_sweep(const Polynomial2& g, const std::vector<double>& abs_t) {
    ResidueSweep out;
    if (abs_t.size() < 2) fail(ErrorKind::Schema, "residue: need at least two |t| values");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double at : abs_t) {
        double v = residue_integral(g, at);
        double x = -std::log(at);
        out.abs_t.push_back(at);
        out.value.push_back(v);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    double n = static_cast<double>(abs_t.size());
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.normalized_slope = out.slope / kResidueNormalization;
    return out;
}

}  // namespace hodgechart
