#pragma once

#include "hodgechart/filtrations.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace hodgechart {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// F^p = span of the first dims[p] columns of basis, p = 0..n.
struct FlagPoint {
    int n = 0;
    std::vector<std::size_t> dims;
    CMatrix basis;
    CMatrix level(int p) const;
};

struct HodgeDecomposition {
    std::vector<CMatrix> pieces;  // pieces[p] spans H^{p,n-p}
    double independence = 0;      // sigma_min / sigma_max of the stacked pieces
    double residual = 0;          // distance of the pieces from F^p and conj F^{n-p}
};

struct MetricOptions {
    double svd_threshold = 1e-10;
    double positivity_floor = 1e-12;
};

HodgeDecomposition hodge_decomposition(const FlagPoint& f, const CMatrix& q, const MetricOptions& opt = {});

struct Twist {
    std::vector<CMatrix> generators;  // zeta(w) = exp(sum w_j xi_j); empty means identity
    CMatrix eval(const std::vector<cplx>& w, std::size_t dim) const;
};

struct OrbitSpec {
    NilpotentCone cone;
    CMatrix q;
    std::vector<CMatrix> n;
    FlagPoint f0;
    Twist twist;
    std::size_t w_count = 0;
    // Checks the flag against the cone and that the twist commutes with every N_j.
    void validate(double tol = 1e-10) const;
};
OrbitSpec make_orbit(NilpotentCone cone, FlagPoint f0, Twist twist);

// z_j = log(t_j) / (2 pi i)
std::vector<cplx> z_from_t(const std::vector<cplx>& t);
CMatrix nilpotent_exp(const CMatrix& x);
CMatrix orbit_transform(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w);
FlagPoint orbit_flag(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w);

// Gram of F^n in i^n Q(u, conj v)
CMatrix top_gram(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w);
double log_det_lambda_z(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w,
                        const MetricOptions& opt = {});
double log_det_lambda(const OrbitSpec& orbit, const std::vector<cplx>& t, const std::vector<cplx>& w,
                      const MetricOptions& opt = {});
double augmented_log_det_z(const OrbitSpec& orbit, const std::vector<cplx>& z, const std::vector<cplx>& w,
                           const MetricOptions& opt = {});
double augmented_log_det(const OrbitSpec& orbit, const std::vector<cplx>& t, const std::vector<cplx>& w,
                         const MetricOptions& opt = {});
// log det of the Hodge-metric Gram of the first dims[p] frame vectors at a flag point
double hodge_log_det(const FlagPoint& f, const CMatrix& q, int p, const MetricOptions& opt = {});

// Graded metric on det F^n_lim along the stratum of I; z_j for j in I are ignored.
double boundary_log_det(const OrbitSpec& orbit, const IndexSet& I, const std::vector<cplx>& z,
                        const std::vector<cplx>& w, const MetricOptions& opt = {});

struct Ray {
    std::vector<double> alpha;    // t_j = c_j exp(-alpha_j L)
    std::vector<cplx> c;
    std::vector<double> L;
};
std::vector<double> default_L_grid();

struct ExpansionFit {
    int m = 0;
    double A = 0;
    double residual = 0;
    std::vector<double> candidate_residuals;  // index m
    std::vector<double> L, h;
};
// section < 0 fits det Gram(F^n); otherwise the squared norm of that frame vector
ExpansionFit expansion_fit(const OrbitSpec& orbit, const Ray& ray, const std::vector<cplx>& w, int section = -1,
                           double threshold = 1e-2);

double mixed_second_derivative(const std::function<double(cplx)>& f, cplx w0, double step);

struct CurvatureRow {
    double abs_t = 0;
    double value = 0;
    double boundary_value = 0;
    double error = 0;
};
struct CurvatureReport {
    std::vector<CurvatureRow> rows;
    bool decreasing = false;
    bool relative = true;      // error normalized by |boundary| when the boundary value is nonzero
    double final_error = 0;
};
struct CurvatureOptions {
    IndexSet I;
    std::vector<cplx> t_fixed;        // values for coordinates outside I (default 1)
    std::vector<cplx> w0;
    std::vector<cplx> direction;      // tangent direction in w (default first axis)
    std::vector<double> abs_t{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double step = 1e-2;
};
CurvatureReport curvature_limit_check(const OrbitSpec& orbit, const CurvatureOptions& opt);

// i * integral over {xy = t, |x|,|y| <= 1} of phi ∧ conj(phi), phi = g dx / x; g = sum c_ab x^a y^b
using Polynomial2 = std::map<std::pair<int, int>, cplx>;
double residue_integral(const Polynomial2& g, cplx t);
constexpr double kResidueNormalization = 4.0 * 3.14159265358979323846;
struct ResidueSweep {
    std::vector<double> abs_t, value;
    double slope = 0;             // d value / d log|t|^{-1}
    double normalized_slope = 0;  // slope / kResidueNormalization
};
ResidueSweep residue_sweep(const Polynomial2& g, const std::vector<double>& abs_t);

}  // namespace hodgechart
