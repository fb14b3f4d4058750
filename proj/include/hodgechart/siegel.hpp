#pragma once

#include "hodgechart/linalg.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace hodgechart {

struct StandardTriple {
    RationalMatrix n, y, n_plus;
};

struct Sp4Setup {
    RationalMatrix q;
    std::vector<StandardTriple> triples;
};

// Builds the form and the two commuting triples; every bracket identity is checked exactly.
Sp4Setup build_setup();
RationalMatrix matrix_unit(std::size_t i, std::size_t j, std::size_t d = 4);  // 1-based

struct SiegelGenerator {
    double p = 0, q = 0, r = 0;
};

struct ConeSpec {
    std::vector<SiegelGenerator> generators;
    void validate(double tol = 1e-12) const;
    // N_j = -r_j (E13 + E24) - p_j E23 - q_j E14
    std::vector<RationalMatrix> nilpotents() const;
};

struct PQR {
    double p = 0, q = 0, r = 0;
};
PQR evaluate(const ConeSpec& cone, const std::vector<double>& y);
double discriminant(const ConeSpec& cone, const std::vector<double>& y);  // p q - r^2

using SpanMatrix = Eigen::Matrix<std::complex<double>, 4, 2>;
SpanMatrix orbit_point(const ConeSpec& cone, const std::vector<double>& y);
// relative distance of the period matrices over span{e3, e4}; projector distance otherwise
double span_distance(const SpanMatrix& a, const SpanMatrix& b);

struct MinimalSolution {
    double a = 0, d = 0, beta = 0;
};
struct MaximalSolution {
    double a = 0;
    Eigen::Matrix2d B;  // lower triangular, positive diagonal, det 1
};
MinimalSolution solve_minimal(const ConeSpec& cone, const std::vector<double>& y);
MaximalSolution solve_maximal(const ConeSpec& cone, const std::vector<double>& y);
// group element applied to the base point span{e3 - i e2, e4 - i e1}
SpanMatrix reconstruct(const MinimalSolution& s);
SpanMatrix reconstruct(const MaximalSolution& s);

enum class Parabolic { Minimal, Maximal };
Parabolic parse_parabolic(const std::string& s);
std::string parabolic_name(Parabolic p);

// y_j(T) = coef * T^exponent
struct FamilyComponent {
    double coef = 1;
    double exponent = 0;
};
using Family = std::vector<FamilyComponent>;
Family parse_family(const std::string& text);
std::vector<double> family_at(const Family& f, double T);
std::vector<double> default_T_grid();

struct MonitoredQuantity {
    std::string name;
    bool bounded_below = true;  // Siegel sets bound it from below (else from above)
    std::vector<double> values;
    double slope = 0;           // fitted exponent in T
    bool escapes = false;
};
struct ProbeResult {
    Parabolic parabolic = Parabolic::Minimal;
    std::vector<double> T;
    std::vector<MonitoredQuantity> monitors;
    bool escapes = false;
    std::string verdict;        // "escapes-every-Siegel-set" or "contained"
    double max_roundtrip_error = 0;
};
ProbeResult boundedness_probe(const ConeSpec& cone, const Family& family, Parabolic parabolic,
                              const std::vector<double>& T = default_T_grid(), double slope_threshold = 0.5);

}  // namespace hodgechart
