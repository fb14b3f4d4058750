#pragma once

#include "hodgechart/linalg.hpp"

#include <array>
#include <optional>
#include <vector>

namespace hodgechart {

struct SurfaceComponent {
    std::array<long, 5> h{};  // h^0 .. h^4
};

struct DoubleCurve {
    int a = 0, b = 0;  // components, a < b
    long genus = 0;
    long self_a = 0;   // D^2 on X_a
    long self_b = 0;   // D^2 on X_b
};

struct TriplePoint {
    std::array<int, 3> comps{};   // i < j < k
    std::array<int, 3> curves{};  // curves D_ij, D_ik, D_jk
};

struct NCDSurface {
    std::vector<SurfaceComponent> components;
    std::vector<DoubleCurve> curves;
    std::vector<TriplePoint> points;
    std::optional<RationalMatrix> r_odd;  // H^1(X^[1]) -> H^1(X^[2])
    std::optional<RationalMatrix> g_odd;  // H^1(X^[2]) -> H^3(X^[1]); defaults to r_odd^T
    void validate() const;
};

struct WeightComplexes {
    // H^0(X^[1]) -R1-> H^0(X^[2]) -R2-> H^0(X^[3])
    RationalMatrix r1, r2;
    // H^0(X^[3]) -G3-> H^2(X^[2]) -G2-> H^4(X^[1])
    RationalMatrix g3, g2;
    // H^0(X^[2]) -A=(G',R)-> H^2(X^[1]) + H^0(X^[3]) -B=(R',G)-> H^2(X^[2])
    RationalMatrix a, b;
    // H^1(X^[1]) -R_odd-> H^1(X^[2]) and H^1(X^[2]) -G_odd-> H^3(X^[1])
    RationalMatrix r_odd, g_odd;
    std::size_t h2_model_dim = 0;             // dim of the H^2(X^[1]) model
    std::vector<std::size_t> h2_class_rank;   // per component: rank of the curve-class span
};

struct GradedDims {
    std::array<std::size_t, 5> dims{};  // I_0 .. I_4
};

WeightComplexes build_weight_complexes(const NCDSurface& x);
std::vector<bool> triple_point_check(const NCDSurface& x);
bool friedman_check(const WeightComplexes& w);
bool compositions_vanish(const WeightComplexes& w);
GradedDims graded_dims(const WeightComplexes& w);

struct MonodromyGradedReport {
    std::size_t even_source = 0, even_target = 0, odd_source = 0, odd_target = 0;
    RationalMatrix even_map, odd_map;  // ker G -> coker R in chosen bases
    bool even_iso = false, odd_iso = false;
};
MonodromyGradedReport monodromy_graded_maps(const WeightComplexes& w);

struct DualGraph {
    std::vector<long> genus;                 // per vertex
    std::vector<std::array<int, 2>> edges;
};
std::array<long, 3> curve_lmhs(const DualGraph& g);

}  // namespace hodgechart
