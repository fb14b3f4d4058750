#pragma once

#include "hodgechart/linalg.hpp"

#include <string>
#include <vector>

namespace hodgechart {

using IndexSet = std::vector<int>;  // sorted, 0-based

enum class FormSymmetry { Symmetric, Alternating };

struct NilpotentCone {
    std::size_t dim = 0;
    int weight = 0;
    RationalMatrix form;
    FormSymmetry symmetry = FormSymmetry::Alternating;
    std::vector<RationalMatrix> generators;

    std::size_t size() const { return generators.size(); }
    RationalMatrix sum(const IndexSet& I) const;
    // Checks shape, form symmetry, nilpotency, commutation and Q-invariance.
    void validate() const;
};

IndexSet normalize_index_set(IndexSet I, std::size_t k);

class WeightFiltration {
  public:
    WeightFiltration() = default;
    // steps[i] = W_{lo+i}; the last step is the full space
    WeightFiltration(int center, int lo, std::vector<Subspace> steps);

    int center() const { return center_; }
    int lowest() const { return lo_; }   // W_{lo-1} = 0
    int highest() const { return lo_ + static_cast<int>(steps_.size()) - 1; }  // W_hi = full
    std::size_t ambient_dim() const { return ambient_; }
    Subspace step(int l) const;
    bool operator==(const WeightFiltration& o) const;
    bool operator!=(const WeightFiltration& o) const { return !(*this == o); }

  private:
    int center_ = 0;
    int lo_ = 0;
    std::size_t ambient_ = 0;
    std::vector<Subspace> steps_;
};

struct GradedPiece {
    int level = 0;
    std::size_t dimension = 0;
    std::vector<RVec> representatives;  // lifts to the ambient space
};

WeightFiltration weight_filtration(const RationalMatrix& n, int center);

// Infinitesimal isometries of Q, as a subspace of flattened d x d matrices.
Subspace isometry_algebra(const RationalMatrix& q);
// Matrix of ad X on the canonical basis of g (column j = coordinates of [X, g_j]).
RationalMatrix adjoint_matrix(const RationalMatrix& x, const Subspace& g);
// W(ad N_I) on g, centered 0; steps are stored inside Q^{d^2}.
WeightFiltration adjoint_filtration(const NilpotentCone& cone, const IndexSet& I);

std::vector<GradedPiece> graded_pieces(const WeightFiltration& w);
GradedPiece graded_piece(const WeightFiltration& w, int level);

struct InducedMap {
    int level = 0;              // source level a
    RationalMatrix matrix;      // Gr_a -> Gr_{a+shift} in representative bases
};
std::vector<InducedMap> induced_map(const RationalMatrix& m, const WeightFiltration& w, int shift);
RationalMatrix induced_map_at(const RationalMatrix& m, const WeightFiltration& w, int shift, int level);

struct PrimitivePiece {
    int a = 0;
    int level = 0;              // a + n
    GradedPiece graded;         // the ambient graded piece Gr_{a+n}
    std::vector<RVec> representatives;  // lifts of a basis of the primitive subspace
};
PrimitivePiece primitive_subspace(const NilpotentCone& cone, const IndexSet& I, int a);
RationalMatrix polarization_form(const NilpotentCone& cone, const IndexSet& I, int a);
// Q(u, N_I^a v) on arbitrary representatives
RationalMatrix polarization_form_on(const NilpotentCone& cone, const IndexSet& I, int a,
                                    const std::vector<RVec>& reps);

struct RwfpReport {
    IndexSet I, I_prime;
    bool premise = false;        // N_{I'} ∈ W_{-1}(ad N_I)
    bool filtrations_equal = false;
    bool consistent = true;      // premise implies equality
    WeightFiltration w_I, w_I_prime;
};
RwfpReport rwfp_consequence_check(const NilpotentCone& cone, const IndexSet& I, const IndexSet& I_prime);

}  // namespace hodgechart
