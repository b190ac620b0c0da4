#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qlm/chain.hpp"
#include "qlm/freelie.hpp"
#include "qlm/graded.hpp"

namespace qlm {

// One summand of a reduced comultiplication value, a tensor a (x) b of two
// reduced basis elements (referenced by flat element ids).
struct TensorTerm {
    Rational coef;
    int a = 0;
    int b = 0;
};

// Cocommutative differential graded coalgebra, co-augmented, of finite type.
// Only the reduced part (positive degrees) is stored; the co-augmentation
// Q.1 in degree 0 is implicit, so the counit identities hold by construction
// and the full comultiplication is Delta c = c (x) 1 + 1 (x) c + reduced part.
//
// Construction validates, element by element up to the truncation:
// coassociativity, cocommutativity under the signed flip, compatibility of
// the differential with the comultiplication, and d^2 = 0.
class CDGCoalgebra {
public:
    CDGCoalgebra(GradedVectorSpace reduced, GradedLinearMap differential,
                 std::vector<std::vector<TensorTerm>> reduced_comultiplication, int truncation);

    const GradedVectorSpace& reduced() const { return complex_.space(); }
    const GradedLinearMap& differential() const { return complex_.differential(); }
    const ChainComplex& complex() const { return complex_; }
    int truncation() const { return trunc_; }

    // Flat ids enumerate the reduced basis in (degree, index) order.
    std::size_t element_count() const { return names_.size(); }
    int element_degree(int id) const { return degrees_[id]; }
    const std::string& element_name(int id) const { return names_[id]; }
    int element_id(int degree, std::size_t index) const;
    std::pair<int, std::size_t> element_position(int id) const { return positions_[id]; }

    const std::vector<TensorTerm>& reduced_terms(int id) const { return delta_[id]; }

    // Differential of a basis element expanded over flat ids.
    std::vector<std::pair<int, Rational>> d_of(int id) const;

private:
    void validate() const;
    ChainComplex complex_;
    std::vector<std::vector<TensorTerm>> delta_;
    int trunc_ = 0;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<std::pair<int, std::size_t>> positions_;
    std::map<std::pair<int, std::size_t>, int> id_of_;
};

// Chain coalgebra of a dgl: the free graded-commutative coalgebra on the
// suspension of the full (truncated) Lie basis, with the differential induced
// by d_L and the bracket. Wedge words are kept through total degree N.
struct CEData {
    CDGCoalgebra coalgebra;
    // For each reduced element id, the wedge word as a sorted list of Lie
    // basis ids of the source algebra.
    std::vector<std::vector<int>> words;
    std::shared_ptr<const LieBasis> source;
};

CEData ce_construction(const FreeDGL& dgl);

// Cobar-style construction: the free graded Lie algebra on the desuspended
// reduced part, with d0 from the coalgebra differential and d1 from the
// reduced comultiplication. Requires the reduced part to live in degrees
// >= 2. d^2 = 0 is re-verified on the output.
FreeDGL quillen_construction(const CDGCoalgebra& c);

// Degreewise dual, for inspection: a commutative graded algebra with the
// transposed differential (degree +1) and the product dual to the
// comultiplication. Ids and names match the coalgebra's reduced basis; the
// unit is implicit.
struct DualAlgebra {
    GradedVectorSpace space;
    GradedLinearMap differential;
    // (a, b) -> product expansion over flat ids; pairs with zero product are
    // absent.
    std::map<std::pair<int, int>, std::map<int, Rational>> product;
};

DualAlgebra dualize(const CDGCoalgebra& c);

// Compares homology dimensions of L and of the composite construction
// applied to L, per degree up to the comparison cutoff N-2.
struct AdjunctionReport {
    int cutoff = 0;
    // degree -> (dim H(L), dim H of the round trip)
    std::map<int, std::pair<std::size_t, std::size_t>> dims;
    bool ok = true;
};

AdjunctionReport adjunction_homology_check(const FreeDGL& l);

}  // namespace qlm
