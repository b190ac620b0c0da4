#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qlm/cecobar.hpp"
#include "qlm/chain.hpp"
#include "qlm/freelie.hpp"

namespace qlm {

// A free Lie model together with a note on which space it models.
struct LieModelOfSpace {
    FreeDGL dgl;
    std::string provenance;
};

// Model of the n-sphere: one generator of degree n-1, zero differential.
LieModelOfSpace sphere_model(int n, int truncation);

// A cell to be attached: a fresh generator name, the cell dimension (>= 2),
// and the attaching class, a cycle of degree dimension-2 in the current
// model (zero for cells attached trivially).
struct AttachedCell {
    std::string name;
    int dimension = 0;
    LieElement attach;
};

// Extends the model by one generator of degree dimension-1 per cell, with
// differential equal to the attaching class.
LieModelOfSpace attach_cells(const LieModelOfSpace& model,
                             const std::vector<AttachedCell>& cells);

// Declarative cell-by-cell description of a finite complex built in stages
// of strictly increasing cell dimension. Attaching classes are given in the
// element syntax, interpreted in the model of all earlier stages. The
// filtration value of a stage defaults to its cell dimension.
struct CellStage {
    int dimension = 0;
    std::optional<Rational> time;
    std::vector<std::pair<std::string, std::string>> cells;  // (name, attaching class)
};

struct CellComplexDescription {
    std::vector<CellStage> stages;
};

// Stagewise models of the skeleta; the structure map between consecutive
// stages is the generator inclusion.
struct SkeletalModel {
    std::vector<Rational> times;
    std::vector<LieModelOfSpace> stages;

    DGLMorphism inclusion(std::size_t i) const;  // stage i -> stage i+1
};

SkeletalModel skeletal_persistence_model(const CellComplexDescription& desc, int truncation);

// Minimal model with the quasi-isomorphisms relating it to the input:
// projection o section is the identity of the minimal model, and both maps
// are verified chain maps.
struct Minimalization {
    FreeDGL minimal;
    DGLMorphism projection;  // input -> minimal
    DGLMorphism section;     // minimal -> input
};

Minimalization minimalize(const FreeDGL& dgl);

// Rational homotopy groups read off the model: the rank in homotopy degree
// k+1 is the homology rank of the model in degree k, and the bracket table
// carries the induced bracket on chosen homology representatives.
struct PiStar {
    std::map<int, std::size_t> dims;  // homotopy degree -> rank
    // (degree p, class i, degree q, class j) -> coordinates of the bracket
    // of the representatives in the degree p+q homology basis. Degrees here
    // are homology degrees.
    std::map<std::tuple<int, std::size_t, int, std::size_t>, std::vector<Rational>> brackets;
    int reliable_degree = 0;  // homology degrees beyond this are omitted
};

PiStar pi_star(const FreeDGL& model);

// Homology of the modeled space, read off a minimal model: the unit in
// degree 0 plus one class per generator, shifted up by one. Rejects
// non-minimal input.
GradedVectorSpace h_star(const FreeDGL& minimal_model);

// The projection from the chain coalgebra of the model onto the shifted
// generator space with the unit adjoined; a verified chain map, and a
// quasi-isomorphism at sufficient truncation.
struct CEProjection {
    std::shared_ptr<ChainComplex> source;
    std::shared_ptr<ChainComplex> target;
    GradedLinearMap map;

    ChainMap chain_map() const { return ChainMap(*source, *target, map); }
};

CEProjection ce_projection(const FreeDGL& model);

// Generator-component extraction of a morphism: the induced map on
// indecomposables, a degree-0 map between the generator spaces.
GradedLinearMap lie_representative_linear_part(const DGLMorphism& rep);

}  // namespace qlm
