#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlm/chain.hpp"
#include "qlm/graded.hpp"

namespace qlm {

// Generator of a free graded Lie algebra. Degrees are >= 1 (connected dgl's).
struct Generator {
    std::string name;
    int degree;
    bool operator==(const Generator& o) const { return name == o.name && degree == o.degree; }
};

// A tensor polynomial: Q-linear combination of words over generator indices.
using TensorPoly = std::map<std::vector<int>, Rational>;

class LieElement;

// Basis context for the free graded Lie algebra L_V on a generator list,
// truncated at total degree N. The basis in each degree consists of standard
// bracketings of Lyndon words over the generator alphabet, together with
// [u,u] for each Lyndon bracketing u of odd total degree (the graded
// antisymmetry convention makes those nonzero). Basis words are ordered by
// (bracket length, foliage) within each degree, so element coordinates are
// canonical and equality is a syntactic check.
//
// Brackets are computed inside the tensor algebra, where [x,y] :=
// xy - (-1)^{deg x deg y} yx, and converted back to basis coordinates by an
// exact linear solve per content multiset; the conversion fails loudly if the
// alleged basis ever fails to be one.
class LieBasis : public std::enable_shared_from_this<LieBasis> {
public:
    // Bracket tree node: a leaf holds a generator, otherwise two subtree ids.
    struct Word {
        int left = -1, right = -1;  // tree ids; leaf when left < 0
        int generator = -1;         // leaf payload
        int degree = 0;
        int length = 0;              // number of leaves
        std::vector<int> foliage;    // generator indices, left to right
    };

    static std::shared_ptr<const LieBasis> make(std::vector<Generator> generators,
                                                int truncation);

    const std::vector<Generator>& generators() const { return gens_; }
    int truncation() const { return trunc_; }
    int generator_index(const std::string& name) const;  // -1 when absent

    // Basis words of one total degree, in canonical order.
    const std::vector<int>& basis(int degree) const;  // global basis ids
    std::size_t dim(int degree) const { return basis(degree).size(); }

    int degree_of(int basis_id) const;
    int length_of(int basis_id) const;
    const Word& word(int basis_id) const;
    std::string word_string(int basis_id) const;  // nested bracket form

    // Tree-level access (subtrees of basis words are again basis words).
    const Word& word_tree(int tree_id) const { return trees_[tree_id]; }
    int tree_of(int basis_id) const { return basis_ids_[basis_id]; }
    int basis_pos(int tree_id) const {
        return tree_id < static_cast<int>(basis_pos_of_tree_.size()) ? basis_pos_of_tree_[tree_id]
                                                                     : -1;
    }
    // (degree, index within that degree's basis list).
    std::pair<int, std::size_t> degree_position(int basis_id) const;

    std::size_t basis_count() const { return basis_ids_.size(); }

    // The generator space V as a graded vector space (basis = generator names).
    GradedVectorSpace generator_space() const;
    // The whole truncated L_V, basis = printed basis words.
    GradedVectorSpace lie_space() const;

    LieElement zero() const;
    LieElement generator_element(const std::string& name) const;
    LieElement basis_element(int basis_id) const;

    // Expansion of a basis word in the tensor algebra.
    const TensorPoly& expansion(int basis_id) const;

    // Converts a tensor polynomial lying in L_V to basis coordinates.
    // Throws InvariantError if the polynomial is not in the Lie span.
    std::map<int, Rational> from_tensor(const TensorPoly& poly) const;

    // Structure constants [u, v] for basis words; cached.
    const std::map<int, Rational>& bracket_words(int u, int v) const;

private:
    LieBasis() = default;
    void build();
    int intern_leaf(int gen);
    int intern_node(int left, int right);
    int standard_bracketing(const std::vector<int>& lyndon);

    struct ContentBlock {
        std::vector<int> members;                     // basis ids with this content
        std::vector<std::vector<int>> row_words;      // tensor words (row order)
        std::map<std::vector<int>, std::size_t> row_index;
        std::shared_ptr<LinearSolver> solver;
    };
    const ContentBlock& content_block(const std::vector<int>& content) const;

    std::vector<Generator> gens_;
    int trunc_ = 0;
    std::vector<Word> trees_;
    std::map<std::pair<int, int>, int> node_index_;   // (left,right) -> tree id
    std::vector<int> leaf_index_;                     // generator -> tree id
    std::vector<int> basis_ids_;                      // basis position -> tree id
    std::vector<int> basis_pos_of_tree_;              // tree id -> basis position or -1
    std::map<int, std::vector<int>> by_degree_;       // degree -> basis positions
    std::map<std::vector<int>, std::vector<int>> by_content_;
    mutable std::vector<std::unique_ptr<TensorPoly>> expansions_;
    mutable std::map<std::vector<int>, std::unique_ptr<ContentBlock>> blocks_;
    mutable std::map<std::pair<int, int>, std::map<int, Rational>> bracket_cache_;
};

// Q-linear combination of basis words of L_V, keyed by canonical basis ids.
class LieElement {
public:
    LieElement() = default;
    explicit LieElement(std::shared_ptr<const LieBasis> basis) : basis_(std::move(basis)) {}
    LieElement(std::shared_ptr<const LieBasis> basis, std::map<int, Rational> coords);

    const std::shared_ptr<const LieBasis>& basis() const { return basis_; }
    const std::map<int, Rational>& coords() const { return coords_; }

    bool is_zero() const { return coords_.empty(); }
    // Degree when homogeneous; throws for inhomogeneous nonzero elements.
    int degree() const;
    bool is_homogeneous() const;
    LieElement homogeneous_component(int degree) const;
    // Part of the given bracket length.
    LieElement length_component(int length) const;

    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator*(const Rational& scalar) const;
    LieElement operator-() const;
    bool operator==(const LieElement& o) const;

    std::string str() const;  // canonical text form

    TensorPoly expand() const;

private:
    friend LieElement bracket(const LieElement&, const LieElement&);
    std::shared_ptr<const LieBasis> basis_;
    std::map<int, Rational> coords_;  // basis id -> coefficient, no zeros
};

// Graded Lie bracket. Throws TruncationError when the result degree would
// exceed the basis truncation.
LieElement bracket(const LieElement& x, const LieElement& y);

// Parses the textual element syntax, e.g. "[v,[v,w]] - 1/2*[w,w]" or "0".
LieElement parse_lie_element(const std::shared_ptr<const LieBasis>& basis,
                             const std::string& text);

// Re-expresses an element in another basis context whose generator list
// contains all generators of the element's context (by name and degree).
LieElement transfer(const LieElement& x, const std::shared_ptr<const LieBasis>& target);

// Degree-homogeneous derivation of L_V given by its values on generators,
// extended by the graded Leibniz rule.
class Derivation {
public:
    Derivation(std::shared_ptr<const LieBasis> basis, int degree,
               std::vector<LieElement> generator_values);

    int degree() const { return degree_; }
    const std::shared_ptr<const LieBasis>& basis() const { return basis_; }
    const LieElement& value_on_generator(std::size_t i) const { return values_[i]; }

    LieElement apply(const LieElement& x) const;
    LieElement apply_to_word(int basis_id) const;

private:
    std::shared_ptr<const LieBasis> basis_;
    int degree_;
    std::vector<LieElement> values_;
    mutable std::map<int, LieElement> word_cache_;
};

// Free dgl: L_V with a degree -1 differential, stored as an N-jet.
// d^2 = 0 is verified on the generators at construction (enough, since d^2 is
// again a derivation).
class FreeDGL {
public:
    FreeDGL(std::shared_ptr<const LieBasis> basis, std::vector<LieElement> differential_values);

    // Convenience: build basis and differential from generator data and
    // element text (empty string or "0" for zero differential).
    static FreeDGL make(const std::vector<Generator>& generators, int truncation,
                        const std::map<std::string, std::string>& differential_text = {});

    const std::shared_ptr<const LieBasis>& basis() const { return basis_; }
    const std::vector<Generator>& generators() const { return basis_->generators(); }
    int truncation() const { return basis_->truncation(); }
    const Derivation& differential() const { return d_; }

    LieElement d(const LieElement& x) const { return d_.apply(x); }

    // The chain complex (V, d_V) with d_V the linear part of d.
    ChainComplex linear_part() const;
    GradedLinearMap linear_part_map() const;
    bool is_minimal() const;

    // Underlying chain complex on the full basis of L_V (degrees <= N).
    const ChainComplex& chain_complex() const;
    // Homology dimensions are only reliable for degrees <= N-1.
    int reliable_degree() const { return basis_->truncation() - 1; }

private:
    std::shared_ptr<const LieBasis> basis_;
    Derivation d_;
    mutable std::shared_ptr<ChainComplex> complex_;
};

// Morphism of free dgl's, given by generator images; checked to be a chain
// map on generators.
class DGLMorphism {
public:
    DGLMorphism(const FreeDGL& source, const FreeDGL& target, std::vector<LieElement> images,
                bool check = true);

    static DGLMorphism identity(const FreeDGL& dgl);
    // Source generators are mapped to the target generators of the same name.
    static DGLMorphism inclusion(const FreeDGL& source, const FreeDGL& target);

    const FreeDGL& source() const { return *source_; }
    const FreeDGL& target() const { return *target_; }
    const std::vector<LieElement>& generator_images() const { return images_; }

    LieElement apply(const LieElement& x) const;
    DGLMorphism compose_after(const DGLMorphism& first) const;  // this o first

    // Matrix form on the full bases of the truncated Lie algebras.
    GradedLinearMap as_graded_map() const;

private:
    LieElement apply_tree(int tree_id) const;
    std::shared_ptr<const FreeDGL> source_, target_;
    std::vector<LieElement> images_;
    mutable std::map<int, LieElement> word_cache_;
};

}  // namespace qlm
