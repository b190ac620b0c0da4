#pragma once

#include <map>
#include <memory>
#include <optional>

#include "qlm/graded.hpp"

namespace qlm {

// Chain complex over Q: a graded space with a degree -1 differential.
// d o d = 0 is verified exactly on construction.
class ChainComplex {
public:
    ChainComplex() = default;
    ChainComplex(GradedVectorSpace space, GradedLinearMap differential);

    const GradedVectorSpace& space() const { return space_; }
    const GradedLinearMap& differential() const { return d_; }

private:
    GradedVectorSpace space_;
    GradedLinearMap d_;
};

// Homology of a chain complex with chosen representative cycles per class and
// a boundary-membership test. Representatives are deterministic given the
// fixed pivoting rules.
class Homology {
public:
    Homology() = default;
    explicit Homology(const ChainComplex& complex);

    const ChainComplex& complex() const { return *complex_; }
    const GradedVectorSpace& space() const { return h_space_; }
    std::size_t dim(int degree) const { return h_space_.dim(degree); }
    std::map<int, std::size_t> dims() const { return h_space_.dims(); }

    // Representative cycle of the i-th class in a degree, as coordinates in
    // the underlying space's basis.
    const std::vector<Rational>& representative(int degree, std::size_t i) const;

    bool is_cycle(int degree, const std::vector<Rational>& v) const;
    bool is_boundary(int degree, const std::vector<Rational>& cycle) const;

    // Class of a cycle in the chosen homology basis.
    std::vector<Rational> class_of(int degree, const std::vector<Rational>& cycle) const;

private:
    struct DegreeData {
        std::vector<std::vector<Rational>> reps;
        std::shared_ptr<LinearSolver> express;   // [reps | im d_{k+1}] solver
        std::shared_ptr<LinearSolver> boundary;  // d_{k+1} solver
    };
    std::shared_ptr<const ChainComplex> complex_;
    GradedVectorSpace h_space_;
    std::map<int, DegreeData> data_;
};

// Degree-0 chain map between complexes; commuting with differentials is
// checked on construction.
struct ChainMap {
    ChainMap(const ChainComplex& source, const ChainComplex& target, GradedLinearMap map);

    const ChainComplex& source;
    const ChainComplex& target;
    GradedLinearMap f;
};

// Induced map on homology, expressed in the chosen homology bases.
GradedLinearMap induced_on_homology(const ChainMap& f, const Homology& h_source,
                                    const Homology& h_target);

struct QuasiIsoReport {
    bool ok = true;
    std::optional<int> first_failing_degree;
};

// True iff H(f) is an isomorphism in every degree of [lo_degree, hi_degree].
QuasiIsoReport is_quasi_iso(const ChainMap& f, int lo_degree, int hi_degree);

}  // namespace qlm
