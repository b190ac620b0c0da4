#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlm/chain.hpp"
#include "qlm/freelie.hpp"
#include "qlm/graded.hpp"

namespace qlm {

// Finite strictly increasing list of critical values. Functors on the real
// line are represented by their restriction to such a grid, with constant
// interpolation to the right and the zero object before the first value.
class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Rational& at(std::size_t i) const { return values_.at(i); }

    // Largest index with value <= t, or -1 when t lies before the grid.
    int stage_at(const Rational& t) const;

    bool operator==(const Grid& o) const { return values_ == o.values_; }

private:
    std::vector<Rational> values_;
};

Grid merged(const Grid& a, const Grid& b);

// Persistence module of graded vector spaces: one object per grid point and
// one degree-0 structure map per consecutive pair.
class GrVecModule {
public:
    GrVecModule(Grid grid, std::vector<GradedVectorSpace> objects,
                std::vector<GradedLinearMap> steps);

    const Grid& grid() const { return grid_; }
    const GradedVectorSpace& object(std::size_t i) const { return objects_.at(i); }
    const GradedLinearMap& step(std::size_t i) const { return steps_.at(i); }  // i -> i+1

    // Composite structure map between grid indices i <= j.
    GradedLinearMap composite(std::size_t i, std::size_t j) const;

    // Constant-interpolation evaluation; the zero space before the grid.
    GradedVectorSpace space_at(const Rational& t) const;
    GradedLinearMap transition(const Rational& a, const Rational& b) const;

    bool operator==(const GrVecModule& o) const;

private:
    Grid grid_;
    std::vector<GradedVectorSpace> objects_;
    std::vector<GradedLinearMap> steps_;
};

// Reindexes the module downward: shift(m, d) at time t is m at time t+d.
GrVecModule shift(const GrVecModule& m, const Rational& delta);

// Half-open interval [birth, death), death absent for classes surviving the
// whole grid.
struct Interval {
    Rational birth;
    std::optional<Rational> death;

    bool operator==(const Interval& o) const { return birth == o.birth && death == o.death; }
    bool operator<(const Interval& o) const;
};

struct Barcode {
    // degree -> sorted intervals (with multiplicity)
    std::map<int, std::vector<Interval>> intervals;

    bool operator==(const Barcode& o) const { return intervals == o.intervals; }
};

// Interval decomposition via rank inclusion-exclusion; the induced rank
// function reproduces the rank of every composite structure map.
Barcode barcode(const GrVecModule& m);

enum class MatchEngine { automatic, bipartite, exhaustive };

// True when the two interval multisets admit a delta-matching: matched pairs
// cost max of endpoint distances, unmatched intervals must die within
// 2*delta of their birth, and infinite intervals must be matched to infinite
// ones.
bool delta_matchable(const std::vector<Interval>& a, const std::vector<Interval>& b,
                     const Rational& delta, MatchEngine engine = MatchEngine::automatic);

// Bottleneck distance per degree, maximized over degrees; nullopt means
// infinity (mismatched counts of infinite intervals).
std::optional<Rational> interleaving_distance(const Barcode& a, const Barcode& b,
                                              MatchEngine engine = MatchEngine::automatic);

// delta-interleaving data sampled on a grid: f[i]: X(sample i) -> Y(sample i
// + delta) and g[i] in the opposite direction.
struct InterleavingCertificate {
    Rational delta;
    Grid sample;
    std::vector<GradedLinearMap> f;
    std::vector<GradedLinearMap> g;
};

struct VerifyResult {
    bool ok = true;
    bool structural_error = false;
    std::string witness;
};

VerifyResult verify_interleaving(const GrVecModule& x, const GrVecModule& y,
                                 const InterleavingCertificate& cert);

// The canonical delta-interleaving between a module and its delta-shift:
// f is the 2*delta transition, g the identity.
InterleavingCertificate shift_certificate(const GrVecModule& x, const Rational& delta);

// Persistence module of free dgl's with dgl morphisms as structure maps.
class DGLModule {
public:
    DGLModule(Grid grid, std::vector<FreeDGL> objects, std::vector<DGLMorphism> steps);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return objects_.size(); }
    const FreeDGL& object(std::size_t i) const { return objects_.at(i); }
    const DGLMorphism& step(std::size_t i) const { return steps_.at(i); }

private:
    Grid grid_;
    std::vector<FreeDGL> objects_;
    std::vector<DGLMorphism> steps_;
};

DGLModule shift(const DGLModule& m, const Rational& delta);

// Applies a functor given by its action on objects and stored morphisms.
// Identity preservation and composition closure are checked on the stored
// data before composing.
GrVecModule pushforward(const DGLModule& m,
                        const std::function<GradedVectorSpace(const FreeDGL&)>& on_objects,
                        const std::function<GradedLinearMap(const DGLMorphism&)>& on_maps);

// Homology functor, packaged for pushforward; also usable on certificates.
GrVecModule homology_pushforward(const DGLModule& m);

// Strict dgl-level interleaving data. Verification is exact (on-the-nose
// composites); certificates of this kind give upper bounds for the
// homotopy-level distance, which is never computed directly.
struct DGLCertificate {
    Rational delta;
    Grid sample;
    std::vector<DGLMorphism> f;
    std::vector<DGLMorphism> g;
};

VerifyResult verify_interleaving(const DGLModule& x, const DGLModule& y,
                                 const DGLCertificate& cert);

DGLCertificate shift_certificate(const DGLModule& x, const Rational& delta);

// Image of a strict dgl certificate under the homology functor; the result
// verifies at the same delta.
InterleavingCertificate homology_pushforward(const DGLModule& x, const DGLModule& y,
                                             const DGLCertificate& cert);

}  // namespace qlm
