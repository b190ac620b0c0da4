#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlm/matrix.hpp"

namespace qlm {

// Finite-type graded vector space over Q: an ordered named basis per degree.
// Degrees are stored sparsely; a missing degree has dimension zero.
class GradedVectorSpace {
public:
    GradedVectorSpace() = default;

    void add_basis_element(int degree, const std::string& name);

    std::size_t dim(int degree) const;
    const std::vector<std::string>& basis(int degree) const;
    const std::map<int, std::vector<std::string>>& components() const { return comps_; }

    std::size_t total_dim() const;
    bool operator==(const GradedVectorSpace& other) const { return comps_ == other.comps_; }

    std::map<int, std::size_t> dims() const;

private:
    std::map<int, std::vector<std::string>> comps_;
};

// Degree-homogeneous linear map between graded vector spaces. The matrix
// stored at source degree k has shape dim(target_{k+degree}) x dim(source_k).
class GradedLinearMap {
public:
    GradedLinearMap() = default;
    GradedLinearMap(GradedVectorSpace source, GradedVectorSpace target, int degree);

    static GradedLinearMap identity(const GradedVectorSpace& space);
    static GradedLinearMap zero(const GradedVectorSpace& source, const GradedVectorSpace& target,
                                int degree);

    const GradedVectorSpace& source() const { return source_; }
    const GradedVectorSpace& target() const { return target_; }
    int degree() const { return degree_; }

    // Matrix at a source degree; created zero-filled on first access.
    QMatrix& matrix(int source_degree);
    QMatrix matrix(int source_degree) const;

    void set_entry(int source_degree, std::size_t target_index, std::size_t source_index,
                   const Rational& value);

    GradedLinearMap compose_after(const GradedLinearMap& first) const;  // this o first
    GradedLinearMap operator+(const GradedLinearMap& other) const;
    GradedLinearMap operator-(const GradedLinearMap& other) const;
    bool operator==(const GradedLinearMap& other) const;

    bool is_zero() const;

private:
    GradedVectorSpace source_, target_;
    int degree_ = 0;
    std::map<int, QMatrix> matrices_;
};

}  // namespace qlm
