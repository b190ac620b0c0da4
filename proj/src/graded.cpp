#include "qlm/graded.hpp"

#include <algorithm>

#include "qlm/errors.hpp"

namespace qlm {

void GradedVectorSpace::add_basis_element(int degree, const std::string& name) {
    auto& names = comps_[degree];
    if (std::find(names.begin(), names.end(), name) != names.end())
        throw ValidationError("duplicate basis name '" + name + "' in degree " +
                              std::to_string(degree));
    names.push_back(name);
}

std::size_t GradedVectorSpace::dim(int degree) const {
    auto it = comps_.find(degree);
    return it == comps_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& GradedVectorSpace::basis(int degree) const {
    static const std::vector<std::string> empty;
    auto it = comps_.find(degree);
    return it == comps_.end() ? empty : it->second;
}

std::size_t GradedVectorSpace::total_dim() const {
    std::size_t n = 0;
    for (const auto& [deg, names] : comps_) n += names.size();
    return n;
}

std::map<int, std::size_t> GradedVectorSpace::dims() const {
    std::map<int, std::size_t> out;
    for (const auto& [deg, names] : comps_)
        if (!names.empty()) out[deg] = names.size();
    return out;
}

GradedLinearMap::GradedLinearMap(GradedVectorSpace source, GradedVectorSpace target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {}

GradedLinearMap GradedLinearMap::identity(const GradedVectorSpace& space) {
    GradedLinearMap f(space, space, 0);
    for (const auto& [deg, names] : space.components())
        f.matrices_[deg] = QMatrix::identity(names.size());
    return f;
}

GradedLinearMap GradedLinearMap::zero(const GradedVectorSpace& source,
                                      const GradedVectorSpace& target, int degree) {
    return GradedLinearMap(source, target, degree);
}

QMatrix& GradedLinearMap::matrix(int source_degree) {
    auto it = matrices_.find(source_degree);
    if (it == matrices_.end()) {
        QMatrix m(target_.dim(source_degree + degree_), source_.dim(source_degree));
        it = matrices_.emplace(source_degree, std::move(m)).first;
    }
    return it->second;
}

QMatrix GradedLinearMap::matrix(int source_degree) const {
    auto it = matrices_.find(source_degree);
    if (it != matrices_.end()) return it->second;
    return QMatrix(target_.dim(source_degree + degree_), source_.dim(source_degree));
}

void GradedLinearMap::set_entry(int source_degree, std::size_t target_index,
                                std::size_t source_index, const Rational& value) {
    matrix(source_degree).at(target_index, source_index) = value;
}

GradedLinearMap GradedLinearMap::compose_after(const GradedLinearMap& first) const {
    if (!(first.target_ == source_))
        throw InvariantError("graded map composition: source/target mismatch");
    GradedLinearMap out(first.source_, target_, degree_ + first.degree_);
    for (const auto& [deg, names] : first.source_.components()) {
        if (names.empty()) continue;
        out.matrices_[deg] = matrix(deg + first.degree_) * first.matrix(deg);
    }
    return out;
}

GradedLinearMap GradedLinearMap::operator+(const GradedLinearMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_) || degree_ != other.degree_)
        throw InvariantError("graded map sum: shape mismatch");
    GradedLinearMap out(source_, target_, degree_);
    for (const auto& [deg, names] : source_.components())
        if (!names.empty()) out.matrices_[deg] = matrix(deg) + other.matrix(deg);
    return out;
}

GradedLinearMap GradedLinearMap::operator-(const GradedLinearMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_) || degree_ != other.degree_)
        throw InvariantError("graded map difference: shape mismatch");
    GradedLinearMap out(source_, target_, degree_);
    for (const auto& [deg, names] : source_.components())
        if (!names.empty()) out.matrices_[deg] = matrix(deg) - other.matrix(deg);
    return out;
}

bool GradedLinearMap::operator==(const GradedLinearMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_) || degree_ != other.degree_)
        return false;
    for (const auto& [deg, names] : source_.components())
        if (!names.empty() && !(matrix(deg) == other.matrix(deg))) return false;
    return true;
}

bool GradedLinearMap::is_zero() const {
    for (const auto& [deg, m] : matrices_)
        if (!m.is_zero()) return false;
    return true;
}

}  // namespace qlm
