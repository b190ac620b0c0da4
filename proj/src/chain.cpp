#include "qlm/chain.hpp"

#include "qlm/errors.hpp"

namespace qlm {

ChainComplex::ChainComplex(GradedVectorSpace space, GradedLinearMap differential)
    : space_(std::move(space)), d_(std::move(differential)) {
    if (d_.degree() != -1) throw ValidationError("chain complex differential must have degree -1");
    if (!(d_.source() == space_) || !(d_.target() == space_))
        throw ValidationError("chain complex differential must be an endomap of the space");
    for (const auto& [deg, names] : space_.components()) {
        if (names.empty()) continue;
        QMatrix dd = d_.matrix(deg - 1) * d_.matrix(deg);
        if (!dd.is_zero())
            throw ValidationError("d o d != 0 at degree " + std::to_string(deg));
    }
}

Homology::Homology(const ChainComplex& complex)
    : complex_(std::make_shared<ChainComplex>(complex)) {
    const auto& space = complex.space();
    const auto& d = complex.differential();
    for (const auto& [deg, names] : space.components()) {
        if (names.empty()) continue;
        Reduction rk = reduce(d.matrix(deg));
        Reduction rk1 = reduce(d.matrix(deg + 1));
        // Extend the boundary basis to a basis of the cycles; the extra
        // columns are the chosen representatives.
        std::size_t nb = rk1.image_basis.size();
        std::size_t nz = rk.kernel_basis.size();
        QMatrix ext(names.size(), nb + nz);
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t r = 0; r < names.size(); ++r) ext.at(r, j) = rk1.image_basis[j][r];
        for (std::size_t j = 0; j < nz; ++j)
            for (std::size_t r = 0; r < names.size(); ++r)
                ext.at(r, nb + j) = rk.kernel_basis[j][r];
        Reduction er = reduce(ext);
        DegreeData dd;
        for (auto c : er.pivot_cols)
            if (c >= nb) dd.reps.push_back(rk.kernel_basis[c - nb]);
        if (dd.reps.size() != nz - nb)
            throw InvariantError("homology basis extension failed at degree " +
                                 std::to_string(deg));
        for (std::size_t i = 0; i < dd.reps.size(); ++i)
            h_space_.add_basis_element(deg, "h" + std::to_string(deg) + "_" + std::to_string(i));
        QMatrix expr(names.size(), dd.reps.size() + space.dim(deg + 1));
        for (std::size_t j = 0; j < dd.reps.size(); ++j)
            for (std::size_t r = 0; r < names.size(); ++r) expr.at(r, j) = dd.reps[j][r];
        QMatrix dk1 = d.matrix(deg + 1);
        for (std::size_t j = 0; j < space.dim(deg + 1); ++j)
            for (std::size_t r = 0; r < names.size(); ++r)
                expr.at(r, dd.reps.size() + j) = dk1.at(r, j);
        dd.express = std::make_shared<LinearSolver>(expr);
        dd.boundary = std::make_shared<LinearSolver>(dk1);
        data_.emplace(deg, std::move(dd));
    }
}

const std::vector<Rational>& Homology::representative(int degree, std::size_t i) const {
    return data_.at(degree).reps.at(i);
}

bool Homology::is_cycle(int degree, const std::vector<Rational>& v) const {
    auto dv = complex_->differential().matrix(degree).apply(v);
    for (const auto& x : dv)
        if (x != 0) return false;
    return true;
}

bool Homology::is_boundary(int degree, const std::vector<Rational>& cycle) const {
    auto it = data_.find(degree);
    if (it == data_.end()) {
        for (const auto& x : cycle)
            if (x != 0) return false;
        return true;
    }
    return it->second.boundary->solve(cycle).has_value();
}

std::vector<Rational> Homology::class_of(int degree, const std::vector<Rational>& cycle) const {
    auto it = data_.find(degree);
    if (it == data_.end()) return {};
    if (!is_cycle(degree, cycle)) throw InvariantError("class_of: input is not a cycle");
    auto sol = it->second.express->solve(cycle);
    if (!sol) throw InvariantError("class_of: cycle not expressible, basis corrupt");
    return std::vector<Rational>(sol->begin(), sol->begin() + it->second.reps.size());
}

ChainMap::ChainMap(const ChainComplex& src, const ChainComplex& tgt, GradedLinearMap map)
    : source(src), target(tgt), f(std::move(map)) {
    if (f.degree() != 0) throw ValidationError("chain map must have degree 0");
    if (!(f.source() == src.space()) || !(f.target() == tgt.space()))
        throw ValidationError("chain map spaces do not match the complexes");
    for (const auto& [deg, names] : src.space().components()) {
        if (names.empty()) continue;
        QMatrix lhs = tgt.differential().matrix(deg) * f.matrix(deg);
        QMatrix rhs = f.matrix(deg - 1) * src.differential().matrix(deg);
        if (!(lhs == rhs))
            throw ValidationError("not a chain map: square fails at degree " +
                                  std::to_string(deg));
    }
}

GradedLinearMap induced_on_homology(const ChainMap& f, const Homology& h_source,
                                    const Homology& h_target) {
    GradedLinearMap out(h_source.space(), h_target.space(), 0);
    for (const auto& [deg, names] : h_source.space().components()) {
        if (names.empty()) continue;
        QMatrix& m = out.matrix(deg);
        for (std::size_t j = 0; j < names.size(); ++j) {
            auto img = f.f.matrix(deg).apply(h_source.representative(deg, j));
            auto cls = h_target.class_of(deg, img);
            for (std::size_t i = 0; i < cls.size(); ++i) m.at(i, j) = cls[i];
        }
    }
    return out;
}

QuasiIsoReport is_quasi_iso(const ChainMap& f, int lo_degree, int hi_degree) {
    Homology hs(f.source), ht(f.target);
    GradedLinearMap ind = induced_on_homology(f, hs, ht);
    QuasiIsoReport rep;
    for (int deg = lo_degree; deg <= hi_degree; ++deg) {
        std::size_t ds = hs.dim(deg), dt = ht.dim(deg);
        bool ok = (ds == dt) && (ds == 0 || rank(ind.matrix(deg)) == ds);
        if (!ok) {
            rep.ok = false;
            rep.first_failing_degree = deg;
            return rep;
        }
    }
    return rep;
}

}  // namespace qlm
