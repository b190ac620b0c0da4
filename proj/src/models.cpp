#include "qlm/models.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

// Evaluates an element under generator images (indexed like the source
// generator list) into the target basis, recursing over bracket trees.
LieElement eval_images(const LieElement& x, const std::shared_ptr<const LieBasis>& target,
                       const std::vector<LieElement>& images) {
    LieElement out(target);
    if (x.is_zero()) return out;
    const auto& src = x.basis();
    std::map<int, LieElement> cache;
    std::function<const LieElement&(int)> go = [&](int tree) -> const LieElement& {
        auto it = cache.find(tree);
        if (it != cache.end()) return it->second;
        const LieBasis::Word& w = src->word_tree(tree);
        LieElement val = (w.left < 0) ? images[w.generator] : bracket(go(w.left), go(w.right));
        return cache.emplace(tree, std::move(val)).first->second;
    };
    for (const auto& [id, c] : x.coords()) out = out + go(src->tree_of(id)) * c;
    return out;
}

std::vector<Rational> dense(const LieElement& x, int degree) {
    const auto& ids = x.basis()->basis(degree);
    std::vector<Rational> out(ids.size(), Rational(0));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto it = x.coords().find(ids[i]);
        if (it != x.coords().end()) out[i] = it->second;
    }
    return out;
}

std::size_t name_index(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw InvariantError("missing basis name " + name);
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

LieModelOfSpace sphere_model(int n, int truncation) {
    if (n < 2) throw ValidationError("sphere models need dimension >= 2");
    return {FreeDGL::make({{"v", n - 1}}, truncation), "S^" + std::to_string(n)};
}

LieModelOfSpace attach_cells(const LieModelOfSpace& model,
                             const std::vector<AttachedCell>& cells) {
    const FreeDGL& dgl = model.dgl;
    std::set<std::string> used;
    for (const auto& g : dgl.generators()) used.insert(g.name);
    for (const auto& c : cells) {
        if (c.dimension < 2)
            throw ValidationError("cell '" + c.name + "' has dimension < 2");
        if (!used.insert(c.name).second)
            throw ValidationError("cell name '" + c.name + "' is already taken");
        if (!c.attach.is_zero()) {
            if (c.attach.basis() != dgl.basis())
                throw ValidationError("attaching class of '" + c.name +
                                      "' lives in a different model");
            if (!c.attach.is_homogeneous() || c.attach.degree() != c.dimension - 2)
                throw ValidationError("attaching class of '" + c.name +
                                      "' must be homogeneous of degree " +
                                      std::to_string(c.dimension - 2));
            if (!dgl.d(c.attach).is_zero())
                throw ValidationError("attaching class of '" + c.name + "' is not a cycle: d(" +
                                      c.attach.str() + ") != 0");
        }
    }
    std::vector<Generator> gens = dgl.generators();
    for (const auto& c : cells) gens.push_back({c.name, c.dimension - 1});
    auto basis = LieBasis::make(gens, dgl.truncation());
    std::vector<LieElement> values;
    for (std::size_t i = 0; i < dgl.generators().size(); ++i)
        values.push_back(transfer(dgl.differential().value_on_generator(i), basis));
    for (const auto& c : cells) values.push_back(transfer(c.attach, basis));
    return {FreeDGL(basis, std::move(values)), model.provenance + "+cells"};
}

DGLMorphism SkeletalModel::inclusion(std::size_t i) const {
    return DGLMorphism::inclusion(stages.at(i).dgl, stages.at(i + 1).dgl);
}

SkeletalModel skeletal_persistence_model(const CellComplexDescription& desc, int truncation) {
    SkeletalModel out;
    LieModelOfSpace cur{FreeDGL::make({}, truncation), "point"};
    int last_dim = 1;
    for (std::size_t s = 0; s < desc.stages.size(); ++s) {
        const CellStage& stage = desc.stages[s];
        if (stage.dimension <= last_dim)
            throw ValidationError("stage " + std::to_string(s) +
                                  ": cell dimensions must increase strictly from 2");
        last_dim = stage.dimension;
        Rational t = stage.time.value_or(Rational(stage.dimension));
        if (!out.times.empty() && !(out.times.back() < t))
            throw ValidationError("stage " + std::to_string(s) +
                                  ": filtration values must increase strictly");
        std::vector<AttachedCell> cells;
        for (const auto& [name, text] : stage.cells) {
            try {
                cells.push_back({name, stage.dimension, parse_lie_element(cur.dgl.basis(), text)});
            } catch (const ValidationError& e) {
                throw ValidationError("stage " + std::to_string(s) + ", cell '" + name +
                                      "': " + e.what());
            }
        }
        try {
            cur = attach_cells(cur, cells);
        } catch (const ValidationError& e) {
            throw ValidationError("stage " + std::to_string(s) + ": " + e.what());
        }
        cur.provenance = "skeleton dim " + std::to_string(stage.dimension);
        out.times.push_back(t);
        out.stages.push_back(cur);
    }
    return out;
}

Minimalization minimalize(const FreeDGL& dgl) {
    const int trunc = dgl.truncation();
    FreeDGL cur = dgl;
    std::optional<DGLMorphism> total;

    for (;;) {
        // Pick the lowest-degree generator whose differential has a nonzero
        // linear part; generators within a degree are scanned in list order.
        const auto& gens = cur.generators();
        std::vector<std::size_t> order(gens.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return gens[a].degree < gens[b].degree;
        });
        std::optional<std::size_t> b_idx;
        for (std::size_t i : order) {
            if (!cur.differential().value_on_generator(i).length_component(1).is_zero()) {
                b_idx = i;
                break;
            }
        }
        if (!b_idx) break;

        const LieElement db = cur.differential().value_on_generator(*b_idx);
        const LieElement lin = db.length_component(1);
        const int a_basis_id = lin.coords().begin()->first;
        const Rational c = lin.coords().begin()->second;
        const int a_gen = cur.basis()->word(a_basis_id).generator;

        std::vector<Generator> newgens;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (i != *b_idx && static_cast<int>(i) != a_gen) newgens.push_back(gens[i]);
        auto newbasis = LieBasis::make(newgens, trunc);

        std::vector<LieElement> images(gens.size(), LieElement(newbasis));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == *b_idx || static_cast<int>(i) == a_gen) continue;
            images[i] = newbasis->generator_element(gens[i].name);
        }
        // The eliminated linear generator maps to the fixed point of
        // a |-> -(1/c) (db - c a) evaluated under the map; bracket length
        // grows along the iteration, so it stabilizes within the truncation.
        const LieElement rest = db - cur.basis()->basis_element(a_basis_id) * c;
        bool settled = false;
        for (int iter = 0; iter <= trunc + 1; ++iter) {
            LieElement next = eval_images(rest, newbasis, images) * (Rational(-1) / c);
            if (next == images[a_gen]) {
                settled = true;
                break;
            }
            images[a_gen] = next;
        }
        if (!settled)
            throw InvariantError("generator elimination did not stabilize at '" +
                                 gens[a_gen].name + "'");

        std::vector<LieElement> values;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == *b_idx || static_cast<int>(i) == a_gen) continue;
            values.push_back(eval_images(cur.differential().value_on_generator(i), newbasis,
                                         images));
        }
        FreeDGL next(newbasis, std::move(values));
        DGLMorphism step(cur, next, images, true);
        total = total ? step.compose_after(*total) : step;
        cur = next;
    }

    if (!total) {
        DGLMorphism id = DGLMorphism::identity(dgl);
        return {cur, id, id};
    }

    // Section: lift each minimal generator through the projection, degree by
    // degree, so that the lift is a chain map and a right inverse.
    GradedLinearMap pmap = total->as_graded_map();
    const ChainComplex& oc = dgl.chain_complex();
    const auto& mingens = cur.generators();
    std::vector<std::size_t> order(mingens.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return mingens[a].degree < mingens[b].degree;
    });
    std::vector<LieElement> sigma(mingens.size(), LieElement(dgl.basis()));
    for (std::size_t gi : order) {
        const int k = mingens[gi].degree;
        LieElement dmin = cur.differential().value_on_generator(gi);
        LieElement rhs_low = eval_images(dmin, dgl.basis(), sigma);
        std::vector<Rational> rhs = dense(rhs_low, k - 1);
        std::vector<Rational> target_class =
            dense(cur.basis()->generator_element(mingens[gi].name), k);
        QMatrix d_k = oc.differential().matrix(k);
        QMatrix p_k = pmap.matrix(k);
        QMatrix stacked(d_k.rows() + p_k.rows(), d_k.cols());
        for (std::size_t r = 0; r < d_k.rows(); ++r)
            for (std::size_t cc = 0; cc < d_k.cols(); ++cc) stacked.at(r, cc) = d_k.at(r, cc);
        for (std::size_t r = 0; r < p_k.rows(); ++r)
            for (std::size_t cc = 0; cc < p_k.cols(); ++cc)
                stacked.at(d_k.rows() + r, cc) = p_k.at(r, cc);
        std::vector<Rational> b = rhs;
        b.insert(b.end(), target_class.begin(), target_class.end());
        auto sol = solve(stacked, b);
        if (!sol)
            throw TruncationError("truncation too small to lift the minimal generator '" +
                                  mingens[gi].name + "'");
        std::map<int, Rational> coords;
        const auto& ids = dgl.basis()->basis(k);
        for (std::size_t i = 0; i < ids.size(); ++i)
            if ((*sol)[i] != 0) coords[ids[i]] = (*sol)[i];
        sigma[gi] = LieElement(dgl.basis(), std::move(coords));
    }
    DGLMorphism section(cur, dgl, sigma, true);
    return {cur, *total, section};
}

PiStar pi_star(const FreeDGL& model) {
    PiStar out;
    out.reliable_degree = model.reliable_degree();
    Homology h(model.chain_complex());
    for (const auto& [deg, n] : h.dims()) {
        if (deg > out.reliable_degree) continue;
        out.dims[deg + 1] = n;
    }
    auto as_element = [&](int deg, std::size_t i) {
        std::map<int, Rational> coords;
        const auto& ids = model.basis()->basis(deg);
        const auto& rep = h.representative(deg, i);
        for (std::size_t t = 0; t < ids.size(); ++t)
            if (rep[t] != 0) coords[ids[t]] = rep[t];
        return LieElement(model.basis(), std::move(coords));
    };
    for (const auto& [p, np] : h.dims()) {
        if (p > out.reliable_degree) continue;
        for (const auto& [q, nq] : h.dims()) {
            if (q < p || p + q > out.reliable_degree) continue;
            for (std::size_t i = 0; i < np; ++i) {
                for (std::size_t j = 0; j < nq; ++j) {
                    LieElement z = bracket(as_element(p, i), as_element(q, j));
                    out.brackets[{p, i, q, j}] = h.class_of(p + q, dense(z, p + q));
                }
            }
        }
    }
    return out;
}

GradedVectorSpace h_star(const FreeDGL& minimal_model) {
    if (!minimal_model.is_minimal())
        throw ValidationError("homology readout needs a minimal model; minimalize first");
    GradedVectorSpace out;
    out.add_basis_element(0, "1");
    GradedVectorSpace v = minimal_model.basis()->generator_space();
    for (const auto& [deg, names] : v.components())
        for (const auto& nm : names) out.add_basis_element(deg + 1, "s(" + nm + ")");
    return out;
}

CEProjection ce_projection(const FreeDGL& model) {
    CEData ce = ce_construction(model);
    const CDGCoalgebra& co = ce.coalgebra;

    GradedVectorSpace src;
    src.add_basis_element(0, "1");
    for (const auto& [deg, names] : co.reduced().components())
        for (const auto& nm : names) src.add_basis_element(deg, nm);
    GradedLinearMap sd(src, src, -1);
    for (const auto& [deg, names] : co.reduced().components()) {
        if (names.empty()) continue;
        QMatrix m = co.differential().matrix(deg);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c) != 0) sd.set_entry(deg, r, c, m.at(r, c));
    }

    GradedVectorSpace tgt;
    tgt.add_basis_element(0, "1");
    GradedVectorSpace v = model.basis()->generator_space();
    for (const auto& [deg, names] : v.components())
        for (const auto& nm : names) tgt.add_basis_element(deg + 1, "s(" + nm + ")");
    GradedLinearMap td(tgt, tgt, -1);
    GradedLinearMap lp = model.linear_part_map();
    for (const auto& [deg, names] : v.components()) {
        if (names.empty()) continue;
        QMatrix m = lp.matrix(deg);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c) != 0) td.set_entry(deg + 1, r, c, -m.at(r, c));
    }

    GradedLinearMap f(src, tgt, 0);
    f.set_entry(0, 0, 0, Rational(1));
    for (int id = 0; id < static_cast<int>(co.element_count()); ++id) {
        const auto& word = ce.words[id];
        if (word.size() != 1) continue;
        if (ce.source->length_of(word[0]) != 1) continue;
        int gen = ce.source->word(word[0]).generator;
        const std::string& nm = ce.source->generators()[gen].name;
        auto [deg, idx] = co.element_position(id);
        std::size_t row = name_index(tgt.basis(deg), "s(" + nm + ")");
        f.set_entry(deg, row, idx, Rational(1));
    }

    CEProjection out{std::make_shared<ChainComplex>(src, sd),
                     std::make_shared<ChainComplex>(tgt, td), f};
    out.chain_map();  // validates
    return out;
}

GradedLinearMap lie_representative_linear_part(const DGLMorphism& rep) {
    GradedVectorSpace sv = rep.source().basis()->generator_space();
    GradedVectorSpace tv = rep.target().basis()->generator_space();
    GradedLinearMap out(sv, tv, 0);
    const auto& gens = rep.source().generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t col = name_index(sv.basis(gens[i].degree), gens[i].name);
        LieElement lin = rep.generator_images()[i].length_component(1);
        for (const auto& [id, c] : lin.coords()) {
            int g = rep.target().basis()->word(id).generator;
            const std::string& nm = rep.target().generators()[g].name;
            std::size_t row = name_index(tv.basis(gens[i].degree), nm);
            out.set_entry(gens[i].degree, row, col, c);
        }
    }
    return out;
}

}  // namespace qlm
