#include "qlm/persist.hpp"

#include <algorithm>
#include <set>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

Rational rabs(const Rational& x) { return x < 0 ? -x : x; }

}  // namespace

Grid::Grid(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("a grid needs at least one critical value");
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (!(values_[i - 1] < values_[i]))
            throw ValidationError("grid values must increase strictly");
}

int Grid::stage_at(const Rational& t) const {
    int out = -1;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] <= t) out = static_cast<int>(i);
    return out;
}

Grid merged(const Grid& a, const Grid& b) {
    std::set<Rational> vals(a.values().begin(), a.values().end());
    vals.insert(b.values().begin(), b.values().end());
    return Grid(std::vector<Rational>(vals.begin(), vals.end()));
}

GrVecModule::GrVecModule(Grid grid, std::vector<GradedVectorSpace> objects,
                         std::vector<GradedLinearMap> steps)
    : grid_(std::move(grid)), objects_(std::move(objects)), steps_(std::move(steps)) {
    if (objects_.size() != grid_.size())
        throw ValidationError("module needs one object per grid point");
    if (steps_.size() + 1 != objects_.size())
        throw ValidationError("module needs one structure map per consecutive pair");
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i].degree() != 0)
            throw ValidationError("structure maps must preserve degree");
        if (!(steps_[i].source() == objects_[i]) || !(steps_[i].target() == objects_[i + 1]))
            throw ValidationError("structure map " + std::to_string(i) +
                                  " does not match its endpoint objects");
    }
}

GradedLinearMap GrVecModule::composite(std::size_t i, std::size_t j) const {
    if (j < i || j >= objects_.size()) throw ValidationError("bad composite indices");
    GradedLinearMap out = GradedLinearMap::identity(objects_[i]);
    for (std::size_t k = i; k < j; ++k) out = steps_[k].compose_after(out);
    return out;
}

GradedVectorSpace GrVecModule::space_at(const Rational& t) const {
    int s = grid_.stage_at(t);
    return s < 0 ? GradedVectorSpace{} : objects_[static_cast<std::size_t>(s)];
}

GradedLinearMap GrVecModule::transition(const Rational& a, const Rational& b) const {
    if (b < a) throw ValidationError("transition endpoints out of order");
    int ia = grid_.stage_at(a), ib = grid_.stage_at(b);
    if (ib < 0) return GradedLinearMap(GradedVectorSpace{}, GradedVectorSpace{}, 0);
    if (ia < 0)
        return GradedLinearMap(GradedVectorSpace{}, objects_[static_cast<std::size_t>(ib)], 0);
    return composite(static_cast<std::size_t>(ia), static_cast<std::size_t>(ib));
}

bool GrVecModule::operator==(const GrVecModule& o) const {
    return grid_ == o.grid_ && objects_ == o.objects_ && steps_ == o.steps_;
}

GrVecModule shift(const GrVecModule& m, const Rational& delta) {
    if (delta < 0) throw ValidationError("shift amount must be nonnegative");
    std::vector<Rational> vals;
    for (const auto& v : m.grid().values()) vals.push_back(v - delta);
    std::vector<GradedVectorSpace> objects;
    std::vector<GradedLinearMap> steps;
    for (std::size_t i = 0; i < m.grid().size(); ++i) objects.push_back(m.object(i));
    for (std::size_t i = 0; i + 1 < m.grid().size(); ++i) steps.push_back(m.step(i));
    return GrVecModule(Grid(std::move(vals)), std::move(objects), std::move(steps));
}

bool Interval::operator<(const Interval& o) const {
    if (birth != o.birth) return birth < o.birth;
    if (death.has_value() != o.death.has_value()) return death.has_value();
    if (death && o.death) return *death < *o.death;
    return false;
}

Barcode barcode(const GrVecModule& m) {
    const std::size_t n = m.grid().size();
    std::set<int> degrees;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [deg, names] : m.object(i).components())
            if (!names.empty()) degrees.insert(deg);

    Barcode out;
    for (int deg : degrees) {
        // R[i][j]: rank of the composite i -> j restricted to this degree.
        std::vector<std::vector<std::size_t>> R(n, std::vector<std::size_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            R[i][i] = m.object(i).dim(deg);
            QMatrix cur = QMatrix::identity(m.object(i).dim(deg));
            for (std::size_t j = i + 1; j < n; ++j) {
                cur = m.step(j - 1).matrix(deg) * cur;
                R[i][j] = rank(cur);
            }
        }
        auto r = [&](int i, int j) -> long {
            if (i < 0) return 0;
            return static_cast<long>(R[i][j]);
        };
        std::vector<Interval>& bars = out.intervals[deg];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                long mult = r(i, j - 1) - r(i, j) - r((int)i - 1, j - 1) + r((int)i - 1, j);
                if (mult < 0) throw InvariantError("negative interval multiplicity");
                for (long t = 0; t < mult; ++t)
                    bars.push_back({m.grid().at(i), m.grid().at(j)});
            }
            long inf_mult = r(i, n - 1) - r((int)i - 1, n - 1);
            if (inf_mult < 0) throw InvariantError("negative interval multiplicity");
            for (long t = 0; t < inf_mult; ++t) bars.push_back({m.grid().at(i), std::nullopt});
        }
        std::sort(bars.begin(), bars.end());
        if (bars.empty()) out.intervals.erase(deg);
    }
    return out;
}

namespace {

// Matching cost; nullopt encodes infinity.
std::optional<Rational> match_cost(const Interval& a, const Interval& b) {
    if (a.death.has_value() != b.death.has_value()) return std::nullopt;
    Rational c = rabs(a.birth - b.birth);
    if (a.death) c = std::max(c, rabs(*a.death - *b.death));
    return c;
}

std::optional<Rational> delete_cost(const Interval& a) {
    if (!a.death) return std::nullopt;
    return (*a.death - a.birth) / 2;
}

bool feasible_exhaustive(const std::vector<Interval>& a, const std::vector<Interval>& b,
                         const Rational& delta) {
    std::vector<bool> used(b.size(), false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == a.size()) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (used[j]) continue;
                auto d = delete_cost(b[j]);
                if (!d || *d > delta) return false;
            }
            return true;
        }
        auto del = delete_cost(a[i]);
        if (del && *del <= delta && go(i + 1)) return true;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            auto c = match_cost(a[i], b[j]);
            if (!c || *c > delta) continue;
            used[j] = true;
            if (go(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return go(0);
}

bool feasible_bipartite(const std::vector<Interval>& a, const std::vector<Interval>& b,
                        const Rational& delta) {
    // Left: a-intervals then dummies for b; right: b-intervals then dummies
    // for a. A perfect matching of the augmented graph realizes a partial
    // delta-matching with deletions.
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t L = na + nb, Rn = nb + na;
    std::vector<std::vector<std::size_t>> adj(L);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            auto c = match_cost(a[i], b[j]);
            if (c && *c <= delta) adj[i].push_back(j);
        }
        auto d = delete_cost(a[i]);
        if (d && *d <= delta) adj[i].push_back(nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        auto d = delete_cost(b[j]);
        if (d && *d <= delta) adj[na + j].push_back(j);
        for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
    }
    std::vector<int> match_right(Rn, -1);
    std::vector<bool> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t u) -> bool {
        for (std::size_t v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
                match_right[v] = static_cast<int>(u);
                return true;
            }
        }
        return false;
    };
    std::size_t matched = 0;
    for (std::size_t u = 0; u < L; ++u) {
        seen.assign(Rn, false);
        if (augment(u)) ++matched;
    }
    return matched == L;
}

}  // namespace

bool delta_matchable(const std::vector<Interval>& a, const std::vector<Interval>& b,
                     const Rational& delta, MatchEngine engine) {
    switch (engine) {
        case MatchEngine::exhaustive:
            return feasible_exhaustive(a, b, delta);
        case MatchEngine::bipartite:
            return feasible_bipartite(a, b, delta);
        case MatchEngine::automatic:
        default:
            return (a.size() + b.size() <= 8) ? feasible_exhaustive(a, b, delta)
                                              : feasible_bipartite(a, b, delta);
    }
}

std::optional<Rational> interleaving_distance(const Barcode& a, const Barcode& b,
                                              MatchEngine engine) {
    std::set<int> degrees;
    for (const auto& [d, bars] : a.intervals)
        if (!bars.empty()) degrees.insert(d);
    for (const auto& [d, bars] : b.intervals)
        if (!bars.empty()) degrees.insert(d);
    static const std::vector<Interval> none;
    auto bars_of = [&](const Barcode& bc, int d) -> const std::vector<Interval>& {
        auto it = bc.intervals.find(d);
        return it == bc.intervals.end() ? none : it->second;
    };
    std::set<Rational> candidates;
    candidates.insert(Rational(0));
    for (int d : degrees) {
        const auto &ba = bars_of(a, d), &bb = bars_of(b, d);
        std::size_t inf_a = 0, inf_b = 0;
        for (const auto& x : ba)
            if (!x.death) ++inf_a;
        for (const auto& x : bb)
            if (!x.death) ++inf_b;
        if (inf_a != inf_b) return std::nullopt;
        for (const auto& x : ba) {
            if (auto c = delete_cost(x)) candidates.insert(*c);
            for (const auto& y : bb)
                if (auto c = match_cost(x, y)) candidates.insert(*c);
        }
        for (const auto& y : bb)
            if (auto c = delete_cost(y)) candidates.insert(*c);
    }
    auto feasible = [&](const Rational& delta) {
        for (int d : degrees)
            if (!delta_matchable(bars_of(a, d), bars_of(b, d), delta, engine)) return false;
        return true;
    };
    std::vector<Rational> cands(candidates.begin(), candidates.end());
    std::size_t lo = 0, hi = cands.size() - 1;
    if (!feasible(cands[hi])) throw InvariantError("no candidate interleaving value is feasible");
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(cands[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cands[lo];
}

VerifyResult verify_interleaving(const GrVecModule& x, const GrVecModule& y,
                                 const InterleavingCertificate& cert) {
    VerifyResult res;
    auto fail = [&](bool structural, const std::string& w) {
        res.ok = false;
        res.structural_error = structural;
        res.witness = w;
        return res;
    };
    if (cert.delta < 0) return fail(true, "negative shift");
    const auto& ts = cert.sample.values();
    if (cert.f.size() != ts.size() || cert.g.size() != ts.size())
        return fail(true, "certificate needs one map pair per sample point");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(cert.f[i].source() == x.space_at(ts[i])) ||
            !(cert.f[i].target() == y.space_at(ts[i] + cert.delta)) || cert.f[i].degree() != 0)
            return fail(true, "forward map endpoints wrong at sample " + std::to_string(i));
        if (!(cert.g[i].source() == y.space_at(ts[i])) ||
            !(cert.g[i].target() == x.space_at(ts[i] + cert.delta)) || cert.g[i].degree() != 0)
            return fail(true, "backward map endpoints wrong at sample " + std::to_string(i));
    }
    // Interpolates a family to time u, using constancy of the source module
    // between sample points.
    auto interp = [&](const std::vector<GradedLinearMap>& fam, const GrVecModule& src,
                      const GrVecModule& dst, const Rational& u,
                      std::optional<GradedLinearMap>& out) -> bool {
        int j = cert.sample.stage_at(u);
        if (j < 0) {
            out = GradedLinearMap(GradedVectorSpace{}, dst.space_at(u + cert.delta), 0);
            return true;
        }
        const Rational& s = ts[static_cast<std::size_t>(j)];
        for (const auto& v : src.grid().values())
            if (s < v && v <= u) return false;  // sample grid too coarse
        out = dst.transition(s + cert.delta, u + cert.delta)
                  .compose_after(fam[static_cast<std::size_t>(j)]);
        return true;
    };
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        GradedLinearMap lhs = cert.f[i + 1].compose_after(x.transition(ts[i], ts[i + 1]));
        GradedLinearMap rhs =
            y.transition(ts[i] + cert.delta, ts[i + 1] + cert.delta).compose_after(cert.f[i]);
        if (!(lhs == rhs))
            return fail(false, "forward naturality fails between samples " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
        lhs = cert.g[i + 1].compose_after(y.transition(ts[i], ts[i + 1]));
        rhs = x.transition(ts[i] + cert.delta, ts[i + 1] + cert.delta).compose_after(cert.g[i]);
        if (!(lhs == rhs))
            return fail(false, "backward naturality fails between samples " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::optional<GradedLinearMap> gi, fi;
        if (!interp(cert.g, y, x, ts[i] + cert.delta, gi))
            return fail(true, "sample grid too coarse for the backward family");
        if (!interp(cert.f, x, y, ts[i] + cert.delta, fi))
            return fail(true, "sample grid too coarse for the forward family");
        if (!(gi->compose_after(cert.f[i]) == x.transition(ts[i], ts[i] + 2 * cert.delta)))
            return fail(false, "composite with the backward family is not the double-shift map "
                               "at sample " +
                                   std::to_string(i));
        if (!(fi->compose_after(cert.g[i]) == y.transition(ts[i], ts[i] + 2 * cert.delta)))
            return fail(false, "composite with the forward family is not the double-shift map "
                               "at sample " +
                                   std::to_string(i));
    }
    return res;
}

InterleavingCertificate shift_certificate(const GrVecModule& x, const Rational& delta) {
    if (delta < 0) throw ValidationError("shift amount must be nonnegative");
    GrVecModule y = shift(x, delta);
    Grid sample = merged(x.grid(), y.grid());
    InterleavingCertificate cert{delta, sample, {}, {}};
    for (const auto& t : sample.values()) {
        cert.f.push_back(x.transition(t, t + 2 * delta));
        GradedVectorSpace s = y.space_at(t);
        cert.g.push_back(GradedLinearMap::identity(s));
    }
    return cert;
}

DGLModule::DGLModule(Grid grid, std::vector<FreeDGL> objects, std::vector<DGLMorphism> steps)
    : grid_(std::move(grid)), objects_(std::move(objects)), steps_(std::move(steps)) {
    if (objects_.size() != grid_.size())
        throw ValidationError("module needs one object per grid point");
    if (steps_.size() + 1 != objects_.size())
        throw ValidationError("module needs one structure map per consecutive pair");
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].source().basis() != objects_[i].basis() ||
            steps_[i].target().basis() != objects_[i + 1].basis())
            throw ValidationError("structure map " + std::to_string(i) +
                                  " does not match its endpoint objects");
}

DGLModule shift(const DGLModule& m, const Rational& delta) {
    if (delta < 0) throw ValidationError("shift amount must be nonnegative");
    std::vector<Rational> vals;
    for (const auto& v : m.grid().values()) vals.push_back(v - delta);
    std::vector<FreeDGL> objects;
    std::vector<DGLMorphism> steps;
    for (std::size_t i = 0; i < m.size(); ++i) objects.push_back(m.object(i));
    for (std::size_t i = 0; i + 1 < m.size(); ++i) steps.push_back(m.step(i));
    return DGLModule(Grid(std::move(vals)), std::move(objects), std::move(steps));
}

GrVecModule pushforward(const DGLModule& m,
                        const std::function<GradedVectorSpace(const FreeDGL&)>& on_objects,
                        const std::function<GradedLinearMap(const DGLMorphism&)>& on_maps) {
    std::vector<GradedVectorSpace> objects;
    for (std::size_t i = 0; i < m.size(); ++i) objects.push_back(on_objects(m.object(i)));
    for (std::size_t i = 0; i < m.size(); ++i) {
        GradedLinearMap idimg = on_maps(DGLMorphism::identity(m.object(i)));
        if (!(idimg == GradedLinearMap::identity(objects[i])))
            throw ValidationError("pushforward functor does not preserve identities");
    }
    std::vector<GradedLinearMap> steps;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) steps.push_back(on_maps(m.step(i)));
    for (std::size_t i = 0; i + 2 < m.size(); ++i) {
        GradedLinearMap once = on_maps(m.step(i + 1).compose_after(m.step(i)));
        if (!(once == steps[i + 1].compose_after(steps[i])))
            throw ValidationError("pushforward functor does not preserve composition at step " +
                                  std::to_string(i));
    }
    return GrVecModule(m.grid(), std::move(objects), std::move(steps));
}

namespace {

GradedLinearMap induced_map(const FreeDGL& src, const Homology& hs, const FreeDGL& dst,
                            const Homology& hd, const DGLMorphism& f) {
    ChainMap cm(src.chain_complex(), dst.chain_complex(), f.as_graded_map());
    return induced_on_homology(cm, hs, hd);
}

}  // namespace

GrVecModule homology_pushforward(const DGLModule& m) {
    std::vector<Homology> hs;
    for (std::size_t i = 0; i < m.size(); ++i) hs.emplace_back(m.object(i).chain_complex());
    std::vector<GradedVectorSpace> objects;
    for (const auto& h : hs) objects.push_back(h.space());
    std::vector<GradedLinearMap> steps;
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
        steps.push_back(induced_map(m.object(i), hs[i], m.object(i + 1), hs[i + 1], m.step(i)));
    return GrVecModule(m.grid(), std::move(objects), std::move(steps));
}

namespace {

FreeDGL empty_dgl(int truncation) { return FreeDGL::make({}, truncation); }

bool same_endpoint(const std::shared_ptr<const LieBasis>& a,
                   const std::shared_ptr<const LieBasis>& b) {
    // Generator-free dgl's are interchangeable regardless of identity.
    return a == b || (a->generators().empty() && b->generators().empty());
}

// Composition that tolerates distinct generator-free middle objects.
DGLMorphism compose_dgl(const DGLMorphism& second, const DGLMorphism& first) {
    if (first.target().basis() == second.source().basis()) return second.compose_after(first);
    if (first.target().basis()->generators().empty() &&
        second.source().basis()->generators().empty()) {
        std::vector<LieElement> images(first.source().generators().size(),
                                       LieElement(second.target().basis()));
        return DGLMorphism(first.source(), second.target(), std::move(images), false);
    }
    return second.compose_after(first);  // mismatched; let it throw
}

bool same_morphism(const DGLMorphism& a, const DGLMorphism& b) {
    return same_endpoint(a.source().basis(), b.source().basis()) &&
           same_endpoint(a.target().basis(), b.target().basis()) &&
           a.generator_images() == b.generator_images();
}

DGLMorphism dgl_transition(const DGLModule& m, const Rational& a, const Rational& b) {
    if (b < a) throw ValidationError("transition endpoints out of order");
    int ia = m.grid().stage_at(a), ib = m.grid().stage_at(b);
    int trunc = m.object(0).truncation();
    if (ib < 0) {
        FreeDGL e = empty_dgl(trunc);
        return DGLMorphism(e, e, {});
    }
    if (ia < 0) return DGLMorphism(empty_dgl(trunc), m.object(ib), {});
    DGLMorphism out = DGLMorphism::identity(m.object(ia));
    for (int k = ia; k < ib; ++k) out = m.step(k).compose_after(out);
    return out;
}

}  // namespace

VerifyResult verify_interleaving(const DGLModule& x, const DGLModule& y,
                                 const DGLCertificate& cert) {
    VerifyResult res;
    auto fail = [&](bool structural, const std::string& w) {
        res.ok = false;
        res.structural_error = structural;
        res.witness = w;
        return res;
    };
    if (cert.delta < 0) return fail(true, "negative shift");
    const auto& ts = cert.sample.values();
    if (cert.f.size() != ts.size() || cert.g.size() != ts.size())
        return fail(true, "certificate needs one map pair per sample point");
    auto endpoint_ok = [](const DGLModule& m, int stage,
                          const std::shared_ptr<const LieBasis>& b) {
        return stage < 0 ? b->generators().empty() : b == m.object(stage).basis();
    };
    int trunc = x.object(0).truncation();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!endpoint_ok(x, x.grid().stage_at(ts[i]), cert.f[i].source().basis()) ||
            !endpoint_ok(y, y.grid().stage_at(ts[i] + cert.delta), cert.f[i].target().basis()))
            return fail(true, "forward map endpoints wrong at sample " + std::to_string(i));
        if (!endpoint_ok(y, y.grid().stage_at(ts[i]), cert.g[i].source().basis()) ||
            !endpoint_ok(x, x.grid().stage_at(ts[i] + cert.delta), cert.g[i].target().basis()))
            return fail(true, "backward map endpoints wrong at sample " + std::to_string(i));
    }
    auto interp = [&](const std::vector<DGLMorphism>& fam, const DGLModule& src,
                      const DGLModule& dst, const Rational& u,
                      std::optional<DGLMorphism>& out) -> bool {
        int j = cert.sample.stage_at(u);
        if (j < 0) {
            int s_dst = dst.grid().stage_at(u + cert.delta);
            out = s_dst < 0 ? DGLMorphism(empty_dgl(trunc), empty_dgl(trunc), {})
                            : DGLMorphism(empty_dgl(trunc), dst.object(s_dst), {});
            return true;
        }
        const Rational& s = ts[static_cast<std::size_t>(j)];
        for (const auto& v : src.grid().values())
            if (s < v && v <= u) return false;
        out = compose_dgl(dgl_transition(dst, s + cert.delta, u + cert.delta),
                          fam[static_cast<std::size_t>(j)]);
        return true;
    };
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        DGLMorphism lhs = compose_dgl(cert.f[i + 1], dgl_transition(x, ts[i], ts[i + 1]));
        DGLMorphism rhs = compose_dgl(
            dgl_transition(y, ts[i] + cert.delta, ts[i + 1] + cert.delta), cert.f[i]);
        if (!same_morphism(lhs, rhs))
            return fail(false, "forward naturality fails between samples " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
        lhs = compose_dgl(cert.g[i + 1], dgl_transition(y, ts[i], ts[i + 1]));
        rhs = compose_dgl(dgl_transition(x, ts[i] + cert.delta, ts[i + 1] + cert.delta),
                          cert.g[i]);
        if (!same_morphism(lhs, rhs))
            return fail(false, "backward naturality fails between samples " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::optional<DGLMorphism> gi, fi;
        if (!interp(cert.g, y, x, ts[i] + cert.delta, gi))
            return fail(true, "sample grid too coarse for the backward family");
        if (!interp(cert.f, x, y, ts[i] + cert.delta, fi))
            return fail(true, "sample grid too coarse for the forward family");
        if (!same_morphism(compose_dgl(*gi, cert.f[i]),
                           dgl_transition(x, ts[i], ts[i] + 2 * cert.delta)))
            return fail(false, "composite with the backward family is not the double-shift map "
                               "at sample " +
                                   std::to_string(i));
        if (!same_morphism(compose_dgl(*fi, cert.g[i]),
                           dgl_transition(y, ts[i], ts[i] + 2 * cert.delta)))
            return fail(false, "composite with the forward family is not the double-shift map "
                               "at sample " +
                                   std::to_string(i));
    }
    return res;
}

DGLCertificate shift_certificate(const DGLModule& x, const Rational& delta) {
    if (delta < 0) throw ValidationError("shift amount must be nonnegative");
    DGLModule y = shift(x, delta);
    Grid sample = merged(x.grid(), y.grid());
    int trunc = x.object(0).truncation();
    DGLCertificate cert{delta, sample, {}, {}};
    for (const auto& t : sample.values()) {
        cert.f.push_back(dgl_transition(x, t, t + 2 * delta));
        int s = x.grid().stage_at(t + delta);
        cert.g.push_back(s < 0 ? DGLMorphism(empty_dgl(trunc), empty_dgl(trunc), {})
                               : DGLMorphism::identity(x.object(s)));
    }
    return cert;
}

InterleavingCertificate homology_pushforward(const DGLModule& x, const DGLModule& y,
                                             const DGLCertificate& cert) {
    std::vector<Homology> hx, hy;
    for (std::size_t i = 0; i < x.size(); ++i) hx.emplace_back(x.object(i).chain_complex());
    for (std::size_t i = 0; i < y.size(); ++i) hy.emplace_back(y.object(i).chain_complex());
    auto induce = [&](const DGLMorphism& f, const DGLModule& src,
                      const std::vector<Homology>& hsrc, const DGLModule& dst,
                      const std::vector<Homology>& hdst, const Rational& t) -> GradedLinearMap {
        int si = src.grid().stage_at(t);
        int di = dst.grid().stage_at(t + cert.delta);
        GradedVectorSpace sspace = si < 0 ? GradedVectorSpace{} : hsrc[si].space();
        GradedVectorSpace dspace = di < 0 ? GradedVectorSpace{} : hdst[di].space();
        if (si < 0 || di < 0) return GradedLinearMap(sspace, dspace, 0);
        return induced_map(src.object(si), hsrc[si], dst.object(di), hdst[di], f);
    };
    InterleavingCertificate out{cert.delta, cert.sample, {}, {}};
    for (std::size_t i = 0; i < cert.sample.size(); ++i) {
        const Rational& t = cert.sample.at(i);
        out.f.push_back(induce(cert.f[i], x, hx, y, hy, t));
        out.g.push_back(induce(cert.g[i], y, hy, x, hx, t));
    }
    return out;
}

}  // namespace qlm
