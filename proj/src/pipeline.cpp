#include "qlm/pipeline.hpp"

#include <algorithm>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

Barcode remap_degrees(const Barcode& bc, int max_degree, int shift_by) {
    Barcode out;
    for (const auto& [deg, bars] : bc.intervals)
        if (deg <= max_degree && !bars.empty()) out.intervals[deg + shift_by] = bars;
    return out;
}

}  // namespace

PersistenceQuillenModel build_persistence_model(const CellComplexDescription& desc,
                                                int truncation, bool minimal) {
    SkeletalModel sk = skeletal_persistence_model(desc, truncation);
    Grid grid(sk.times);
    std::vector<FreeDGL> objects;
    std::vector<DGLMorphism> steps;
    if (!minimal) {
        for (const auto& stage : sk.stages) objects.push_back(stage.dgl);
        for (std::size_t i = 0; i + 1 < sk.stages.size(); ++i) steps.push_back(sk.inclusion(i));
    } else {
        std::vector<Minimalization> mins;
        for (const auto& stage : sk.stages) mins.push_back(minimalize(stage.dgl));
        for (const auto& m : mins) objects.push_back(m.minimal);
        for (std::size_t i = 0; i + 1 < sk.stages.size(); ++i)
            steps.push_back(mins[i + 1].projection.compose_after(
                sk.inclusion(i).compose_after(mins[i].section)));
    }
    bool all_minimal = std::all_of(objects.begin(), objects.end(),
                                   [](const FreeDGL& d) { return d.is_minimal(); });
    return {DGLModule(std::move(grid), std::move(objects), std::move(steps)), all_minimal,
            truncation - 2};
}

Barcode pi_barcode(const PersistenceQuillenModel& model) {
    return remap_degrees(barcode(homology_pushforward(model.module)), model.degree_cutoff, 1);
}

GrVecModule generator_module(const PersistenceQuillenModel& model) {
    if (!model.minimal)
        throw ValidationError("generator modules are only meaningful for minimal models");
    return pushforward(
        model.module, [](const FreeDGL& d) { return d.basis()->generator_space(); },
        [](const DGLMorphism& f) { return lie_representative_linear_part(f); });
}

Barcode h_barcode(const PersistenceQuillenModel& model) {
    Barcode gens = barcode(generator_module(model));
    Barcode out;
    for (const auto& [deg, bars] : gens.intervals)
        if (!bars.empty()) out.intervals[deg + 1] = bars;
    out.intervals[0].insert(out.intervals[0].begin(),
                            {model.module.grid().at(0), std::nullopt});
    return out;
}

namespace {

// a <= b where nullopt is infinity on both sides
bool le_inf(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!b) return true;
    if (!a) return false;
    return *a <= *b;
}

// Recognizes y as a downward reindexing of x and returns the offset.
std::optional<Rational> shift_offset(const DGLModule& x, const DGLModule& y) {
    if (x.size() != y.size()) return std::nullopt;
    Rational delta = x.grid().at(0) - y.grid().at(0);
    if (delta < 0) return std::nullopt;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.grid().at(i) - y.grid().at(i) != delta) return std::nullopt;
        if (x.object(i).basis() != y.object(i).basis()) return std::nullopt;
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x.step(i).generator_images() == y.step(i).generator_images()))
            return std::nullopt;
    return delta;
}

}  // namespace

StabilityReport stability_report(const PersistenceQuillenModel& x,
                                 const PersistenceQuillenModel& y,
                                 const std::optional<DGLCertificate>& certificate,
                                 const std::optional<Rational>& input_bound) {
    if (x.module.object(0).truncation() != y.module.object(0).truncation())
        throw ValidationError("stability comparison needs a common truncation");
    StabilityReport rep;
    rep.input_upper_bound = input_bound;

    GrVecModule hx = homology_pushforward(x.module);
    GrVecModule hy = homology_pushforward(y.module);
    Barcode bhx = remap_degrees(barcode(hx), x.degree_cutoff, 0);
    Barcode bhy = remap_degrees(barcode(hy), y.degree_cutoff, 0);
    auto model_homology_distance = interleaving_distance(bhx, bhy);
    rep.pi_distance = interleaving_distance(pi_barcode(x), pi_barcode(y));
    // the homotopy barcode is the model-homology barcode up to a uniform
    // degree shift, so the two distances agree on the nose
    rep.pi_matches_model_homology_distance = rep.pi_distance == model_homology_distance;

    if (x.minimal && y.minimal) {
        rep.h_computed = true;
        rep.h_distance = interleaving_distance(h_barcode(x), h_barcode(y));
        rep.generator_distance =
            interleaving_distance(barcode(generator_module(x)), barcode(generator_module(y)));
    }

    std::optional<DGLCertificate> cert = certificate;
    if (!cert) {
        if (auto delta = shift_offset(x.module, y.module))
            cert = shift_certificate(x.module, *delta);
        else if (auto rdelta = shift_offset(y.module, x.module)) {
            // swapping the two families certifies the pair in the other order
            DGLCertificate c = shift_certificate(y.module, *rdelta);
            cert = DGLCertificate{c.delta, c.sample, c.g, c.f};
        }
    }
    if (cert) {
        auto strict = verify_interleaving(x.module, y.module, *cert);
        if (strict.ok) {
            auto pushed = homology_pushforward(x.module, y.module, *cert);
            if (verify_interleaving(hx, hy, pushed).ok) rep.dgl_upper_bound = cert->delta;
        }
    }

    auto add = [&](const std::string& desc, bool holds) {
        rep.inequalities.push_back({desc, holds});
    };
    add("homotopy distance equals model homology distance",
        rep.pi_matches_model_homology_distance);
    if (rep.dgl_upper_bound) {
        add("homotopy distance <= certificate bound",
            le_inf(rep.pi_distance, rep.dgl_upper_bound));
        if (rep.h_computed) {
            add("space homology distance <= certificate bound",
                le_inf(rep.h_distance, rep.dgl_upper_bound));
            add("generator module distance <= certificate bound",
                le_inf(rep.generator_distance, rep.dgl_upper_bound));
        }
        if (rep.input_upper_bound)
            add("certificate bound <= input-level bound",
                le_inf(rep.dgl_upper_bound, rep.input_upper_bound));
    }
    if (rep.input_upper_bound) {
        add("homotopy distance <= input-level bound",
            le_inf(rep.pi_distance, rep.input_upper_bound));
        if (rep.h_computed)
            add("space homology distance <= input-level bound",
                le_inf(rep.h_distance, rep.input_upper_bound));
    }
    rep.ok = std::all_of(rep.inequalities.begin(), rep.inequalities.end(),
                         [](const Inequality& i) { return i.holds; });
    return rep;
}

}  // namespace qlm
