#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlm/models.hpp"
#include "qlm/persist.hpp"

namespace qlm {

// Stagewise free Lie model of a filtered complex, optionally minimalized.
// Structure maps are generator inclusions in the free variant; in the
// minimal variant they are the induced representatives obtained by
// conjugating the inclusions with the minimalization data.
struct PersistenceQuillenModel {
    DGLModule module;
    bool minimal = false;
    int degree_cutoff = 0;  // model degrees beyond this are not reported
};

PersistenceQuillenModel build_persistence_model(const CellComplexDescription& desc,
                                                int truncation, bool minimal);

// Homotopy-group barcode: homology pushforward of the model, reported with
// the degree shift taking model degree k to homotopy degree k+1.
Barcode pi_barcode(const PersistenceQuillenModel& model);

// Space-homology barcode of a minimal model: generator modules suspended by
// one with a constant class adjoined in degree 0. Rejects non-minimal input.
Barcode h_barcode(const PersistenceQuillenModel& model);

// The generator persistence module (indecomposables of each stage with the
// induced maps), the common refinement behind h_barcode.
GrVecModule generator_module(const PersistenceQuillenModel& model);

struct Inequality {
    std::string description;
    bool holds = false;
};

// Computable quantities comparing two filtered models, with each inequality
// of the distance chain that has both sides available checked explicitly.
// Optionals for distances use nullopt for infinity; optionals for bounds use
// nullopt for "not available". The homotopy-level distance between the
// models themselves is never computed, only bounded.
struct StabilityReport {
    std::optional<Rational> pi_distance;
    bool h_computed = false;  // space homology needs both models minimal
    std::optional<Rational> h_distance;
    std::optional<Rational> generator_distance;
    bool pi_matches_model_homology_distance = false;
    std::optional<Rational> dgl_upper_bound;    // from a verified strict certificate
    std::optional<Rational> input_upper_bound;  // for shift-constructed pairs
    std::string homotopy_distance_note = "not computed";
    std::vector<Inequality> inequalities;
    bool ok = false;
};

StabilityReport stability_report(const PersistenceQuillenModel& x,
                                 const PersistenceQuillenModel& y,
                                 const std::optional<DGLCertificate>& certificate = std::nullopt,
                                 const std::optional<Rational>& input_bound = std::nullopt);

}  // namespace qlm
