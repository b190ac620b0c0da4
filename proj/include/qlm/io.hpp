#pragma once

#include <string>

#include "qlm/pipeline.hpp"

namespace qlm {

// JSON schemas are versioned; rationals are serialized as "p/q" strings so
// files stay exact and byte-stable.
inline constexpr int kFormatVersion = 1;

CellComplexDescription read_cell_complex(const std::string& text);
std::string write_cell_complex(const CellComplexDescription& desc);

std::string write_model(const PersistenceQuillenModel& model);
PersistenceQuillenModel read_model(const std::string& text);

std::string write_barcode_json(const Barcode& bc, const std::string& flavor);
Barcode read_barcode(const std::string& text);
std::string write_barcode_csv(const Barcode& bc);

// Certificate morphisms are given by generator images in the element syntax;
// endpoints are resolved against the two modules via the sample grid.
DGLCertificate read_certificate(const std::string& text, const DGLModule& x, const DGLModule& y);

std::string write_report(const StabilityReport& rep);

}  // namespace qlm
