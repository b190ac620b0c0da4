#pragma once

#include <string>

namespace qlm {

struct SelftestResult {
    bool ok = true;
    std::string summary;  // one line per check
};

// Runs the bundled golden corpus (spheres, projective plane, wedges, shift
// and delay pairs, cancelling cells, round trips) and writes all produced
// artifacts under out_dir. Identical inputs produce byte-identical files.
// When corpus_dir is nonempty, every cell-complex JSON file in it is
// additionally built and its barcodes emitted.
SelftestResult run_selftest(const std::string& out_dir, int truncation,
                            const std::string& corpus_dir = "");

}  // namespace qlm
