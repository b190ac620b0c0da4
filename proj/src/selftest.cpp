#include "qlm/selftest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "qlm/cecobar.hpp"
#include "qlm/errors.hpp"
#include "qlm/io.hpp"

namespace qlm {

namespace {

namespace fs = std::filesystem;

Rational q(long p, long d = 1) { return Rational(p, d); }

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
}

CellComplexDescription cp2_desc(Rational t1 = Rational(2), Rational t2 = Rational(4)) {
    CellComplexDescription desc;
    desc.stages.push_back({2, t1, {{"v", "0"}}});
    desc.stages.push_back({4, t2, {{"w", "[v,v]"}}});
    return desc;
}

struct Runner {
    fs::path out;
    std::ostringstream log;
    bool ok = true;

    void check(const std::string& name, bool passed) {
        ok = ok && passed;
        log << (passed ? "ok   " : "FAIL ") << name << '\n';
    }

    void run(const std::string& name, const std::function<bool()>& body) {
        bool passed = false;
        std::string note;
        try {
            passed = body();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        ok = ok && passed;
        log << (passed ? "ok   " : "FAIL ") << name << note << '\n';
    }
};

bool bars_equal(const Barcode& bc, int deg, std::vector<Interval> expect) {
    auto it = bc.intervals.find(deg);
    if (it == bc.intervals.end()) return expect.empty();
    return it->second == expect;
}

}  // namespace

SelftestResult run_selftest(const std::string& out_dir, int truncation,
                            const std::string& corpus_dir) {
    if (truncation < 3) throw ValidationError("truncation must be at least 3");
    fs::create_directories(out_dir);
    Runner r{fs::path(out_dir), {}, true};

    r.run("sphere closed forms", [&] {
        for (int n = 2; n <= 7; ++n) {
            auto m = sphere_model(n, std::max(truncation, 2 * n));
            auto pi = pi_star(m.dgl);
            bool even = n % 2 == 0;
            std::map<int, std::size_t> expect;
            expect[n] = 1;
            if (even) expect[2 * n - 1] = 1;
            for (const auto& [k, dim] : pi.dims)
                if (dim != (expect.count(k) ? expect[k] : 0)) return false;
            if (pi.dims.at(n) != 1) return false;
            if (even && pi.dims.at(2 * n - 1) != 1) return false;
        }
        return true;
    });

    r.run("projective plane barcodes", [&] {
        int trunc = std::max(truncation, 7);
        auto desc = cp2_desc();
        write_file(r.out / "cp2_filtration.json", write_cell_complex(desc));
        auto model = build_persistence_model(desc, trunc, true);
        write_file(r.out / "cp2_model.json", write_model(model));
        auto pi = pi_barcode(model);
        auto h = h_barcode(model);
        write_file(r.out / "cp2_pi.json", write_barcode_json(pi, "pi"));
        write_file(r.out / "cp2_pi.csv", write_barcode_csv(pi));
        write_file(r.out / "cp2_h.json", write_barcode_json(h, "h"));
        write_file(r.out / "cp2_h.csv", write_barcode_csv(h));
        return bars_equal(pi, 2, {{q(2), std::nullopt}}) &&
               bars_equal(pi, 3, {{q(2), q(4)}}) &&
               bars_equal(pi, 5, {{q(4), std::nullopt}}) &&
               bars_equal(h, 0, {{q(2), std::nullopt}}) &&
               bars_equal(h, 2, {{q(2), std::nullopt}}) &&
               bars_equal(h, 4, {{q(4), std::nullopt}}) && h.intervals.size() == 3;
    });

    r.run("model file round trip", [&] {
        auto model = build_persistence_model(cp2_desc(), std::max(truncation, 7), true);
        auto reread = read_model(write_model(model));
        return pi_barcode(model) == pi_barcode(reread) &&
               h_barcode(model) == h_barcode(reread);
    });

    r.run("wedge growth", [&] {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"v", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"u", "0"}}});
        write_file(r.out / "wedge_filtration.json", write_cell_complex(desc));
        auto model = build_persistence_model(desc, std::max(truncation, 6), true);
        auto pi = pi_barcode(model);
        write_file(r.out / "wedge_pi.json", write_barcode_json(pi, "pi"));
        auto h = h_barcode(model);
        return bars_equal(pi, 2, {{q(2), std::nullopt}}) && pi.intervals.at(3).size() == 2 &&
               bars_equal(h, 3, {{q(3), std::nullopt}});
    });

    r.run("shift pair stability", [&] {
        auto x = build_persistence_model(cp2_desc(), std::max(truncation, 6), true);
        PersistenceQuillenModel y{shift(x.module, q(1)), x.minimal, x.degree_cutoff};
        auto rep = stability_report(x, y, std::nullopt, q(1));
        write_file(r.out / "shift_report.json", write_report(rep));
        return rep.ok && rep.dgl_upper_bound == q(1) && rep.pi_distance == q(1);
    });

    r.run("delay pair stability", [&] {
        int trunc = std::max(truncation, 6);
        auto x = build_persistence_model(cp2_desc(q(2), q(4)), trunc, false);
        auto y = build_persistence_model(cp2_desc(q(2), q(5)), trunc, false);
        auto rep = stability_report(x, y, std::nullopt, std::nullopt);
        write_file(r.out / "delay_report.json", write_report(rep));
        return rep.ok && rep.pi_distance == q(1);
    });

    r.run("cancelling cells minimalize away", [&] {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"a", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"b", "a"}}});
        int trunc = std::max(truncation, 6);
        auto free_model = build_persistence_model(desc, trunc, false);
        auto min_model = build_persistence_model(desc, trunc, true);
        return !free_model.minimal && min_model.minimal &&
               min_model.module.object(1).generators().empty() &&
               pi_barcode(free_model) == pi_barcode(min_model);
    });

    r.run("round trips through the two constructions", [&] {
        int trunc = std::max(truncation, 6);
        std::vector<FreeDGL> corpus{
            FreeDGL::make({{"v", 2}}, trunc),
            FreeDGL::make({{"v", 1}, {"w", 3}}, trunc, {{"w", "[v,v]"}}),
            FreeDGL::make({{"a", 2}, {"b", 3}}, trunc, {{"b", "a"}}),
        };
        for (const auto& dgl : corpus)
            if (!adjunction_homology_check(dgl).ok) return false;
        return true;
    });

    if (!corpus_dir.empty()) {
        r.run("external corpus", [&] {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(corpus_dir))
                if (entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& file : files) {
                std::ifstream in(file, std::ios::binary);
                std::ostringstream text;
                text << in.rdbuf();
                auto model = build_persistence_model(read_cell_complex(text.str()),
                                                     truncation, true);
                auto stem = file.stem().string();
                write_file(r.out / (stem + "_model.json"), write_model(model));
                write_file(r.out / (stem + "_pi.json"),
                           write_barcode_json(pi_barcode(model), "pi"));
                write_file(r.out / (stem + "_h.json"),
                           write_barcode_json(h_barcode(model), "h"));
            }
            return true;
        });
    }

    SelftestResult res{r.ok, r.log.str()};
    write_file(r.out / "summary.txt", res.summary);
    return res;
}

}  // namespace qlm
