#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qlm/errors.hpp"
#include "qlm/io.hpp"
#include "qlm/selftest.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qlm::ValidationError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qlm::ValidationError("cannot write " + out_path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence Lie-model toolkit: builds stagewise free Lie models of filtered "
                 "cell complexes and computes homotopy and homology barcodes"};
    app.require_subcommand(1);

    int truncation = 7;
    std::string out_path;
    std::string format = "json";

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--truncation", truncation, "Lie word degree cutoff (>= 3)");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        if (with_format)
            cmd->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* model = app.add_subcommand("model", "model operations");
    model->require_subcommand(1);
    auto* model_build = model->add_subcommand("build", "build the stagewise model of a complex");
    std::string complex_path;
    bool minimal = false;
    model_build->add_option("complex", complex_path, "cell complex JSON file")->required();
    model_build->add_flag("--minimal", minimal, "minimalize every stage");
    add_common(model_build, false);

    auto* barcode_cmd = app.add_subcommand("barcode", "barcode of a model file");
    std::string model_path, kind = "pi";
    barcode_cmd->add_option("model", model_path, "model JSON file")->required();
    barcode_cmd->add_option("kind", kind, "pi (homotopy) or h (space homology)")
        ->check(CLI::IsMember({"pi", "h"}));
    add_common(barcode_cmd, true);

    auto* distance_cmd = app.add_subcommand("distance", "interleaving distance of two barcodes");
    std::string bar_a, bar_b;
    distance_cmd->add_option("a", bar_a, "first barcode JSON file")->required();
    distance_cmd->add_option("b", bar_b, "second barcode JSON file")->required();
    add_common(distance_cmd, false);

    auto* stability_cmd = app.add_subcommand("stability", "stability report for two complexes");
    std::string cx_a, cx_b, cert_path, bound_text;
    stability_cmd->add_option("a", cx_a, "first cell complex JSON file")->required();
    stability_cmd->add_option("b", cx_b, "second cell complex JSON file")->required();
    stability_cmd->add_option("--certificate", cert_path, "interleaving certificate JSON file");
    stability_cmd->add_option("--bound", bound_text, "input-level distance bound (rational)");
    bool free_stages = false;
    stability_cmd->add_flag("--free-stages", free_stages, "keep stages free (skip minimalization)");
    add_common(stability_cmd, false);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the bundled golden corpus");
    add_common(selftest_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (truncation < 3) throw qlm::ValidationError("truncation must be at least 3");
        if (model_build->parsed()) {
            auto desc = qlm::read_cell_complex(slurp(complex_path));
            auto built = qlm::build_persistence_model(desc, truncation, minimal);
            emit(out_path, qlm::write_model(built));
        } else if (barcode_cmd->parsed()) {
            auto built = qlm::read_model(slurp(model_path));
            auto bc = kind == "pi" ? qlm::pi_barcode(built) : qlm::h_barcode(built);
            emit(out_path,
                 format == "csv" ? qlm::write_barcode_csv(bc) : qlm::write_barcode_json(bc, kind));
        } else if (distance_cmd->parsed()) {
            auto a = qlm::read_barcode(slurp(bar_a));
            auto b = qlm::read_barcode(slurp(bar_b));
            auto d = qlm::interleaving_distance(a, b);
            emit(out_path, (d ? qlm::rat_str(*d) : std::string("inf")) + "\n");
        } else if (stability_cmd->parsed()) {
            auto x = qlm::build_persistence_model(qlm::read_cell_complex(slurp(cx_a)), truncation,
                                                  !free_stages);
            auto y = qlm::build_persistence_model(qlm::read_cell_complex(slurp(cx_b)), truncation,
                                                  !free_stages);
            std::optional<qlm::DGLCertificate> cert;
            if (!cert_path.empty())
                cert = qlm::read_certificate(slurp(cert_path), x.module, y.module);
            std::optional<qlm::Rational> bound;
            if (!bound_text.empty()) bound = qlm::rat_parse(bound_text);
            emit(out_path, qlm::write_report(qlm::stability_report(x, y, cert, bound)));
        } else if (selftest_cmd->parsed()) {
            const char* corpus = std::getenv("QLM_CORPUS_DIR");
            std::string dir = out_path.empty() ? "selftest_out" : out_path;
            auto res = qlm::run_selftest(dir, truncation, corpus ? corpus : "");
            std::cout << res.summary;
            if (!res.ok) {
                std::cerr << "selftest failed\n";
                return 4;
            }
        }
    } catch (const qlm::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const qlm::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << '\n';
        return 3;
    } catch (const qlm::InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
