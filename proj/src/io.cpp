#include "qlm/io.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "qlm/errors.hpp"

namespace qlm {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad JSON: ") + e.what());
    }
}

void expect_header(const json& j, const std::string& type) {
    if (!j.is_object()) throw ValidationError("expected a JSON object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        throw ValidationError("missing format_version");
    if (j["format_version"].get<int>() != kFormatVersion)
        throw ValidationError("unsupported format_version");
    if (!j.contains("type") || j["type"] != type)
        throw ValidationError("expected a file of type '" + type + "'");
}

const json& field(const json& j, const std::string& name) {
    if (!j.contains(name)) throw ValidationError("missing field '" + name + "'");
    return j[name];
}

Rational rat_field(const json& j, const std::string& name) {
    const json& v = field(j, name);
    if (!v.is_string()) throw ValidationError("field '" + name + "' must be a rational string");
    return rat_parse(v.get<std::string>());
}

std::optional<Rational> death_from(const json& v) {
    if (v.is_string() && v.get<std::string>() == "inf") return std::nullopt;
    if (!v.is_string()) throw ValidationError("interval death must be a rational string or \"inf\"");
    return rat_parse(v.get<std::string>());
}

json interval_json(const Interval& iv) {
    json j;
    j["birth"] = rat_str(iv.birth);
    j["death"] = iv.death ? rat_str(*iv.death) : "inf";
    return j;
}

}  // namespace

CellComplexDescription read_cell_complex(const std::string& text) {
    json j = parse_json(text);
    expect_header(j, "cell_complex");
    const json& stages = field(j, "stages");
    if (!stages.is_array()) throw ValidationError("'stages' must be an array");
    if (stages.empty()) throw ValidationError("no stages");
    CellComplexDescription desc;
    for (const auto& sj : stages) {
        CellStage stage;
        const json& dim = field(sj, "dimension");
        if (!dim.is_number_integer()) throw ValidationError("stage dimension must be an integer");
        stage.dimension = dim.get<int>();
        if (sj.contains("time")) stage.time = rat_field(sj, "time");
        for (const auto& cj : field(sj, "cells")) {
            const json& name = field(cj, "name");
            const json& attach = field(cj, "attach");
            if (!name.is_string() || !attach.is_string())
                throw ValidationError("cell entries need string 'name' and 'attach'");
            stage.cells.emplace_back(name.get<std::string>(), attach.get<std::string>());
        }
        desc.stages.push_back(std::move(stage));
    }
    return desc;
}

std::string write_cell_complex(const CellComplexDescription& desc) {
    json j;
    j["format_version"] = kFormatVersion;
    j["type"] = "cell_complex";
    j["stages"] = json::array();
    for (const auto& stage : desc.stages) {
        json sj;
        sj["dimension"] = stage.dimension;
        if (stage.time) sj["time"] = rat_str(*stage.time);
        sj["cells"] = json::array();
        for (const auto& [name, attach] : stage.cells)
            sj["cells"].push_back({{"name", name}, {"attach", attach}});
        j["stages"].push_back(std::move(sj));
    }
    return j.dump(2) + "\n";
}

std::string write_model(const PersistenceQuillenModel& model) {
    json j;
    j["format_version"] = kFormatVersion;
    j["type"] = "persistence_model";
    j["truncation"] = model.module.object(0).truncation();
    j["minimal"] = model.minimal;
    j["times"] = json::array();
    for (const auto& t : model.module.grid().values()) j["times"].push_back(rat_str(t));
    j["stages"] = json::array();
    for (std::size_t i = 0; i < model.module.size(); ++i) {
        const FreeDGL& dgl = model.module.object(i);
        json sj;
        sj["generators"] = json::array();
        sj["differential"] = json::object();
        for (std::size_t g = 0; g < dgl.generators().size(); ++g) {
            const Generator& gen = dgl.generators()[g];
            sj["generators"].push_back({{"name", gen.name}, {"degree", gen.degree}});
            sj["differential"][gen.name] = dgl.differential().value_on_generator(g).str();
        }
        j["stages"].push_back(std::move(sj));
    }
    j["steps"] = json::array();
    for (std::size_t i = 0; i + 1 < model.module.size(); ++i) {
        json imgs = json::array();
        for (const auto& img : model.module.step(i).generator_images()) imgs.push_back(img.str());
        j["steps"].push_back(std::move(imgs));
    }
    return j.dump(2) + "\n";
}

PersistenceQuillenModel read_model(const std::string& text) {
    json j = parse_json(text);
    expect_header(j, "persistence_model");
    const json& trunc_j = field(j, "truncation");
    if (!trunc_j.is_number_integer()) throw ValidationError("truncation must be an integer");
    int trunc = trunc_j.get<int>();
    std::vector<Rational> times;
    for (const auto& t : field(j, "times")) {
        if (!t.is_string()) throw ValidationError("times must be rational strings");
        times.push_back(rat_parse(t.get<std::string>()));
    }
    std::vector<FreeDGL> objects;
    for (const auto& sj : field(j, "stages")) {
        std::vector<Generator> gens;
        for (const auto& gj : field(sj, "generators")) {
            const json& name = field(gj, "name");
            const json& deg = field(gj, "degree");
            if (!name.is_string() || !deg.is_number_integer())
                throw ValidationError("generator entries need string 'name' and integer 'degree'");
            gens.push_back({name.get<std::string>(), deg.get<int>()});
        }
        std::map<std::string, std::string> diff;
        for (const auto& [name, value] : field(sj, "differential").items()) {
            if (!value.is_string()) throw ValidationError("differential values must be strings");
            diff[name] = value.get<std::string>();
        }
        objects.push_back(FreeDGL::make(gens, trunc, diff));
    }
    std::vector<DGLMorphism> steps;
    const json& steps_j = field(j, "steps");
    if (steps_j.size() + 1 != objects.size())
        throw ValidationError("model needs one step per consecutive stage pair");
    for (std::size_t i = 0; i < steps_j.size(); ++i) {
        std::vector<LieElement> images;
        for (const auto& img : steps_j[i]) {
            if (!img.is_string()) throw ValidationError("step images must be strings");
            images.push_back(parse_lie_element(objects[i + 1].basis(), img.get<std::string>()));
        }
        steps.push_back(DGLMorphism(objects[i], objects[i + 1], std::move(images)));
    }
    bool minimal = true;
    for (const auto& obj : objects) minimal = minimal && obj.is_minimal();
    return {DGLModule(Grid(std::move(times)), std::move(objects), std::move(steps)), minimal,
            trunc - 2};
}

std::string write_barcode_json(const Barcode& bc, const std::string& flavor) {
    json j;
    j["format_version"] = kFormatVersion;
    j["type"] = "barcode";
    j["flavor"] = flavor;
    j["bars"] = json::array();
    for (const auto& [deg, bars] : bc.intervals)
        for (const auto& iv : bars) {
            json bj = interval_json(iv);
            bj["degree"] = deg;
            j["bars"].push_back(std::move(bj));
        }
    return j.dump(2) + "\n";
}

Barcode read_barcode(const std::string& text) {
    json j = parse_json(text);
    expect_header(j, "barcode");
    Barcode bc;
    for (const auto& bj : field(j, "bars")) {
        const json& deg = field(bj, "degree");
        if (!deg.is_number_integer()) throw ValidationError("bar degree must be an integer");
        Interval iv{rat_field(bj, "birth"), death_from(field(bj, "death"))};
        bc.intervals[deg.get<int>()].push_back(iv);
    }
    for (auto& [deg, bars] : bc.intervals) std::sort(bars.begin(), bars.end());
    return bc;
}

std::string write_barcode_csv(const Barcode& bc) {
    std::ostringstream out;
    out << "degree,birth,death\n";
    for (const auto& [deg, bars] : bc.intervals)
        for (const auto& iv : bars)
            out << deg << ',' << rat_str(iv.birth) << ','
                << (iv.death ? rat_str(*iv.death) : "inf") << '\n';
    return out.str();
}

DGLCertificate read_certificate(const std::string& text, const DGLModule& x, const DGLModule& y) {
    json j = parse_json(text);
    expect_header(j, "interleaving_certificate");
    Rational delta = rat_field(j, "delta");
    std::vector<Rational> sample;
    for (const auto& t : field(j, "sample")) {
        if (!t.is_string()) throw ValidationError("sample values must be rational strings");
        sample.push_back(rat_parse(t.get<std::string>()));
    }
    Grid grid(sample);
    int trunc = x.object(0).truncation();
    auto object_at = [trunc](const DGLModule& m, const Rational& t) {
        int s = m.grid().stage_at(t);
        return s < 0 ? FreeDGL::make({}, trunc) : m.object(static_cast<std::size_t>(s));
    };
    auto read_family = [&](const json& fam, const DGLModule& src, const DGLModule& dst) {
        if (fam.size() != grid.size())
            throw ValidationError("certificate needs one morphism per sample point");
        std::vector<DGLMorphism> out;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            FreeDGL source = object_at(src, grid.at(i));
            FreeDGL target = object_at(dst, grid.at(i) + delta);
            std::vector<LieElement> images;
            for (const auto& img : fam[i]) {
                if (!img.is_string()) throw ValidationError("morphism images must be strings");
                images.push_back(parse_lie_element(target.basis(), img.get<std::string>()));
            }
            if (images.size() != source.generators().size())
                throw ValidationError("morphism at sample " + std::to_string(i) +
                                      " needs one image per source generator");
            out.push_back(DGLMorphism(source, target, std::move(images)));
        }
        return out;
    };
    DGLCertificate cert{delta, grid, {}, {}};
    cert.f = read_family(field(j, "f"), x, y);
    cert.g = read_family(field(j, "g"), y, x);
    return cert;
}

std::string write_report(const StabilityReport& rep) {
    json j;
    j["format_version"] = kFormatVersion;
    j["type"] = "stability_report";
    auto dist = [](const std::optional<Rational>& v) {
        return v ? rat_str(*v) : std::string("inf");
    };
    auto bound = [](const std::optional<Rational>& v) {
        return v ? rat_str(*v) : std::string("not available");
    };
    j["pi_distance"] = dist(rep.pi_distance);
    j["h_distance"] = rep.h_computed ? dist(rep.h_distance) : bound(std::nullopt);
    j["generator_distance"] =
        rep.h_computed ? dist(rep.generator_distance) : bound(std::nullopt);
    j["pi_matches_model_homology_distance"] = rep.pi_matches_model_homology_distance;
    j["dgl_upper_bound"] = bound(rep.dgl_upper_bound);
    j["input_upper_bound"] = bound(rep.input_upper_bound);
    j["homotopy_distance"] = rep.homotopy_distance_note;
    j["inequalities"] = json::array();
    for (const auto& ineq : rep.inequalities)
        j["inequalities"].push_back({{"description", ineq.description}, {"holds", ineq.holds}});
    j["ok"] = rep.ok;
    return j.dump(2) + "\n";
}

}  // namespace qlm
