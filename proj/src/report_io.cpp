#include "nullctrl/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nullctrl/json_writer.hpp"

namespace nullctrl {

namespace {

using nlohmann::json;

cxd parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw SchemaError(path + ": expected {re, im} or a plain number");
    if (!j["re"].is_number() || !j["im"].is_number())
        throw SchemaError(path + ": re/im must be numbers");
    return {j["re"].get<double>(), j["im"].get<double>()};
}

std::vector<cxd> parse_complex_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    std::vector<cxd> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_complex(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Spectrum parse_spectrum(const json& j) {
    if (!j.is_object()) throw SchemaError("spectrum: expected an object");
    if (j.contains("explicit")) return explicit_spectrum(parse_complex_list(j["explicit"], "spectrum.explicit"));
    if (!j.contains("preset")) throw SchemaError("spectrum: needs 'preset' or 'explicit'");
    const json& p = j["preset"];
    if (!p.is_object() || !p.contains("name"))
        throw SchemaError("spectrum.preset: expected an object with 'name'");
    const std::string name = p["name"].get<std::string>();
    const auto order = [&]() -> std::size_t {
        if (!p.contains("n") || !p["n"].is_number_unsigned())
            throw SchemaError("spectrum.preset.n: expected a positive integer");
        return p["n"].get<std::size_t>();
    };
    if (name == "heat") return heat_spectrum(order());
    if (name == "imaginary-ladder") return imaginary_ladder_spectrum(order());
    if (name == "strip-perturbed") {
        DeviationRule rule;
        if (p.contains("deviation_coefficient"))
            rule.coefficient = p["deviation_coefficient"].get<double>();
        return strip_perturbed_spectrum(order(), rule);
    }
    throw SchemaError("spectrum.preset.name: unknown preset '" + name + "'");
}

}  // namespace

ControlProblem parse_problem(const std::string& json_text) {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw SchemaError("root: expected an object");
    for (const char* field : {"spectrum", "b", "x0", "t1"})
        if (!j.contains(field)) throw SchemaError(std::string(field) + ": missing field");

    ControlProblem p;
    p.spectrum = parse_spectrum(j["spectrum"]);
    p.input.coefficients = parse_complex_list(j["b"], "b");
    p.x0 = parse_complex_list(j["x0"], "x0");
    p.t1 = j["t1"].get<double>();
    p.settle_lag = j.contains("T") ? j["T"].get<double>() : 0.0;

    if (p.input.size() != p.spectrum.size())
        throw SchemaError("b: length " + std::to_string(p.input.size()) +
                          " does not match spectrum length " + std::to_string(p.spectrum.size()));
    if (p.x0.size() != p.spectrum.size())
        throw SchemaError("x0: length " + std::to_string(p.x0.size()) +
                          " does not match spectrum length " + std::to_string(p.spectrum.size()));
    if (!(p.t1 > 0.0)) throw SchemaError("t1: must be > 0");
    if (p.settle_lag < 0.0 || !(p.t1 > p.settle_lag))
        throw SchemaError("T: requires 0 <= T < t1");

    const SpectrumValidation v = validate_spectrum(p.spectrum);
    if (!v.ok()) {
        std::string why = !v.distinct ? "duplicate eigenvalues"
                          : !v.ordered_by_modulus ? "eigenvalues not ordered by modulus"
                                                  : "Re lower bound violated";
        throw SchemaError("spectrum: validation failed (" + why + ")");
    }
    return p;
}

ControlProblem load_problem(const std::string& path) {
    return parse_problem(read_file(path));
}

std::string problem_to_json(const ControlProblem& p) {
    JsonWriter w;
    w.begin_object();
    w.key("spectrum").begin_object();
    w.key("explicit").begin_array();
    for (const cxd& ev : p.spectrum.eigenvalues) w.value(ev);
    w.end_array();
    w.end_object();
    w.key("b").begin_array();
    for (const cxd& v : p.input.coefficients) w.value(v);
    w.end_array();
    w.key("x0").begin_array();
    for (const cxd& v : p.x0) w.value(v);
    w.end_array();
    w.key("t1").value(p.t1);
    w.key("T").value(p.settle_lag);
    w.end_object();
    return w.str();
}

std::string minimality_to_json(const MinimalityReport& rep, const BoasCertificate* cert) {
    JsonWriter w;
    w.begin_object();
    w.key("verdict").value(to_string(rep.verdict));
    w.key("gamma_estimate").value(rep.gamma_estimate);
    w.key("decay_ratio").value(rep.decay_ratio);
    w.key("thresholds").begin_object();
    w.key("geometric_decay_below").value(rep.thresholds.geometric_decay_below);
    w.key("strong_evidence_at_least").value(rep.thresholds.strong_evidence_at_least);
    w.end_object();
    w.key("gamma").begin_array();
    for (double g : rep.gamma.values) w.value(g);
    w.end_array();
    w.key("below_precision_floor").begin_array();
    for (bool f : rep.gamma.below_floor) w.value(f);
    w.end_array();
    w.key("eig_tolerance").value(rep.gamma.eig_tolerance);
    if (cert != nullptr) {
        w.key("boas_certificate").begin_object();
        w.key("passed").value(cert->passed);
        w.key("worst_ratio").value(cert->worst_ratio);
        w.key("gamma_candidate").value(cert->gamma_candidate);
        w.key("trials").value(cert->trials);
        w.key("seed").value(static_cast<std::size_t>(cert->seed));
        w.end_object();
    }
    w.end_object();
    return w.str();
}

std::string gamma_csv(const GammaSequence& g) {
    std::ostringstream os;
    os.precision(17);
    os << "n,gamma,below_precision_floor\n";
    for (std::size_t i = 0; i < g.values.size(); ++i)
        os << (i + 1) << ',' << g.values[i] << ','
           << (i < g.below_floor.size() && g.below_floor[i] ? 1 : 0) << '\n';
    return os.str();
}

std::string synthesis_to_json(const SynthesisResult& r) {
    JsonWriter w;
    w.begin_object();
    w.key("order").value(r.order);
    w.key("gamma_used").value(r.gamma_used);
    w.key("solve_residual").value(r.solve_residual);
    w.key("realness_defect").value(r.realness_defect);
    w.key("targets").begin_array();
    for (const cxd& c : r.targets.values) w.value(c);
    w.end_array();
    w.key("control").begin_object();
    w.key("horizon").value(r.control.horizon());
    w.key("real_projection").value(r.control.real_projection);
    w.key("alpha").begin_array();
    for (const cxd& a : r.control.coefficients) w.value(a);
    w.end_array();
    w.end_object();
    w.end_object();
    return w.str();
}

std::string solvability_to_json(const SolvabilityProfile& prof) {
    JsonWriter w;
    w.begin_object();
    w.key("norms").begin_array();
    for (double n : prof.norms) w.value(n);
    w.end_array();
    w.key("resolved_order").value(prof.resolved_order);
    w.key("truncated").value(prof.truncated);
    w.key("growth_ratio").value(prof.growth_ratio);
    w.key("evidence").value(prof.evidence);
    w.end_object();
    return w.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace nullctrl
