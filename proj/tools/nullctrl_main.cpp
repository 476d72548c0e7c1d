#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullctrl/demos.hpp"
#include "nullctrl/errors.hpp"
#include "nullctrl/json_writer.hpp"
#include "nullctrl/perturb.hpp"
#include "nullctrl/report_io.hpp"
#include "nullctrl/simulate.hpp"
#include "nullctrl/synthesis.hpp"

namespace {

using namespace nullctrl;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string input;
    std::string out_dir = ".";
    std::size_t n = 0;
    std::size_t check_order = 0;  // 0: default 3n
    double tol = 1e-8;
    std::uint64_t seed = 0x5eed;
    std::size_t panels = 256;
    std::string format = "both";
    std::string demo_name;
};

bool want_json(const Options& o) { return o.format != "csv"; }
bool want_csv(const Options& o) { return o.format != "json"; }

int cmd_analyze(const Options& opt) {
    const ControlProblem p = load_problem(opt.input);
    const std::size_t n = opt.n ? opt.n : p.x0.size();
    const ExponentialFamily fam = p.family();
    const GammaSequence gamma = gamma_sequence(fam, n);
    const MinimalityReport rep = classify_minimality(gamma);
    const double candidate = rep.gamma_estimate > 0.0 ? rep.gamma_estimate : 1e-300;
    const BoasCertificate cert = boas_certificate(fam, candidate, 200, n, opt.seed);

    if (want_json(opt))
        write_file_atomic(opt.out_dir + "/minimality.json", minimality_to_json(rep, &cert));
    if (want_csv(opt)) write_file_atomic(opt.out_dir + "/gamma.csv", gamma_csv(gamma));
    std::cout << "verdict: " << to_string(rep.verdict) << " (gamma_" << n << " = "
              << rep.gamma_estimate << ")\n";
    return kExitOk;
}

int cmd_synthesize(const Options& opt) {
    const ControlProblem p = load_problem(opt.input);
    const std::size_t n = opt.n ? opt.n : p.x0.size();
    const SynthesisResult syn = synthesize_null_control(p, n);
    if (want_json(opt)) {
        write_file_atomic(opt.out_dir + "/synthesis.json", synthesis_to_json(syn));
        write_file_atomic(opt.out_dir + "/control.json", control_to_json(syn.control));
    }
    if (want_csv(opt))
        write_file_atomic(opt.out_dir + "/control_trace.csv", control_trace_csv(syn.control, 256));
    std::cout << "synthesized order-" << n << " control, solve residual " << syn.solve_residual
              << "\n";
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    const ControlProblem p = load_problem(opt.input);
    const std::size_t stored = std::min({p.spectrum.size(), p.input.size(), p.x0.size()});
    const std::size_t n = opt.n ? opt.n : p.x0.size();
    const std::size_t check =
        opt.check_order ? opt.check_order : std::min(stored, 3 * n);

    const SynthesisResult syn = synthesize_null_control(p, n);
    const VerificationReport rep = verify_null_controllability(p, syn.control, check, opt.tol);

    // Closed form vs quadrature cross-check at t1.
    const auto closed = modal_state(p, syn.control, p.t1);
    const auto oracle = quadrature_state_oracle(p, syn.control, p.t1, opt.panels);
    double disc = 0.0;
    for (std::size_t j = 0; j < closed.size(); ++j)
        disc = std::max(disc, std::abs(closed[j] - oracle[j]));

    if (want_json(opt)) {
        write_file_atomic(opt.out_dir + "/verification.json", report_to_json(rep));
        JsonWriter w;
        w.begin_object();
        w.key("panels").value(opt.panels);
        w.key("max_discrepancy").value(disc);
        w.end_object();
        write_file_atomic(opt.out_dir + "/oracle_check.json", w.str());
    }
    if (want_csv(opt))
        write_file_atomic(opt.out_dir + "/modal_trace.csv",
                          modal_trace_csv(p, syn.control, check, 1.25 * p.t1, 128));
    std::cout << (rep.passed ? "PASS" : "FAIL") << ": max modal residual "
              << *std::max_element(rep.modal_residuals.begin(), rep.modal_residuals.end())
              << ", tail bound " << rep.tail_bound << " (" << to_string(rep.tail_status) << ")\n";
    return rep.passed ? kExitOk : kExitVerificationFailure;
}

int cmd_perturb(const Options& opt) {
    const nlohmann::json doc = nlohmann::json::parse(read_file(opt.input));
    if (!doc.contains("reference") || !doc.contains("perturbed"))
        throw SchemaError("perturb input: needs 'reference' and 'perturbed' problems");
    const ControlProblem ref = parse_problem(doc["reference"].dump());
    const ControlProblem pert = parse_problem(doc["perturbed"].dump());
    const std::size_t n = opt.n ? opt.n : std::min(ref.x0.size(), pert.x0.size());

    const PerturbationReport rep = perturbed_controllability_check(ref, pert, n, opt.tol);
    if (want_json(opt))
        write_file_atomic(opt.out_dir + "/perturbation.json", perturbation_to_json(rep));
    if (want_csv(opt)) write_file_atomic(opt.out_dir + "/q_profile.csv", q_profile_csv(rep));

    std::cout << "q_" << n << " = " << rep.q_final
              << (rep.admissible ? " (admissible)" : " (inadmissible)") << "\n";
    const bool ok = rep.admissible && rep.synthesis_attempted && rep.verification.passed;
    return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_demo(const Options& opt) {
    const DemoResult result = run_demo(opt.demo_name, opt.seed);
    write_demo_files(result, opt.out_dir);
    std::cout << "demo '" << opt.demo_name << "': " << (result.passed ? "PASS" : "FAIL") << " ("
              << result.files.size() << " files in " << opt.out_dir << ")\n";
    return result.passed ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Null-controllability analysis via exponential moment problems"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--input", opt.input, "problem JSON document")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--n", opt.n, "truncation order (default: number of x0 entries)");
        sub->add_option("--check-order", opt.check_order, "verification order J (default 3n)");
        sub->add_option("--tol", opt.tol, "verification tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "RNG seed for randomized certificates");
        sub->add_option("--panels", opt.panels, "quadrature panels for oracle checks");
        sub->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"json", "csv", "both"}));
    };

    auto* analyze = app.add_subcommand("analyze", "gamma profile and minimality verdict");
    add_common(analyze, true);
    auto* synthesize = app.add_subcommand("synthesize", "build the null control");
    add_common(synthesize, true);
    auto* simulate = app.add_subcommand("simulate", "synthesize, simulate and verify");
    add_common(simulate, true);
    auto* perturb = app.add_subcommand("perturb", "deviation-ratio transfer pipeline");
    add_common(perturb, true);
    auto* demo = app.add_subcommand("demo", "run a built-in end-to-end demo");
    demo->add_option("--name", opt.demo_name, "demo name")->required();
    add_common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(opt);
        if (app.got_subcommand(synthesize)) return cmd_synthesize(opt);
        if (app.got_subcommand(simulate)) return cmd_simulate(opt);
        if (app.got_subcommand(perturb)) return cmd_perturb(opt);
        if (app.got_subcommand(demo)) return cmd_demo(opt);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NecessaryConditionError& e) {
        std::cerr << "necessary condition violated: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const IllConditionedError& e) {
        std::cerr << "ill-conditioned problem: " << e.what() << " (gamma = " << e.gamma << ")\n";
        return kExitVerificationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitUsage;
}
