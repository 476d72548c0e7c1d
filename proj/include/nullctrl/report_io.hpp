#pragma once

#include <cstdint>
#include <string>

#include "nullctrl/minimality.hpp"
#include "nullctrl/moment.hpp"
#include "nullctrl/spectral.hpp"
#include "nullctrl/synthesis.hpp"

namespace nullctrl {

// Schema violation in an input document; message carries the field path.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a problem document:
// {"spectrum": {"preset": {"name": ..., "n": ...}} | {"explicit": [{"re","im"}...]},
//  "b": [...], "x0": [...], "t1": ..., "T": ...}
// T is optional and defaults to 0. Complex numbers are {re, im} objects.
ControlProblem load_problem(const std::string& path);
ControlProblem parse_problem(const std::string& json_text);

std::string problem_to_json(const ControlProblem& p);

std::string minimality_to_json(const MinimalityReport& rep, const BoasCertificate* cert);
std::string gamma_csv(const GammaSequence& g);
std::string synthesis_to_json(const SynthesisResult& r);
std::string solvability_to_json(const SolvabilityProfile& prof);

// Writes via a temp file in the same directory plus rename.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace nullctrl
