#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullctrl/spectral.hpp"

namespace nullctrl {

// Built-in end-to-end demos:
//   heat-null-control      heat spectrum, synthesize + verify
//   strip-perturbation     ladder vs perturbed ladder, q-ratio pipeline
//   strong-minimality-heat gamma profile of the heat kernel family
struct DemoFile {
    std::string name;
    std::string content;
};

struct DemoResult {
    bool passed = false;
    std::vector<DemoFile> files;
};

DemoResult run_demo(const std::string& name, std::uint64_t seed);

// Writes all demo files into out_dir (atomic per file).
void write_demo_files(const DemoResult& result, const std::string& out_dir);

// Problem fixtures shared with the test suites.
ControlProblem heat_demo_problem();          // heat(15), b = 1, x0_j = 1/j, t1 = 0.1, T = 0.08
ControlProblem ladder_demo_problem();        // lambda_k = ik, b = 1, x0_k = 1/k^2, t1 = 2*pi
ControlProblem strip_demo_problem();         // mu_k = ik + 1/k, same data as the ladder

}  // namespace nullctrl
