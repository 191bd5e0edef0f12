// Copyright 2026 The vqebench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vqe/distopt.hpp"
#include "vqe/gradients.hpp"

namespace vqe::bench {

// Sweep description. modes x workers x local_steps cells, `repetitions`
// seeded runs per cell with per-run seed = seed + repetition index.
struct ExperimentConfig {
    std::string hamiltonian_path;
    std::vector<Mode> modes{Mode::Shuffle};
    std::vector<int> workers{1};
    std::vector<int> local_steps{1};
    int iterations = 10;
    double eta = 0.4;
    std::int64_t shots = 0;
    double noise_p = 0.0;
    Aggregator aggregator = Aggregator::Average;
    bool grouping = false;
    std::uint64_t seed = 1;
    int repetitions = 1;
    double target_err = 0.1;  // accuracy threshold used by the time-to-target speedup
    std::string out_dir = "out";
    int layers = 2;
    Entangler entangler = Entangler::Linear;
    int threads = 1;
    StaticOrder static_order = StaticOrder::FileOrder;
    LossScope loss_scope = LossScope::Slice;
};

// Wall-clock summary of one (mode, K, W) cell.
struct CellTiming {
    double t1_mean_ms = 0.0;             // mean wall-clock per synchronization round
    std::optional<double> t2_ms;         // wall-clock until Err first dips below target
};

struct Speedups {
    std::optional<double> s1;  // baseline t1 / cell t1
    std::optional<double> s2;  // baseline t2 / cell t2; empty when either is undefined
};

// Ratios against the single-worker single-step baseline; larger means faster.
Speedups compute_speedups(const CellTiming& baseline, const CellTiming& cell);

// Upper bound on the running mean of squared gradient norms after T rounds:
//   2 (L_first - L_last) / (eta T)
//   + 4 F^2 eta^2 W^2 G^2 (K - 1) / (K T)
//   + (2 K (K - 2 + 2 p) + (eta F + 1)(1 - p)^2) G^2 / T
// valid for the shuffled scheme with mean aggregation when K > 2 (1 - p).
// `applicable` reports that constraint; the value is returned either way.
struct Theorem1Result {
    double value = 0.0;
    bool applicable = false;
};

Theorem1Result theorem1_rhs(const BoundConstants& constants, double eta, double p, int K,
                            int W, int T, double loss_first, double loss_last,
                            std::optional<double> f_override = std::nullopt);

// Evaluates the bound over a recorded trajectory: with R records the window
// covers the first R-1 synchronization points, the final record supplies the
// endpoint loss, and the empirical side is the mean of the squared gradient
// norms over the window. Requires at least two records.
struct Theorem1Window {
    Theorem1Result bound;
    double empirical_mean_sq_grad = 0.0;
};

Theorem1Window theorem1_window(const std::vector<RunRecord>& records,
                               const BoundConstants& constants, double eta, double p, int K,
                               int W);

// Executes the sweep, writing per-run record CSV/JSONL files plus
// summary.json, cdf.csv and loss_curves.csv into out_dir. Loss curves are
// emitted at global iteration counts that are multiples of lcm(W sweep) so
// different W settings stay comparable. Returns the number of failed runs.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

// Fast internal cross-checks (kernel variants, gradient identities, subset
// unbiasedness, grouping equivalence, eigensolver paths). Prints one line per
// check; returns the number of failures.
int run_self_checks(std::ostream& out);

}  // namespace vqe::bench
