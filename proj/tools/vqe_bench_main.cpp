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

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "vqe/bench.hpp"
#include "vqe/exactsolver.hpp"
#include "vqe/kernels.hpp"
#include "vqe/pauli.hpp"

namespace {

const std::map<std::string, vqe::Mode> kModeMap{{"qudio", vqe::Mode::Qudio},
                                                {"shuffle", vqe::Mode::Shuffle}};
const std::map<std::string, vqe::Aggregator> kAggregatorMap{
    {"average", vqe::Aggregator::Average},
    {"random", vqe::Aggregator::Random},
    {"median", vqe::Aggregator::Median},
    {"weighted", vqe::Aggregator::Weighted}};
const std::map<std::string, vqe::Entangler> kEntanglerMap{{"linear", vqe::Entangler::Linear},
                                                          {"ring", vqe::Entangler::Ring}};
const std::map<std::string, vqe::StaticOrder> kStaticOrderMap{
    {"file", vqe::StaticOrder::FileOrder},
    {"coeff-desc", vqe::StaticOrder::CoeffDesc},
    {"random-once", vqe::StaticOrder::RandomOnce}};
const std::map<std::string, vqe::LossScope> kLossScopeMap{{"slice", vqe::LossScope::Slice},
                                                          {"full", vqe::LossScope::FullH}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed variational eigensolver benchmark"};
    app.require_subcommand(1);

    std::string kernels = "auto";
    app.add_option("--kernels", kernels, "Simulator kernel set: auto | scalar | avx2")
        ->capture_default_str();

    // --- run: sweep training configurations and write result files ---
    vqe::bench::ExperimentConfig config;
    auto* run = app.add_subcommand("run", "Train over a sweep of modes / workers / local steps");
    run->set_config("--config", "", "Read options from an INI file");
    run->add_option("--hamiltonian", config.hamiltonian_path,
                    "Hamiltonian text file (coeff + Pauli word per line)")
        ->required();
    run->add_option("--mode", config.modes, "Partition modes to sweep (comma separated)")
        ->transform(CLI::CheckedTransformer(kModeMap, CLI::ignore_case))
        ->delimiter(',')
        ->capture_default_str();
    run->add_option("--workers", config.workers, "Worker counts K to sweep (comma separated)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--local-steps", config.local_steps,
                    "Local steps W between synchronizations (comma separated)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--iterations", config.iterations,
                    "Synchronization rounds T per run")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--lr", config.eta, "Learning rate")->capture_default_str();
    run->add_option("--shots", config.shots,
                    "Measurement shots per expectation (0 = exact)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    run->add_option("--noise-p", config.noise_p, "Depolarizing strength in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    run->add_option("--aggregator", config.aggregator,
                    "Parameter aggregation rule at synchronization")
        ->transform(CLI::CheckedTransformer(kAggregatorMap, CLI::ignore_case))
        ->capture_default_str();
    bool grouping_flag = false;
    run->add_option("--grouping", grouping_flag,
                    "Share measurement settings within qubit-wise commuting groups (on|off)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bool>{{"on", true}, {"off", false}}, CLI::ignore_case))
        ->capture_default_str();
    run->add_option("--seed", config.seed, "Base seed; repetition r uses seed + r")
        ->capture_default_str();
    run->add_option("--repetitions", config.repetitions, "Independent runs per sweep cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--target-err", config.target_err,
                    "Accuracy threshold for the time-to-target speedup")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    run->add_option("--layers", config.layers, "Ansatz layers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--entangler", config.entangler, "Entangling layout: linear | ring")
        ->transform(CLI::CheckedTransformer(kEntanglerMap, CLI::ignore_case))
        ->capture_default_str();
    run->add_option("--threads", config.threads, "Worker threads (results are thread-count "
                                                 "independent)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--static-order", config.static_order,
                    "Term order for static slicing: file | coeff-desc | random-once")
        ->transform(CLI::CheckedTransformer(kStaticOrderMap, CLI::ignore_case))
        ->capture_default_str();
    run->add_option("--loss-scope", config.loss_scope,
                    "Worker-reported loss: slice | full")
        ->transform(CLI::CheckedTransformer(kLossScopeMap, CLI::ignore_case))
        ->capture_default_str();

    // --- exact: ground-state energy reference ---
    std::string exact_path;
    auto* exact = app.add_subcommand("exact", "Print the smallest eigenvalue of a Hamiltonian");
    exact->add_option("hamiltonian", exact_path, "Hamiltonian text file")->required();

    // --- check: fast internal cross-checks ---
    auto* check = app.add_subcommand("check", "Run internal consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!vqe::kernels::set_active_kernels(kernels)) {
            std::cerr << "unknown or unavailable kernel set: " << kernels << "\n";
            return 2;
        }

        if (run->parsed()) {
            config.grouping = grouping_flag;
            const int failures = vqe::bench::run_experiment(config, std::cout);
            return failures == 0 ? 0 : 1;
        }
        if (exact->parsed()) {
            const vqe::Hamiltonian h = vqe::load_hamiltonian_file(exact_path);
            const vqe::GroundTruth gt = vqe::ground_state_energy(h);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", gt.energy);
            std::cout << "n_qubits " << gt.n_qubits << "\nground_energy " << buf << "\n";
            return 0;
        }
        if (check->parsed()) {
            std::cout << "kernels: " << vqe::kernels::active_kernels().name << "\n";
            const int failures = vqe::bench::run_self_checks(std::cout);
            std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
