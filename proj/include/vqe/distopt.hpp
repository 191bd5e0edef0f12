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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vqe/ansatz.hpp"
#include "vqe/expectation.hpp"
#include "vqe/gradients.hpp"
#include "vqe/partition.hpp"

namespace vqe {

enum class Mode {
    Qudio,    // static term slices, fixed for the whole run
    Shuffle,  // slices re-drawn from a shared permutation before every step
};

enum class Aggregator { Average, Random, Median, Weighted };
enum class LossScope { Slice, FullH };

struct TrainConfig {
    int workers = 1;      // K
    int local_steps = 1;  // W
    int iterations = 1;   // T, number of synchronization rounds
    double eta = 0.4;
    Mode mode = Mode::Shuffle;
    Aggregator aggregator = Aggregator::Average;
    NoiseConfig noise{};
    bool grouping = false;
    std::uint64_t seed = 0;
    int threads = 1;  // worker threads; results are independent of this
    StaticOrder static_order = StaticOrder::FileOrder;
    LossScope loss_scope = LossScope::Slice;

    void validate(std::size_t num_terms) const;
};

struct WorkerState {
    int rank = 0;  // 1-based
    ParamVector theta;
    std::uint64_t rng_key = 0;       // measurement stream key for this rank
    std::uint64_t step_counter = 0;  // global local-step index, advances once per update
    double last_loss = 0.0;          // exact loss used by loss-aware aggregators
};

// One row per synchronization round. Losses and gradient norms are exact and
// noiseless, logged at the post-aggregation parameters. wall_ms is the only
// nondeterministic field and is excluded from reproducibility comparisons.
struct RunRecord {
    int t = 0;
    double loss = 0.0;
    double grad_norm = 0.0;
    std::vector<double> worker_losses;
    std::vector<double> distances;  // ||theta_k - theta_bar|| just before aggregation
    std::uint64_t shots_cumulative = 0;
    double wall_ms = 0.0;
};

struct TrainResult {
    std::vector<RunRecord> records;
    ParamVector theta_final;
    std::uint64_t total_shots = 0;
};

// Called single-threaded at each synchronization with the worker states just
// before broadcast and the aggregated parameters.
using SyncObserver =
    std::function<void(int t, const std::vector<WorkerState>& workers,
                       std::span<const double> theta_next)>;

// One gradient step on the worker's current slice; advances the worker's
// step counter so sampled evaluations never reuse a substream.
void local_update(WorkerState& worker, const AnsatzSpec& spec, const Hamiltonian& h,
                  std::span<const std::size_t> slice, double eta, const NoiseConfig& noise,
                  bool grouping, std::uint64_t* shot_counter);

ParamVector aggregate_average(const std::vector<WorkerState>& workers);
ParamVector aggregate_random(const std::vector<WorkerState>& workers, rng::Stream& server);
// Sorts by last_loss ascending (ties by lower rank) and takes the entry at
// 1-based position ceil(K/2).
ParamVector aggregate_median(const std::vector<WorkerState>& workers);
// Softmax weights over negated losses, computed with max subtraction.
ParamVector aggregate_weighted(const std::vector<WorkerState>& workers);

// ||theta_k - theta_bar|| per worker, in rank order.
std::vector<double> trajectory_distances(const std::vector<WorkerState>& workers,
                                         std::span<const double> theta_bar);

// Full synchronous training loop: K workers, W local steps per round, T
// rounds. Identical output for any thread count; every random choice is a
// pure function of (seed, rank, t, w). When record_sink is given, records are
// appended there as they are produced so partial output survives a failure.
TrainResult run_training(const TrainConfig& config, const Hamiltonian& h,
                         const AnsatzSpec& spec, const SyncObserver& observer = {},
                         std::vector<RunRecord>* record_sink = nullptr);

// Record serialization. CSV columns:
//   t,loss,grad_norm,worker_loss_<k>...,dist_<k>...,shots_cumulative,wall_ms
// The leading comment line carries the schema tag.
extern const char* const kRunRecordSchema;
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records, int workers);
void write_records_jsonl(std::ostream& out, const std::vector<RunRecord>& records);

const char* mode_name(Mode m);
const char* aggregator_name(Aggregator a);

}  // namespace vqe
