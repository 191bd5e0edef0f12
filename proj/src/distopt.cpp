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

#include "vqe/distopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace vqe {

const char* const kRunRecordSchema = "vqe.runrecord.v1";

const char* mode_name(Mode m) { return m == Mode::Qudio ? "qudio" : "shuffle"; }

const char* aggregator_name(Aggregator a) {
    switch (a) {
        case Aggregator::Average: return "average";
        case Aggregator::Random: return "random";
        case Aggregator::Median: return "median";
        case Aggregator::Weighted: return "weighted";
    }
    return "?";
}

void TrainConfig::validate(std::size_t num_terms) const {
    if (workers < 1 || static_cast<std::size_t>(workers) > num_terms) {
        throw std::invalid_argument("worker count " + std::to_string(workers) +
                                    " out of range for " + std::to_string(num_terms) + " terms");
    }
    if (local_steps < 1) throw std::invalid_argument("local step count must be positive");
    if (iterations < 1) throw std::invalid_argument("iteration count must be positive");
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("learning rate must be finite and non-negative");
    }
    if (threads < 1) throw std::invalid_argument("thread count must be positive");
    noise.validate();
}

void local_update(WorkerState& worker, const AnsatzSpec& spec, const Hamiltonian& h,
                  std::span<const std::size_t> slice, double eta, const NoiseConfig& noise,
                  bool grouping, std::uint64_t* shot_counter) {
    const std::uint64_t eval_key =
        rng::derive_key({worker.rng_key, rng::kDomainGradEval, worker.step_counter});
    const GradientVector g =
        parameter_shift_grad(spec, worker.theta, h, slice, noise, eval_key, grouping,
                             shot_counter);
    for (std::size_t i = 0; i < worker.theta.size(); ++i) worker.theta[i] -= eta * g[i];
    ++worker.step_counter;
}

namespace {

std::size_t checked_params(const std::vector<WorkerState>& workers) {
    if (workers.empty()) throw std::invalid_argument("need at least one worker");
    const std::size_t p = workers.front().theta.size();
    for (const auto& w : workers) {
        if (w.theta.size() != p) {
            throw std::invalid_argument("workers carry different parameter counts");
        }
    }
    return p;
}

}  // namespace

ParamVector aggregate_average(const std::vector<WorkerState>& workers) {
    const std::size_t p = checked_params(workers);
    ParamVector out(p, 0.0);
    for (const auto& w : workers) {
        for (std::size_t i = 0; i < p; ++i) out[i] += w.theta[i];
    }
    const double inv = 1.0 / static_cast<double>(workers.size());
    for (double& v : out) v *= inv;
    return out;
}

ParamVector aggregate_random(const std::vector<WorkerState>& workers, rng::Stream& server) {
    checked_params(workers);
    const std::size_t pick = server.next_below(workers.size());
    return workers[pick].theta;
}

ParamVector aggregate_median(const std::vector<WorkerState>& workers) {
    checked_params(workers);
    std::vector<std::size_t> order(workers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (workers[a].last_loss != workers[b].last_loss) {
            return workers[a].last_loss < workers[b].last_loss;
        }
        return workers[a].rank < workers[b].rank;
    });
    const std::size_t k = workers.size();
    const std::size_t pos = (k + 1) / 2;  // ceil(K/2), 1-based
    return workers[order[pos - 1]].theta;
}

ParamVector aggregate_weighted(const std::vector<WorkerState>& workers) {
    const std::size_t p = checked_params(workers);
    double best = workers.front().last_loss;
    for (const auto& w : workers) best = std::min(best, w.last_loss);
    double z = 0.0;
    std::vector<double> weight(workers.size());
    for (std::size_t k = 0; k < workers.size(); ++k) {
        weight[k] = std::exp(-(workers[k].last_loss - best));
        z += weight[k];
    }
    ParamVector out(p, 0.0);
    for (std::size_t k = 0; k < workers.size(); ++k) {
        const double wk = weight[k] / z;
        for (std::size_t i = 0; i < p; ++i) out[i] += wk * workers[k].theta[i];
    }
    return out;
}

std::vector<double> trajectory_distances(const std::vector<WorkerState>& workers,
                                         std::span<const double> theta_bar) {
    const std::size_t p = checked_params(workers);
    if (theta_bar.size() != p) throw std::invalid_argument("mean parameter size mismatch");
    std::vector<double> out;
    out.reserve(workers.size());
    for (const auto& w : workers) {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const double d = w.theta[i] - theta_bar[i];
            s += d * d;
        }
        out.push_back(std::sqrt(s));
    }
    return out;
}

namespace {

// Exact noiseless loss over the given indices.
double exact_loss(const AnsatzSpec& spec, std::span<const double> theta, const Hamiltonian& h,
                  std::span<const std::size_t> indices) {
    const Statevector psi = prepare_state(spec, theta);
    const NoiseConfig exact{};
    rng::Stream unused(0);
    return slice_loss(psi, h, indices, exact, unused);
}

}  // namespace

TrainResult run_training(const TrainConfig& config, const Hamiltonian& h,
                         const AnsatzSpec& spec, const SyncObserver& observer,
                         std::vector<RunRecord>* record_sink) {
    config.validate(h.num_terms());
    if (spec.n_qubits != h.n_qubits) {
        throw std::invalid_argument("ansatz qubit count does not match Hamiltonian");
    }
    const int K = config.workers;
    const int W = config.local_steps;
    const int T = config.iterations;
    const std::size_t P = static_cast<std::size_t>(spec.param_count());

    // Shared initial point, uniform over [0, 2*pi) per coordinate.
    ParamVector theta0(P);
    {
        rng::Stream init(rng::derive_key({config.seed, rng::kDomainInit}));
        for (double& v : theta0) v = 2.0 * std::numbers::pi * init.next_double();
    }

    std::vector<WorkerState> workers(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        auto& w = workers[static_cast<std::size_t>(k)];
        w.rank = k + 1;
        w.theta = theta0;
        w.rng_key = rng::derive_key(
            {config.seed, rng::kDomainWorker, static_cast<std::uint64_t>(w.rank)});
    }

    const Partition static_slices =
        config.mode == Mode::Qudio
            ? static_partition(h, K, config.static_order, config.seed)
            : Partition{};

    std::vector<std::size_t> full_indices(h.num_terms());
    std::iota(full_indices.begin(), full_indices.end(), std::size_t{0});

    rng::Stream server(rng::derive_key({config.seed, rng::kDomainServer}));

    TrainResult result;
    std::vector<RunRecord> local_records;
    std::vector<RunRecord>& records = record_sink ? *record_sink : local_records;

    std::vector<std::uint64_t> worker_shots(static_cast<std::size_t>(K), 0);
    std::uint64_t shots_total = 0;
    const int n_threads = std::min(config.threads, K);

    for (int t = 0; t < T; ++t) {
        const auto round_start = std::chrono::steady_clock::now();

        // Each worker derives every slice it needs locally; the shared
        // permutation key (seed, t, w) makes the slices consistent across
        // workers with no coordination.
        auto worker_round = [&](int k) {
            auto& w = workers[static_cast<std::size_t>(k)];
            std::span<const std::size_t> slice;
            Partition shuffled;
            for (int step = 0; step < W; ++step) {
                if (config.mode == Mode::Shuffle) {
                    shuffled = shuffle_partition(h, K, config.seed,
                                                 static_cast<std::uint64_t>(t),
                                                 static_cast<std::uint64_t>(step));
                    slice = shuffled.assignments[static_cast<std::size_t>(k)];
                } else {
                    slice = static_slices.assignments[static_cast<std::size_t>(k)];
                }
                local_update(w, spec, h, slice, config.eta, config.noise, config.grouping,
                             &worker_shots[static_cast<std::size_t>(k)]);
            }
            w.last_loss = config.loss_scope == LossScope::FullH
                              ? exact_loss(spec, w.theta, h, full_indices)
                              : exact_loss(spec, w.theta, h, slice);
        };

        if (n_threads == 1) {
            for (int k = 0; k < K; ++k) worker_round(k);
        } else {
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(n_threads));
            for (int j = 0; j < n_threads; ++j) {
                pool.emplace_back([&, j] {
                    try {
                        for (int k = j; k < K; k += n_threads) worker_round(k);
                    } catch (...) {
                        errors[static_cast<std::size_t>(j)] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }

        // Synchronization barrier: all workers are done; aggregate in rank
        // order so the result does not depend on scheduling.
        const ParamVector theta_bar = aggregate_average(workers);
        RunRecord rec;
        rec.t = t;
        rec.distances = trajectory_distances(workers, theta_bar);
        rec.worker_losses.reserve(workers.size());
        for (const auto& w : workers) rec.worker_losses.push_back(w.last_loss);

        ParamVector theta_next;
        switch (config.aggregator) {
            case Aggregator::Average: theta_next = theta_bar; break;
            case Aggregator::Random: theta_next = aggregate_random(workers, server); break;
            case Aggregator::Median: theta_next = aggregate_median(workers); break;
            case Aggregator::Weighted: theta_next = aggregate_weighted(workers); break;
        }

        if (observer) observer(t, workers, theta_next);

        // Broadcast: every worker restarts the next round from the same point.
        for (auto& w : workers) w.theta = theta_next;

        for (auto& c : worker_shots) {
            shots_total += c;
            c = 0;
        }

        rec.loss = exact_loss(spec, theta_next, h, full_indices);
        rec.grad_norm = 0.0;
        {
            const GradientVector g =
                parameter_shift_grad(spec, theta_next, h, full_indices, NoiseConfig{}, 0);
            double s = 0.0;
            for (double v : g) s += v * v;
            rec.grad_norm = std::sqrt(s);
        }
        rec.shots_cumulative = shots_total;
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - round_start)
                          .count();
        records.push_back(std::move(rec));
    }

    result.theta_final = workers.front().theta;
    result.total_shots = shots_total;
    if (!record_sink) {
        result.records = std::move(local_records);
    } else {
        result.records = *record_sink;
    }
    return result;
}

namespace {

void append_double(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records, int workers) {
    out << "# schema: " << kRunRecordSchema << "\n";
    std::string head = "t,loss,grad_norm";
    for (int k = 1; k <= workers; ++k) head += ",worker_loss_" + std::to_string(k);
    for (int k = 1; k <= workers; ++k) head += ",dist_" + std::to_string(k);
    head += ",shots_cumulative,wall_ms";
    out << head << "\n";
    for (const auto& r : records) {
        std::string line = std::to_string(r.t);
        line += ',';
        append_double(line, r.loss);
        line += ',';
        append_double(line, r.grad_norm);
        for (double v : r.worker_losses) {
            line += ',';
            append_double(line, v);
        }
        for (double v : r.distances) {
            line += ',';
            append_double(line, v);
        }
        line += ',';
        line += std::to_string(r.shots_cumulative);
        line += ',';
        append_double(line, r.wall_ms);
        out << line << "\n";
    }
}

void write_records_jsonl(std::ostream& out, const std::vector<RunRecord>& records) {
    for (const auto& r : records) {
        nlohmann::json j{{"schema", kRunRecordSchema},
                         {"t", r.t},
                         {"loss", r.loss},
                         {"grad_norm", r.grad_norm},
                         {"worker_losses", r.worker_losses},
                         {"distances", r.distances},
                         {"shots_cumulative", r.shots_cumulative},
                         {"wall_ms", r.wall_ms}};
        out << j.dump() << "\n";
    }
}

}  // namespace vqe
