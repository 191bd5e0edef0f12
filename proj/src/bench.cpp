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

#include "vqe/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "vqe/exactsolver.hpp"
#include "vqe/expectation.hpp"
#include "vqe/gradients.hpp"
#include "vqe/grouping.hpp"
#include "vqe/kernels.hpp"
#include "vqe/rng.hpp"
#include "vqe/statevector.hpp"

namespace vqe::bench {

Speedups compute_speedups(const CellTiming& baseline, const CellTiming& cell) {
    Speedups s;
    if (baseline.t1_mean_ms > 0.0 && cell.t1_mean_ms > 0.0) {
        s.s1 = baseline.t1_mean_ms / cell.t1_mean_ms;
    }
    if (baseline.t2_ms && cell.t2_ms && *baseline.t2_ms > 0.0 && *cell.t2_ms > 0.0) {
        s.s2 = *baseline.t2_ms / *cell.t2_ms;
    }
    return s;
}

Theorem1Result theorem1_rhs(const BoundConstants& constants, double eta, double p, int K,
                            int W, int T, double loss_first, double loss_last,
                            std::optional<double> f_override) {
    if (K < 1 || W < 1 || T < 1) throw std::invalid_argument("K, W, T must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("learning rate must be positive");
    const double F = f_override.value_or(constants.F2);
    const double G2 = constants.G * constants.G;
    const double k = static_cast<double>(K);
    const double w = static_cast<double>(W);
    const double t = static_cast<double>(T);

    Theorem1Result r;
    r.applicable = k > 2.0 * (1.0 - p);
    const double term1 = 2.0 * (loss_first - loss_last) / (eta * t);
    const double term2 = 4.0 * F * F * eta * eta * w * w * G2 * (k - 1.0) / (k * t);
    const double term3 =
        (2.0 * k * (k - 2.0 + 2.0 * p) + (eta * F + 1.0) * (1.0 - p) * (1.0 - p)) * G2 / t;
    r.value = term1 + term2 + term3;
    return r;
}

Theorem1Window theorem1_window(const std::vector<RunRecord>& records,
                               const BoundConstants& constants, double eta, double p, int K,
                               int W) {
    if (records.size() < 2) throw std::invalid_argument("bound window needs two records");
    const int t_window = static_cast<int>(records.size()) - 1;
    Theorem1Window win;
    win.bound = theorem1_rhs(constants, eta, p, K, W, t_window, records.front().loss,
                             records.back().loss);
    double s = 0.0;
    for (int i = 0; i < t_window; ++i) {
        const double g = records[static_cast<std::size_t>(i)].grad_norm;
        s += g * g;
    }
    win.empirical_mean_sq_grad = s / static_cast<double>(t_window);
    return win;
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunOutcome {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double err = 0.0;
    double e_vqe = 0.0;
    double t1_mean_ms = 0.0;
    std::optional<double> t2_ms;
    std::uint64_t total_shots = 0;
    int variational_violations = 0;
    std::vector<RunRecord> records;
};

std::string run_basename(Mode mode, int K, int W, std::uint64_t seed) {
    return "run_" + std::string(mode_name(mode)) + "_K" + std::to_string(K) + "_W" +
           std::to_string(W) + "_seed" + std::to_string(seed);
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
    const Hamiltonian h = load_hamiltonian_file(config.hamiltonian_path);
    const double ground = ground_state_energy(h).energy;
    const AnsatzSpec spec{h.n_qubits, config.layers, config.entangler};
    const BoundConstants constants = bound_constants(h, spec.param_count());

    fs::create_directories(config.out_dir);

    long lcm_w = 1;
    for (int w : config.local_steps) lcm_w = std::lcm(lcm_w, static_cast<long>(w));

    std::ofstream curves(fs::path(config.out_dir) / "loss_curves.csv");
    curves << "mode,K,W,seed,iteration,loss\n";

    json cells = json::array();
    std::vector<std::pair<Mode, std::vector<double>>> cdf_pool;
    for (Mode m : config.modes) cdf_pool.emplace_back(m, std::vector<double>{});

    // baseline timings per mode for the speedup ratios
    std::vector<std::pair<Mode, CellTiming>> baselines;

    int failures = 0;

    for (Mode mode : config.modes) {
        for (int K : config.workers) {
            for (int W : config.local_steps) {
                std::vector<RunOutcome> outcomes;
                for (int r = 0; r < config.repetitions; ++r) {
                    RunOutcome out;
                    out.seed = config.seed + static_cast<std::uint64_t>(r);

                    TrainConfig tc;
                    tc.workers = K;
                    tc.local_steps = W;
                    tc.iterations = config.iterations;
                    tc.eta = config.eta;
                    tc.mode = mode;
                    tc.aggregator = config.aggregator;
                    tc.noise = NoiseConfig{config.noise_p, config.shots};
                    tc.grouping = config.grouping;
                    tc.seed = out.seed;
                    tc.threads = config.threads;
                    tc.static_order = config.static_order;
                    tc.loss_scope = config.loss_scope;

                    try {
                        TrainResult res = run_training(tc, h, spec, {}, &out.records);
                        out.total_shots = res.total_shots;
                        out.ok = true;
                    } catch (const std::exception& e) {
                        out.error = e.what();
                        ++failures;
                        log << "run " << run_basename(mode, K, W, out.seed)
                            << " failed: " << out.error << "\n";
                    }

                    const std::string base = run_basename(mode, K, W, out.seed);
                    {
                        std::ofstream csv(fs::path(config.out_dir) / (base + ".csv"));
                        write_records_csv(csv, out.records, K);
                        std::ofstream jsonl(fs::path(config.out_dir) / (base + ".jsonl"));
                        write_records_jsonl(jsonl, out.records);
                    }

                    if (out.ok && !out.records.empty()) {
                        double best = out.records.front().loss;
                        double wall_total = 0.0;
                        for (const auto& rec : out.records) {
                            best = std::min(best, rec.loss);
                            wall_total += rec.wall_ms;
                            if (rec.loss < ground - 1e-8) ++out.variational_violations;
                        }
                        out.e_vqe = best;
                        out.err = std::abs(best - ground);
                        out.t1_mean_ms = wall_total / static_cast<double>(out.records.size());
                        double running_best = std::numeric_limits<double>::infinity();
                        double cum_wall = 0.0;
                        for (const auto& rec : out.records) {
                            cum_wall += rec.wall_ms;
                            running_best = std::min(running_best, rec.loss);
                            if (std::abs(running_best - ground) <= config.target_err) {
                                out.t2_ms = cum_wall;
                                break;
                            }
                        }
                        for (const auto& rec : out.records) {
                            const long iter = static_cast<long>(rec.t + 1) * W;
                            if (iter % lcm_w == 0) {
                                char buf[64];
                                std::snprintf(buf, sizeof buf, "%.17g", rec.loss);
                                curves << mode_name(mode) << ',' << K << ',' << W << ','
                                       << out.seed << ',' << iter << ',' << buf << "\n";
                            }
                        }
                    }
                    outcomes.push_back(std::move(out));
                }

                // cell aggregates
                json cell;
                cell["mode"] = mode_name(mode);
                cell["workers"] = K;
                cell["local_steps"] = W;
                json runs = json::array();
                std::vector<double> errs;
                CellTiming timing;
                std::vector<double> t2s;
                int ok_count = 0;
                for (const auto& out : outcomes) {
                    json jr;
                    jr["seed"] = out.seed;
                    jr["status"] = out.ok ? "ok" : "failed";
                    if (!out.ok) {
                        jr["error"] = out.error;
                    } else {
                        jr["err"] = out.err;
                        jr["e_vqe"] = out.e_vqe;
                        jr["t1_mean_ms"] = out.t1_mean_ms;
                        jr["t2_ms"] = out.t2_ms ? json(*out.t2_ms) : json(nullptr);
                        jr["total_shots"] = out.total_shots;
                        jr["variational_violations"] = out.variational_violations;
                        errs.push_back(out.err);
                        timing.t1_mean_ms += out.t1_mean_ms;
                        if (out.t2_ms) t2s.push_back(*out.t2_ms);
                        ++ok_count;
                        for (auto& [m, pool] : cdf_pool) {
                            if (m == mode) pool.push_back(out.err);
                        }
                    }
                    runs.push_back(std::move(jr));
                }
                cell["runs"] = std::move(runs);
                if (ok_count > 0) {
                    timing.t1_mean_ms /= static_cast<double>(ok_count);
                    if (!t2s.empty()) {
                        timing.t2_ms =
                            std::accumulate(t2s.begin(), t2s.end(), 0.0) /
                            static_cast<double>(t2s.size());
                    }
                    const double mean =
                        std::accumulate(errs.begin(), errs.end(), 0.0) /
                        static_cast<double>(errs.size());
                    cell["err_mean"] = mean;
                    cell["err_std"] = sample_std(errs, mean);
                    cell["t1_mean_ms"] = timing.t1_mean_ms;
                    cell["t2_mean_ms"] = timing.t2_ms ? json(*timing.t2_ms) : json(nullptr);
                    cell["t2_reached"] = static_cast<int>(t2s.size());

                    if (K == 1 && W == 1) baselines.emplace_back(mode, timing);

                    // convergence bound, reported for the shuffled scheme
                    // with mean aggregation whenever the window is nonempty
                    if (mode == Mode::Shuffle && config.aggregator == Aggregator::Average) {
                        double rhs_mean = 0.0, emp_mean = 0.0;
                        bool applicable = true, violated = false;
                        int counted = 0;
                        for (const auto& out : outcomes) {
                            if (!out.ok || out.records.size() < 2) continue;
                            const auto win = theorem1_window(out.records, constants, config.eta,
                                                             config.noise_p, K, W);
                            rhs_mean += win.bound.value;
                            emp_mean += win.empirical_mean_sq_grad;
                            applicable = applicable && win.bound.applicable;
                            violated = violated || (win.bound.applicable &&
                                                    win.empirical_mean_sq_grad > win.bound.value);
                            ++counted;
                        }
                        if (counted > 0) {
                            cell["theorem1"] = {
                                {"rhs_mean", rhs_mean / counted},
                                {"empirical_mean_sq_grad_norm", emp_mean / counted},
                                {"applicable", applicable},
                                {"violated", violated},
                            };
                        }
                    }
                }
                cells.push_back(std::move(cell));
            }
        }
    }

    // attach speedups now that baselines are known
    for (auto& cell : cells) {
        if (!cell.contains("t1_mean_ms")) continue;
        const CellTiming* base = nullptr;
        for (const auto& [m, timing] : baselines) {
            if (std::string(mode_name(m)) == cell["mode"].get<std::string>()) {
                base = &timing;
                break;
            }
        }
        if (!base && !baselines.empty()) base = &baselines.front().second;
        if (!base) {
            cell["s1"] = nullptr;
            cell["s2"] = nullptr;
            continue;
        }
        CellTiming timing;
        timing.t1_mean_ms = cell["t1_mean_ms"].get<double>();
        if (!cell["t2_mean_ms"].is_null()) timing.t2_ms = cell["t2_mean_ms"].get<double>();
        const Speedups sp = compute_speedups(*base, timing);
        cell["s1"] = sp.s1 ? json(*sp.s1) : json(nullptr);
        cell["s2"] = sp.s2 ? json(*sp.s2) : json(nullptr);
    }

    {
        std::ofstream cdf(fs::path(config.out_dir) / "cdf.csv");
        cdf << "mode,aggregator,err,cdf\n";
        for (auto& [mode, pool] : cdf_pool) {
            std::sort(pool.begin(), pool.end());
            for (std::size_t i = 0; i < pool.size(); ++i) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", pool[i]);
                cdf << mode_name(mode) << ',' << aggregator_name(config.aggregator) << ','
                    << buf << ',' << (static_cast<double>(i + 1) / pool.size()) << "\n";
            }
        }
    }

    json summary;
    summary["schema"] = "vqe.summary.v1";
    summary["hamiltonian"] = config.hamiltonian_path;
    summary["n_qubits"] = h.n_qubits;
    summary["num_terms"] = h.num_terms();
    summary["ground_energy"] = ground;
    summary["bound_constants"] = {{"G", constants.G}, {"F1", constants.F1}, {"F2", constants.F2}};
    summary["config"] = {
        {"iterations", config.iterations},
        {"eta", config.eta},
        {"shots", config.shots},
        {"noise_p", config.noise_p},
        {"aggregator", aggregator_name(config.aggregator)},
        {"grouping", config.grouping},
        {"seed", config.seed},
        {"repetitions", config.repetitions},
        {"target_err", config.target_err},
        {"layers", config.layers},
        {"entangler", config.entangler == Entangler::Linear ? "linear" : "ring"},
        {"threads", config.threads},
        {"kernels", kernels::active_kernels().name},
    };
    summary["cells"] = std::move(cells);
    {
        std::ofstream out(fs::path(config.out_dir) / "summary.json");
        out << summary.dump(2) << "\n";
    }

    log << "experiment complete: " << (failures == 0 ? "all runs ok" : "with failures")
        << ", outputs in " << config.out_dir << "\n";
    return failures;
}

namespace {

Hamiltonian random_hamiltonian(rng::Stream& stream, int n, int m) {
    Hamiltonian h;
    h.n_qubits = n;
    std::vector<std::string> words;
    while (static_cast<int>(h.terms.size()) < m) {
        std::string word;
        for (int q = 0; q < n; ++q) word.push_back("IXYZ"[stream.next_below(4)]);
        if (std::find(words.begin(), words.end(), word) != words.end()) continue;
        words.push_back(word);
        h.terms.push_back(Term{2.0 * stream.next_double() - 1.0, PauliString::parse(word)});
    }
    return h;
}

std::vector<std::complex<double>> random_state(rng::Stream& stream, int n) {
    std::vector<std::complex<double>> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {stream.next_double() - 0.5, stream.next_double() - 0.5};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return amps;
}

bool report(std::ostream& out, const char* what, bool ok) {
    out << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
    return ok;
}

}  // namespace

int run_self_checks(std::ostream& out) {
    int failures = 0;
    rng::Stream stream(0xC0FFEE);

    {
        // every kernel variant must reproduce the scalar reference
        bool ok = true;
        const auto sets = kernels::available_kernels();
        for (int n = 1; n <= 5; ++n) {
            const auto amps = random_state(stream, n);
            const std::size_t dim = amps.size();
            for (const auto* set : sets) {
                if (std::string_view(set->name) == "scalar") continue;
                for (int target = 0; target < n; ++target) {
                    auto a = amps, b = amps;
                    const std::complex<double> d0{stream.next_double(), stream.next_double()};
                    const std::complex<double> d1{stream.next_double(), stream.next_double()};
                    kernels::scalar_kernels().apply_diag1q(a.data(), dim, target, d0, d1);
                    set->apply_diag1q(b.data(), dim, target, d0, d1);
                    const double c = std::cos(stream.next_double()), s = std::sin(c);
                    const std::complex<double> u[4] = {{c, 0.1}, {-s, 0.2}, {s, -0.2}, {c, -0.1}};
                    kernels::scalar_kernels().apply_mix1q(a.data(), dim, target, u);
                    set->apply_mix1q(b.data(), dim, target, u);
                    for (std::size_t i = 0; i < dim; ++i) {
                        ok = ok && std::abs(a[i] - b[i]) <= 1e-12;
                    }
                }
                const std::uint64_t xm = stream.next_below(dim);
                const std::uint64_t ym = stream.next_below(dim) & xm;
                const std::uint64_t zm = stream.next_below(dim) | ym;
                const double e0 = kernels::scalar_kernels().pauli_expval(amps.data(), dim, xm,
                                                                          ym, zm);
                const double e1 = set->pauli_expval(amps.data(), dim, xm, ym, zm);
                ok = ok && std::abs(e0 - e1) <= 1e-12;
            }
        }
        if (!report(out, "kernel variants agree with scalar reference", ok)) ++failures;
    }

    {
        const Hamiltonian h = random_hamiltonian(stream, 3, 5);
        const AnsatzSpec spec{3, 2};
        ParamVector theta(static_cast<std::size_t>(spec.param_count()));
        for (auto& v : theta) v = stream.next_double() * 6.283185307179586;
        std::vector<std::size_t> idx(h.num_terms());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const auto ps = parameter_shift_grad(spec, theta, h, NoiseConfig{}, 0);
        const auto fd = finite_difference_grad(spec, theta, h, idx, 1e-4);
        double worst = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) worst = std::max(worst, std::abs(ps[i] - fd[i]));
        if (!report(out, "shift-rule gradient matches central differences", worst <= 1e-6)) {
            ++failures;
        }
    }

    {
        const Hamiltonian h = random_hamiltonian(stream, 2, 4);
        const AnsatzSpec spec{2, 1};
        ParamVector theta(static_cast<std::size_t>(spec.param_count()));
        for (auto& v : theta) v = stream.next_double();
        bool ok = true;
        for (int m = 1; m <= 4; ++m) {
            const auto res = lemma1_check(spec, theta, h, m);
            for (std::size_t i = 0; i < res.subset_average.size(); ++i) {
                ok = ok && std::abs(res.subset_average[i] - res.scaled_full[i]) <= 1e-12;
            }
        }
        if (!report(out, "subset-average gradient is proportionally unbiased", ok)) ++failures;
    }

    {
        const Hamiltonian h = random_hamiltonian(stream, 3, 8);
        const auto amps = random_state(stream, 3);
        const Statevector psi = Statevector::from_amplitudes(amps);
        const GroupingPlan plan = group_qwc(h);
        rng::Stream unused(0);
        const auto grouped = expectation_grouped(psi, h, plan, 0, unused);
        bool ok = plan.num_groups() <= h.num_terms();
        for (std::size_t j = 0; j < h.num_terms(); ++j) {
            ok = ok && std::abs(grouped[j] - expectation_exact(psi, h.terms[j])) <= 1e-12;
        }
        if (!report(out, "grouped measurement reproduces per-term expectations", ok)) ++failures;
    }

    {
        const Hamiltonian h = random_hamiltonian(stream, 5, 6);
        const double dense = smallest_eigenpair_dense(h).value;
        const double lanczos = smallest_eigenpair_lanczos(h).value;
        const double scale = std::max(1.0, h.abs_coeff_sum());
        if (!report(out, "dense and iterative eigensolvers agree",
                    std::abs(dense - lanczos) <= 1e-8 * scale)) {
            ++failures;
        }
    }

    {
        const Hamiltonian h = random_hamiltonian(stream, 3, 5);
        const AnsatzSpec spec{3, 1};
        const BoundConstants c = bound_constants(h, spec.param_count());
        ParamVector theta(static_cast<std::size_t>(spec.param_count()));
        for (auto& v : theta) v = stream.next_double() * 6.283185307179586;
        const auto g = parameter_shift_grad(spec, theta, h, NoiseConfig{}, 0);
        double norm = 0.0;
        for (double v : g) norm += v * v;
        norm = std::sqrt(norm);
        if (!report(out, "gradient norm stays below bound constant G", norm <= c.G)) ++failures;
    }

    return failures;
}

}  // namespace vqe::bench
