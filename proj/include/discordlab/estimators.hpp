#pragma once

// Permutation-minimized state discord and distortion, and their Monte Carlo
// averages over a state prior (channel discord and channel distortion).
//
// State discord for a channel E is Delta_E(p) = I(p) - J(pE); since the
// row-stochastic right action preserves the first marginal this equals
// I(p) - I(pE), the form used in the hot loop. It is nonnegative by the
// data-processing inequality.
//
// Two minimization conventions are provided:
//   * pre_channel  (default): minimize over message permutations applied to
//     the state before the noise, min_sigma Delta_E(p Pi_sigma) and
//     min_sigma D(p Pi_sigma E, p Pi_sigma). The permutation changes what
//     the channel acts on, so the discord minimization is nontrivial.
//   * post_channel: relabel the noisy readout instead. Mutual information
//     is label-invariant, so discord needs no minimization and equals
//     Delta_E(p); distortion becomes min_sigma D(p E Pi_sigma, p), the
//     distance to the best relabeling of the channel output.
// Ties are always broken toward the smallest reverse-lex index.

#include <array>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "discordlab/channels.hpp"
#include "discordlab/info.hpp"
#include "discordlab/permutations.hpp"
#include "discordlab/rng.hpp"
#include "discordlab/state_sampling.hpp"

namespace discordlab {

enum class Convention { pre_channel, post_channel };

struct MinimizationResult {
    double value = 0.0;
    int argmin = 0;  // reverse-lex permutation index
};

struct StateMinimization {
    MinimizationResult discord;
    MinimizationResult distortion;
};

namespace detail {

// Fixed-capacity scratch for one (state, channel) evaluation; message sizes
// are capped at 8, so nothing here touches the heap.
struct Scratch {
    std::array<double, 64> q;
    std::array<int, 8> inv;
};

// q = p Pi_sigma E without materializing Pi_sigma or the permuted state.
// (p Pi_sigma)(i, k) = p(i, inv[k]); the k-accumulation order matches a
// dense matrix product, so results are bit-identical to the dense oracle.
inline void permuted_state_through_channel(const double* p, const double* e, int m,
                                           const int* inv, double* q) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k) acc += p[static_cast<size_t>(i) * m + inv[k]] * e[static_cast<size_t>(k) * m + j];
            q[static_cast<size_t>(i) * m + j] = acc;
        }
}

inline double tv_against_permuted(const double* q, const double* p, int m, const int* inv) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            acc += std::abs(q[static_cast<size_t>(i) * m + k] - p[static_cast<size_t>(i) * m + inv[k]]);
    return 0.5 * acc;
}

inline void invert_into(const Permutation& sigma, int* inv) {
    for (int i = 0; i < sigma.order(); ++i) inv[sigma(i)] = i;
}

}  // namespace detail

inline double state_discord(const JointState& p, const Channel& e) {
    if (p.size() != e.order()) throw DimensionError("state_discord: dimension mismatch");
    return mutual_information(p) - mutual_information(apply_channel(p, e));
}

// Cross-check route through J = H(A) - H(A|B) of the channel output.
inline double state_discord_via_conditioning(const JointState& p, const Channel& e) {
    if (p.size() != e.order()) throw DimensionError("state_discord: dimension mismatch");
    return mutual_information(p) - mutual_information_via_conditioning(apply_channel(p, e));
}

inline double state_distortion(const JointState& p, const Channel& e) {
    if (p.size() != e.order()) throw DimensionError("state_distortion: dimension mismatch");
    return tv_distance(apply_channel(p, e), p);
}

// One shared pass over sigma computing both minima (pre-channel convention).
inline StateMinimization minimize_pre_channel(const JointState& p, const Channel& e,
                                              const PermutationTable& table) {
    if (p.size() != e.order() || p.size() != table.order())
        throw DimensionError("minimize_pre_channel: dimension mismatch");
    const int m = p.size();
    const double i_p = mutual_information(p);
    detail::Scratch s;
    StateMinimization best;
    bool first = true;
    for (int idx = 0; idx < table.size(); ++idx) {
        detail::invert_into(table[idx], s.inv.data());
        detail::permuted_state_through_channel(p.data(), e.matrix().data(), m, s.inv.data(),
                                               s.q.data());
        const double discord = i_p - detail::mutual_information_buffer(s.q.data(), m, m);
        const double distortion = detail::tv_against_permuted(s.q.data(), p.data(), m, s.inv.data());
        if (first || discord < best.discord.value) best.discord = {discord, idx};
        if (first || distortion < best.distortion.value) best.distortion = {distortion, idx};
        first = false;
    }
    return best;
}

// Post-channel convention: discord is label-invariant (argmin 0 by the tie
// rule); distortion scans relabelings of the channel output.
inline StateMinimization minimize_post_channel(const JointState& p, const Channel& e,
                                               const PermutationTable& table) {
    if (p.size() != e.order() || p.size() != table.order())
        throw DimensionError("minimize_post_channel: dimension mismatch");
    const int m = p.size();
    const JointState q0 = apply_channel(p, e);
    StateMinimization best;
    best.discord = {mutual_information(p) - mutual_information(q0), 0};
    detail::Scratch s;
    bool first = true;
    for (int idx = 0; idx < table.size(); ++idx) {
        detail::invert_into(table[idx], s.inv.data());
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                acc += std::abs(q0(i, s.inv[static_cast<size_t>(j)]) - p(i, j));
        const double distortion = 0.5 * acc;
        if (first || distortion < best.distortion.value) best.distortion = {distortion, idx};
        first = false;
    }
    return best;
}

inline StateMinimization minimize_over_permutations(const JointState& p, const Channel& e,
                                                    const PermutationTable& table,
                                                    Convention convention) {
    return convention == Convention::pre_channel ? minimize_pre_channel(p, e, table)
                                                 : minimize_post_channel(p, e, table);
}

inline MinimizationResult min_discord_over_permutations(const JointState& p, const Channel& e,
                                                        const PermutationTable& table) {
    return minimize_pre_channel(p, e, table).discord;
}

inline MinimizationResult min_distortion_over_permutations(const JointState& p, const Channel& e,
                                                           const PermutationTable& table) {
    return minimize_pre_channel(p, e, table).distortion;
}

inline double channel_discord(const Channel& e, const std::vector<JointState>& batch,
                              const PermutationTable& table,
                              Convention convention = Convention::pre_channel) {
    if (batch.empty()) throw ContractError("channel_discord: empty batch");
    double acc = 0.0;
    for (const JointState& p : batch)
        acc += minimize_over_permutations(p, e, table, convention).discord.value;
    return acc / static_cast<double>(batch.size());
}

inline double channel_distortion(const Channel& e, const std::vector<JointState>& batch,
                                 const PermutationTable& table,
                                 Convention convention = Convention::pre_channel) {
    if (batch.empty()) throw ContractError("channel_distortion: empty batch");
    double acc = 0.0;
    for (const JointState& p : batch)
        acc += minimize_over_permutations(p, e, table, convention).distortion.value;
    return acc / static_cast<double>(batch.size());
}

// ---------------------------------------------------------------------------
// Experiment runner

struct ExperimentConfig {
    int m = 6;
    PriorKind prior = PriorKind::random_joint;
    int a_grid = 100;           // equally spaced channel-interpolation values
    int wdown_per_a = 60;       // fresh low-entropy weight draws per a value
    int states_per_channel = 100;
    std::uint64_t seed = 42;
    bool include_identity = true;  // append the noiseless channel
    Convention convention = Convention::pre_channel;
    double interp_cap = 99.0;   // B in the state interpolation b = (1 - a) B
    int threads = 0;            // 0: DISCORDLAB_THREADS env var, else hardware
};

struct ScatterPoint {
    int channel_id = 0;
    double a = -1.0;  // channel interpolation parameter; -1 for the appended identity
    double weight_entropy_bits = 0.0;
    double avg_discord_bits = 0.0;
    double avg_distortion = 0.0;
    int n_states = 0;
    int argmin_mode = 0;
    std::map<int, int> argmin_stats;  // minimizing permutation index -> count
};

inline void validate_config(const ExperimentConfig& c) {
    if (c.m < 2 || c.m > kMaxMessageSize)
        throw ContractError("config: message size must be in [2, 8]");
    if (c.a_grid < 1 || c.wdown_per_a < 1 || c.states_per_channel < 1)
        throw ContractError("config: counts must be >= 1");
    if (c.interp_cap < 1.0) throw ContractError("config: interpolation cap must be >= 1");
}

inline int random_channel_count(const ExperimentConfig& c) { return c.a_grid * c.wdown_per_a; }

inline int total_channel_count(const ExperimentConfig& c) {
    return random_channel_count(c) + (c.include_identity ? 1 : 0);
}

// Channels are laid out a-major: id = a_index * wdown_per_a + draw_index,
// with the identity (if any) appended last.
inline double channel_interpolation_a(const ExperimentConfig& c, int channel_id) {
    if (channel_id >= random_channel_count(c)) return -1.0;
    const int a_index = channel_id / c.wdown_per_a;
    return c.a_grid == 1 ? 0.0 : static_cast<double>(a_index) / static_cast<double>(c.a_grid - 1);
}

inline Channel make_channel(const ExperimentConfig& c, const PermutationTable& table,
                            int channel_id) {
    if (channel_id >= random_channel_count(c)) return identity_channel(table);
    auto rng = substream(c.seed, static_cast<std::uint64_t>(channel_id),
                         StreamPurpose::channel_weights);
    const WeightVector w_down = low_entropy_weights(c.m, rng);
    const WeightVector w = interpolate_weights(w_down, uniform_weights(c.m),
                                               channel_interpolation_a(c, channel_id));
    return assemble_channel(w, table);
}

inline ScatterPoint compute_channel(const ExperimentConfig& c, const PermutationTable& table,
                                    int channel_id) {
    const Channel e = make_channel(c, table, channel_id);
    auto rng = substream(c.seed, static_cast<std::uint64_t>(channel_id),
                         StreamPurpose::channel_states);
    const StatePrior prior{c.prior, c.interp_cap, c.states_per_channel};
    const std::vector<JointState> batch = state_batch(prior, c.m, rng);

    ScatterPoint point;
    point.channel_id = channel_id;
    point.a = channel_interpolation_a(c, channel_id);
    point.weight_entropy_bits = e.entropy_bits();
    point.n_states = static_cast<int>(batch.size());
    double discord_acc = 0.0, distortion_acc = 0.0;
    for (const JointState& p : batch) {
        const StateMinimization r = minimize_over_permutations(p, e, table, c.convention);
        discord_acc += r.discord.value;
        distortion_acc += r.distortion.value;
        // Histogram over the nontrivial minimizer: the discord argmin for
        // the pre-channel convention, the relabeling argmin otherwise.
        const int argmin = c.convention == Convention::pre_channel ? r.discord.argmin
                                                                   : r.distortion.argmin;
        ++point.argmin_stats[argmin];
    }
    point.avg_discord_bits = discord_acc / static_cast<double>(batch.size());
    point.avg_distortion = distortion_acc / static_cast<double>(batch.size());
    int best_count = 0;
    for (const auto& [index, count] : point.argmin_stats)
        if (count > best_count) {
            best_count = count;
            point.argmin_mode = index;
        }
    return point;
}

inline int resolve_thread_count(const ExperimentConfig& c) {
    int n = c.threads;
    if (n <= 0) {
        if (const char* env = std::getenv("DISCORDLAB_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

// Runs channels [first_channel, total) on a worker pool. Every channel uses
// its own substreams of the master seed, so the output is a pure function of
// the config regardless of worker count or scheduling. `on_point` is invoked
// in channel-id order (this is what makes per-channel checkpointing work).
inline std::vector<ScatterPoint> run_experiment(
    const ExperimentConfig& config, int first_channel = 0,
    const std::function<void(const ScatterPoint&)>& on_point = {},
    const std::function<void(int, int)>& on_progress = {}) {
    validate_config(config);
    if (first_channel < 0 || first_channel > total_channel_count(config))
        throw ContractError("run_experiment: resume index out of range");
    const PermutationTable table = enumerate_reverse_lex(config.m);
    const int total = total_channel_count(config);
    const int pending = total - first_channel;
    std::vector<ScatterPoint> points(static_cast<size_t>(pending));
    if (pending == 0) return points;

    std::vector<char> done(static_cast<size_t>(pending), 0);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<int> next{first_channel};
    std::exception_ptr failure;
    auto worker = [&] {
        while (true) {
            const int id = next.fetch_add(1);
            if (id >= total) break;
            try {
                ScatterPoint point = compute_channel(config, table, id);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    points[static_cast<size_t>(id - first_channel)] = std::move(point);
                    done[static_cast<size_t>(id - first_channel)] = 1;
                }
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure) failure = std::current_exception();
                }
                next.store(total);  // stop the pool
            }
            cv.notify_all();
        }
    };

    const int n_threads = std::min(resolve_thread_count(config), pending);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);

    for (int emitted = 0; emitted < pending; ++emitted) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return done[static_cast<size_t>(emitted)] != 0 || failure != nullptr; });
        if (failure) break;
        lock.unlock();
        if (on_point) on_point(points[static_cast<size_t>(emitted)]);
        if (on_progress) on_progress(first_channel + emitted + 1, total);
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return points;
}

}  // namespace discordlab
