// Acceptance suite: each check prints one [PASS]/[FAIL] line with the
// measured quantity; the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "discordlab/estimators.hpp"
#include "discordlab/fitting.hpp"
#include "discordlab/twobit.hpp"

using namespace discordlab;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %-34s %s (%.2f s)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                seconds);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Channel sampled_channel(int m, const PermutationTable& table, std::mt19937_64& rng) {
    return assemble_channel(
        interpolate_weights(low_entropy_weights(m, rng), uniform_weights(m), uniform01(rng)),
        table);
}

void zero_discord_identity() {
    Timer timer;
    double worst = 0.0;
    for (int m : {2, 4, 6}) {
        const PermutationTable table = enumerate_reverse_lex(m);
        const Channel id = identity_channel(table);
        auto rng = substream(1001, static_cast<std::uint64_t>(m));
        for (int i = 0; i < 10000; ++i) {
            const JointState p = sample_random_joint(m, rng);
            worst = std::max(worst, std::abs(state_discord(p, id)));
        }
    }
    report("zero-discord identity", worst <= 1e-12 && timer.seconds() < 10.0,
           fmt("max |discord| = %.3g over 3x10^4 states at m in {2,4,6}", worst), timer.seconds());
}

void data_processing_nonnegativity() {
    Timer timer;
    const PermutationTable table = enumerate_reverse_lex(4);
    auto rng = substream(1002, 0);
    double worst = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const JointState p = sample_random_joint(4, rng);
        const Channel e = sampled_channel(4, table, rng);
        worst = std::min(worst, min_discord_over_permutations(p, e, table).value);
    }
    report("data-processing nonnegativity", worst >= -1e-10 && timer.seconds() < 30.0,
           fmt("min minimized discord = %.3g over 10^3 pairs at m = 4", worst), timer.seconds());
}

void j_equals_i() {
    Timer timer;
    double worst = 0.0;
    auto rng = substream(1003, 0);
    for (int i = 0; i < 10000; ++i) {
        const int m = 2 + static_cast<int>(rng() % 5);
        const JointState p = sample_random_joint(m, rng);
        worst = std::max(worst, std::abs(mutual_information(p) -
                                         mutual_information_via_conditioning(p)));
    }
    report("J = I identity", worst <= 1e-12, fmt("max |I - J| = %.3g over 10^4 states", worst),
           timer.seconds());
}

void twobit_oracle_equivalence() {
    Timer timer;
    const PermutationTable table = enumerate_reverse_lex(2);
    double worst = 0.0;
    const int grid = 20;  // 21 values per axis on the probability simplex
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; i + j <= grid; ++j)
            for (int k = 0; i + j + k <= grid; ++k) {
                const TwoBitState s(i / 20.0, j / 20.0, k / 20.0, (grid - i - j - k) / 20.0);
                const JointState joint = s.joint_state();
                for (int t = 0; t <= 10; ++t) {
                    const double mu = t / 10.0;
                    const Channel e = assemble_channel(WeightVector(Vec{mu, 1.0 - mu}), table);
                    worst = std::max(worst,
                                     std::abs(twobit_discord(s, mu) - state_discord(joint, e)));
                }
            }
    report("two-bit oracle equivalence", worst <= 1e-12 && timer.seconds() < 10.0,
           fmt("max |closed form - estimator| = %.3g on 21^3 simplex x 11 mu", worst),
           timer.seconds());
}

void derivative_check() {
    Timer timer;
    auto rng = substream(1005, 0);
    double worst_rel = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TwoBitState s = random_twobit_state(rng);
        const double alpha = -0.95 + 1.9 * uniform01(rng);
        const double analytic = ddelta_dalpha(s, alpha);
        // fourth-order central difference; a plain two-point stencil has
        // ~1e-11 absolute roundoff, too coarse to resolve 1e-6 relative
        // where the derivative itself is ~1e-6 (alpha near 0)
        const auto delta = [&](double a) { return twobit_discord(s, 0.5 * (1.0 + a)); };
        const double h = 1e-3;
        const double fd = (-delta(alpha + 2 * h) + 8 * delta(alpha + h) - 8 * delta(alpha - h) +
                           delta(alpha - 2 * h)) /
                          (12 * h);
        const double scale = std::max(std::abs(analytic), std::abs(fd));
        if (scale > 0.0) worst_rel = std::max(worst_rel, std::abs(analytic - fd) / scale);
    }
    report("derivative vs finite differences", worst_rel <= 1e-6,
           fmt("max relative deviation = %.3g over 10^3 (state, alpha) pairs", worst_rel),
           timer.seconds());
}

void sign_law_scan() {
    Timer timer;
    auto rng = substream(1006, 0);
    std::vector<TwoBitState> states;
    states.reserve(1000);
    for (int i = 0; i < 1000; ++i) states.push_back(random_twobit_state(rng));
    const ScanReport scan = monotonicity_scan(states, default_mu_grid(99));
    report("sign law / monotonicity scan", scan.passed(),
           fmt("%g violations over 10^3 states x 99 mu points",
               static_cast<double>(scan.violations.size())),
           timer.seconds());
}

void channel_validity() {
    Timer timer;
    double worst_sum = 0.0;
    for (int m : {2, 3, 4, 5, 6}) {
        const PermutationTable table = enumerate_reverse_lex(m);
        auto rng = substream(1007, static_cast<std::uint64_t>(m));
        for (int c = 0; c < 100; ++c) {
            const Channel e = sampled_channel(m, table, rng);
            for (int i = 0; i < m; ++i) {
                double row = 0.0, col = 0.0;
                for (int j = 0; j < m; ++j) {
                    row += e.matrix()(i, j);
                    col += e.matrix()(j, i);
                }
                worst_sum = std::max({worst_sum, std::abs(row - 1.0), std::abs(col - 1.0)});
            }
        }
    }
    const double h6 = uniform_weights(6).entropy_bits();
    const double h7 = uniform_weights(7).entropy_bits();
    const bool pass = worst_sum <= 1e-12 && std::abs(h6 - 9.492) <= 0.001 &&
                      std::abs(h7 - 12.299) <= 0.001;
    report("channel validity",
           pass,
           fmt("max |row/col sum - 1| = %.3g; H(uniform) = %.4f / %.4f bits", worst_sum, h6, h7),
           timer.seconds());
}

void brute_force_equivalence() {
    Timer timer;
    const PermutationTable table = enumerate_reverse_lex(3);
    auto rng = substream(1008, 0);
    bool exact = true;
    for (int i = 0; i < 100 && exact; ++i) {
        const JointState p = sample_random_joint(3, rng);
        const Channel e = sampled_channel(3, table, rng);
        const StateMinimization fused = minimize_pre_channel(p, e, table);

        StateMinimization oracle;
        bool first = true;
        for (int s = 0; s < table.size(); ++s) {
            const Matrix permuted = multiply(p.matrix(), permutation_matrix(table[s]));
            const Matrix out = multiply(permuted, e.matrix());
            const double discord = mutual_information(p) - mutual_information(JointState(out));
            const double distortion = tv_distance(JointState(out), JointState(permuted));
            if (first || discord < oracle.discord.value) oracle.discord = {discord, s};
            if (first || distortion < oracle.distortion.value) oracle.distortion = {distortion, s};
            first = false;
        }
        exact = fused.discord.value == oracle.discord.value &&
                fused.discord.argmin == oracle.discord.argmin &&
                fused.distortion.value == oracle.distortion.value &&
                fused.distortion.argmin == oracle.distortion.argmin;
    }
    report("brute-force minimization equivalence", exact,
           exact ? "bit-exact values and argmins on 100 pairs at m = 3"
                 : "mismatch against the dense-matrix oracle",
           timer.seconds());
}

void scaled_scatter_reproduction() {
    Timer timer;
    ExperimentConfig config;
    config.m = 6;
    config.a_grid = 100;
    config.wdown_per_a = 6;
    config.states_per_channel = 20;
    config.seed = 42;
    config.convention = Convention::post_channel;

    const std::vector<ScatterPoint> points = run_experiment(config);

    const ScatterPoint& identity = points.back();
    const bool anchor =
        std::abs(identity.avg_discord_bits) <= 1e-12 && std::abs(identity.avg_distortion) <= 1e-12;

    std::vector<double> xs, ys;
    std::vector<FitPoint> fit_points;
    for (const ScatterPoint& p : points) {
        xs.push_back(p.avg_distortion);
        ys.push_back(p.avg_discord_bits);
        fit_points.push_back({p.avg_distortion, p.avg_discord_bits});
    }
    const double spearman = spearman_rank_correlation(xs, ys);
    const QuadraticFit fit = fit_quadratic(fit_points);

    const bool pass = anchor && spearman > 0.9 && fit.rmse <= 0.2 && fit.t2 >= 3.5 &&
                      fit.t2 <= 7.5;
    report("scaled scatter reproduction", pass,
           fmt("identity at (%.1g); spearman = %.4f; rmse = %.4f; t2 = %.3f",
               std::max(std::abs(identity.avg_discord_bits), std::abs(identity.avg_distortion)),
               spearman, fit.rmse, fit.t2),
           timer.seconds());
    std::printf("       601 channels (100 a x 6 draws + identity), 20 states each; "
                "fit: t1 = %.3f, t2 = %.3f, t3 = %.4f, rmse = %.4f\n",
                fit.t1, fit.t2, fit.t3, fit.rmse);
}

}  // namespace

int main() {
    zero_discord_identity();
    data_processing_nonnegativity();
    j_equals_i();
    twobit_oracle_equivalence();
    derivative_check();
    sign_law_scan();
    channel_validity();
    brute_force_equivalence();
    scaled_scatter_reproduction();
    std::printf("%s: %d failure(s)\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures);
    return failures == 0 ? 0 : 1;
}
