// discordlab: batch simulator for the discord and distortion of doubly
// stochastic noise channels acting on one share of a bipartite message
// distribution.
//
// Subcommands:
//   run     generate channels, average minimized discord/distortion over
//           random states, write scatter.csv + manifest.json + scatter.svg
//   fit     quadratic least squares of discord on distortion for a scatter CSV
//   twobit  closed-form monotonicity scan for the two-bit channel family
//   plot    render a scatter CSV as an SVG heat map
//
// Exit codes: 0 ok, 1 usage/config/runtime error, 2 property violation.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "discordlab/estimators.hpp"
#include "discordlab/experiment_io.hpp"
#include "discordlab/fitting.hpp"
#include "discordlab/twobit.hpp"
#include "discordlab/version.hpp"

namespace fs = std::filesystem;
using namespace discordlab;

namespace {

struct RunOptions {
    ExperimentConfig config;
    std::string prior = "random";
    std::string convention = "pre-channel";
    std::string out_dir = ".";
    bool resume = false;
};

int cmd_run(RunOptions& opt) {
    opt.config.prior = opt.prior == "condpure" ? PriorKind::conditionally_pure
                                               : PriorKind::random_joint;
    opt.config.convention = opt.convention == "post-channel" ? Convention::post_channel
                                                             : Convention::pre_channel;
    validate_config(opt.config);

    fs::create_directories(opt.out_dir);
    const fs::path csv_path = fs::path(opt.out_dir) / "scatter.csv";
    const fs::path manifest_path = fs::path(opt.out_dir) / "manifest.json";
    const fs::path svg_path = fs::path(opt.out_dir) / "scatter.svg";

    const int total = total_channel_count(opt.config);
    int first_channel = 0;
    std::vector<ScatterPoint> points;

    if (opt.resume && fs::exists(csv_path)) {
        if (!fs::exists(manifest_path))
            throw Error("cannot resume: " + manifest_path.string() + " is missing");
        const nlohmann::json manifest = read_manifest(manifest_path.string());
        if (manifest["config"] != config_to_json(opt.config))
            throw Error("cannot resume: existing manifest was written with a different config");
        points = read_scatter_csv(csv_path.string());
        first_channel = static_cast<int>(points.size());
        if (first_channel > total) throw Error("cannot resume: more rows than channels");
        std::cerr << "resuming after " << first_channel << "/" << total << " channels\n";
    }

    write_manifest(manifest_path.string(), opt.config, "running");

    std::ofstream csv(csv_path,
                      first_channel > 0 ? std::ios::app : std::ios::trunc);
    if (!csv) throw Error("cannot open for writing: " + csv_path.string());
    if (first_channel == 0) csv << kScatterCsvHeader << '\n';

    const auto started = std::chrono::steady_clock::now();
    auto on_point = [&](const ScatterPoint& p) {
        csv << scatter_csv_row(p) << '\n';
        csv.flush();  // one channel = one checkpoint
        points.push_back(p);
    };
    auto on_progress = [&](int done, int n) {
        if (done % 50 == 0 || done == n) {
            const auto elapsed = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - started)
                                     .count();
            std::fprintf(stderr, "channels %d/%d (%.1f s)\n", done, n, elapsed);
        }
    };
    run_experiment(opt.config, first_channel, on_point, on_progress);
    csv.close();

    const QuadraticFit* fit_ptr = nullptr;
    QuadraticFit fit;
    try {
        fit = fit_quadratic(fit_points_from_scatter(points));
        fit_ptr = &fit;
    } catch (const DegenerateFitError&) {
    }
    write_manifest(manifest_path.string(), opt.config, "complete", fit_ptr);
    write_scatter_svg(svg_path.string(), points,
                      std::log2(static_cast<double>(factorial(opt.config.m))));

    std::cout << "wrote " << points.size() << " channels to " << csv_path.string() << '\n';
    if (fit_ptr)
        std::cout << "fit: t1=" << fit.t1 << " t2=" << fit.t2 << " t3=" << fit.t3
                  << " rmse=" << fit.rmse << '\n';
    return 0;
}

int cmd_fit(const std::string& csv_path, std::string manifest_path) {
    const auto points = read_scatter_csv(csv_path);
    if (points.empty()) throw ParseError(csv_path + ": no data rows");
    const QuadraticFit fit = fit_quadratic(fit_points_from_scatter(points));
    std::printf("t1 = %.10g\nt2 = %.10g\nt3 = %.10g\nrmse = %.10g\nn_points = %d\n", fit.t1,
                fit.t2, fit.t3, fit.rmse, fit.n_points);
    if (manifest_path.empty()) {
        const fs::path candidate = fs::path(csv_path).parent_path() / "manifest.json";
        if (fs::exists(candidate)) manifest_path = candidate.string();
    }
    if (!manifest_path.empty()) {
        append_fit_to_manifest(manifest_path, fit);
        std::cerr << "fit appended to " << manifest_path << '\n';
    }
    return 0;
}

int cmd_twobit(int n_states, int mu_points, std::uint64_t seed, const std::string& out_csv,
               bool flip_sign) {
    const std::vector<double> grid = default_mu_grid(mu_points);
    auto rng = substream(seed, 0);
    std::vector<TwoBitState> states;
    states.reserve(static_cast<size_t>(n_states));
    for (int i = 0; i < n_states; ++i) states.push_back(random_twobit_state(rng));

    const ScanReport report = monotonicity_scan(states, grid, 1e-12, flip_sign);

    std::ofstream csv(out_csv, std::ios::trunc);
    if (!csv) throw Error("cannot open for writing: " + out_csv);
    csv << "state_id,p00,p01,p10,p11,mu,channel_entropy_bits,discord_bits,"
           "ddelta_dalpha,ddelta_dh\n";
    for (size_t i = 0; i < states.size(); ++i) {
        const TwoBitState& s = states[i];
        for (double mu : grid) {
            csv << i << ',' << format_double(s.p00) << ',' << format_double(s.p01) << ','
                << format_double(s.p10) << ',' << format_double(s.p11) << ','
                << format_double(mu) << ',' << format_double(twobit_channel_entropy(mu)) << ','
                << format_double(twobit_discord(s, mu)) << ','
                << format_double(ddelta_dalpha(s, 2.0 * mu - 1.0)) << ','
                << format_double(ddelta_dh(s, mu)) << '\n';
        }
    }

    std::printf("states = %d, mu grid = %d points, violations = %zu\n", report.states_checked,
                report.grid_size, report.violations.size());
    if (!report.passed()) {
        const ScanViolation& v = report.violations.front();
        std::printf("violation [%s]: state (%.17g, %.17g, %.17g, %.17g) at mu = %.17g, "
                    "value %.3e\n",
                    v.kind.c_str(), v.state.p00, v.state.p01, v.state.p10, v.state.p11, v.mu,
                    v.value);
        return 2;
    }
    std::printf("discord is monotone below and above mu = 1/2; "
                "sgn(dDelta/dalpha) = -sgn(alpha) holds\n");
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_svg, int m_flag) {
    const auto points = read_scatter_csv(csv_path);
    if (points.empty()) throw ParseError(csv_path + ": no data rows");
    double scale = 0.0;
    if (m_flag > 0) {
        scale = std::log2(static_cast<double>(factorial(m_flag)));
    } else {
        const fs::path manifest = fs::path(csv_path).parent_path() / "manifest.json";
        if (fs::exists(manifest)) {
            const nlohmann::json j = read_manifest(manifest.string());
            if (j.contains("config") && j["config"].contains("m"))
                scale = std::log2(static_cast<double>(factorial(j["config"]["m"].get<int>())));
        }
        if (scale == 0.0)
            for (const ScatterPoint& p : points)
                scale = std::max(scale, p.weight_entropy_bits);
        if (scale == 0.0) scale = 1.0;
    }
    write_scatter_svg(out_svg, points, scale);
    std::cout << "wrote " << out_svg << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discord and distortion of doubly stochastic noise channels"};
    app.set_version_flag("--version", std::string("discordlab ") + kVersion);
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "run a channel ensemble experiment");
    run->add_option("--m", run_opt.config.m, "message size per party (2..8)")
        ->check(CLI::Range(2, 8));
    run->add_option("--prior", run_opt.prior, "state prior: random | condpure")
        ->check(CLI::IsMember({"random", "condpure"}));
    run->add_option("--a-grid", run_opt.config.a_grid, "number of channel interpolation values");
    run->add_option("--wdown-per-a", run_opt.config.wdown_per_a,
                    "low-entropy weight draws per interpolation value");
    run->add_option("--states", run_opt.config.states_per_channel, "states per channel");
    run->add_option("--seed", run_opt.config.seed, "master seed");
    run->add_flag("--include-identity,!--no-identity", run_opt.config.include_identity,
                  "append the noiseless channel");
    run->add_option("--convention", run_opt.convention,
                    "minimization convention: pre-channel (permute the state before the noise) "
                    "| post-channel (relabel the noisy readout)")
        ->check(CLI::IsMember({"pre-channel", "post-channel"}));
    run->add_option("--interp-cap", run_opt.config.interp_cap,
                    "identity weight cap B in the state family (a p + b I), b = (1-a) B");
    run->add_option("--threads", run_opt.config.threads,
                    "worker threads (0: DISCORDLAB_THREADS env or hardware)");
    run->add_option("--out", run_opt.out_dir, "output directory");
    run->add_flag("--resume", run_opt.resume, "continue an interrupted run in --out");

    std::string fit_csv, fit_manifest;
    CLI::App* fit = app.add_subcommand("fit", "fit discord = t1 d^2 + t2 d + t3");
    fit->add_option("csv", fit_csv, "scatter CSV")->required();
    fit->add_option("--manifest", fit_manifest, "manifest to append the fit to");

    int tb_states = 1000, tb_mu_points = 99;
    std::uint64_t tb_seed = 42;
    std::string tb_out = "twobit_scan.csv";
    bool tb_flip = false;
    CLI::App* twobit = app.add_subcommand("twobit", "two-bit monotonicity scan and curves");
    twobit->add_option("--states", tb_states, "random states to scan")->check(CLI::PositiveNumber);
    twobit->add_option("--mu-points", tb_mu_points, "mu grid size (grid avoids 1/2)")
        ->check(CLI::Range(3, 100000));
    twobit->add_option("--seed", tb_seed, "master seed");
    twobit->add_option("--out", tb_out, "curve CSV path");
    twobit->add_flag("--flip-sign-self-test", tb_flip)->group("");  // harness self-test

    std::string plot_csv, plot_out = "scatter.svg";
    int plot_m = 0;
    CLI::App* plot = app.add_subcommand("plot", "render a scatter CSV as SVG");
    plot->add_option("csv", plot_csv, "scatter CSV")->required();
    plot->add_option("--out", plot_out, "output SVG path");
    plot->add_option("--m", plot_m, "message size fixing the entropy color scale to log2 m!")
        ->check(CLI::Range(2, 8));

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opt);
        if (fit->parsed()) return cmd_fit(fit_csv, fit_manifest);
        if (twobit->parsed()) return cmd_twobit(tb_states, tb_mu_points, tb_seed, tb_out, tb_flip);
        if (plot->parsed()) return cmd_plot(plot_csv, plot_out, plot_m);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
