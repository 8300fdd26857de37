#pragma once

// Serialization for experiment runs.
//
// scatter.csv schema (one row per channel, >= 15 significant digits):
//   channel_id,a,weight_entropy_bits,avg_discord_bits,avg_distortion,n_states,argmin_mode
// `a` is the channel interpolation parameter, -1 for the appended noiseless
// channel. `argmin_mode` is the most frequent minimizing permutation index
// across the channel's state batch.
//
// manifest.json records the full logical config, code version, status and
// fit results; everything except the timestamp is determined by
// (config, seed, code version).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "discordlab/estimators.hpp"
#include "discordlab/fitting.hpp"
#include "discordlab/version.hpp"

namespace discordlab {

inline const char* kScatterCsvHeader =
    "channel_id,a,weight_entropy_bits,avg_discord_bits,avg_distortion,n_states,argmin_mode";

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string scatter_csv_row(const ScatterPoint& p) {
    std::ostringstream out;
    out << p.channel_id << ',' << format_double(p.a) << ','
        << format_double(p.weight_entropy_bits) << ',' << format_double(p.avg_discord_bits)
        << ',' << format_double(p.avg_distortion) << ',' << p.n_states << ',' << p.argmin_mode;
    return out.str();
}

inline void write_scatter_csv(const std::string& path, const std::vector<ScatterPoint>& points) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << kScatterCsvHeader << '\n';
    for (const ScatterPoint& p : points) out << scatter_csv_row(p) << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

inline double parse_double_field(const std::string& s, const std::string& path, size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
    return v;
}

}  // namespace detail

inline std::vector<ScatterPoint> read_scatter_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    std::string line;
    size_t line_no = 0;
    std::vector<ScatterPoint> points;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (line_no == 1) {
            if (fields.empty() || fields[0] != "channel_id")
                throw ParseError(path + ":1: missing scatter header");
            continue;
        }
        if (fields.size() != 7)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 7 fields, got " +
                             std::to_string(fields.size()));
        ScatterPoint p;
        p.channel_id = static_cast<int>(detail::parse_double_field(fields[0], path, line_no));
        p.a = detail::parse_double_field(fields[1], path, line_no);
        p.weight_entropy_bits = detail::parse_double_field(fields[2], path, line_no);
        p.avg_discord_bits = detail::parse_double_field(fields[3], path, line_no);
        p.avg_distortion = detail::parse_double_field(fields[4], path, line_no);
        p.n_states = static_cast<int>(detail::parse_double_field(fields[5], path, line_no));
        p.argmin_mode = static_cast<int>(detail::parse_double_field(fields[6], path, line_no));
        points.push_back(p);
    }
    return points;
}

inline std::vector<FitPoint> fit_points_from_scatter(const std::vector<ScatterPoint>& points) {
    std::vector<FitPoint> fp;
    fp.reserve(points.size());
    for (const ScatterPoint& p : points) fp.push_back({p.avg_distortion, p.avg_discord_bits});
    return fp;
}

// --------------------------------------------------------------------------
// Manifest

inline const char* prior_name(PriorKind kind) {
    return kind == PriorKind::random_joint ? "random" : "condpure";
}

inline const char* convention_name(Convention c) {
    return c == Convention::pre_channel ? "pre-channel" : "post-channel";
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    return nlohmann::json{
        {"m", c.m},
        {"prior", prior_name(c.prior)},
        {"a_grid", c.a_grid},
        {"wdown_per_a", c.wdown_per_a},
        {"states_per_channel", c.states_per_channel},
        {"seed", c.seed},
        {"include_identity", c.include_identity},
        {"convention", convention_name(c.convention)},
        {"interp_cap", c.interp_cap},
    };
}

inline std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

inline void write_manifest(const std::string& path, const ExperimentConfig& config,
                           const std::string& status, const QuadraticFit* fit = nullptr) {
    nlohmann::json j{
        {"tool", "discordlab"},
        {"version", kVersion},
        {"status", status},
        {"created_utc", utc_timestamp()},
        {"config", config_to_json(config)},
    };
    if (fit) {
        j["fit"] = {{"t1", fit->t1},        {"t2", fit->t2},           {"t3", fit->t3},
                    {"rmse", fit->rmse},    {"rmse_denominator", "n"}, {"n_points", fit->n_points}};
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline nlohmann::json read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void append_fit_to_manifest(const std::string& path, const QuadraticFit& fit) {
    nlohmann::json j = read_manifest(path);
    j["fit"] = {{"t1", fit.t1},     {"t2", fit.t2},            {"t3", fit.t3},
                {"rmse", fit.rmse}, {"rmse_denominator", "n"}, {"n_points", fit.n_points}};
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

// --------------------------------------------------------------------------
// SVG scatter plot

// Four-stop heat colormap over [0, 1].
inline std::string heat_color(double t) {
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    static const double stops[4][3] = {
        {13, 8, 135}, {156, 23, 158}, {237, 121, 83}, {240, 249, 33}};
    const double pos = t * 3.0;
    int k = static_cast<int>(pos);
    if (k > 2) k = 2;
    const double f = pos - k;
    char buf[32];
    std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)",
                  static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0]))),
                  static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1]))),
                  static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2]))));
    return buf;
}

// Scatter of avg discord vs avg distortion, colored by weight entropy over
// [0, entropy_scale_bits]; overlays the fitted parabola in black when a fit
// is possible.
inline std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                                      double entropy_scale_bits) {
    const double width = 760, height = 560;
    const double left = 70, right = 30, top = 30, bottom = 60;
    double x_max = 0.0, y_max = 0.0;
    for (const ScatterPoint& p : points) {
        x_max = std::max(x_max, p.avg_distortion);
        y_max = std::max(y_max, p.avg_discord_bits);
    }
    if (x_max <= 0.0) x_max = 1.0;
    if (y_max <= 0.0) y_max = 1.0;
    x_max *= 1.05;
    y_max *= 1.05;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto sx = [&](double x) { return left + x / x_max * plot_w; };
    auto sy = [&](double y) { return top + plot_h - y / y_max * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    // axes and ticks
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_max * i / 5.0, fy = y_max * i / 5.0;
        char label[24];
        svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << top + plot_h << "\" x2=\"" << sx(fx)
            << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof label, "%.2f", fx);
        svg << "<text x=\"" << sx(fx) << "\" y=\"" << top + plot_h + 20
            << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << left
            << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof label, "%.2f", fy);
        svg << "<text x=\"" << left - 8 << "\" y=\"" << sy(fy) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << label << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
        << "\" font-size=\"13\" text-anchor=\"middle\">average distortion</text>\n";
    svg << "<text x=\"18\" y=\"" << top + plot_h / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">average discord (bits)</text>\n";

    for (const ScatterPoint& p : points) {
        const double t = entropy_scale_bits > 0.0 ? p.weight_entropy_bits / entropy_scale_bits : 0.0;
        svg << "<circle cx=\"" << sx(p.avg_distortion) << "\" cy=\"" << sy(p.avg_discord_bits)
            << "\" r=\"3\" fill=\"" << heat_color(t) << "\" fill-opacity=\"0.8\"/>\n";
    }

    if (points.size() >= 3) {
        bool fitted = false;
        QuadraticFit fit;
        try {
            fit = fit_quadratic(fit_points_from_scatter(points));
            fitted = true;
        } catch (const DegenerateFitError&) {
        }
        if (fitted) {
            svg << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
            for (int i = 0; i <= 100; ++i) {
                const double x = x_max / 1.05 * i / 100.0;
                double y = fit(x);
                if (y < 0.0) y = 0.0;
                if (y > y_max) y = y_max;
                svg << (i == 0 ? 'M' : 'L') << sx(x) << ' ' << sy(y) << ' ';
            }
            svg << "\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void write_scatter_svg(const std::string& path, const std::vector<ScatterPoint>& points,
                              double entropy_scale_bits) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << render_scatter_svg(points, entropy_scale_bits);
}

}  // namespace discordlab
