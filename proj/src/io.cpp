#include "spectral_seed/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "spectral_seed/error.hpp"

namespace spectral_seed {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc{} && ptr == field.data() + field.size();
}

// First two comma-separated fields of a line as numbers.
bool parse_xy(std::string_view line, Point& p) {
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) return false;
    const auto rest = line.substr(c1 + 1);
    const auto c2 = rest.find(',');
    return parse_double(line.substr(0, c1), p.x) && parse_double(rest.substr(0, c2), p.y);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PointSet parse_points_csv(std::istream& in) {
    std::vector<Point> points;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        Point p;
        if (parse_xy(view, p)) {
            points.push_back(p);
        } else if (seen_content) {
            throw Error("malformed CSV row at line " + std::to_string(line_no));
        }
        seen_content = true;
    }
    if (points.empty()) throw Error("CSV contains no points");
    return PointSet(std::move(points));
}

PointSet read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return parse_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points, const std::vector<std::size_t>* assignments) {
    if (assignments != nullptr && assignments->size() != points.size())
        throw Error("assignment count does not match point count");
    out << (assignments ? "x,y,cluster\n" : "x,y\n");
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << format_double(points[i].x) << ',' << format_double(points[i].y);
        if (assignments) out << ',' << (*assignments)[i];
        out << '\n';
    }
}

void write_raster_csv(std::ostream& out, const SmoothedField& field) {
    const auto& v = field.values;
    for (std::size_t iy = 0; iy < v.ny(); ++iy) {
        for (std::size_t ix = 0; ix < v.nx(); ++ix) {
            if (ix) out << ',';
            out << format_double(v(ix, iy));
        }
        out << '\n';
    }
}

void write_raster_pgm(std::ostream& out, const SmoothedField& field) {
    const auto& v = field.values;
    out << "P5\n" << v.nx() << ' ' << v.ny() << "\n255\n";
    std::string row(v.nx(), '\0');
    for (std::size_t r = 0; r < v.ny(); ++r) {
        const std::size_t iy = v.ny() - 1 - r;
        for (std::size_t ix = 0; ix < v.nx(); ++ix) {
            const double s = std::clamp(v(ix, iy), 0.0, 1.0);
            row[ix] = static_cast<char>(static_cast<unsigned char>(std::lround(s * 255.0)));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

nlohmann::json to_json(const ConvergenceTrace& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : trace.entries) {
        arr.push_back({{"n", e.n},
                       {"sigma_tilde", e.sigma_tilde},
                       {"correlation", e.correlation},
                       {"delta", e.delta ? nlohmann::json(*e.delta) : nlohmann::json(nullptr)}});
    }
    return arr;
}

nlohmann::json to_json(const PeakSet& peaks) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& p : peaks.peaks)
        list.push_back({{"x", p.x}, {"y", p.y}, {"value", p.value}, {"ix", p.ix}, {"iy", p.iy}});
    return {{"k", peaks.size()},
            {"peaks", list},
            {"sigma_tilde", peaks.sigma_tilde},
            {"window_widths_px", peaks.window_widths_px},
            {"threshold", peaks.threshold}};
}

nlohmann::json to_json(const KMeansResult& result) {
    auto points = [](const std::vector<Point>& ps) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : ps) arr.push_back({p.x, p.y});
        return arr;
    };
    return {{"k", result.k()},
            {"initial_centroids", points(result.initial_centroids)},
            {"centroids", points(result.centroids)},
            {"weights", result.cluster_shares()},
            {"inertia", result.inertia},
            {"iterations", result.iterations}};
}

nlohmann::json to_json(const RunConfig& config) {
    return {{"epsilon", config.epsilon},
            {"peak_threshold", config.peak_threshold},
            {"gap_fraction", config.gap_fraction},
            {"max_iter_bandwidth", config.max_iter_bandwidth},
            {"grid_cap", config.grid_cap},
            {"dx", config.dx > 0.0 ? nlohmann::json(config.dx) : nlohmann::json(nullptr)},
            {"seed", config.seed}};
}

nlohmann::json to_json(const GridSpec& grid) {
    return {{"dx", grid.dx},
            {"origin_x", grid.origin_x},
            {"origin_y", grid.origin_y},
            {"n_x", grid.nx},
            {"n_y", grid.ny},
            {"L_x", grid.extent_x()},
            {"L_y", grid.extent_y()}};
}

PeakSet peaks_from_json(const nlohmann::json& j) {
    try {
        PeakSet peaks;
        for (const auto& p : j.at("peaks")) {
            Peak peak;
            peak.x = p.at("x").get<double>();
            peak.y = p.at("y").get<double>();
            peak.value = p.value("value", 0.0);
            peak.ix = p.value("ix", std::size_t{0});
            peak.iy = p.value("iy", std::size_t{0});
            peaks.peaks.push_back(peak);
        }
        if (j.contains("window_widths_px")) peaks.window_widths_px = j.at("window_widths_px").get<WindowWidths>();
        peaks.threshold = j.value("threshold", 0.0);
        peaks.sigma_tilde = j.value("sigma_tilde", 0.0);
        return peaks;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed peaks JSON: ") + e.what());
    }
}

std::vector<ClusterSpec> cluster_specs_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("cluster spec file must hold a JSON list");
    std::vector<ClusterSpec> specs;
    try {
        for (const auto& item : j) {
            ClusterSpec spec{item.at("mu_x").get<double>(), item.at("mu_y").get<double>(),
                             item.at("sigma_x").get<double>(), item.at("sigma_y").get<double>(),
                             item.at("count").get<int>()};
            validate(spec);
            specs.push_back(spec);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed cluster spec: ") + e.what());
    }
    if (specs.empty()) throw Error("no cluster specs given");
    return specs;
}

nlohmann::json to_json(const std::vector<ClusterSpec>& specs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : specs)
        arr.push_back({{"mu_x", s.mu_x}, {"mu_y", s.mu_y}, {"sigma_x", s.sigma_x}, {"sigma_y", s.sigma_y}, {"count", s.count}});
    return arr;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace spectral_seed
