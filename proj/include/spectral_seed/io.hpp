#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "spectral_seed/bandwidth.hpp"
#include "spectral_seed/datagen.hpp"
#include "spectral_seed/grid.hpp"
#include "spectral_seed/peaks.hpp"
#include "spectral_seed/pipeline.hpp"
#include "spectral_seed/seeding.hpp"

namespace spectral_seed {

// --- CSV points -------------------------------------------------------------
//
// Comma-separated, '.' decimal point, first two columns are x and y. A single
// header line is allowed and recognised by its first two fields not parsing
// as numbers. Blank lines are skipped.

PointSet parse_points_csv(std::istream& in);
PointSet read_points_csv(const std::filesystem::path& path);

/// Writes "x,y" (plus ",cluster" when assignments are given) and one row per
/// point with 17 significant digits.
void write_points_csv(std::ostream& out, const PointSet& points,
                      const std::vector<std::size_t>* assignments = nullptr);

// --- Rasters ------------------------------------------------------------------

/// One CSV row per y line, iy ascending; columns are ix ascending.
void write_raster_csv(std::ostream& out, const SmoothedField& field);

/// Binary 8-bit PGM: "P5\n<nx> <ny>\n255\n", row 0 is the largest y.
/// Values are clamped to [0, 1] and scaled by 255 with rounding.
void write_raster_pgm(std::ostream& out, const SmoothedField& field);

// --- JSON -------------------------------------------------------------------

nlohmann::json to_json(const ConvergenceTrace& trace);  // array of {n, sigma_tilde, correlation, delta}
nlohmann::json to_json(const PeakSet& peaks);           // {k, peaks: [{x, y, value}], ...}
nlohmann::json to_json(const KMeansResult& result);
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const GridSpec& grid);

PeakSet peaks_from_json(const nlohmann::json& j);
std::vector<ClusterSpec> cluster_specs_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<ClusterSpec>& specs);

/// Stable text form used for every JSON file the CLI writes.
std::string dump_json(const nlohmann::json& j);

}  // namespace spectral_seed
