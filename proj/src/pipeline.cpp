#include "spectral_seed/pipeline.hpp"

namespace spectral_seed {

PipelineResult run_pipeline(const PointSet& points, const RunConfig& config) {
    PipelineResult result;
    result.estimated_dx = config.dx > 0.0 ? config.dx : estimate_spacing(points, config.gap_fraction);
    result.grid = build_grid(points, result.estimated_dx, config.grid_cap);
    result.density = rasterize(points, result.grid);
    result.detection = detect(result.density, config.epsilon, config.peak_threshold, config.max_iter_bandwidth);
    return result;
}

}  // namespace spectral_seed
