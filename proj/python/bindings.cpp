#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spectral_seed/spectral_seed.hpp"

namespace py = pybind11;
using namespace spectral_seed;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet points_from_array(const DoubleArray& arr) {
    if (arr.ndim() != 2 || arr.shape(1) != 2) throw Error("points must have shape (N, 2)");
    auto r = arr.unchecked<2>();
    std::vector<Point> pts(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) pts[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
    return PointSet(std::move(pts));
}

py::array_t<double> points_to_array(std::span<const Point> pts) {
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        w(static_cast<py::ssize_t>(i), 0) = pts[i].x;
        w(static_cast<py::ssize_t>(i), 1) = pts[i].y;
    }
    return out;
}

std::vector<Point> centroid_list(const DoubleArray& arr) {
    const PointSet set = points_from_array(arr);
    return {set.begin(), set.end()};
}

// Copy out as an (nx, ny) array; [ix, iy] indexing matches the C++ side.
py::array_t<double> field_to_array(const Array2D<double>& a) {
    py::array_t<double> out({static_cast<py::ssize_t>(a.nx()), static_cast<py::ssize_t>(a.ny())});
    std::copy(a.flat().begin(), a.flat().end(), out.mutable_data());
    return out;
}

Array2D<double> array_to_field(const DoubleArray& arr) {
    if (arr.ndim() != 2) throw Error("expected a 2-D array");
    Array2D<double> a(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    std::copy(arr.data(), arr.data() + arr.size(), a.flat().begin());
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cluster centroid estimation by Fourier-domain smoothing of a Dirac-mixture density";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("dx", &GridSpec::dx)
        .def_readonly("origin_x", &GridSpec::origin_x)
        .def_readonly("origin_y", &GridSpec::origin_y)
        .def_readonly("n_x", &GridSpec::nx)
        .def_readonly("n_y", &GridSpec::ny)
        .def_property_readonly("L_x", &GridSpec::extent_x)
        .def_property_readonly("L_y", &GridSpec::extent_y)
        .def("__repr__", [](const GridSpec& g) {
            return "<GridSpec " + std::to_string(g.nx) + "x" + std::to_string(g.ny) + " dx=" + std::to_string(g.dx) + ">";
        });

    py::class_<DensityField>(m, "DensityField")
        .def_readonly("grid", &DensityField::grid)
        .def_property_readonly("values", [](const DensityField& f) { return field_to_array(f.values); })
        .def_readonly("occupied_count", &DensityField::occupied_count)
        .def_readonly("point_count", &DensityField::point_count)
        .def_property_readonly("collapsed_count", &DensityField::collapsed_count);

    py::class_<SmoothedField>(m, "SmoothedField")
        .def_readonly("grid", &SmoothedField::grid)
        .def_property_readonly("values", [](const SmoothedField& f) { return field_to_array(f.values); })
        .def_readonly("sigma_tilde", &SmoothedField::sigma_tilde)
        .def_readonly("sigma_spatial", &SmoothedField::sigma_spatial)
        .def_readonly("normalized", &SmoothedField::normalized);

    py::class_<TraceEntry>(m, "TraceEntry")
        .def_readonly("n", &TraceEntry::n)
        .def_readonly("sigma_tilde", &TraceEntry::sigma_tilde)
        .def_readonly("correlation", &TraceEntry::correlation)
        .def_readonly("delta", &TraceEntry::delta);

    py::class_<ConvergenceTrace>(m, "ConvergenceTrace")
        .def_readonly("entries", &ConvergenceTrace::entries)
        .def_readonly("converged_n", &ConvergenceTrace::converged_n)
        .def_readonly("epsilon", &ConvergenceTrace::epsilon);

    py::class_<Peak>(m, "Peak")
        .def_readonly("ix", &Peak::ix)
        .def_readonly("iy", &Peak::iy)
        .def_readonly("x", &Peak::x)
        .def_readonly("y", &Peak::y)
        .def_readonly("value", &Peak::value);

    py::class_<PeakSet>(m, "PeakSet")
        .def_readonly("peaks", &PeakSet::peaks)
        .def_readonly("window_widths_px", &PeakSet::window_widths_px)
        .def_readonly("threshold", &PeakSet::threshold)
        .def_readonly("sigma_tilde", &PeakSet::sigma_tilde)
        .def("__len__", &PeakSet::size)
        .def("centroids", [](const PeakSet& s) {
            std::vector<Point> pts;
            for (const auto& p : s.peaks) pts.push_back({p.x, p.y});
            return points_to_array(pts);
        });

    py::class_<Detection>(m, "Detection")
        .def_readonly("peaks", &Detection::peaks)
        .def_readonly("trace", &Detection::trace)
        .def_readonly("smoothed", &Detection::smoothed);

    py::class_<KMeansResult>(m, "KMeansResult")
        .def_property_readonly("centroids", [](const KMeansResult& r) { return points_to_array(r.centroids); })
        .def_property_readonly("initial_centroids", [](const KMeansResult& r) { return points_to_array(r.initial_centroids); })
        .def_readonly("assignments", &KMeansResult::assignments)
        .def_readonly("inertia", &KMeansResult::inertia)
        .def_readonly("iterations", &KMeansResult::iterations)
        .def_readonly("inertia_history", &KMeansResult::inertia_history)
        .def("cluster_shares", &KMeansResult::cluster_shares);

    py::class_<ClusterSpec>(m, "ClusterSpec")
        .def(py::init<double, double, double, double, int>(), py::arg("mu_x"), py::arg("mu_y"), py::arg("sigma_x"),
             py::arg("sigma_y"), py::arg("count"))
        .def_readwrite("mu_x", &ClusterSpec::mu_x)
        .def_readwrite("mu_y", &ClusterSpec::mu_y)
        .def_readwrite("sigma_x", &ClusterSpec::sigma_x)
        .def_readwrite("sigma_y", &ClusterSpec::sigma_y)
        .def_readwrite("count", &ClusterSpec::count);

    py::class_<PipelineResult>(m, "PipelineResult")
        .def_readonly("estimated_dx", &PipelineResult::estimated_dx)
        .def_readonly("grid", &PipelineResult::grid)
        .def_readonly("density", &PipelineResult::density)
        .def_readonly("detection", &PipelineResult::detection);

    m.def("estimate_spacing", [](const DoubleArray& pts, double gap_fraction) {
        return estimate_spacing(points_from_array(pts), gap_fraction);
    }, py::arg("points"), py::arg("gap_fraction") = kDefaultGapFraction);
    m.def("build_grid", [](const DoubleArray& pts, double dx, std::size_t cap, std::size_t margin_px) {
        return build_grid(points_from_array(pts), dx, cap, margin_px);
    }, py::arg("points"), py::arg("dx"), py::arg("cap") = kDefaultGridCap, py::arg("margin_px") = kDefaultMarginPixels);
    m.def("rasterize", [](const DoubleArray& pts, const GridSpec& grid) {
        return rasterize(points_from_array(pts), grid);
    }, py::arg("points"), py::arg("grid"));

    m.def("smooth", &smooth, py::arg("field"), py::arg("sigma_tilde"));
    m.def("smooth_direct_oracle", &smooth_direct_oracle, py::arg("field"), py::arg("sigma_tilde"));
    m.def("pearson_correlation", [](const DoubleArray& a, const DoubleArray& b) {
        return pearson_correlation(array_to_field(a), array_to_field(b));
    }, py::arg("a"), py::arg("b"));
    m.def("select_bandwidth", [](const DensityField& f, double epsilon, int max_iter) {
        auto sel = select_bandwidth(f, epsilon, max_iter);
        return py::make_tuple(sel.field, sel.trace);
    }, py::arg("field"), py::arg("epsilon") = kDefaultEpsilon, py::arg("max_iter") = kDefaultBandwidthMaxIter);

    m.def("critical_width", &critical_width, py::arg("sigma_tilde"));
    m.def("choose_window_widths", &choose_window_widths, py::arg("critical_width"), py::arg("dx"));
    m.def("threshold_field", &threshold_field, py::arg("field"), py::arg("tau") = kDefaultPeakThreshold);
    m.def("find_peaks", &find_peaks, py::arg("field"), py::arg("widths_px"), py::arg("threshold") = 0.0);
    m.def("detect", &detect, py::arg("field"), py::arg("epsilon") = kDefaultEpsilon,
          py::arg("tau") = kDefaultPeakThreshold, py::arg("max_iter") = kDefaultBandwidthMaxIter);

    m.def("analyze", [](const DoubleArray& pts, double epsilon, double peak_threshold, double gap_fraction,
                        int max_iter, std::size_t grid_cap, double dx) {
        RunConfig cfg;
        cfg.epsilon = epsilon;
        cfg.peak_threshold = peak_threshold;
        cfg.gap_fraction = gap_fraction;
        cfg.max_iter_bandwidth = max_iter;
        cfg.grid_cap = grid_cap;
        cfg.dx = dx;
        return run_pipeline(points_from_array(pts), cfg);
    }, py::arg("points"), py::arg("epsilon") = kDefaultEpsilon, py::arg("peak_threshold") = kDefaultPeakThreshold,
       py::arg("gap_fraction") = kDefaultGapFraction, py::arg("max_iter") = kDefaultBandwidthMaxIter,
       py::arg("grid_cap") = kDefaultGridCap, py::arg("dx") = 0.0,
       "Spacing estimate, grid, raster and peak detection in one call.");

    m.def("kmeans", [](const DoubleArray& pts, const DoubleArray& init, int max_iter, double tol) {
        return kmeans(points_from_array(pts), centroid_list(init), max_iter, tol);
    }, py::arg("points"), py::arg("init"), py::arg("max_iter") = kDefaultKMeansMaxIter, py::arg("tol") = kDefaultKMeansTol);
    m.def("seed_and_cluster", [](const DoubleArray& pts, const PeakSet& peaks, int max_iter, double tol) {
        return seed_and_cluster(points_from_array(pts), peaks, max_iter, tol);
    }, py::arg("points"), py::arg("peaks"), py::arg("max_iter") = kDefaultKMeansMaxIter, py::arg("tol") = kDefaultKMeansTol);

    m.def("generate", [](const std::vector<ClusterSpec>& specs, std::uint64_t seed) {
        const PointSet pts = generate(specs, seed);
        return points_to_array(pts.points());
    }, py::arg("specs"), py::arg("seed"));
    m.def("table1_clusters", &table1_clusters);
    m.def("table1_centroids", [] { return points_to_array(table1_centroids()); });

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
