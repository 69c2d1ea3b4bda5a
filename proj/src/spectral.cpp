#include "spectral_seed/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "spectral_seed/error.hpp"
#include "spectral_seed/parallel.hpp"

namespace spectral_seed {

namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftBuffer {
public:
    explicit FftBuffer(std::size_t n)
        : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), n_(n) {
        if (data_ == nullptr) throw Error("FFT buffer allocation failed");
    }
    ~FftBuffer() { fftw_free(data_); }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    fftw_complex* get() { return data_; }
    std::complex<double>* as_complex() { return reinterpret_cast<std::complex<double>*>(data_); }
    std::size_t size() const { return n_; }

private:
    fftw_complex* data_;
    std::size_t n_;
};

// In-place 2-D complex transform. The plan is made before `fill` writes the
// input, so planning can never clobber it. FFTW_ESTIMATE plans do not depend
// on timing, and fftw_malloc gives a fixed alignment, so repeated runs pick
// the same algorithm and produce identical bits.
template <typename Fill>
void transform_in_place(FftBuffer& buffer, std::size_t nx, std::size_t ny, int sign, Fill&& fill) {
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny), buffer.get(), buffer.get(),
                                sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw Error("FFT planning failed");
    fill(buffer.as_complex());
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

void check_transform_size(std::size_t nx, std::size_t ny) {
    if (nx < kMinGridPixels || ny < kMinGridPixels) throw Error("field must be at least 8 pixels per axis");
}

}  // namespace

double bin_frequency(std::size_t k, std::size_t n, double length) {
    const auto kk = static_cast<double>(k);
    const auto nn = static_cast<double>(n);
    return (2 * k < n ? kk : kk - nn) / length;
}

double spatial_sigma(double sigma_tilde) {
    if (!(sigma_tilde > 0.0)) throw Error("sigma_tilde must be positive");
    return 1.0 / (2.0 * std::numbers::pi * sigma_tilde);
}

Spectrum forward_dft(const Array2D<double>& values, const GridSpec& grid) {
    check_transform_size(values.nx(), values.ny());
    FftBuffer buffer(values.size());
    transform_in_place(buffer, values.nx(), values.ny(), FFTW_FORWARD, [&](std::complex<double>* data) {
        auto in = values.flat();
        for (std::size_t i = 0; i < in.size(); ++i) data[i] = {in[i], 0.0};
    });
    const std::complex<double>* data = buffer.as_complex();

    Spectrum spec{grid, Array2D<std::complex<double>>(values.nx(), values.ny())};
    std::copy(data, data + buffer.size(), spec.values.flat().begin());
    return spec;
}

Spectrum forward_dft(const DensityField& field) { return forward_dft(field.values, field.grid); }

Spectrum apply_gaussian_filter(const Spectrum& spec, double sigma_tilde, bool with_prefactor) {
    if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde)) throw Error("sigma_tilde must be positive");
    const std::size_t nx = spec.values.nx();
    const std::size_t ny = spec.values.ny();
    const double lx = spec.grid.extent_x();
    const double ly = spec.grid.extent_y();
    const double two_var = 2.0 * sigma_tilde * sigma_tilde;
    const double gain = with_prefactor ? 1.0 / (std::numbers::pi * two_var) : 1.0;

    std::vector<double> gx(nx), gy(ny);
    for (std::size_t k = 0; k < nx; ++k) {
        const double f = bin_frequency(k, nx, lx);
        gx[k] = f * f;
    }
    for (std::size_t k = 0; k < ny; ++k) {
        const double f = bin_frequency(k, ny, ly);
        gy[k] = f * f;
    }

    Spectrum out = spec;
    for (std::size_t kx = 0; kx < nx; ++kx) {
        for (std::size_t ky = 0; ky < ny; ++ky) {
            out.values(kx, ky) *= gain * std::exp(-(gx[kx] + gy[ky]) / two_var);
        }
    }
    return out;
}

Array2D<double> inverse_dft(const Spectrum& spec) {
    const std::size_t nx = spec.values.nx();
    const std::size_t ny = spec.values.ny();
    check_transform_size(nx, ny);
    FftBuffer buffer(spec.values.size());
    transform_in_place(buffer, nx, ny, FFTW_BACKWARD, [&](std::complex<double>* data) {
        std::copy(spec.values.flat().begin(), spec.values.flat().end(), data);
    });

    const double scale = 1.0 / static_cast<double>(nx * ny);
    Array2D<double> out(nx, ny);
    auto flat = out.flat();
    const std::complex<double>* data = buffer.as_complex();
    double max_real = 0.0;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        flat[i] = data[i].real() * scale;
        max_real = std::max(max_real, std::abs(flat[i]));
        max_imag = std::max(max_imag, std::abs(data[i].imag() * scale));
    }
    if (max_imag > 1e-8 * max_real) throw Error("non-real inverse");
    return out;
}

void normalize_in_place(Array2D<double>& values) {
    auto flat = values.flat();
    if (flat.empty()) return;
    const auto [lo_it, hi_it] = std::minmax_element(flat.begin(), flat.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    if (!(range > 0.0)) {
        std::fill(flat.begin(), flat.end(), 0.0);
        return;
    }
    for (double& v : flat) v = (v - lo) / range;
}

SmoothedField normalize(SmoothedField field) {
    normalize_in_place(field.values);
    field.normalized = true;
    return field;
}

SmoothedField smooth_raw(const DensityField& field, double sigma_tilde, bool with_prefactor) {
    const Spectrum filtered = apply_gaussian_filter(forward_dft(field), sigma_tilde, with_prefactor);
    return SmoothedField{field.grid, inverse_dft(filtered), sigma_tilde, spatial_sigma(sigma_tilde), false};
}

SmoothedField smooth(const DensityField& field, double sigma_tilde) {
    return normalize(smooth_raw(field, sigma_tilde));
}

SmoothedField smooth_direct_oracle(const DensityField& field, double sigma_tilde) {
    if (!(sigma_tilde > 0.0)) throw Error("sigma_tilde must be positive");
    if (field.occupied_count > kDirectOracleMaxOccupied) throw Error("too many occupied pixels for the direct sum");
    const GridSpec& grid = field.grid;
    const std::size_t nx = grid.nx;
    const std::size_t ny = grid.ny;

    std::vector<Point> centers;
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            if (field.values(ix, iy) != 0.0) centers.push_back({grid.center_x(ix), grid.center_y(iy)});

    const double k = 2.0 * std::numbers::pi * std::numbers::pi * sigma_tilde * sigma_tilde;
    SmoothedField out{grid, Array2D<double>(nx, ny, 0.0), sigma_tilde, spatial_sigma(sigma_tilde), false};
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        for (std::size_t ix = begin; ix < end; ++ix) {
            const double x = grid.center_x(ix);
            for (std::size_t iy = 0; iy < ny; ++iy) {
                const double y = grid.center_y(iy);
                double sum = 0.0;
                for (const Point& c : centers) {
                    const double ddx = x - c.x;
                    const double ddy = y - c.y;
                    sum += std::exp(-k * (ddx * ddx + ddy * ddy));
                }
                out.values(ix, iy) = sum;
            }
        }
    });
    return normalize(std::move(out));
}

OracleComparison compare_with_direct_oracle(const DensityField& field, double sigma_tilde) {
    const SmoothedField fft = smooth(field, sigma_tilde);
    const SmoothedField direct = smooth_direct_oracle(field, sigma_tilde);
    const GridSpec& grid = field.grid;

    OracleComparison result;
    result.edge_band_px = static_cast<std::size_t>(std::ceil(3.0 * spatial_sigma(sigma_tilde) / grid.dx));
    const std::size_t band = result.edge_band_px;
    if (2 * band >= grid.nx || 2 * band >= grid.ny) throw Error("no interior pixels outside the edge band");

    double best_fft = -1.0, best_direct = -1.0;
    std::pair<std::size_t, std::size_t> arg_fft{}, arg_direct{};
    for (std::size_t ix = band; ix < grid.nx - band; ++ix) {
        for (std::size_t iy = band; iy < grid.ny - band; ++iy) {
            const double a = fft.values(ix, iy);
            const double b = direct.values(ix, iy);
            result.max_interior_deviation = std::max(result.max_interior_deviation, std::abs(a - b));
            ++result.interior_pixels;
            if (a > best_fft) {
                best_fft = a;
                arg_fft = {ix, iy};
            }
            if (b > best_direct) {
                best_direct = b;
                arg_direct = {ix, iy};
            }
        }
    }
    result.argmax_match = arg_fft == arg_direct;
    return result;
}

}  // namespace spectral_seed
