#pragma once

#include <complex>

#include "spectral_seed/array2d.hpp"
#include "spectral_seed/grid.hpp"

namespace spectral_seed {

/// Frequency-domain image of a field on `grid`. Bin (kx, ky) corresponds to
/// the physical frequency (bin_frequency(kx, nx, L_x), bin_frequency(ky, ny, L_y)).
struct Spectrum {
    GridSpec grid;
    Array2D<std::complex<double>> values;
};

/// Smoothed density on a grid.
///
/// `sigma_tilde` is the frequency-domain standard deviation (1/data units);
/// `sigma_spatial` the matching spatial one, 1 / (2 pi sigma_tilde).
struct SmoothedField {
    GridSpec grid;
    Array2D<double> values;
    double sigma_tilde = 0.0;
    double sigma_spatial = 0.0;
    bool normalized = false;
};

/// Physical frequency of DFT bin k on an axis of n samples spanning length L:
/// k/L below n/2, (k - n)/L from n/2 on.
double bin_frequency(std::size_t k, std::size_t n, double length);

/// 1 / (2 pi sigma_tilde): the spatial width of the Gaussian kernel.
double spatial_sigma(double sigma_tilde);

/// Unnormalised forward DFT with the exp(-2 pi i (x fx + y fy)) convention.
Spectrum forward_dft(const DensityField& field);
Spectrum forward_dft(const Array2D<double>& values, const GridSpec& grid);

/**
 * Multiplies every bin by the frequency-space Gaussian
 *   1 / (2 pi s^2) * exp(-(fx^2 + fy^2) / (2 s^2)),  s = sigma_tilde.
 * When `with_prefactor` is false the leading 1/(2 pi s^2) is omitted; the
 * normalised output of smooth() does not depend on it.
 */
Spectrum apply_gaussian_filter(const Spectrum& spec, double sigma_tilde, bool with_prefactor = true);

/// Inverse DFT (scaled by 1/(nx ny)) returning the real part. Throws
/// Error("non-real inverse") when the imaginary residue exceeds
/// 1e-8 * max |real part|.
Array2D<double> inverse_dft(const Spectrum& spec);

/// Shift to min 0 and scale to max 1. A constant field maps to all zeros.
void normalize_in_place(Array2D<double>& values);
SmoothedField normalize(SmoothedField field);

/// FFT -> Gaussian filter -> inverse FFT, without normalisation.
SmoothedField smooth_raw(const DensityField& field, double sigma_tilde, bool with_prefactor = true);

/// smooth_raw followed by shift-normalisation.
SmoothedField smooth(const DensityField& field, double sigma_tilde);

/**
 * Reference smoother: at every pixel centre, the direct sum of
 * exp(-2 pi^2 s^2 r^2) over the occupied pixels, then shift-normalised.
 * Linear (non-periodic) convolution, O(occupied * pixels); test scale only.
 */
SmoothedField smooth_direct_oracle(const DensityField& field, double sigma_tilde);

inline constexpr std::size_t kDirectOracleMaxOccupied = 10000;

/// FFT smoothing against the direct-sum reference on the pixels at least
/// ceil(3 sigma_spatial / dx) away from every grid edge, both normalised.
struct OracleComparison {
    double max_interior_deviation = 0.0;
    std::size_t interior_pixels = 0;
    std::size_t edge_band_px = 0;
    bool argmax_match = false;  // argmax over the interior agrees
};

OracleComparison compare_with_direct_oracle(const DensityField& field, double sigma_tilde);

}  // namespace spectral_seed
