#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace spectral_seed {

/**
 * Dense row-major 2-D array indexed as (ix, iy).
 *
 * Element (ix, iy) lives at ix * ny + iy, i.e. the y index is contiguous.
 * This is the layout FFTW expects for an nx-by-ny transform.
 */
template <typename T>
class Array2D {
public:
    Array2D() = default;
    Array2D(std::size_t nx, std::size_t ny, T fill = T{})
        : nx_(nx), ny_(ny), data_(nx * ny, fill) {}

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(std::size_t ix, std::size_t iy) {
        assert(ix < nx_ && iy < ny_);
        return data_[ix * ny_ + iy];
    }
    const T& operator()(std::size_t ix, std::size_t iy) const {
        assert(ix < nx_ && iy < ny_);
        return data_[ix * ny_ + iy];
    }

    std::span<T> flat() { return data_; }
    std::span<const T> flat() const { return data_; }

    bool operator==(const Array2D&) const = default;

private:
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<T> data_;
};

}  // namespace spectral_seed
