#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "bjq/fft.hpp"
#include "bjq/grid.hpp"
#include "bjq/parallel.hpp"
#include "bjq/signal.hpp"

namespace bjq {

inline const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

/// Unitary angular-frequency transform on a centered grid. Forward:
///   F_k = (2 pi)^{-1/2} dx sum_n f_n exp(-i x_n xi_k),
/// inverse is the exact algebraic inverse on the dual grid. Writes into `out`.
inline void fourier_samples(std::span<const cd> in, std::span<cd> out, std::span<cd> scratch, const Grid& grid,
                            Direction dir) {
    centered_dft(in, out, scratch, dir);
    const double scale = grid.spacing() * inv_sqrt_2pi;
    for (auto& v : out) v *= scale;
}

/// Forward maps a signal on G to its transform on G.dual(); inverse maps back.
inline Signal fourier(const Signal& f, Direction dir) {
    const std::size_t n = f.size();
    std::vector<cd> out(n), scratch(n);
    fourier_samples(f.values(), out, scratch, f.grid(), dir);
    return Signal(f.grid().dual(), std::move(out));
}

enum class Axis { x, xi };

/// Transform every row (Axis::xi, along the columns' variable) or every column (Axis::x).
/// The transformed axis is replaced by its dual grid.
inline PhaseSpaceArray fourier_axis(const PhaseSpaceArray& a, Axis axis, Direction dir) {
    const auto rows = a.values().rows(), cols = a.values().cols();
    ComplexMatrix out(rows, cols);
    PhaseGrid g = a.grid();
    if (axis == Axis::xi) {
        const Grid& ax = g.xi_grid;
        parallel_for(static_cast<std::size_t>(rows), [&](std::size_t j) {
            std::vector<cd> in(static_cast<std::size_t>(cols)), o(in.size()), s(in.size());
            for (Eigen::Index k = 0; k < cols; ++k) in[static_cast<std::size_t>(k)] = a.values()(static_cast<Eigen::Index>(j), k);
            fourier_samples(in, o, s, ax, dir);
            for (Eigen::Index k = 0; k < cols; ++k) out(static_cast<Eigen::Index>(j), k) = o[static_cast<std::size_t>(k)];
        });
        g.xi_grid = ax.dual();
    } else {
        const Grid& ax = g.x_grid;
        parallel_for(static_cast<std::size_t>(cols), [&](std::size_t k) {
            std::vector<cd> in(static_cast<std::size_t>(rows)), o(in.size()), s(in.size());
            for (Eigen::Index j = 0; j < rows; ++j) in[static_cast<std::size_t>(j)] = a.values()(j, static_cast<Eigen::Index>(k));
            fourier_samples(in, o, s, ax, dir);
            for (Eigen::Index j = 0; j < rows; ++j) out(j, static_cast<Eigen::Index>(k)) = o[static_cast<std::size_t>(j)];
        });
        g.x_grid = ax.dual();
    }
    return PhaseSpaceArray(g, std::move(out));
}

/// 2-D forward transform (both axes) onto the (eta, y) grid, or its inverse.
inline PhaseSpaceArray fourier_2d(const PhaseSpaceArray& a, Direction dir) {
    return fourier_axis(fourier_axis(a, Axis::x, dir), Axis::xi, dir);
}

/// Periodic trigonometric interpolant of samples on a centered grid.
///
/// The interpolant is the one defined by the `oversample`-times zero-padded
/// spectrum with the Nyquist bin split evenly between +-N/2. Evaluating it on
/// a shifted copy of the grid folds that padded spectrum back onto N bins, so
/// shifts cost one inverse transform of length N regardless of `oversample`.
class TrigInterpolant {
public:
    TrigInterpolant(std::span<const cd> samples, const Grid& grid, int oversample = 8)
        : grid_(grid), dual_(grid.dual()), oversample_(oversample), samples_(samples.begin(), samples.end()),
          spectrum_(samples.size()) {
        require(oversample >= 2, "oversample factor must be at least 2");
        require(samples.size() == grid.size(), "interpolant samples do not match grid");
        std::vector<cd> scratch(samples.size());
        fourier_samples(samples_, spectrum_, scratch, grid_, Direction::forward);
    }

    int oversample() const noexcept { return oversample_; }

    /// out_j = f(x_j + s). Integer multiples of dx reduce to an index rotation.
    void shifted(double s, std::span<cd> out, std::span<cd> scratch) const {
        const std::size_t n = samples_.size();
        const double steps = s / grid_.spacing();
        const double rounded = std::round(steps);
        if (std::abs(steps - rounded) < 1e-12) {
            const long long r = static_cast<long long>(rounded);
            const long long nn = static_cast<long long>(n);
            for (std::size_t j = 0; j < n; ++j) {
                long long idx = (static_cast<long long>(j) + r) % nn;
                if (idx < 0) idx += nn;
                out[j] = samples_[static_cast<std::size_t>(idx)];
            }
            return;
        }
        std::vector<cd> phased(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double xi = dual_.point(k);
            phased[k] = spectrum_[k] * (k == 0 ? cd(std::cos(s * xi), 0.0) : std::polar(1.0, s * xi));
        }
        fourier_samples(phased, out, scratch, dual_, Direction::inverse);
    }

    std::vector<cd> shifted(double s) const {
        std::vector<cd> out(samples_.size()), scratch(samples_.size());
        shifted(s, out, scratch);
        return out;
    }

private:
    Grid grid_;
    Grid dual_;
    int oversample_;
    std::vector<cd> samples_;
    std::vector<cd> spectrum_;
};

}  // namespace bjq
