#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "bjq/error.hpp"

namespace bjq {

/// Uniform grid centered at 0: x_j = (j - N/2) * spacing, N even.
class Grid {
public:
    Grid() = default;

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }
    double origin() const noexcept { return -static_cast<double>(n_ / 2) * spacing_; }
    double point(std::size_t j) const noexcept {
        return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * spacing_;
    }
    /// Largest |x| covered by the periodic cell, N*dx/2.
    double half_width() const noexcept { return static_cast<double>(n_ / 2) * spacing_; }
    double length() const noexcept { return static_cast<double>(n_) * spacing_; }

    /// Fourier-dual grid: spacing 2 pi / (N dx), also centered.
    Grid dual() const { return Grid(n_, 2.0 * std::numbers::pi / length()); }

    bool matches(const Grid& other, double rel_tol = 1e-12) const noexcept {
        return n_ == other.n_ && std::abs(spacing_ - other.spacing_) <= rel_tol * spacing_;
    }

    friend Grid make_centered_grid(std::size_t n_points, double spacing);

private:
    Grid(std::size_t n, double spacing) : n_(n), spacing_(spacing) {}

    std::size_t n_ = 0;
    double spacing_ = 0.0;
};

inline Grid make_centered_grid(std::size_t n_points, double spacing) {
    require(n_points >= 8, "grid needs at least 8 points");
    require(n_points % 2 == 0, "grid size must be even");
    require(std::isfinite(spacing) && spacing > 0.0, "grid spacing must be positive and finite");
    return Grid(n_points, spacing);
}

/// Grid whose dual has the same spacing: dx = dxi = sqrt(2 pi / N).
inline Grid make_balanced_grid(std::size_t n_points) {
    return make_centered_grid(n_points, std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n_points)));
}

/// Phase plane: rows follow x_grid, columns follow xi_grid.
struct PhaseGrid {
    Grid x_grid;
    Grid xi_grid;

    /// Phase plane of a signal on `g`: position axis g, frequency axis its dual.
    static PhaseGrid of_signal_grid(const Grid& g) { return {g, g.dual()}; }

    /// Variables (eta, y) dual to (x, xi).
    PhaseGrid dual() const { return {x_grid.dual(), xi_grid.dual()}; }

    bool matches(const PhaseGrid& o) const noexcept { return x_grid.matches(o.x_grid) && xi_grid.matches(o.xi_grid); }
};

}  // namespace bjq
