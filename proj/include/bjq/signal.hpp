#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bjq/error.hpp"
#include "bjq/fft.hpp"
#include "bjq/grid.hpp"

namespace bjq {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

using ComplexMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class Range>
bool all_finite(const Range& values) {
    for (const auto& v : values)
        if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    return true;
}

/// Complex samples of a function on a centered grid.
class Signal {
public:
    Signal() = default;
    Signal(Grid grid, std::vector<cd> values) : grid_(grid), values_(std::move(values)) {
        require(values_.size() == grid_.size(), "signal length does not match grid");
        if (!all_finite(values_)) throw NonFiniteError("signal contains non-finite values");
    }
    static Signal zeros(const Grid& g) { return Signal(g, std::vector<cd>(g.size())); }

    template <class Fn>
    static Signal sample(const Grid& g, Fn&& fn) {
        std::vector<cd> v(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) v[j] = cd(fn(g.point(j)));
        return Signal(g, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<cd>& values() const noexcept { return values_; }
    cd operator[](std::size_t j) const { return values_[j]; }

    /// Riemann-sum L2 norm, sqrt(dx * sum |f_j|^2).
    double norm() const {
        double s = 0.0;
        for (const auto& v : values_) s += std::norm(v);
        return std::sqrt(s * grid_.spacing());
    }

    friend Signal operator+(const Signal& a, const Signal& b) {
        require(a.grid_.matches(b.grid_), "signals live on different grids");
        std::vector<cd> v(a.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.values_[j] + b.values_[j];
        return Signal(a.grid_, std::move(v));
    }
    friend Signal operator*(cd s, const Signal& a) {
        std::vector<cd> v(a.values_);
        for (auto& x : v) x *= s;
        return Signal(a.grid_, std::move(v));
    }

private:
    Grid grid_;
    std::vector<cd> values_;
};

/// <f, g> = dx * sum f_j conj(g_j).
inline cd inner(const Signal& f, const Signal& g) {
    require(f.grid().matches(g.grid()), "inner product of signals on different grids");
    cd s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * std::conj(g[j]);
    return s * f.grid().spacing();
}

/// Complex array on a phase grid; row index follows x, column index follows xi.
class PhaseSpaceArray {
public:
    PhaseSpaceArray() = default;
    PhaseSpaceArray(PhaseGrid grid, ComplexMatrix values) : grid_(grid), values_(std::move(values)) {
        require(static_cast<std::size_t>(values_.rows()) == grid_.x_grid.size() &&
                    static_cast<std::size_t>(values_.cols()) == grid_.xi_grid.size(),
                "phase-space array shape does not match its grid");
        if (!values_.allFinite()) throw NonFiniteError("phase-space array contains non-finite values");
    }
    static PhaseSpaceArray zeros(const PhaseGrid& g) {
        return PhaseSpaceArray(g, ComplexMatrix::Zero(static_cast<Eigen::Index>(g.x_grid.size()),
                                                      static_cast<Eigen::Index>(g.xi_grid.size())));
    }

    template <class Fn>
    static PhaseSpaceArray sample(const PhaseGrid& g, Fn&& fn) {
        ComplexMatrix m(static_cast<Eigen::Index>(g.x_grid.size()), static_cast<Eigen::Index>(g.xi_grid.size()));
        for (Eigen::Index j = 0; j < m.rows(); ++j)
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                m(j, k) = cd(fn(g.x_grid.point(static_cast<std::size_t>(j)), g.xi_grid.point(static_cast<std::size_t>(k))));
        return PhaseSpaceArray(g, std::move(m));
    }

    const PhaseGrid& grid() const noexcept { return grid_; }
    const ComplexMatrix& values() const noexcept { return values_; }
    cd operator()(std::size_t j, std::size_t k) const {
        return values_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }

    double cell_area() const noexcept { return grid_.x_grid.spacing() * grid_.xi_grid.spacing(); }
    /// Riemann-sum L2 norm over the phase plane.
    double norm() const { return std::sqrt(values_.squaredNorm() * cell_area()); }
    double max_abs() const { return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff(); }

    friend PhaseSpaceArray operator+(const PhaseSpaceArray& a, const PhaseSpaceArray& b) {
        require(a.grid_.matches(b.grid_), "arrays live on different phase grids");
        return PhaseSpaceArray(a.grid_, a.values_ + b.values_);
    }
    friend PhaseSpaceArray operator-(const PhaseSpaceArray& a, const PhaseSpaceArray& b) {
        require(a.grid_.matches(b.grid_), "arrays live on different phase grids");
        return PhaseSpaceArray(a.grid_, a.values_ - b.values_);
    }
    friend PhaseSpaceArray operator*(cd s, const PhaseSpaceArray& a) { return PhaseSpaceArray(a.grid_, s * a.values_); }

private:
    PhaseGrid grid_;
    ComplexMatrix values_;
};

/// Riemann-sum inner product over the phase plane, conjugating the second slot.
inline cd inner(const PhaseSpaceArray& a, const PhaseSpaceArray& b) {
    require(a.grid().matches(b.grid()), "inner product of arrays on different phase grids");
    return (a.values().array() * b.values().array().conjugate()).sum() * a.cell_area();
}

/// Mask of the innermost `fraction` of both axes (|x| <= fraction * half-width, same for xi).
inline bool in_interior(const PhaseGrid& g, std::size_t j, std::size_t k, double fraction = 0.5) {
    return std::abs(g.x_grid.point(j)) <= fraction * g.x_grid.half_width() + 1e-12 &&
           std::abs(g.xi_grid.point(k)) <= fraction * g.xi_grid.half_width() + 1e-12;
}

/// sup |a - b| over the interior of the phase grid.
inline double interior_max_diff(const PhaseSpaceArray& a, const PhaseSpaceArray& b, double fraction = 0.5) {
    require(a.grid().matches(b.grid()), "arrays live on different phase grids");
    double m = 0.0;
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (in_interior(a.grid(), j, k, fraction)) m = std::max(m, std::abs(a(j, k) - b(j, k)));
    return m;
}

}  // namespace bjq
