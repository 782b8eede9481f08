#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "bjq/error.hpp"
#include "bjq/grid.hpp"
#include "bjq/signal.hpp"

namespace bjq {

/// sin(t)/t, equal to 1 at t = 0; Taylor series below |t| = 1e-4.
inline double sinc(double t) {
    if (std::abs(t) < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(t) / t;
}

/// L2-normalized Hermite function h_n at x, by the normalized three-term recurrence.
inline double hermite_function(int n, double x) {
    const double h0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::numbers::sqrt2 * x * h0;
    for (int k = 1; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Continuum mass 2 * int_R^inf h_n(x)^2 dx (composite Simpson on [R, R + 40]).
inline double hermite_tail_mass(int n, double r) {
    const int steps = 8000;
    const double h = 40.0 / steps;
    double s = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double v = hermite_function(n, r + i * h);
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * v * v;
    }
    return 2.0 * s * h / 3.0;
}

/// n-th Hermite function sampled on `grid`. Rejects orders whose mass outside
/// the grid, or outside the grid's frequency band, exceeds 1e-10.
inline Signal hermite(int n, const Grid& grid) {
    require(n >= 0, "Hermite order must be nonnegative");
    require(n <= 20, "Hermite order above 20 not supported");
    const double band = std::numbers::pi / grid.spacing();
    const double reach = std::min(grid.half_width(), band);
    require(hermite_tail_mass(n, reach) <= 1e-10, "Hermite order too large for grid resolution");
    return Signal::sample(grid, [n](double x) { return hermite_function(n, x); });
}

/// exp(-(x - center)^2 / (2 sigma^2)) * exp(i omega x).
inline Signal gaussian(const Grid& grid, double sigma, double center = 0.0, double omega = 0.0) {
    require(sigma > 0.0, "Gaussian width must be positive");
    return Signal::sample(grid, [=](double x) {
        const double u = (x - center) / sigma;
        return std::exp(-0.5 * u * u) * std::polar(1.0, omega * x);
    });
}

/// Separable smooth cutoff chi(x, xi) = c_x(x) c_xi(xi) with
/// c(u) = exp(-(u/sigma)^(2p) / 2) for p = 1 (Gaussian) and exp(-(u/sigma)^(2p)) for p > 1.
struct Cutoff {
    double sigma_x;
    double sigma_xi;
    int order = 1;

    /// Gaussian with sigma = quarter of each axis' half-width.
    static Cutoff default_for(const PhaseGrid& g) {
        return {0.25 * g.x_grid.half_width(), 0.25 * g.xi_grid.half_width(), 1};
    }
    /// Flat-top profile exp(-(u/sigma)^{2 order}), sigma = `fraction` of each half-width.
    static Cutoff flat_top(const PhaseGrid& g, double fraction = 0.6, int order = 8) {
        return {fraction * g.x_grid.half_width(), fraction * g.xi_grid.half_width(), order};
    }

    double profile(double u, double sigma) const {
        const double r = std::pow(u / sigma, 2.0 * order);
        return std::exp(order == 1 ? -0.5 * r : -r);
    }
    double operator()(double x, double xi) const { return profile(x, sigma_x) * profile(xi, sigma_xi); }

    void validate() const {
        require(sigma_x > 0.0 && sigma_xi > 0.0, "cutoff widths must be positive");
        require(order >= 1 && order <= 16, "cutoff order must be in [1, 16]");
    }
};

/// x^m xi^l times the cutoff, sampled on `g`.
inline PhaseSpaceArray monomial_symbol(int m, int l, const PhaseGrid& g, const Cutoff& cut) {
    cut.validate();
    return PhaseSpaceArray::sample(g, [&](double x, double xi) { return std::pow(x, m) * std::pow(xi, l) * cut(x, xi); });
}

}  // namespace bjq
