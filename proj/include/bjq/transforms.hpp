#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "bjq/fourier.hpp"
#include "bjq/parallel.hpp"
#include "bjq/quadrature.hpp"
#include "bjq/signal.hpp"
#include "bjq/special.hpp"

namespace bjq {

/// V_phi f(x_j, xi_k): forward transform in the running variable of
/// f(.) conj(phi(. - x_j)), with the window shifted circularly.
inline PhaseSpaceArray stft(const Signal& f, const Signal& window) {
    require(f.grid().matches(window.grid()), "stft: signal and window on different grids");
    bool nonzero = false;
    for (const auto& v : window.values()) nonzero = nonzero || v != cd(0.0);
    require(nonzero, "stft: window is identically zero");

    const std::size_t n = f.size();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(f.grid());
    ComplexMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t j) {
        std::vector<cd> prod(n), res(n), scratch(n);
        // x_m - x_j = x_{m - j + N/2}
        for (std::size_t m = 0; m < n; ++m) prod[m] = f[m] * std::conj(window[(m + n + n / 2 - j) % n]);
        fourier_samples(prod, res, scratch, f.grid(), Direction::forward);
        for (std::size_t k = 0; k < n; ++k) out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = res[k];
    });
    return PhaseSpaceArray(pg, std::move(out));
}

/// tau-Wigner distribution
///   W(x_j, xi_k) = (2 pi)^{-1/2} dy sum_m f(x_j + tau y_m) conj(g(x_j - (1 - tau) y_m)) e^{-i y_m xi_k},
/// with y running over the signal grid and off-grid values taken from the
/// periodic trigonometric interpolant. The y = -L/2 sample is the average of
/// the +-L/2 evaluations, so y -> -y is an exact symmetry of the sum.
inline PhaseSpaceArray wigner_tau(const Signal& f, const Signal& g, double tau, int oversample = 8) {
    require(f.grid().matches(g.grid()), "wigner: signals on different grids");
    require(std::isfinite(tau), "wigner: tau must be finite");
    const Grid& grid = f.grid();
    const std::size_t n = grid.size();
    const TrigInterpolant fi(f.values(), grid, oversample);
    const TrigInterpolant gi(g.values(), grid, oversample);

    // K(j, m) = f(x_j + tau y_m) conj(g(x_j - (1 - tau) y_m)), filled column by column
    ComplexMatrix kernel(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t m) {
        std::vector<cd> fs(n), gs(n), scratch(n);
        const double y = grid.point(m);
        fi.shifted(tau * y, fs, scratch);
        gi.shifted(-(1.0 - tau) * y, gs, scratch);
        for (std::size_t j = 0; j < n; ++j)
            kernel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) = fs[j] * std::conj(gs[j]);
        if (m == 0) {
            // y = -L/2 has no mirror partner on the grid; average it with y = +L/2
            fi.shifted(-tau * y, fs, scratch);
            gi.shifted((1.0 - tau) * y, gs, scratch);
            for (std::size_t j = 0; j < n; ++j) {
                auto& v = kernel(static_cast<Eigen::Index>(j), 0);
                v = 0.5 * (v + fs[j] * std::conj(gs[j]));
            }
        }
    });
    PhaseSpaceArray k(PhaseGrid{grid, grid}, std::move(kernel));
    return fourier_axis(k, Axis::xi, Direction::forward);
}

/// Born-Jordan distribution as the quadrature average of tau-Wigner distributions.
/// Node contributions are accumulated in rule order.
inline PhaseSpaceArray wigner_bj(const Signal& f, const Signal& g, const QuadratureRule& quad, int oversample = 8) {
    PhaseSpaceArray acc = quad.weights()[0] * wigner_tau(f, g, quad.nodes()[0], oversample);
    for (std::size_t i = 1; i < quad.size(); ++i)
        acc = acc + quad.weights()[i] * wigner_tau(f, g, quad.nodes()[i], oversample);
    return acc;
}

/// Fourier-domain sinc kernel: values(j, k) = sinc(eta_j y_k / 2) on the
/// (eta, y) grid dual to a symbol's (x, xi) grid.
struct BJMultiplier {
    PhaseGrid grid;
    RealMatrix values;
};

inline BJMultiplier bj_multiplier(const PhaseGrid& dual_grid) {
    const auto ne = static_cast<Eigen::Index>(dual_grid.x_grid.size());
    const auto ny = static_cast<Eigen::Index>(dual_grid.xi_grid.size());
    RealMatrix v(ne, ny);
    for (Eigen::Index j = 0; j < ne; ++j)
        for (Eigen::Index k = 0; k < ny; ++k)
            v(j, k) = sinc(0.5 * dual_grid.x_grid.point(static_cast<std::size_t>(j)) *
                           dual_grid.xi_grid.point(static_cast<std::size_t>(k)));
    return {dual_grid, std::move(v)};
}

/// b = F^{-1}[ m(eta, y) F a ] with the 2-D transform over both axes.
/// `m` is evaluated on the dual (eta, y) grid.
inline PhaseSpaceArray apply_fourier_multiplier(const PhaseSpaceArray& a, const std::function<cd(double, double)>& m) {
    PhaseSpaceArray spec = fourier_2d(a, Direction::forward);
    ComplexMatrix v = spec.values();
    const PhaseGrid& dg = spec.grid();
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
        const double eta = dg.x_grid.point(static_cast<std::size_t>(j));
        for (Eigen::Index k = 0; k < v.cols(); ++k) v(j, k) *= m(eta, dg.xi_grid.point(static_cast<std::size_t>(k)));
    }
    return fourier_2d(PhaseSpaceArray(dg, std::move(v)), Direction::inverse);
}

/// b = Phi * a, realized spectrally with the sinc multiplier.
inline PhaseSpaceArray apply_bj_multiplier(const PhaseSpaceArray& a) {
    PhaseSpaceArray spec = fourier_2d(a, Direction::forward);
    const BJMultiplier mult = bj_multiplier(spec.grid());
    ComplexMatrix v = spec.values().array() * mult.values.array().cast<cd>();
    return fourier_2d(PhaseSpaceArray(spec.grid(), std::move(v)), Direction::inverse);
}

struct Marginals {
    Signal position;   ///< sum_k W(., k) dxi, on the x grid
    Signal frequency;  ///< sum_j W(j, .) dx, on the xi grid
};

inline Marginals marginals(const PhaseSpaceArray& w) {
    const PhaseGrid& g = w.grid();
    std::vector<cd> px(w.rows()), pf(w.cols());
    for (std::size_t j = 0; j < w.rows(); ++j) {
        cd s = 0.0;
        for (std::size_t k = 0; k < w.cols(); ++k) s += w(j, k);
        px[j] = s * g.xi_grid.spacing();
    }
    for (std::size_t k = 0; k < w.cols(); ++k) {
        cd s = 0.0;
        for (std::size_t j = 0; j < w.rows(); ++j) s += w(j, k);
        pf[k] = s * g.x_grid.spacing();
    }
    return {Signal(g.x_grid, std::move(px)), Signal(g.xi_grid, std::move(pf))};
}

}  // namespace bjq
