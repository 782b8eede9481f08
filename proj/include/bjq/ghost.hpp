#pragma once

#include <cmath>

#include "bjq/quadrature.hpp"
#include "bjq/transforms.hpp"

namespace bjq {

struct GhostReport {
    double omega1, omega2, sigma;
    PhaseSpaceArray spectrogram;  ///< |V_phi f|^2, phi the L2-normalized Gaussian of width sigma
    PhaseSpaceArray wigner;
    PhaseSpaceArray born_jordan;
    double rho_spectrogram;
    double rho_wigner;
    double rho_bj;
    double ratio;  ///< rho_bj / rho_wigner
};

namespace detail {

// max |a| over the square of half-width r around (x, xi)
inline double window_peak(const PhaseSpaceArray& a, double x, double xi, double r) {
    const PhaseGrid& g = a.grid();
    double m = 0.0;
    for (std::size_t j = 0; j < g.x_grid.size(); ++j) {
        if (std::abs(g.x_grid.point(j) - x) > r) continue;
        for (std::size_t k = 0; k < g.xi_grid.size(); ++k)
            if (std::abs(g.xi_grid.point(k) - xi) <= r) m = std::max(m, std::abs(a(j, k)));
    }
    return m;
}

}  // namespace detail

/// Two-tone cross-term experiment: f = exp(-x^2/(2 sigma^2)) (e^{i w1 x} + e^{i w2 x}) on a balanced
/// grid of n points. rho compares the peak near the midpoint frequency with the peak near w1,
/// both over squares of half-width 3/sigma centred at x = 0.
inline GhostReport ghost_demo(double omega1, double omega2, double sigma, std::size_t n, std::size_t nodes = 33) {
    require(std::isfinite(omega1) && std::isfinite(omega2), "ghost demo: frequencies must be finite");
    require(std::isfinite(sigma) && sigma > 0.0, "ghost demo: sigma must be positive");
    require(std::abs(omega2 - omega1) * sigma >= 4.0, "ghost demo: tones are not resolvable, need |w2 - w1| sigma >= 4");
    const Grid g = make_balanced_grid(n);
    const double r = 3.0 / sigma;
    const double reach = std::max(std::abs(omega1), std::abs(omega2)) + r;
    require(reach < g.dual().half_width(), "ghost demo: frequencies exceed the grid's frequency range");
    require(4.0 * sigma < g.half_width(), "ghost demo: envelope does not fit on the grid");

    const Signal f = gaussian(g, sigma, 0.0, omega1) + gaussian(g, sigma, 0.0, omega2);
    Signal phi = gaussian(g, sigma);
    phi = cd(1.0 / phi.norm()) * phi;

    GhostReport rep{omega1, omega2, sigma, {}, {}, {}, 0, 0, 0, 0};
    const PhaseSpaceArray v = stft(f, phi);
    rep.spectrogram = PhaseSpaceArray(v.grid(), v.values().cwiseAbs2().cast<cd>());
    rep.wigner = wigner_tau(f, f, 0.5);
    rep.born_jordan = wigner_bj(f, f, gauss_legendre(nodes));

    const double mid = 0.5 * (omega1 + omega2);
    auto rho = [&](const PhaseSpaceArray& a) {
        const double auto_peak = detail::window_peak(a, 0.0, omega1, r);
        if (!(auto_peak > 0.0)) throw NumericError("ghost demo: vanishing auto term");
        return detail::window_peak(a, 0.0, mid, r) / auto_peak;
    };
    rep.rho_spectrogram = rho(rep.spectrogram);
    rep.rho_wigner = rho(rep.wigner);
    rep.rho_bj = rho(rep.born_jordan);
    rep.ratio = rep.rho_bj / rep.rho_wigner;
    return rep;
}

}  // namespace bjq
