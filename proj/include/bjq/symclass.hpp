#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "bjq/error.hpp"
#include "bjq/fourier.hpp"
#include "bjq/parallel.hpp"
#include "bjq/quantize.hpp"
#include "bjq/signal.hpp"

namespace bjq {

inline double japanese(double u) { return std::sqrt(1.0 + u * u); }
inline double japanese(double x, double xi) { return std::sqrt(1.0 + x * x + xi * xi); }

using PhaseFunction = std::function<double(double, double)>;

/// Diagonal metric g_X(y, eta) = y^2 / phi(X)^2 + eta^2 / psi(X)^2. Split by
/// construction: there is no off-diagonal term to carry.
struct Metric {
    PhaseFunction phi, psi;
    bool strongly_feasible = false;  ///< claimed by the preset; h_g <= 1 is then required
};

struct Euclidean {};
struct ShubinMetric {
    double rho;
};
struct HormanderMetric {
    double rho, delta;
};
struct SGMetric {};
using MetricPreset = std::variant<Euclidean, ShubinMetric, HormanderMetric, SGMetric>;

inline Metric make_metric(const MetricPreset& preset) {
    if (std::holds_alternative<Euclidean>(preset))
        return {[](double, double) { return 1.0; }, [](double, double) { return 1.0; }, true};
    if (const auto* s = std::get_if<ShubinMetric>(&preset)) {
        require(s->rho > 0.0 && s->rho <= 1.0, "Shubin metric needs rho in (0, 1]");
        const double r = s->rho;
        auto f = [r](double x, double xi) { return std::pow(japanese(x, xi), r); };
        return {f, f, true};
    }
    if (const auto* h = std::get_if<HormanderMetric>(&preset)) {
        require(0.0 <= h->delta && h->delta <= h->rho && h->rho <= 1.0, "Hormander metric needs 0 <= delta <= rho <= 1");
        const double r = h->rho, d = h->delta;
        return {[d](double, double xi) { return std::pow(japanese(xi), -d); }, [r](double, double xi) { return std::pow(japanese(xi), r); },
                true};
    }
    return {[](double x, double) { return japanese(x); }, [](double, double xi) { return japanese(xi); }, true};
}

/// h_g(X) = 1 / (phi(X) psi(X)) for diagonal metrics.
inline double planck(const Metric& g, double x, double xi) { return 1.0 / (g.phi(x, xi) * g.psi(x, xi)); }

inline constexpr int max_seminorm_order = 6;
inline constexpr std::size_t default_directions = 64;

namespace detail {

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// d_x^i d_xi^j a, spectrally; the Nyquist bin is dropped along an axis differentiated an odd number of times.
inline ComplexMatrix spectral_derivative(const PhaseSpaceArray& spec, int i, int j) {
    const PhaseGrid& dg = spec.grid();
    ComplexMatrix v = spec.values();
    const cd I(0.0, 1.0);
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const double eta = dg.x_grid.point(static_cast<std::size_t>(r));
        const cd fx = (r == 0 && i % 2 == 1) ? cd(0.0) : std::pow(I * eta, i);
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            const double y = dg.xi_grid.point(static_cast<std::size_t>(c));
            const cd fy = (c == 0 && j % 2 == 1) ? cd(0.0) : std::pow(I * y, j);
            v(r, c) *= fx * fy;
        }
    }
    return fourier_2d(PhaseSpaceArray(dg, std::move(v)), Direction::inverse).values();
}

inline double interior_max(const RealMatrix& field, const PhaseGrid& g, double fraction = 0.5) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < field.rows(); ++j)
        for (Eigen::Index k = 0; k < field.cols(); ++k)
            if (in_interior(g, static_cast<std::size_t>(j), static_cast<std::size_t>(k), fraction)) m = std::max(m, field(j, k));
    return m;
}

}  // namespace detail

struct SeminormField {
    RealMatrix field;  ///< |a|_k^g at every grid point
    double max;        ///< maximum over the interior (innermost 50% of each axis)
};

/// |a|_k^g(X) = sup over g_X-unit Y = (phi cos t, psi sin t) of
/// |sum_i binom(k,i) y^i eta^{k-i} d_x^i d_xi^{k-i} a(X)|.
/// Directions t are uniform on [0, pi); the antipodal half adds nothing since
/// the k-th differential is homogeneous in Y.
inline SeminormField seminorm_k(const PhaseSpaceArray& a, const Metric& g, int k, std::size_t directions = default_directions) {
    require(k >= 0 && k <= max_seminorm_order, "seminorm order must be in [0, 6]");
    require(directions >= 1, "seminorm needs at least one direction");
    const PhaseGrid& pg = a.grid();
    const auto rows = a.values().rows(), cols = a.values().cols();
    RealMatrix field(rows, cols);
    if (k == 0) {
        field = a.values().cwiseAbs();
        return {field, detail::interior_max(field, pg)};
    }
    const PhaseSpaceArray spec = fourier_2d(a, Direction::forward);
    std::vector<ComplexMatrix> d(static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) d[static_cast<std::size_t>(i)] = detail::spectral_derivative(spec, i, k - i);

    std::vector<double> cs(directions), sn(directions), binom(static_cast<std::size_t>(k + 1));
    for (std::size_t m = 0; m < directions; ++m) {
        const double t = std::numbers::pi * static_cast<double>(m) / static_cast<double>(directions);
        cs[m] = std::cos(t);
        sn[m] = std::sin(t);
    }
    for (int i = 0; i <= k; ++i) binom[static_cast<std::size_t>(i)] = detail::binomial(k, i);

    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t jr) {
        const auto j = static_cast<Eigen::Index>(jr);
        const double x = pg.x_grid.point(jr);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double xi = pg.xi_grid.point(static_cast<std::size_t>(c));
            const double ph = g.phi(x, xi), ps = g.psi(x, xi);
            double best = 0.0;
            std::array<double, max_seminorm_order + 1> yp{}, ep{};
            for (std::size_t m = 0; m < directions; ++m) {
                const double y = ph * cs[m], eta = ps * sn[m];
                yp[0] = ep[0] = 1.0;
                for (int i = 1; i <= k; ++i) {
                    yp[static_cast<std::size_t>(i)] = yp[static_cast<std::size_t>(i - 1)] * y;
                    ep[static_cast<std::size_t>(i)] = ep[static_cast<std::size_t>(i - 1)] * eta;
                }
                cd s = 0.0;
                for (int i = 0; i <= k; ++i)
                    s += binom[static_cast<std::size_t>(i)] * yp[static_cast<std::size_t>(i)] * ep[static_cast<std::size_t>(k - i)] *
                         d[static_cast<std::size_t>(i)](j, c);
                best = std::max(best, std::abs(s));
            }
            field(j, c) = best;
        }
    });
    return {field, detail::interior_max(field, pg)};
}

/// ||a||_{m,N}^g = sum_{k=0}^{N} sup_X |a|_k^g(X) / m(X), suprema over the interior.
inline double class_norm(const PhaseSpaceArray& a, const Metric& g, const PhaseFunction& weight, int n,
                         std::size_t directions = default_directions) {
    require(n >= 0 && n <= max_seminorm_order, "class norm order must be in [0, 6]");
    const PhaseGrid& pg = a.grid();
    RealMatrix inv_m(a.values().rows(), a.values().cols());
    for (Eigen::Index j = 0; j < inv_m.rows(); ++j)
        for (Eigen::Index k = 0; k < inv_m.cols(); ++k) {
            const double m = weight(pg.x_grid.point(static_cast<std::size_t>(j)), pg.xi_grid.point(static_cast<std::size_t>(k)));
            require(m > 0.0 && std::isfinite(m), "class norm weight must be positive and finite");
            inv_m(j, k) = 1.0 / m;
        }
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        const SeminormField f = seminorm_k(a, g, k, directions);
        total += detail::interior_max(f.field.cwiseProduct(inv_m), pg);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Remainder order of the Born-Jordan expansion

struct RemainderReport {
    std::vector<double> lambdas;
    std::vector<double> residuals;  ///< r_lambda, interior sup norm
    double slope = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;        ///< all residuals at the round-off floor; no slope fitted
    int terms = 0;
};

/// Residual level (relative to max |a_lambda|) treated as round-off.
inline constexpr double remainder_noise_floor = 1e-12;

namespace detail {

inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline bool resolved(const PhaseSpaceArray& a) {
    const double top = a.max_abs();
    if (top == 0.0) return true;
    // outer 5% frame in position and in frequency must be negligible
    auto edge = [](std::size_t i, std::size_t n) { return i < n / 20 || i >= n - n / 20; };
    double boundary = 0.0;
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (edge(j, a.rows()) || edge(k, a.cols())) boundary = std::max(boundary, std::abs(a(j, k)));
    const PhaseSpaceArray spec = fourier_2d(a, Direction::forward);
    double spec_edge = 0.0;
    for (std::size_t j = 0; j < spec.rows(); ++j)
        for (std::size_t k = 0; k < spec.cols(); ++k)
            if (edge(j, spec.rows()) || edge(k, spec.cols())) spec_edge = std::max(spec_edge, std::abs(spec(j, k)));
    return boundary <= 1e-8 * top && spec_edge <= 1e-8 * spec.max_abs();
}

inline RemainderReport remainder_from_dilates(const std::vector<double>& lambdas, int n,
                                              const std::function<PhaseSpaceArray(double)>& dilate) {
    require(lambdas.size() >= 2, "remainder_order needs at least two lambdas");
    for (double l : lambdas) require(l >= 2.0 && std::isfinite(l), "remainder_order: lambdas must be >= 2");
    require(n >= 2 && n % 2 == 0 && n <= max_expansion_terms, "remainder_order: N must be even, 2 <= N <= 12");
    RemainderReport rep;
    rep.lambdas = lambdas;
    rep.terms = n;
    bool all_floor = true;
    std::vector<double> unresolved;
    for (double l : lambdas) {
        const PhaseSpaceArray al = dilate(l);
        if (!resolved(al)) unresolved.push_back(l);
        const double r = interior_max_diff(bj_to_weyl(al, MultiplierMethod{}), bj_to_weyl(al, ExpansionMethod{n}));
        rep.residuals.push_back(r);
        all_floor = all_floor && r <= remainder_noise_floor * al.max_abs();
    }
    // an exact expansion needs no resolution argument
    if (all_floor) {
        rep.degenerate = true;
        return rep;
    }
    require(unresolved.empty(), "remainder_order: grid too coarse or too small to resolve a_lambda at lambda = " +
                                    (unresolved.empty() ? std::string() : std::to_string(unresolved.front())));
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        lx.push_back(std::log(lambdas[i]));
        ly.push_back(std::log(rep.residuals[i]));
    }
    rep.slope = least_squares_slope(lx, ly);
    return rep;
}

/// Dense trigonometric interpolation matrix from grid samples to points x_j * scale.
inline Eigen::MatrixXcd dilation_matrix(const Grid& g, double scale) {
    const std::size_t n = g.size();
    const Grid d = g.dual();
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd eval(nn, nn), dft(nn, nn);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double p = g.point(j) * scale;
            eval(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                k == 0 ? cd(std::cos(d.point(k) * p)) : std::polar(1.0, d.point(k) * p);
            dft(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::polar(1.0, -g.point(j) * d.point(k));
        }
    return (eval * dft) / static_cast<double>(n);
}

}  // namespace detail

/// Fits the decay of r_lambda = ||b_mult(a_lambda) - b_exp,N(a_lambda)||_inf
/// against lambda, a_lambda(X) = a(X / lambda). Expected slope: -2N.
inline RemainderReport remainder_order(const PhaseFunction& a, const PhaseGrid& grid, const std::vector<double>& lambdas, int n) {
    require(grid.xi_grid.matches(grid.x_grid.dual(), 1e-10), "remainder_order: grid must be a symbol grid");
    return detail::remainder_from_dilates(lambdas, n, [&](double l) {
        return PhaseSpaceArray::sample(grid, [&](double x, double xi) { return a(x / l, xi / l); });
    });
}

/// Array form: a_lambda is obtained by trigonometric interpolation of the samples.
inline RemainderReport remainder_order(const PhaseSpaceArray& a, const std::vector<double>& lambdas, int n) {
    const PhaseGrid& grid = a.grid();
    require(grid.xi_grid.matches(grid.x_grid.dual(), 1e-10), "remainder_order: grid must be a symbol grid");
    require(grid.x_grid.size() <= 1024, "remainder_order: array form limited to N <= 1024");
    const Eigen::MatrixXcd vals = a.values();
    return detail::remainder_from_dilates(lambdas, n, [&](double l) {
        const Eigen::MatrixXcd ex = detail::dilation_matrix(grid.x_grid, 1.0 / l);
        const Eigen::MatrixXcd exi = detail::dilation_matrix(grid.xi_grid, 1.0 / l);
        ComplexMatrix out = ex * vals * exi.transpose();
        return PhaseSpaceArray(grid, std::move(out));
    });
}

}  // namespace bjq
