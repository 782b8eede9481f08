#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bjq/error.hpp"
#include "bjq/fourier.hpp"
#include "bjq/parallel.hpp"
#include "bjq/signal.hpp"

namespace bjq {

/// Default lattice step: redundancy 4 on the phase plane, (2 pi / eps^2)^2 = 4.
inline const double default_gabor_eps = std::sqrt(std::numbers::pi);

namespace detail {

/// One axis of a separable Gabor system on the discrete torus: translations
/// by `step` samples, modulations by `mod_step` bins of the axis' dual grid.
struct GaborAxis {
    Grid grid;
    std::size_t step = 0, mod_step = 0;
    std::size_t shifts = 0, mods = 0;  // lattice sizes; labels run over [-n/2, n - n/2)
    std::vector<cd> window, dual, tight;
    double lower = 0.0, upper = 0.0;   // extreme eigenvalues of the frame matrix

    /// Dual-grid bin of modulation label index m (label m - mods/2).
    std::size_t bin(std::size_t m) const noexcept {
        const long long len = static_cast<long long>(grid.size());
        const long long b = len / 2 + (static_cast<long long>(m) - static_cast<long long>(mods / 2)) * static_cast<long long>(mod_step);
        return static_cast<std::size_t>((b % len + len) % len);
    }

    cd shifted(const std::vector<cd>& w, std::size_t n, std::size_t shift_label) const {
        // w(x_n - j eps) with j = label - shifts/2, circular
        const long long len = static_cast<long long>(grid.size());
        const long long j = static_cast<long long>(shift_label) - static_cast<long long>(shifts / 2);
        const long long idx = ((static_cast<long long>(n) - j * static_cast<long long>(step)) % len + len) % len;
        return w[static_cast<std::size_t>(idx)];
    }
};

inline std::size_t lattice_ratio(double eps, double spacing, const char* axis) {
    const double r = eps / spacing;
    const double rounded = std::round(r);
    require(rounded >= 1.0 && std::abs(r - rounded) <= 1e-9 * r,
            std::string("Gabor lattice step is not an integer multiple of the ") + axis + " spacing");
    return static_cast<std::size_t>(rounded);
}

inline GaborAxis make_axis(const Grid& g, double eps, std::vector<cd> window, const char* name) {
    GaborAxis ax;
    ax.grid = g;
    const std::size_t n = g.size();
    ax.step = lattice_ratio(eps, g.spacing(), name);
    ax.mod_step = lattice_ratio(eps, g.dual().spacing(), name);
    require(n % ax.step == 0 && n % ax.mod_step == 0, "Gabor lattice does not tile the grid");
    ax.shifts = n / ax.step;
    ax.mods = n / ax.mod_step;
    require(ax.shifts >= 4 && ax.mods >= 4, "Gabor lattice needs at least 4 points per axis");
    ax.window = std::move(window);

    // S(p, q) = (2 pi)^{-1/2} dx M [p = q mod M] sum_j phi(p - j a) conj(phi(q - j a))
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(nn, nn);
    const double scale = inv_sqrt_2pi * g.spacing() * static_cast<double>(ax.mods);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p % ax.mods; q < n; q += ax.mods) {
            cd acc = 0.0;
            for (std::size_t j = 0; j < ax.shifts; ++j) acc += ax.shifted(ax.window, p, j) * std::conj(ax.shifted(ax.window, q, j));
            s(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = scale * acc;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
    if (es.info() != Eigen::Success) throw NumericError("Gabor frame operator eigensolver failed");
    const Eigen::VectorXd lam = es.eigenvalues();
    ax.lower = lam.minCoeff();
    ax.upper = lam.maxCoeff();
    require(ax.lower > 0.0 && ax.upper / ax.lower < 1e6, "Gabor frame operator is singular or ill-conditioned (condition >= 1e6)");

    Eigen::Map<const Eigen::VectorXcd> phi(ax.window.data(), nn);
    const Eigen::MatrixXcd& u = es.eigenvectors();
    const Eigen::VectorXcd coords = u.adjoint() * phi;
    const Eigen::VectorXcd d = u * (coords.array() / lam.array().cast<cd>()).matrix();
    const Eigen::VectorXcd t = u * (coords.array() / lam.array().sqrt().cast<cd>()).matrix();
    ax.dual.assign(d.data(), d.data() + n);
    ax.tight.assign(t.data(), t.data() + n);
    return ax;
}

}  // namespace detail

/// Gabor coefficients c(j, k), j = (jx, jxi) translations, k = (kx, kxi)
/// modulations, labels centered at 0. The atom for (j, k) is
/// Psi(X - eps j) exp(i <X, eps rho(k)>), rho(kx, kxi) = (kxi, kx).
class GaborCoefficients {
public:
    GaborCoefficients(std::size_t jx, std::size_t jxi, std::size_t kx, std::size_t kxi, double eps)
        : dims_{jx, jxi, kx, kxi}, eps_(eps), values_(jx * jxi * kx * kxi) {}

    const std::array<std::size_t, 4>& dims() const noexcept { return dims_; }
    double eps() const noexcept { return eps_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::vector<cd>& values() noexcept { return values_; }
    const std::vector<cd>& values() const noexcept { return values_; }

    std::size_t index(std::size_t jx, std::size_t jxi, std::size_t kx, std::size_t kxi) const noexcept {
        return ((jx * dims_[1] + jxi) * dims_[2] + kx) * dims_[3] + kxi;
    }
    cd& operator()(std::size_t jx, std::size_t jxi, std::size_t kx, std::size_t kxi) { return values_[index(jx, jxi, kx, kxi)]; }
    cd operator()(std::size_t jx, std::size_t jxi, std::size_t kx, std::size_t kxi) const { return values_[index(jx, jxi, kx, kxi)]; }

    /// Integer lattice label of a storage index along axis `d`.
    long long label(int d, std::size_t i) const noexcept {
        return static_cast<long long>(i) - static_cast<long long>(dims_[static_cast<std::size_t>(d)] / 2);
    }

    static GaborCoefficients zeros_like(const GaborCoefficients& c) {
        return GaborCoefficients(c.dims_[0], c.dims_[1], c.dims_[2], c.dims_[3], c.eps_);
    }

private:
    std::array<std::size_t, 4> dims_;
    double eps_;
    std::vector<cd> values_;
};

struct FrameBounds {
    double lower, upper;
};

/// Separable Gaussian Gabor system on a symbol grid. With `tight`, the
/// analysis window is replaced by S^{-1/2} Psi0, which is its own dual.
class GaborSystem {
public:
    GaborSystem(const PhaseGrid& base, double eps = default_gabor_eps, double width_x = 1.0, double width_xi = 1.0,
                bool tight = false)
        : base_(base), eps_(eps), tight_(tight) {
        require(eps > 0.0 && std::isfinite(eps), "Gabor lattice step must be positive");
        require(width_x > 0.0 && width_xi > 0.0, "Gabor window widths must be positive");
        require(base.xi_grid.matches(base.x_grid.dual(), 1e-10), "Gabor base grid must be a symbol grid (xi axis dual to x)");
        auto gauss = [](const Grid& g, double w) {
            std::vector<cd> v(g.size());
            const double c = 1.0 / std::sqrt(w * std::sqrt(std::numbers::pi));
            for (std::size_t j = 0; j < g.size(); ++j) v[j] = c * std::exp(-0.5 * std::pow(g.point(j) / w, 2));
            return v;
        };
        x_ = detail::make_axis(base.x_grid, eps, gauss(base.x_grid, width_x), "x");
        xi_ = detail::make_axis(base.xi_grid, eps, gauss(base.xi_grid, width_xi), "xi");
    }

    const PhaseGrid& base() const noexcept { return base_; }
    double eps() const noexcept { return eps_; }
    bool tight() const noexcept { return tight_; }

    PhaseSpaceArray window() const { return outer(tight_ ? x_.tight : x_.window, tight_ ? xi_.tight : xi_.window); }
    PhaseSpaceArray dual_window() const { return outer(tight_ ? x_.tight : x_.dual, tight_ ? xi_.tight : xi_.dual); }

    /// A, B with A ||a||^2 <= sum |c|^2 <= B ||a||^2 for the analysis window.
    FrameBounds frame_bounds() const {
        if (tight_) return {1.0 / (2 * std::numbers::pi), 1.0 / (2 * std::numbers::pi)};
        return {inv_sqrt_2pi * x_.lower * inv_sqrt_2pi * xi_.lower, inv_sqrt_2pi * x_.upper * inv_sqrt_2pi * xi_.upper};
    }

    const detail::GaborAxis& x_axis() const noexcept { return x_; }
    const detail::GaborAxis& xi_axis() const noexcept { return xi_; }
    const std::vector<cd>& analysis_x() const noexcept { return tight_ ? x_.tight : x_.window; }
    const std::vector<cd>& analysis_xi() const noexcept { return tight_ ? xi_.tight : xi_.window; }
    const std::vector<cd>& synthesis_x() const noexcept { return tight_ ? x_.tight : x_.dual; }
    const std::vector<cd>& synthesis_xi() const noexcept { return tight_ ? xi_.tight : xi_.dual; }

    GaborCoefficients empty_coefficients() const { return GaborCoefficients(x_.shifts, xi_.shifts, xi_.mods, x_.mods, eps_); }

private:
    PhaseSpaceArray outer(const std::vector<cd>& wx, const std::vector<cd>& wxi) const {
        ComplexMatrix m(static_cast<Eigen::Index>(wx.size()), static_cast<Eigen::Index>(wxi.size()));
        for (std::size_t j = 0; j < wx.size(); ++j)
            for (std::size_t k = 0; k < wxi.size(); ++k) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = wx[j] * wxi[k];
        return PhaseSpaceArray(base_, std::move(m));
    }

    PhaseGrid base_;
    double eps_;
    bool tight_;
    detail::GaborAxis x_, xi_;
};

/// c(j, k) = (2 pi)^{-1} dx dxi sum_X a(X) conj(Psi0(X - eps j)) exp(-i <X, eps rho(k)>).
/// The x modulation index is kxi and the xi modulation index is kx.
inline GaborCoefficients gabor_analyze(const PhaseSpaceArray& a, const GaborSystem& sys) {
    require(a.grid().matches(sys.base()), "gabor_analyze: symbol is not on the system's base grid");
    const auto& ax = sys.x_axis();
    const auto& axi = sys.xi_axis();
    const std::size_t nx = ax.grid.size(), nxi = axi.grid.size();
    const auto& wx = sys.analysis_x();
    const auto& wxi = sys.analysis_xi();

    // stage 1, along x: B[(jx, kxi)][q]
    std::vector<cd> b(ax.shifts * ax.mods * nxi);
    parallel_for(nxi, [&](std::size_t q) {
        std::vector<cd> prod(nx), spec(nx), scratch(nx);
        for (std::size_t jx = 0; jx < ax.shifts; ++jx) {
            for (std::size_t n = 0; n < nx; ++n)
                prod[n] = a(n, q) * std::conj(ax.shifted(wx, n, jx));
            fourier_samples(prod, spec, scratch, ax.grid, Direction::forward);
            for (std::size_t m = 0; m < ax.mods; ++m) b[(jx * ax.mods + m) * nxi + q] = spec[ax.bin(m)];
        }
    });

    // stage 2, along xi
    GaborCoefficients c = sys.empty_coefficients();
    parallel_for(ax.shifts * ax.mods, [&](std::size_t row) {
        const std::size_t jx = row / ax.mods, kxi = row % ax.mods;
        std::vector<cd> prod(nxi), spec(nxi), scratch(nxi);
        for (std::size_t jxi = 0; jxi < axi.shifts; ++jxi) {
            for (std::size_t q = 0; q < nxi; ++q) prod[q] = b[row * nxi + q] * std::conj(axi.shifted(wxi, q, jxi));
            fourier_samples(prod, spec, scratch, axi.grid, Direction::forward);
            for (std::size_t m = 0; m < axi.mods; ++m) c(jx, jxi, m, kxi) = spec[axi.bin(m)];
        }
    });
    return c;
}

/// a(X) = sum_{j,k} c(j,k) Psi(X - eps j) exp(i <X, eps rho(k)>), Psi the dual window.
inline PhaseSpaceArray gabor_synthesize(const GaborCoefficients& c, const GaborSystem& sys) {
    const auto& ax = sys.x_axis();
    const auto& axi = sys.xi_axis();
    require(c.dims() == sys.empty_coefficients().dims() && std::abs(c.eps() - sys.eps()) <= 1e-12 * sys.eps(),
            "gabor_synthesize: coefficients do not belong to this lattice");
    const std::size_t nx = ax.grid.size(), nxi = axi.grid.size();
    const auto& gx = sys.synthesis_x();
    const auto& gxi = sys.synthesis_xi();

    // stage 1, along xi: D[(jx, kxi)][q] = sum_{jxi} gxi(xi_q - eps jxi) sum_{kx} c e^{i xi_q eps kx}
    std::vector<cd> d(ax.shifts * ax.mods * nxi);
    parallel_for(ax.shifts * ax.mods, [&](std::size_t row) {
        const std::size_t jx = row / ax.mods, kxi = row % ax.mods;
        std::vector<cd> spec(nxi), vals(nxi), scratch(nxi);
        for (std::size_t jxi = 0; jxi < axi.shifts; ++jxi) {
            std::fill(spec.begin(), spec.end(), cd(0.0));
            for (std::size_t m = 0; m < axi.mods; ++m) spec[axi.bin(m)] = c(jx, jxi, m, kxi);
            centered_dft(spec, vals, scratch, Direction::inverse);
            for (std::size_t q = 0; q < nxi; ++q) d[row * nxi + q] += vals[q] * axi.shifted(gxi, q, jxi);
        }
    });

    // stage 2, along x
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nxi));
    parallel_for(nxi, [&](std::size_t q) {
        std::vector<cd> spec(nx), vals(nx), scratch(nx);
        for (std::size_t jx = 0; jx < ax.shifts; ++jx) {
            std::fill(spec.begin(), spec.end(), cd(0.0));
            for (std::size_t m = 0; m < ax.mods; ++m) spec[ax.bin(m)] = d[(jx * ax.mods + m) * nxi + q];
            centered_dft(spec, vals, scratch, Direction::inverse);
            for (std::size_t n = 0; n < nx; ++n)
                out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(q)) += vals[n] * ax.shifted(gx, n, jx);
        }
    });
    return PhaseSpaceArray(sys.base(), std::move(out));
}

/// Polynomial weight omega0(eta, y) = (1 + eta^2 + y^2)^{s/2}.
struct WeightSpec {
    double s = 0.0;
    double operator()(double eta, double y) const { return std::pow(1.0 + eta * eta + y * y, 0.5 * s); }
};

/// ( sum_k ( sum_j |c(j,k) omega0(eps rho(k))|^p )^{q/p} )^{1/q}; p or q infinite gives a sup.
inline double mixed_norm(const GaborCoefficients& c, double p, double q, const WeightSpec& w = {}) {
    require(p >= 1.0, "mixed norm needs p >= 1");
    require(q > 0.0, "mixed norm needs q > 0");
    const auto& dm = c.dims();
    const std::size_t nj = dm[0] * dm[1];
    std::vector<double> inner;
    inner.reserve(dm[2] * dm[3]);
    for (std::size_t kx = 0; kx < dm[2]; ++kx)
        for (std::size_t kxi = 0; kxi < dm[3]; ++kxi) {
            const double weight = w(c.eps() * static_cast<double>(c.label(3, kxi)), c.eps() * static_cast<double>(c.label(2, kx)));
            std::vector<double> mags(nj);
            double top = 0.0;
            for (std::size_t jx = 0; jx < dm[0]; ++jx)
                for (std::size_t jxi = 0; jxi < dm[1]; ++jxi) {
                    const double m = std::abs(c(jx, jxi, kx, kxi)) * weight;
                    mags[jx * dm[1] + jxi] = m;
                    top = std::max(top, m);
                }
            if (std::isinf(p) || top == 0.0) {
                inner.push_back(top);
                continue;
            }
            double acc = 0.0;
            for (double m : mags) acc += std::pow(m / top, p);
            inner.push_back(top * std::pow(acc, 1.0 / p));
        }
    double top = 0.0;
    for (double v : inner) top = std::max(top, v);
    if (std::isinf(q) || top == 0.0) return top;
    double acc = 0.0;
    for (double v : inner) acc += std::pow(v / top, q);
    return top * std::pow(acc, 1.0 / q);
}

inline double modulation_norm(const PhaseSpaceArray& a, double p, double q, const WeightSpec& w, const GaborSystem& sys) {
    return mixed_norm(gabor_analyze(a, sys), p, q, w);
}

}  // namespace bjq
