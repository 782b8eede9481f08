#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bjq/fourier.hpp"
#include "bjq/parallel.hpp"
#include "bjq/quadrature.hpp"
#include "bjq/signal.hpp"
#include "bjq/transforms.hpp"

namespace bjq {

inline constexpr std::size_t max_operator_size = 512;

/// Dense operator on samples: (Op f)(x_j) ~ sum_m M(j, m) f(x_m), with dx folded into M.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(Grid grid, Eigen::MatrixXcd values) : grid_(grid), values_(std::move(values)) {
        require(static_cast<std::size_t>(values_.rows()) == grid_.size() &&
                    static_cast<std::size_t>(values_.cols()) == grid_.size(),
                "operator matrix shape does not match grid");
        if (!values_.allFinite()) throw NonFiniteError("operator matrix contains non-finite values");
    }

    const Grid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXcd& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return grid_.size(); }

    Signal apply(const Signal& f) const {
        require(f.grid().matches(grid_), "operator applied to a signal on a different grid");
        Eigen::Map<const Eigen::VectorXcd> v(f.values().data(), static_cast<Eigen::Index>(f.size()));
        Eigen::VectorXcd r = values_ * v;
        return Signal(grid_, std::vector<cd>(r.data(), r.data() + r.size()));
    }

private:
    Grid grid_;
    Eigen::MatrixXcd values_;
};

struct Shubin {
    double t;
};
struct BornJordan {
    QuadratureRule quad;
};

/// Quantization scheme. Weyl and Kohn-Nirenberg are the Shubin cases t = 1/2 and t = 0.
struct SchemeSpec {
    std::variant<Shubin, BornJordan> kind;

    static SchemeSpec shubin(double t) { return {Shubin{t}}; }
    static SchemeSpec weyl() { return {Shubin{0.5}}; }
    static SchemeSpec kohn_nirenberg() { return {Shubin{0.0}}; }
    static SchemeSpec born_jordan(QuadratureRule quad = gauss_legendre(33)) { return {BornJordan{std::move(quad)}}; }
};

namespace detail {

inline void check_symbol_grid(const PhaseSpaceArray& a) {
    const PhaseGrid& g = a.grid();
    require(g.xi_grid.matches(g.x_grid.dual(), 1e-10), "symbol frequency axis must be the dual of its position axis");
    require(g.x_grid.size() <= max_operator_size, "operator matrices are limited to N <= 512");
}

inline Eigen::MatrixXcd shubin_matrix(const PhaseSpaceArray& a, double t, int oversample) {
    const Grid& xg = a.grid().x_grid;
    const std::size_t n = xg.size();
    const long long nn = static_cast<long long>(n);
    const double dx = xg.spacing();

    // B(x_j, w_p) = (2 pi)^{-1} dxi sum_k a(x_j, xi_k) e^{i w_p xi_k}, w_p = (p - N/2) dx
    const PhaseSpaceArray b = inv_sqrt_2pi * fourier_axis(a, Axis::xi, Direction::inverse);

    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    // One circular offset d = m - j per task; every matrix entry is written once.
    parallel_for(n, [&](std::size_t task) {
        const long long d = static_cast<long long>(task) - nn / 2;
        // w = x_j - x_m = -d dx  ->  column p = N/2 - d (mod N)
        const std::size_t p = static_cast<std::size_t>(((nn / 2 - d) % nn + nn) % nn);
        std::vector<cd> col(n), shifted(n), scratch(n);
        for (std::size_t j = 0; j < n; ++j) col[j] = b(j, p);
        const TrigInterpolant interp(col, xg, oversample);
        if (d == -nn / 2) {
            // both representatives +-N/2 of the offset are averaged
            std::vector<cd> other(n);
            interp.shifted(t * static_cast<double>(d) * dx, shifted, scratch);
            interp.shifted(-t * static_cast<double>(d) * dx, other, scratch);
            for (std::size_t j = 0; j < n; ++j) shifted[j] = 0.5 * (shifted[j] + other[j]);
        } else {
            interp.shifted(t * static_cast<double>(d) * dx, shifted, scratch);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const long long col_idx = ((static_cast<long long>(j) + d) % nn + nn) % nn;
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(col_idx)) = dx * shifted[j];
        }
    });
    return m;
}

}  // namespace detail

/// Matrix of Op_t(a) on the symbol's position grid. The evaluation point
/// (1 - t) x_j + t x_m is taken on the periodic cell, i.e. x_j + t d with d
/// the minimal circular offset from x_j to x_m. Born-Jordan is the
/// quadrature-weighted sum of Shubin matrices, accumulated in node order.
inline OperatorMatrix quantize(const PhaseSpaceArray& a, const SchemeSpec& scheme, int oversample = 8) {
    detail::check_symbol_grid(a);
    require(oversample >= 2, "oversample factor must be at least 2");
    const Grid& xg = a.grid().x_grid;
    if (const auto* s = std::get_if<Shubin>(&scheme.kind)) {
        require(std::isfinite(s->t), "Shubin parameter must be finite");
        return OperatorMatrix(xg, detail::shubin_matrix(a, s->t, oversample));
    }
    const auto& quad = std::get<BornJordan>(scheme.kind).quad;
    Eigen::MatrixXcd acc = quad.weights()[0] * detail::shubin_matrix(a, quad.nodes()[0], oversample);
    for (std::size_t i = 1; i < quad.size(); ++i)
        acc += quad.weights()[i] * detail::shubin_matrix(a, quad.nodes()[i], oversample);
    return OperatorMatrix(xg, std::move(acc));
}

// ---------------------------------------------------------------------------
// Born-Jordan -> Weyl symbol conversion

struct MultiplierMethod {};
struct QuadratureMethod {
    QuadratureRule quad = gauss_legendre(33);
};
struct ExpansionMethod {
    int terms;  ///< N: keeps the j-terms with 2j < N
};
using ConversionMethod = std::variant<MultiplierMethod, QuadratureMethod, ExpansionMethod>;

inline constexpr int max_expansion_terms = 12;
/// Relative level below which spectral coefficients are treated as round-off
/// and dropped before polynomial multipliers are applied.
inline constexpr double spectral_noise_floor = 1e-14;

/// Coefficient of <D_xi, D_x>^{2j} a in the Born-Jordan to Weyl series.
inline double expansion_coefficient(int j) {
    double c = (j % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < j; ++i) c /= 4.0;
    for (int i = 2; i <= 2 * j + 1; ++i) c /= static_cast<double>(i);
    return c;
}

/// Quadrature average of e^{i (t - 1/2) s}, the t-symbol flow multiplier.
inline cd averaged_flow_multiplier(const QuadratureRule& quad, double s) {
    return quad.integrate([s](double t) { return std::polar(1.0, (t - 0.5) * s); });
}

/// Weyl symbol b with Op_BJ(a) = Op^w(b).
inline PhaseSpaceArray bj_to_weyl(const PhaseSpaceArray& a, const ConversionMethod& method = MultiplierMethod{}) {
    if (std::holds_alternative<MultiplierMethod>(method)) return apply_bj_multiplier(a);
    if (const auto* q = std::get_if<QuadratureMethod>(&method)) {
        const QuadratureRule& quad = q->quad;
        return apply_fourier_multiplier(a, [&quad](double eta, double y) { return averaged_flow_multiplier(quad, eta * y); });
    }
    const int terms = std::get<ExpansionMethod>(method).terms;
    require(terms >= 1, "expansion needs N >= 1");
    require(terms <= max_expansion_terms, "expansion with N > 12 rejected (spectral noise amplification)");

    PhaseSpaceArray spec = fourier_2d(a, Direction::forward);
    ComplexMatrix v = spec.values();
    const double floor = spectral_noise_floor * spec.max_abs();
    const PhaseGrid& dg = spec.grid();
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
        const double eta = dg.x_grid.point(static_cast<std::size_t>(j));
        for (Eigen::Index k = 0; k < v.cols(); ++k) {
            if (std::abs(v(j, k)) < floor) {
                v(j, k) = 0.0;
                continue;
            }
            const double s2 = std::pow(eta * dg.xi_grid.point(static_cast<std::size_t>(k)), 2);
            double poly = 0.0, power = 1.0;
            for (int term = 0; 2 * term < terms; ++term) {
                poly += expansion_coefficient(term) * power;
                power *= s2;
            }
            v(j, k) *= poly;
        }
    }
    return fourier_2d(PhaseSpaceArray(dg, std::move(v)), Direction::inverse);
}

// ---------------------------------------------------------------------------
// Born-Jordan monomial rule

/// Spectral D = -i d/dx as a matrix: F^{-1} diag(xi) F.
inline Eigen::MatrixXcd differentiation_matrix(const Grid& g) {
    const std::size_t n = g.size();
    const Grid dual = g.dual();
    Eigen::MatrixXcd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<cd> e(n), spec(n), back(n), scratch(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(e.begin(), e.end(), cd(0.0));
        e[c] = 1.0;
        fourier_samples(e, spec, scratch, g, Direction::forward);
        for (std::size_t k = 0; k < n; ++k) spec[k] *= dual.point(k);
        fourier_samples(spec, back, scratch, dual, Direction::inverse);
        for (std::size_t r = 0; r < n; ++r) d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = back[r];
    }
    return d;
}

/// (1/(l+1)) sum_{k=0}^{l} D^{l-k} x^m D^k.
inline OperatorMatrix monomial_bj_operator(int m, int l, const Grid& grid) {
    require(m >= 0 && l >= 0, "monomial exponents must be nonnegative");
    require(m + l <= 6, "monomial degree m + l must be at most 6");
    require(grid.size() <= max_operator_size, "operator matrices are limited to N <= 512");
    const auto n = static_cast<Eigen::Index>(grid.size());
    const Eigen::MatrixXcd d = differentiation_matrix(grid);
    Eigen::VectorXcd xm(n);
    for (Eigen::Index j = 0; j < n; ++j) xm(j) = std::pow(grid.point(static_cast<std::size_t>(j)), m);

    std::vector<Eigen::MatrixXcd> powers{Eigen::MatrixXcd::Identity(n, n)};
    for (int k = 1; k <= l; ++k) powers.push_back(d * powers.back());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k <= l; ++k) acc += powers[static_cast<std::size_t>(l - k)] * xm.asDiagonal() * powers[static_cast<std::size_t>(k)];
    acc /= static_cast<double>(l + 1);
    return OperatorMatrix(grid, std::move(acc));
}

// ---------------------------------------------------------------------------
// Checks

/// |<Op_tau(a) f, g> - (2 pi)^{-1/2} <a, W_tau(g, f)>| with Riemann-sum inner products.
inline double duality_residual(const PhaseSpaceArray& a, double tau, const Signal& f, const Signal& g, int oversample = 8) {
    require(a.grid().x_grid.matches(f.grid()) && f.grid().matches(g.grid()), "duality: incompatible grids");
    const OperatorMatrix op = quantize(a, SchemeSpec::shubin(tau), oversample);
    const cd lhs = inner(op.apply(f), g);
    const cd rhs = inv_sqrt_2pi * inner(a, wigner_tau(g, f, tau, oversample));
    return std::abs(lhs - rhs);
}

/// ||M - M^*||_F / max(||M||_F, tiny).
inline double hermiticity_defect(const OperatorMatrix& m) {
    const double norm = m.values().norm();
    const double defect = (m.values() - m.values().adjoint()).norm();
    return defect / std::max(norm, std::numeric_limits<double>::min());
}

}  // namespace bjq
