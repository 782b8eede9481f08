#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bjq/fourier.hpp"
#include "bjq/gabor.hpp"
#include "bjq/quadrature.hpp"
#include "bjq/quantize.hpp"
#include "bjq/special.hpp"
#include "bjq/transforms.hpp"

namespace bjq {

struct CheckResult {
    std::string name;
    double value;      ///< measured defect
    double tolerance;
    bool passed;
    double seconds;
};

namespace detail {

// Portable uniform draws: the standard distributions are implementation-defined.
class CheckRng {
public:
    explicit CheckRng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

inline Signal packet(CheckRng& r, const Grid& g) {
    const double h = g.half_width();
    Signal f = Signal::zeros(g);
    for (int i = 0; i < 3; ++i) {
        const cd c(r.uniform(-1, 1), r.uniform(-1, 1));
        f = f + c * gaussian(g, r.uniform(0.7, 1.5), r.uniform(-h / 4, h / 4), r.uniform(-3, 3));
    }
    return f;
}

inline PhaseSpaceArray atoms(CheckRng& r, const PhaseGrid& g, bool real) {
    struct Atom {
        double x0, xi0, fx, fxi, s;
        cd c;
    };
    std::vector<Atom> list;
    for (int i = 0; i < 6; ++i)
        list.push_back({r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(0.8, 1.5),
                        cd(r.uniform(-1, 1), real ? 0.0 : r.uniform(-1, 1))});
    return PhaseSpaceArray::sample(g, [&](double x, double xi) {
        cd v = 0.0;
        for (const Atom& a : list) {
            const double e = std::exp(-((x - a.x0) * (x - a.x0) + (xi - a.xi0) * (xi - a.xi0)) / (2 * a.s * a.s));
            v += real ? cd(a.c.real() * e * std::cos(a.fx * x + a.fxi * xi)) : a.c * e * std::polar(1.0, a.fx * x + a.fxi * xi);
        }
        return v;
    });
}

inline double max_abs_diff(const Signal& a, const Signal& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace detail

/// Transform invariants on default-sized grids. Each check reports its worst defect.
inline std::vector<CheckResult> run_selfcheck() {
    using Check = std::pair<std::string, std::pair<double, std::function<double()>>>;
    const Grid g = make_centered_grid(256, 0.125);
    const PhaseGrid bal = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    const double root_2pi = std::sqrt(2 * std::numbers::pi);

    std::vector<Check> checks{
        {"fourier unitarity (relative)",
         {1e-12,
          [&] {
              detail::CheckRng r(1);
              double worst = 0.0;
              for (int t = 0; t < 5; ++t) {
                  const Signal f = detail::packet(r, g);
                  const Signal F = fourier(f, Direction::forward);
                  worst = std::max(worst, std::abs(F.norm() - f.norm()) / f.norm());
                  worst = std::max(worst, (fourier(F, Direction::inverse) + cd(-1.0) * f).norm() / f.norm());
              }
              return worst;
          }}},
        {"wigner marginals (relative to peak density)",
         {1e-8,
          [&] {
              detail::CheckRng r(2);
              double worst = 0.0;
              for (double tau : {0.0, 0.5, 1.0}) {
                  const Signal f = detail::packet(r, g);
                  const Marginals m = marginals(wigner_tau(f, f, tau));
                  const Signal F = fourier(f, Direction::forward);
                  std::vector<cd> dx(g.size()), df(g.size());
                  double scale = 0.0;
                  for (std::size_t j = 0; j < g.size(); ++j) {
                      dx[j] = root_2pi * std::norm(f[j]);
                      df[j] = root_2pi * std::norm(F[j]);
                      scale = std::max({scale, std::abs(dx[j]), std::abs(df[j])});
                  }
                  worst = std::max(worst, detail::max_abs_diff(m.position, Signal(g, dx)) / scale);
                  worst = std::max(worst, detail::max_abs_diff(m.frequency, Signal(g.dual(), df)) / scale);
              }
              return worst;
          }}},
        {"born-jordan realness (relative)",
         {1e-10,
          [&] {
              detail::CheckRng r(3);
              const QuadratureRule q = gauss_legendre(33);
              double worst = 0.0;
              for (int t = 0; t < 2; ++t) {
                  const Signal f = detail::packet(r, g);
                  const PhaseSpaceArray w = wigner_bj(f, f, q);
                  worst = std::max(worst, w.values().imag().cwiseAbs().maxCoeff() / w.max_abs());
              }
              return worst;
          }}},
        {"wigner hermitian symmetry (relative)",
         {1e-10,
          [&] {
              detail::CheckRng r(4);
              const Signal f = detail::packet(r, g), h = detail::packet(r, g);
              const PhaseSpaceArray a = wigner_tau(f, h, 0.3), b = wigner_tau(h, f, 0.7);
              return (a.values() - b.values().conjugate()).cwiseAbs().maxCoeff() / a.max_abs();
          }}},
        {"gabor frame reconstruction (relative)",
         {1e-8,
          [&] {
              detail::CheckRng r(5);
              const GaborSystem sys(bal);
              double worst = 0.0;
              for (int t = 0; t < 5; ++t) {
                  const PhaseSpaceArray a = detail::atoms(r, bal, false);
                  worst = std::max(worst, (gabor_synthesize(gabor_analyze(a, sys), sys) - a).norm() / a.norm());
              }
              return worst;
          }}},
        {"weyl self-adjointness of real symbols",
         {1e-10,
          [&] {
              detail::CheckRng r(6);
              double worst = 0.0;
              for (int t = 0; t < 3; ++t) worst = std::max(worst, hermiticity_defect(quantize(detail::atoms(r, bal, true), SchemeSpec::weyl())));
              return worst;
          }}},
    };

    std::vector<CheckResult> out;
    for (auto& [name, spec] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        const double v = spec.second();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back({name, v, spec.first, std::isfinite(v) && v <= spec.first, s});
    }
    return out;
}

}  // namespace bjq
