#pragma once
// Random inputs for property tests. Seeds are fixed so failures reproduce.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "bjq/signal.hpp"

namespace gen {

using cd = std::complex<double>;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>()(eng_); }
    cd cnormal() { return {normal(), normal()}; }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

private:
    std::mt19937_64 eng_;
};

/// Six modulated Gaussian atoms, centers in |x|,|xi| <= 3, moderate frequencies.
inline bjq::PhaseSpaceArray atom_symbol(Rng& r, const bjq::PhaseGrid& g, bool real = false, int atoms = 6) {
    struct Atom {
        double x0, k0, e0, y0, s;
        cd c;
    };
    std::vector<Atom> list;
    for (int i = 0; i < atoms; ++i) {
        Atom a{r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(0.8, 1.5), r.cnormal()};
        list.push_back(a);
    }
    return bjq::PhaseSpaceArray::sample(g, [&](double x, double xi) {
        cd v = 0.0;
        for (const auto& a : list) {
            const double env = std::exp(-((x - a.x0) * (x - a.x0) + (xi - a.k0) * (xi - a.k0)) / (2 * a.s * a.s));
            v += a.c * env * std::polar(1.0, a.e0 * x + a.y0 * xi);
        }
        return real ? cd(v.real()) : v;
    });
}

/// Random signal with i.i.d. complex normal samples.
inline bjq::Signal noise_signal(Rng& r, const bjq::Grid& g) {
    std::vector<cd> v(g.size());
    for (auto& z : v) z = r.cnormal();
    return bjq::Signal(g, std::move(v));
}

/// Random superposition of a few Hermite-like Gaussian packets, well inside the grid.
inline bjq::Signal packet_signal(Rng& r, const bjq::Grid& g, int packets = 3) {
    const double h = g.half_width();
    std::vector<std::array<double, 3>> p;
    std::vector<cd> c;
    for (int i = 0; i < packets; ++i) {
        p.push_back({r.uniform(-h / 4, h / 4), r.uniform(-2, 2), r.uniform(0.7, 1.4)});
        c.push_back(r.cnormal());
    }
    return bjq::Signal::sample(g, [&](double x) {
        cd v = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            v += c[i] * std::exp(-(x - p[i][0]) * (x - p[i][0]) / (2 * p[i][2] * p[i][2])) * std::polar(1.0, p[i][1] * x);
        return v;
    });
}

}  // namespace gen
