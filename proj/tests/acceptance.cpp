// Acceptance criteria 1-12: one PASS/FAIL line each; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

#include "bjq/bjq.hpp"
#include "generators.hpp"

using namespace bjq;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double op_norm(const Eigen::MatrixXcd& m) { return singular_values(OperatorMatrix(make_centered_grid(static_cast<std::size_t>(m.rows()), 1.0), m))[0]; }

// relative l2 error on |x| <= L/4
double interior_rel_error(const Signal& u, const Signal& v) {
    const Grid& g = u.grid();
    double num = 0, den = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.point(j)) <= g.half_width() / 2) {
            num += std::norm(u[j] - v[j]);
            den += std::norm(v[j]);
        }
    return std::sqrt(num / den);
}

Verdict c1() {
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(101);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        const PhaseSpaceArray a = gen::atom_symbol(r, pg);
        const OperatorMatrix bj = quantize(a, SchemeSpec::born_jordan());
        const OperatorMatrix w = quantize(bj_to_weyl(a, MultiplierMethod{}), SchemeSpec::weyl());
        worst = std::max(worst, op_norm(bj.values() - w.values()) / op_norm(bj.values()));
    }
    const double s = seconds_since(t0);
    return {worst <= 1e-6 && s < 30, fmt("max relative operator-norm discrepancy %.2e (tol 1e-6), %.1f s (limit 30 s)", worst, s)};
}

Verdict c2() {
    const Grid g = make_centered_grid(256, 0.125);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    const Cutoff cut = Cutoff::flat_top(pg, 0.6, 8);
    double worst = 0;
    for (auto [m, l] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        const OperatorMatrix rule = monomial_bj_operator(m, l, g);
        const OperatorMatrix q = quantize(monomial_symbol(m, l, pg, cut), SchemeSpec::born_jordan());
        for (int n = 0; n <= 5; ++n) {
            const Signal h = hermite(n, g);
            worst = std::max(worst, interior_rel_error(q.apply(h), rule.apply(h)));
        }
    }
    return {worst <= 1e-4, fmt("max interior relative l2 error over h0..h5 %.2e (tol 1e-4)", worst)};
}

Verdict c3() {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(103);
    double worst = 0, kn = 0;
    for (int i = 0; i < 10; ++i) {
        const PhaseSpaceArray a = gen::atom_symbol(r, pg, true);
        worst = std::max({worst, hermiticity_defect(quantize(a, SchemeSpec::born_jordan())), hermiticity_defect(quantize(a, SchemeSpec::weyl()))});
        kn = std::max(kn, hermiticity_defect(quantize(a, SchemeSpec::kohn_nirenberg())));
    }
    return {worst <= 1e-10 && kn > 1e-3, fmt("max defect BJ/Weyl %.2e (tol 1e-10), max Kohn-Nirenberg defect %.2e (needs > 1e-3)", worst, kn)};
}

Verdict c4() {
    const Grid g = make_balanced_grid(128);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    gen::Rng r(104);
    std::vector<Signal> h;
    for (int n = 0; n <= 3; ++n) h.push_back(hermite(n, g));
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
        const PhaseSpaceArray a = gen::atom_symbol(r, pg);
        for (double tau : {0.0, 0.3, 0.5, 1.0})
            for (const Signal& f : h)
                for (const Signal& k : h) worst = std::max(worst, duality_residual(a, tau, f, k) / (a.norm() * f.norm() * k.norm()));
    }
    return {worst <= 1e-8, fmt("max normalized duality residual %.2e (tol 1e-8)", worst)};
}

Verdict c5() {
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(1024));
    auto bump = [](double x, double xi) { return std::exp(-(x * x + xi * xi) / 0.5); };
    const RemainderReport r2 = remainder_order(bump, pg, {2, 4, 8}, 2);
    const RemainderReport r4 = remainder_order(bump, pg, {2, 4, 8}, 4);
    const double s = seconds_since(t0);
    const bool ok = !r2.degenerate && !r4.degenerate && std::abs(r2.slope + 4) <= 0.5 && std::abs(r4.slope + 8) <= 0.7 && s < 60;
    return {ok, fmt("slope N=2 %.4f (-4 +- 0.5), N=4 %.4f (-8 +- 0.7), %.1f s (limit 60 s)", r2.slope, r4.slope, s)};
}

Verdict c6() {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(1024));
    const Cutoff cut{6.0, 6.0, 1};
    const PhaseSpaceArray a = monomial_symbol(2, 2, pg, cut);
    const PhaseSpaceArray bm = bj_to_weyl(a, MultiplierMethod{});
    const PhaseSpaceArray bq = bj_to_weyl(a, QuadratureMethod{gauss_legendre(33)});
    const PhaseSpaceArray be = bj_to_weyl(a, ExpansionMethod{8});
    const std::size_t o = 512;  // origin index
    const double dev = std::abs(bm(o, o) - cd(-1.0 / 6.0));
    const double mutual = std::max({std::abs(bm(o, o) - bq(o, o)), std::abs(bm(o, o) - be(o, o)), std::abs(bq(o, o) - be(o, o))});
    return {dev <= 1e-4 && mutual <= 1e-8, fmt("|b(0) + 1/6| %.2e (tol 1e-4), methods mutually within %.2e (tol 1e-8)", dev, mutual)};
}

Verdict c7() {
    const Grid g = make_centered_grid(256, 0.125);
    const PhaseSpaceArray a = PhaseSpaceArray::sample(PhaseGrid::of_signal_grid(g), [](double x, double xi) { return x * x + xi * xi; });
    const OperatorMatrix m = quantize(a, SchemeSpec::born_jordan());
    const Eigen::MatrixXcd herm = 0.5 * (m.values() + m.values().adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    double worst = 0;
    for (int k = 0; k < 10; ++k) worst = std::max(worst, std::abs(es.eigenvalues()(k) - (2 * k + 1)));
    return {worst <= 1e-6, fmt("max |lambda_k - (2k+1)| over k = 0..9: %.2e (tol 1e-6)", worst)};
}

Verdict c8() {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(108);
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
        const PhaseSpaceArray b = gen::atom_symbol(r, pg);
        const double hs = schatten_norm(singular_values(quantize(b, SchemeSpec::weyl())), 2);
        worst = std::max(worst, std::abs(hs - inv_sqrt_2pi * b.norm()) / (inv_sqrt_2pi * b.norm()));
    }
    return {worst <= 1e-3, fmt("max relative deviation from (2 pi)^(-1/2) ||b||_2: %.2e (tol 1e-3)", worst)};
}

Verdict c9() {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    const GaborSystem sys(pg);
    gen::Rng r(109);
    const double reach = pg.x_grid.half_width() / 2 / sys.eps();
    const int jmax = static_cast<int>(reach);
    const std::array<std::pair<double, double>, 4> pq{{{2, 2}, {2, 1}, {4, 2}, {infinity, 1}}};
    std::array<double, 4> lo, hi;
    lo.fill(infinity);
    hi.fill(0.0);
    for (int i = 0; i < 20; ++i) {
        GaborCoefficients c = sys.empty_coefficients();
        const auto& d = c.dims();
        auto idx = [&](int dim, int label) { return static_cast<std::size_t>(label + static_cast<int>(d[static_cast<std::size_t>(dim)] / 2)); };
        const int atoms = r.integer(1, 6);
        for (int t = 0; t < atoms; ++t)
            c(idx(0, r.integer(-jmax, jmax)), idx(1, r.integer(-jmax, jmax)), idx(2, r.integer(-2, 2)), idx(3, r.integer(-2, 2))) += r.cnormal();
        const PhaseSpaceArray a = gabor_synthesize(c, sys);
        const SingularSpectrum sv = singular_values(quantize(a, SchemeSpec::born_jordan()));
        for (std::size_t k = 0; k < pq.size(); ++k) {
            const double ratio = schatten_norm(sv, pq[k].first) / modulation_norm(a, pq[k].first, pq[k].second, WeightSpec{0}, sys);
            lo[k] = std::min(lo[k], ratio);
            hi[k] = std::max(hi[k], ratio);
        }
    }
    double worst = 0;
    std::string spread;
    for (std::size_t k = 0; k < pq.size(); ++k) {
        worst = std::max(worst, hi[k] / lo[k]);
        spread += fmt(" %.3g", hi[k] / lo[k]);
    }
    return {worst <= 50, "max/min ratio per (p,q) in {(2,2),(2,1),(4,2),(inf,1)}:" + spread + " (limit 50)"};
}

Verdict c10() {
    std::vector<double> mins;
    for (std::size_t n : {128u, 256u}) {
        const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(n));
        mins.push_back(min_eigenvalue_hermitian(quantize(monomial_symbol(2, 2, pg, Cutoff{3.0, 3.0, 1}), SchemeSpec::born_jordan())));
    }
    const double change = std::abs(mins[1] - mins[0]) / std::abs(mins[1]);
    return {mins[0] >= -1 && mins[1] >= -1 && change <= 0.05,
            fmt("lambda_min N=128 %.6f, N=256 %.6f (>= -1), relative change %.2e (tol 5%%)", mins[0], mins[1], change)};
}

Verdict c11() {
    const GhostReport g = ghost_demo(-6, 6, 2, 512);
    const std::filesystem::path dir = std::filesystem::current_path() / "acceptance_ghost";
    std::filesystem::create_directories(dir);
    for (auto [name, arr] : {std::pair{"spectrogram", &g.spectrogram}, std::pair{"wigner", &g.wigner}, std::pair{"bj", &g.born_jordan}})
        io::write_psf((dir / (std::string(name) + ".psf")).string(), *arr);
    return {g.ratio <= 0.25, fmt("rho_W %.4f, rho_BJ %.4f, ratio %.4f (limit 0.25); arrays in acceptance_ghost/", g.rho_wigner, g.rho_bj, g.ratio)};
}

Verdict c12() {
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    std::string worst;
    for (const CheckResult& c : run_selfcheck()) {
        all = all && c.passed;
        if (!c.passed) worst += " failed: " + c.name;
    }
    const double s = seconds_since(t0);
    return {all && s < 120, std::string("selfcheck ") + (all ? "passed" : "FAILED") + fmt(" in %.1f s (limit 120 s)", s) + worst};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"three-way Born-Jordan agreement", c1}, {"monomial rule", c2},           {"self-adjointness", c3},
        {"tau duality", c4},                    {"expansion remainder order", c5}, {"closed-form conversion", c6},
        {"harmonic oscillator spectrum", c7},   {"Hilbert-Schmidt identity", c8},  {"Schatten-modulation uniformity", c9},
        {"Garding lower bound", c10},           {"ghost suppression", c11},        {"transform invariant suite", c12},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %-32s %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu/%zu passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
