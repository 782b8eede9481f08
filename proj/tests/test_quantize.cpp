#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bjq/quantize.hpp"
#include "bjq/special.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjq;

namespace {

Grid standard() { return make_centered_grid(256, 0.125); }

double op_norm(const Eigen::MatrixXcd& m) { return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues()(0); }

// relative l2 error of two operators' actions on h_0..h_5, restricted to |x| <= L/4
double hermite_action_error(const OperatorMatrix& a, const OperatorMatrix& b) {
    const Grid& g = a.grid();
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n) {
        const Signal h = hermite(n, g);
        const Signal u = a.apply(h), v = b.apply(h);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (std::abs(g.point(j)) <= g.half_width() / 2) {
                num += std::norm(u[j] - v[j]);
                den += std::norm(v[j]);
            }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

PhaseSpaceArray ones(const PhaseGrid& g) { return PhaseSpaceArray::sample(g, [](double, double) { return 1.0; }); }

}  // namespace

TEST(Quantize, ConstantSymbolIsIdentity) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_centered_grid(64, 0.3));
    const auto one = ones(pg);
    for (const auto& s : {SchemeSpec::kohn_nirenberg(), SchemeSpec::weyl(), SchemeSpec::shubin(0.3), SchemeSpec::shubin(1.0),
                          SchemeSpec::born_jordan(gauss_legendre(9))}) {
        const auto m = quantize(one, s).values();
        EXPECT_LE((m - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Quantize, MatchesDirectKernelSum) {
    const Grid g = make_centered_grid(16, 0.6);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    gen::Rng r(31);
    Eigen::MatrixXcd v(16, 16);
    for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 16; ++k) v(j, k) = r.cnormal();
    const PhaseSpaceArray a(pg, v);
    for (double t : {0.0, 0.3, 0.5, 0.75, 1.0}) {
        const auto m = quantize(a, SchemeSpec::shubin(t)).values();
        EXPECT_LE((m - oracle::shubin(v, t, g)).cwiseAbs().maxCoeff(), 1e-12) << t;
    }
}

TEST(Quantize, EndpointsNeedNoInterpolation) {
    // at t = 0 the entry (j, m) only uses column samples a(x_j, .)
    const Grid g = make_centered_grid(32, 0.4);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    gen::Rng r(2);
    Eigen::MatrixXcd v(32, 32);
    for (int j = 0; j < 32; ++j)
        for (int k = 0; k < 32; ++k) v(j, k) = r.cnormal();
    const auto kn = quantize(PhaseSpaceArray(pg, v), SchemeSpec::kohn_nirenberg()).values();
    const Grid d = g.dual();
    for (int j = 0; j < 32; ++j)
        for (int m = 0; m < 32; ++m) {
            cd s = 0.0;
            for (int k = 0; k < 32; ++k) s += v(j, k) * std::polar(1.0, (g.point(j) - g.point(m)) * d.point(k));
            EXPECT_NEAR(std::abs(kn(j, m) - s * g.spacing() * d.spacing() / (2 * std::numbers::pi)), 0.0, 1e-13);
        }
    // integer shifts at t = 1 likewise
    const auto k1 = quantize(PhaseSpaceArray(pg, v), SchemeSpec::shubin(1.0)).values();
    EXPECT_LE((k1 - oracle::shubin(v, 1.0, g)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Quantize, WeylOfXiIsDerivative) {
    const Grid g = standard();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    const OperatorMatrix d = quantize(monomial_symbol(0, 1, pg, Cutoff::flat_top(pg, 0.9, 16)), SchemeSpec::weyl());
    const Signal h0 = hermite(0, g);
    const Signal dh = d.apply(h0);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.point(j)) <= g.half_width() / 2) {
            EXPECT_NEAR(std::abs(dh[j] - cd(0, g.point(j)) * h0[j]), 0.0, 1e-6);
        }
}

TEST(Quantize, HarmonicOscillatorSpectrum) {
    const Grid g = standard();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    const auto a = PhaseSpaceArray::sample(pg, [](double x, double xi) { return x * x + xi * xi; });
    const OperatorMatrix m = quantize(a, SchemeSpec::born_jordan());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m.values() + m.values().adjoint()));
    for (int n = 0; n < 10; ++n) {
        EXPECT_NEAR(es.eigenvalues()(n), 2.0 * n + 1.0, 1e-6);
        const Signal h = hermite(n, g);
        EXPECT_NEAR(std::abs(inner(m.apply(h), h) - (2.0 * n + 1.0)), 0.0, 1e-6);
    }
}

TEST(Quantize, RejectsBadInputs) {
    const Grid g = make_centered_grid(32, 0.4);
    const PhaseGrid wrong{g, make_centered_grid(32, 0.5)};
    EXPECT_THROW(quantize(ones(wrong), SchemeSpec::weyl()), ValidationError);
    const Grid big = make_centered_grid(1024, 0.05);
    EXPECT_THROW(quantize(ones(PhaseGrid::of_signal_grid(big)), SchemeSpec::weyl()), ValidationError);
    EXPECT_THROW(quantize(ones(PhaseGrid::of_signal_grid(g)), SchemeSpec::born_jordan(QuadratureRule({0.5, 1.5}, {0.5, 0.5}))),
                 ValidationError);
    EXPECT_THROW(quantize(ones(PhaseGrid::of_signal_grid(g)), SchemeSpec::weyl(), 1), ValidationError);
}

TEST(Quantize, LinearInSymbol) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(17);
    const auto a = gen::atom_symbol(r, pg), b = gen::atom_symbol(r, pg);
    const cd alpha(-0.4, 2.1);
    for (const auto& s : {SchemeSpec::shubin(0.3), SchemeSpec::born_jordan(gauss_legendre(7))}) {
        const auto lhs = quantize(alpha * a + b, s).values();
        const Eigen::MatrixXcd rhs = alpha * quantize(a, s).values() + quantize(b, s).values();
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * lhs.cwiseAbs().maxCoeff());
    }
}

TEST(Quantize, WeylIsShubinHalfBitIdentical) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(32));
    gen::Rng r(1);
    const auto a = gen::atom_symbol(r, pg);
    EXPECT_TRUE((quantize(a, SchemeSpec::weyl()).values().array() == quantize(a, SchemeSpec::shubin(0.5)).values().array()).all());
    EXPECT_TRUE((quantize(a, SchemeSpec::kohn_nirenberg()).values().array() == quantize(a, SchemeSpec::shubin(0.0)).values().array()).all());
}

TEST(Quantize, AdjointRule) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(23);
    for (int trial = 0; trial < 3; ++trial) {
        const auto a = gen::atom_symbol(r, pg);
        const auto ac = PhaseSpaceArray(pg, a.values().conjugate());
        const auto w = quantize(a, SchemeSpec::weyl()).values();
        EXPECT_LE((w.adjoint() - quantize(ac, SchemeSpec::weyl()).values()).norm(), 1e-10 * w.norm());
        const auto ar = gen::atom_symbol(r, pg, true);
        EXPECT_LE(hermiticity_defect(quantize(ar, SchemeSpec::weyl())), 1e-10);
        EXPECT_LE(hermiticity_defect(quantize(ar, SchemeSpec::born_jordan())), 1e-10);
        EXPECT_GT(hermiticity_defect(quantize(ar, SchemeSpec::kohn_nirenberg())), 1e-3);
    }
    EXPECT_EQ(hermiticity_defect(OperatorMatrix(pg.x_grid, Eigen::MatrixXcd::Identity(128, 128))), 0.0);
}

TEST(Quantize, BornJordanEqualsWeylOfConvolvedSymbol) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(41);
    for (int trial = 0; trial < 2; ++trial) {
        const auto a = gen::atom_symbol(r, pg);
        const auto bj = quantize(a, SchemeSpec::born_jordan()).values();
        const auto w = quantize(bj_to_weyl(a), SchemeSpec::weyl()).values();
        EXPECT_LE(op_norm(bj - w), 1e-6 * op_norm(bj));
    }
}

TEST(BjToWeyl, SeparableSymbolUnchanged) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(standard());
    const auto a = PhaseSpaceArray::sample(pg, [](double x, double xi) { return x * x + xi * xi; });
    const double scale = a.max_abs();
    for (const ConversionMethod& m : {ConversionMethod{MultiplierMethod{}}, ConversionMethod{QuadratureMethod{}},
                                      ConversionMethod{ExpansionMethod{2}}, ConversionMethod{ExpansionMethod{12}}}) {
        EXPECT_LE((bj_to_weyl(a, m) - a).max_abs(), 1e-10 * scale);
    }
}

TEST(BjToWeyl, BilinearSymbolUnchangedInInterior) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(standard());
    const auto a = monomial_symbol(1, 1, pg, Cutoff::flat_top(pg, 0.9, 16));
    double scale = 0.0;
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (in_interior(pg, j, k)) scale = std::max(scale, std::abs(a(j, k)));
    EXPECT_LE(interior_max_diff(bj_to_weyl(a), a), 1e-10 * scale);
}

TEST(BjToWeyl, QuarticCorrectionOnFlatTop) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(standard());
    const auto a = monomial_symbol(2, 2, pg, Cutoff::flat_top(pg, 0.6));
    const auto bm = bj_to_weyl(a), bq = bj_to_weyl(a, QuadratureMethod{});
    EXPECT_NEAR(bm(128, 128).real(), -1.0 / 6.0, 1e-10);
    EXPECT_LE(interior_max_diff(bm, bq), 1e-10);
    // the series stops at j = 1 where the cutoff is flat; spectral differentiation of the edge limits accuracy
    const auto be = bj_to_weyl(a, ExpansionMethod{4});
    EXPECT_NEAR(be(128, 128).real(), -1.0 / 6.0, 1e-6);
}

TEST(BjToWeyl, ZeroAndRejection) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_centered_grid(64, 0.3));
    const auto z = PhaseSpaceArray::zeros(pg);
    EXPECT_EQ(bj_to_weyl(z).max_abs(), 0.0);
    EXPECT_EQ(bj_to_weyl(z, QuadratureMethod{}).max_abs(), 0.0);
    EXPECT_EQ(bj_to_weyl(z, ExpansionMethod{6}).max_abs(), 0.0);
    EXPECT_THROW(bj_to_weyl(z, ExpansionMethod{13}), ValidationError);
    EXPECT_THROW(bj_to_weyl(z, ExpansionMethod{0}), ValidationError);
}

TEST(BjToWeyl, ExpansionTelescopesToHermiteTerms) {
    // a = exp(-(x^2+xi^2)/2): <D_xi,D_x>^{2j} a = He_2j(x) He_2j(xi) a
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(512));
    const auto a = PhaseSpaceArray::sample(pg, [](double x, double xi) { return std::exp(-(x * x + xi * xi) / 2); });
    for (int n = 2; n <= 10; n += 2) {
        const auto diff = bj_to_weyl(a, ExpansionMethod{n + 2}) - bj_to_weyl(a, ExpansionMethod{n});
        const int j = n / 2;
        const auto term = PhaseSpaceArray::sample(pg, [j](double x, double xi) {
            return expansion_coefficient(j) * oracle::hermite_he(2 * j, x) * oracle::hermite_he(2 * j, xi) * std::exp(-(x * x + xi * xi) / 2);
        });
        // spectral noise at the 1e-14 floor is amplified by (eta y)^{2j}
        EXPECT_LE((diff - term).max_abs(), 1e-9 * a.max_abs()) << n;
        EXPECT_NEAR(diff.max_abs(), term.max_abs(), 1e-4 * term.max_abs()) << n;
    }
}

TEST(BjToWeyl, ThreeMethodsAgree) {
    const PhaseGrid pg = PhaseGrid::of_signal_grid(make_balanced_grid(128));
    gen::Rng r(5);
    const auto a = gen::atom_symbol(r, pg);
    EXPECT_LE((bj_to_weyl(a) - bj_to_weyl(a, QuadratureMethod{gauss_legendre(64)})).max_abs(), 1e-10 * a.max_abs());
    // the series is asymptotic: compare on a wide bump where (eta y) stays small
    const PhaseGrid big = PhaseGrid::of_signal_grid(make_balanced_grid(512));
    const auto wide = PhaseSpaceArray::sample(big, [](double x, double xi) { return std::exp(-(x * x + xi * xi) / 18); });
    EXPECT_LE((bj_to_weyl(wide) - bj_to_weyl(wide, ExpansionMethod{12})).max_abs(), 1e-6);
}

TEST(Monomial, Structure) {
    const Grid g = make_centered_grid(64, 0.25);
    const auto x = monomial_bj_operator(1, 0, g).values();
    for (int j = 0; j < 64; ++j)
        for (int m = 0; m < 64; ++m) EXPECT_EQ(x(j, m), j == m ? cd(g.point(static_cast<std::size_t>(j))) : cd(0.0));
    const auto d = differentiation_matrix(g);
    const auto mixed = monomial_bj_operator(1, 1, g).values();
    const Eigen::MatrixXcd expect = 0.5 * (d * x + x * d);
    EXPECT_LE((mixed - expect).cwiseAbs().maxCoeff(), 1e-12 * expect.cwiseAbs().maxCoeff());
    EXPECT_THROW(monomial_bj_operator(4, 3, g), ValidationError);
    EXPECT_THROW(monomial_bj_operator(-1, 1, g), ValidationError);
}

TEST(Monomial, DifferentiationMatrixMatchesDirectSpectralSum) {
    const Grid g = make_centered_grid(16, 0.5);
    const Grid dg = g.dual();
    const auto d = differentiation_matrix(g);
    for (int j = 0; j < 16; ++j)
        for (int m = 0; m < 16; ++m) {
            cd s = 0.0;
            for (int k = 0; k < 16; ++k) s += dg.point(k) * std::polar(1.0, (g.point(j) - g.point(m)) * dg.point(k));
            EXPECT_NEAR(std::abs(d(j, m) - s * g.spacing() * dg.spacing() / (2 * std::numbers::pi)), 0.0, 1e-12);
        }
}

TEST(Monomial, MixedMonomialMatchesWeylOfBilinearSymbol) {
    const Grid g = standard();
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    const auto w = quantize(monomial_symbol(1, 1, pg, Cutoff::flat_top(pg, 0.9, 16)), SchemeSpec::weyl());
    EXPECT_LE(hermite_action_error(w, monomial_bj_operator(1, 1, g)), 1e-8);
}

TEST(Duality, ConstantSymbol) {
    const Grid g = standard();
    const auto one = ones(PhaseGrid::of_signal_grid(g));
    const Signal h0 = hermite(0, g);
    for (double tau : {0.0, 0.3, 0.5, 1.0}) EXPECT_LE(duality_residual(one, tau, h0, h0), 1e-10);
}

TEST(Duality, RandomSymbolsAndPackets) {
    const Grid g = make_balanced_grid(128);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    gen::Rng r(77);
    for (int trial = 0; trial < 3; ++trial) {
        const auto a = gen::atom_symbol(r, pg);
        const Signal f = gen::packet_signal(r, g), h = gen::packet_signal(r, g);
        for (double tau : {0.0, 0.3, 0.5, 1.0})
            EXPECT_LE(duality_residual(a, tau, f, h), 1e-8 * a.norm() * f.norm() * h.norm()) << tau;
    }
}

TEST(Duality, WeylExpectationIsReal) {
    const Grid g = make_balanced_grid(128);
    const PhaseGrid pg = PhaseGrid::of_signal_grid(g);
    gen::Rng r(78);
    const auto a = gen::atom_symbol(r, pg, true);
    const Signal f = gen::packet_signal(r, g);
    EXPECT_LE(std::abs(inner(quantize(a, SchemeSpec::weyl()).apply(f), f).imag()), 1e-10 * a.max_abs() * f.norm() * f.norm());
}
