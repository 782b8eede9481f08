#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bjq/ghost.hpp"
#include "bjq/io.hpp"
#include "bjq/parallel.hpp"
#include "bjq/selfcheck.hpp"

namespace bjq::cli {

enum ExitCode { ok = 0, check_failed = 1, usage = 2, numeric = 3 };

struct RunConfig {
    std::string command;
    // files
    std::string input, input2, symbol, op, out, prefix = "ghost";
    // grid for generated inputs
    std::size_t n = 256;
    double dx = 0.125;
    bool balanced = false;
    // generators
    std::string kind;
    double sigma = 1.0, center = 0.0, omega = 0.0;
    int order = 0, m = 1, l = 1;
    std::string cutoff = "gaussian";
    double cutoff_fraction = 0.6;
    int cutoff_order = 8;
    // transforms and quantization
    double tau = 0.5, t = 0.5, window_sigma = 1.0;
    std::string scheme = "weyl", method = "multiplier";
    int nodes = 33, terms = 4, oversample = 8;
    // norms
    std::string p = "2", q = "2";
    double s = 0.0, eps = default_gabor_eps;
    bool tight = false;
    // symbol classes
    std::string metric = "euclidean";
    double rho = 1.0, delta = 0.0, weight_power = 0.0;
    int k = 1, class_order = -1;
    std::size_t directions = default_directions;
    std::vector<double> lambdas{2, 4, 8};
    double width = 0.5;
    // ghost demo
    double omega1 = -6.0, omega2 = 6.0;
};

namespace detail {

inline double parse_exponent(const std::string& text, const char* name) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    require(ec == std::errc() && ptr == text.data() + text.size(), std::string(name) + " must be a number or 'inf'");
    return v;
}

inline std::string num(double v) { return bjq::io::detail::fmt(v); }

class Report {
public:
    Report(std::ostream& out, const RunConfig& c) : out_(out) {
        out_ << "# bjq " << c.command << "\n"
             << "# defaults: N=256 dx=0.125 nodes=33 oversample=8 cutoff=gaussian(sigma=quarter half-width)\n"
             << "# threads=" << thread_count() << "\n";
    }
    void param(const std::string& key, const std::string& value) { out_ << "# " << key << "=" << value << "\n"; }
    void param(const std::string& key, double value) { param(key, num(value)); }
    void value(const std::string& key, const std::string& v) { out_ << key << ": " << v << "\n"; }
    void value(const std::string& key, double v) { value(key, num(v)); }

private:
    std::ostream& out_;
};

inline Grid generator_grid(const RunConfig& c) { return c.balanced ? make_balanced_grid(c.n) : make_centered_grid(c.n, c.dx); }

inline Cutoff make_cutoff(const RunConfig& c, const PhaseGrid& g) {
    if (c.cutoff == "gaussian") return Cutoff::default_for(g);
    Cutoff cut = Cutoff::flat_top(g, c.cutoff_fraction, c.cutoff_order);
    cut.validate();
    return cut;
}

inline SchemeSpec make_scheme(const RunConfig& c) {
    if (c.scheme == "weyl") return SchemeSpec::weyl();
    if (c.scheme == "kn") return SchemeSpec::kohn_nirenberg();
    if (c.scheme == "shubin") return SchemeSpec::shubin(c.t);
    return SchemeSpec::born_jordan(gauss_legendre(static_cast<std::size_t>(c.nodes)));
}

inline Metric metric_of(const RunConfig& c) {
    if (c.metric == "shubin") return make_metric(ShubinMetric{c.rho});
    if (c.metric == "hormander") return make_metric(HormanderMetric{c.rho, c.delta});
    if (c.metric == "sg") return make_metric(SGMetric{});
    return make_metric(Euclidean{});
}

inline std::string array_csv(const PhaseSpaceArray& a) {
    std::string s = "x,xi,value\n";
    const PhaseGrid& g = a.grid();
    for (std::size_t j = 0; j < g.x_grid.size(); ++j)
        for (std::size_t k = 0; k < g.xi_grid.size(); ++k)
            s += num(g.x_grid.point(j)) + "," + num(g.xi_grid.point(k)) + "," + num(a(j, k).real()) + "\n";
    return s;
}

inline void need(const std::string& path, const char* flag) { require(!path.empty(), std::string("missing required option ") + flag); }

// -- commands --

inline int make_signal(const RunConfig& c, Report& r) {
    need(c.out, "--out");
    const Grid g = generator_grid(c);
    Signal f;
    if (c.kind == "gaussian") f = gaussian(g, c.sigma, c.center, c.omega);
    else {
        require(c.order >= 0 && c.order <= 64, "hermite order must be in [0, 64]");
        f = hermite(c.order, g);
    }
    io::write_signal_csv(c.out, f);
    r.param("kind", c.kind);
    r.param("n", static_cast<double>(g.size()));
    r.param("dx", g.spacing());
    r.value("norm", f.norm());
    return ok;
}

inline int make_symbol(const RunConfig& c, Report& r) {
    need(c.out, "--out");
    const PhaseGrid pg = PhaseGrid::of_signal_grid(generator_grid(c));
    const bool cut = c.cutoff != "none";
    const Cutoff chi = cut ? make_cutoff(c, pg) : Cutoff{1.0, 1.0, 1};
    auto w = [&](double x, double xi) { return cut ? chi(x, xi) : 1.0; };
    PhaseSpaceArray a;
    if (c.kind == "monomial") {
        require(c.m >= 0 && c.l >= 0 && c.m + c.l <= 12, "monomial degrees must be nonnegative with m + l <= 12");
        a = PhaseSpaceArray::sample(pg, [&](double x, double xi) { return std::pow(x, c.m) * std::pow(xi, c.l) * w(x, xi); });
    } else if (c.kind == "oscillator") {
        a = PhaseSpaceArray::sample(pg, [&](double x, double xi) { return (x * x + xi * xi) * w(x, xi); });
    } else {
        require(c.width > 0.0, "bump width must be positive");
        a = PhaseSpaceArray::sample(pg, [&](double x, double xi) { return std::exp(-(x * x + xi * xi) / c.width); });
    }
    io::write_psf(c.out, a);
    r.param("kind", c.kind);
    r.param("cutoff", c.cutoff);
    r.param("n", static_cast<double>(pg.x_grid.size()));
    r.param("dx", pg.x_grid.spacing());
    r.value("max_abs", a.max_abs());
    return ok;
}

inline int transform(const RunConfig& c, Report& r) {
    need(c.input, "--input");
    need(c.out, "--out");
    const Signal f = io::read_signal_csv(c.input);
    const Signal g = c.input2.empty() ? f : io::read_signal_csv(c.input2);
    PhaseSpaceArray w;
    r.param("kind", c.kind);
    r.param("oversample", c.oversample);
    if (c.kind == "stft") {
        Signal phi = gaussian(f.grid(), c.window_sigma);
        phi = cd(1.0 / phi.norm()) * phi;
        w = stft(f, phi);
        r.param("window_sigma", c.window_sigma);
    } else if (c.kind == "wigner") {
        w = wigner_tau(f, g, c.tau, c.oversample);
        r.param("tau", c.tau);
    } else {
        w = wigner_bj(f, g, gauss_legendre(static_cast<std::size_t>(c.nodes)), c.oversample);
        r.param("nodes", c.nodes);
    }
    io::write_psf(c.out, w);
    r.value("max_abs", w.max_abs());
    r.value("norm", w.norm());
    return ok;
}

inline int quantize_cmd(const RunConfig& c, Report& r) {
    need(c.symbol, "--symbol");
    need(c.out, "--out");
    const PhaseSpaceArray a = io::read_psf(c.symbol);
    const OperatorMatrix m = quantize(a, make_scheme(c), c.oversample);
    io::write_opm(c.out, m);
    r.param("scheme", c.scheme);
    if (c.scheme == "shubin") r.param("t", c.t);
    if (c.scheme == "bj") r.param("nodes", c.nodes);
    r.param("oversample", c.oversample);
    r.value("size", static_cast<double>(m.size()));
    r.value("hermiticity_defect", hermiticity_defect(m));
    return ok;
}

inline int apply_cmd(const RunConfig& c, Report& r) {
    need(c.op, "--op");
    need(c.input, "--input");
    need(c.out, "--out");
    const OperatorMatrix m = io::read_opm(c.op);
    const Signal g = m.apply(io::read_signal_csv(c.input));
    io::write_signal_csv(c.out, g);
    r.value("norm", g.norm());
    return ok;
}

inline int convert_cmd(const RunConfig& c, Report& r) {
    need(c.symbol, "--symbol");
    need(c.out, "--out");
    const PhaseSpaceArray a = io::read_psf(c.symbol);
    ConversionMethod method = MultiplierMethod{};
    if (c.method == "quadrature") method = QuadratureMethod{gauss_legendre(static_cast<std::size_t>(c.nodes))};
    if (c.method == "expansion") method = ExpansionMethod{c.terms};
    const PhaseSpaceArray b = bj_to_weyl(a, method);
    io::write_psf(c.out, b);
    r.param("method", c.method);
    if (c.method == "quadrature") r.param("nodes", c.nodes);
    if (c.method == "expansion") r.param("terms", c.terms);
    r.value("max_abs_change", (b - a).max_abs());
    return ok;
}

inline int schatten_cmd(const RunConfig& c, Report& r) {
    const double p = parse_exponent(c.p, "--p");
    require(p >= 1.0, "--p must be >= 1");
    require(!c.op.empty() || !c.symbol.empty(), "schatten needs --op or --symbol");
    const OperatorMatrix m = c.op.empty() ? quantize(io::read_psf(c.symbol), make_scheme(c), c.oversample) : io::read_opm(c.op);
    if (c.op.empty()) r.param("scheme", c.scheme);
    r.param("p", c.p);
    const SingularSpectrum sv = singular_values(m);
    r.value("schatten_norm", schatten_norm(sv, p));
    for (const DecayLevel& d : singular_decay_report(sv).levels) {
        r.value("decay_index@" + num(d.threshold), static_cast<double>(d.index));
        r.value("tail_fraction@" + num(d.threshold), d.tail_fraction);
    }
    if (!c.out.empty()) io::write_text(c.out, io::spectrum_csv(sv));
    return ok;
}

inline int gabor_norm_cmd(const RunConfig& c, Report& r) {
    need(c.symbol, "--symbol");
    const double p = parse_exponent(c.p, "--p"), q = parse_exponent(c.q, "--q");
    const PhaseSpaceArray a = io::read_psf(c.symbol);
    const GaborSystem sys(a.grid(), c.eps, 1.0, 1.0, c.tight);
    const GaborCoefficients coef = gabor_analyze(a, sys);
    r.param("p", c.p);
    r.param("q", c.q);
    r.param("s", c.s);
    r.param("eps", c.eps);
    r.param("tight", c.tight ? "true" : "false");
    const FrameBounds fb = sys.frame_bounds();
    r.value("frame_lower", fb.lower);
    r.value("frame_upper", fb.upper);
    r.value("modulation_norm", mixed_norm(coef, p, q, WeightSpec{c.s}));
    if (!c.out.empty()) io::write_text(c.out, io::gabor_csv(coef));
    return ok;
}

inline int seminorm_cmd(const RunConfig& c, Report& r) {
    need(c.symbol, "--symbol");
    const PhaseSpaceArray a = io::read_psf(c.symbol);
    const Metric g = metric_of(c);
    r.param("metric", c.metric);
    if (c.metric == "shubin" || c.metric == "hormander") r.param("rho", c.rho);
    if (c.metric == "hormander") r.param("delta", c.delta);
    r.param("directions", static_cast<double>(c.directions));
    const SeminormField f = seminorm_k(a, g, c.k, c.directions);
    r.value("seminorm_" + std::to_string(c.k), f.max);
    if (c.class_order >= 0) {
        const double mu = c.weight_power;
        r.param("weight", "<X>^" + num(mu));
        r.value("class_norm_" + std::to_string(c.class_order),
                class_norm(a, g, [mu](double x, double xi) { return std::pow(japanese(x, xi), mu); }, c.class_order, c.directions));
    }
    if (!c.out.empty()) {
        PhaseSpaceArray field(a.grid(), f.field.cast<cd>());
        io::write_text(c.out, array_csv(field));
    }
    return ok;
}

inline int remainder_cmd(const RunConfig& c, Report& r) {
    RemainderReport rep;
    r.param("terms", c.terms);
    if (!c.symbol.empty()) {
        rep = remainder_order(io::read_psf(c.symbol), c.lambdas, c.terms);
    } else {
        const double w = c.width;
        require(w > 0.0, "bump width must be positive");
        const PhaseGrid pg = PhaseGrid::of_signal_grid(generator_grid(c));
        r.param("bump_width", w);
        r.param("n", static_cast<double>(pg.x_grid.size()));
        rep = remainder_order([w](double x, double xi) { return std::exp(-(x * x + xi * xi) / w); }, pg, c.lambdas, c.terms);
    }
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) r.value("residual@" + num(rep.lambdas[i]), rep.residuals[i]);
    r.value("slope", rep.degenerate ? std::string("degenerate") : num(rep.slope));
    if (!c.out.empty()) io::write_text(c.out, io::remainder_csv(rep));
    return ok;
}

inline int ghost_cmd(const RunConfig& c, Report& r) {
    const GhostReport g = ghost_demo(c.omega1, c.omega2, c.sigma, c.n, static_cast<std::size_t>(c.nodes));
    r.param("omega1", c.omega1);
    r.param("omega2", c.omega2);
    r.param("sigma", c.sigma);
    r.param("n", static_cast<double>(c.n));
    r.param("nodes", c.nodes);
    r.value("rho_spectrogram", g.rho_spectrogram);
    r.value("rho_wigner", g.rho_wigner);
    r.value("rho_bj", g.rho_bj);
    r.value("rho_bj_over_rho_wigner", g.ratio);
    if (!c.prefix.empty()) {
        io::write_text(c.prefix + "_spectrogram.csv", array_csv(g.spectrogram));
        io::write_text(c.prefix + "_wigner.csv", array_csv(g.wigner));
        io::write_text(c.prefix + "_bj.csv", array_csv(g.born_jordan));
        r.value("arrays", c.prefix + "_{spectrogram,wigner,bj}.csv");
    }
    return ok;
}

inline int selfcheck_cmd(std::ostream& out) {
    const auto results = run_selfcheck();
    bool all = true;
    char line[160];
    std::snprintf(line, sizeof line, "%-46s %12s %10s %8s  %s\n", "check", "defect", "tolerance", "seconds", "result");
    out << line;
    for (const CheckResult& c : results) {
        std::snprintf(line, sizeof line, "%-46s %12.3e %10.0e %8.2f  %s\n", c.name.c_str(), c.value, c.tolerance, c.seconds,
                      c.passed ? "PASS" : "FAIL");
        out << line;
        all = all && c.passed;
    }
    out << (all ? "selfcheck: all passed\n" : "selfcheck: FAILED\n");
    return all ? ok : check_failed;
}

}  // namespace detail

inline void add_grid_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--n", c.n, "grid size (even, >= 8)")->check(CLI::Range(8, 1 << 14));
    sub->add_option("--dx", c.dx, "grid spacing")->check(CLI::PositiveNumber);
    sub->add_flag("--balanced", c.balanced, "use dx = sqrt(2 pi / N)");
}

inline void add_nodes(CLI::App* sub, RunConfig& c) {
    sub->add_option("--nodes", c.nodes, "Gauss-Legendre nodes for the tau average")->check(CLI::Range(1, 512));
}

inline void add_oversample(CLI::App* sub, RunConfig& c) {
    sub->add_option("--oversample", c.oversample, "interpolation oversampling factor")->check(CLI::Range(1, 64));
}

inline void build(CLI::App& app, RunConfig& c) {
    app.require_subcommand(1, 1);

    auto* ms = app.add_subcommand("make-signal", "write a test signal as CSV");
    ms->add_option("--kind", c.kind)->check(CLI::IsMember({"gaussian", "hermite"}))->required();
    ms->add_option("--sigma", c.sigma)->check(CLI::PositiveNumber);
    ms->add_option("--center", c.center);
    ms->add_option("--omega", c.omega);
    ms->add_option("--order", c.order, "Hermite function index");
    ms->add_option("--out", c.out)->required();
    add_grid_options(ms, c);

    auto* sy = app.add_subcommand("make-symbol", "write a test symbol as PSF1");
    sy->add_option("--kind", c.kind)->check(CLI::IsMember({"monomial", "oscillator", "bump"}))->required();
    sy->add_option("--m", c.m, "power of x");
    sy->add_option("--l", c.l, "power of xi");
    sy->add_option("--width", c.width, "bump exp(-(x^2+xi^2)/width)");
    sy->add_option("--cutoff", c.cutoff)->check(CLI::IsMember({"gaussian", "flat", "none"}));
    sy->add_option("--cutoff-fraction", c.cutoff_fraction)->check(CLI::Range(0.05, 1.0));
    sy->add_option("--cutoff-order", c.cutoff_order)->check(CLI::Range(1, 16));
    sy->add_option("--out", c.out)->required();
    add_grid_options(sy, c);

    auto* tr = app.add_subcommand("transform", "time-frequency distribution of a signal");
    tr->add_option("--kind", c.kind)->check(CLI::IsMember({"stft", "wigner", "bj"}))->required();
    tr->add_option("--tau", c.tau)->check(CLI::Range(-1e6, 1e6));
    tr->add_option("--window-sigma", c.window_sigma)->check(CLI::PositiveNumber);
    tr->add_option("--input", c.input)->required();
    tr->add_option("--input2", c.input2, "second signal for cross distributions");
    tr->add_option("--out", c.out)->required();
    add_nodes(tr, c);
    add_oversample(tr, c);

    auto* qu = app.add_subcommand("quantize", "operator matrix of a symbol");
    qu->add_option("--scheme", c.scheme)->check(CLI::IsMember({"weyl", "kn", "shubin", "bj"}));
    qu->add_option("--t", c.t, "Shubin parameter")->check(CLI::Range(0.0, 1.0));
    qu->add_option("--symbol", c.symbol)->required();
    qu->add_option("--out", c.out)->required();
    add_nodes(qu, c);
    add_oversample(qu, c);

    auto* ap = app.add_subcommand("apply", "apply an operator to a signal");
    ap->add_option("--op", c.op)->required();
    ap->add_option("--input", c.input)->required();
    ap->add_option("--out", c.out)->required();

    auto* cv = app.add_subcommand("convert", "Weyl symbol of the Born-Jordan operator of a symbol");
    cv->add_option("--symbol", c.symbol)->required();
    cv->add_option("--method", c.method)->check(CLI::IsMember({"multiplier", "quadrature", "expansion"}));
    cv->add_option("--terms", c.terms)->check(CLI::Range(1, max_expansion_terms));
    cv->add_option("--out", c.out)->required();
    add_nodes(cv, c);

    auto* sc = app.add_subcommand("schatten", "singular values and Schatten norm");
    sc->add_option("--op", c.op);
    sc->add_option("--symbol", c.symbol, "quantize this symbol first");
    sc->add_option("--scheme", c.scheme)->check(CLI::IsMember({"weyl", "kn", "shubin", "bj"}));
    sc->add_option("--t", c.t)->check(CLI::Range(0.0, 1.0));
    sc->add_option("--p", c.p, "exponent >= 1 or inf");
    sc->add_option("--out", c.out, "spectrum CSV");
    add_nodes(sc, c);
    add_oversample(sc, c);

    auto* gn = app.add_subcommand("gabor-norm", "weighted mixed norm of Gabor coefficients");
    gn->add_option("--symbol", c.symbol)->required();
    gn->add_option("--p", c.p);
    gn->add_option("--q", c.q);
    gn->add_option("--s", c.s, "weight exponent")->check(CLI::Range(-50.0, 50.0));
    gn->add_option("--eps", c.eps, "lattice step")->check(CLI::PositiveNumber);
    gn->add_flag("--tight", c.tight, "use the canonical tight window");
    gn->add_option("--out", c.out, "coefficient CSV");

    auto* sn = app.add_subcommand("seminorm", "symbol-class seminorms");
    sn->add_option("--symbol", c.symbol)->required();
    sn->add_option("--metric", c.metric)->check(CLI::IsMember({"euclidean", "shubin", "hormander", "sg"}));
    sn->add_option("--rho", c.rho);
    sn->add_option("--delta", c.delta);
    sn->add_option("--k", c.k)->check(CLI::Range(0, max_seminorm_order));
    sn->add_option("--directions", c.directions)->check(CLI::Range(1, 1 << 16));
    sn->add_option("--class-order", c.class_order, "also report the weighted class norm up to this order")
        ->check(CLI::Range(0, max_seminorm_order));
    sn->add_option("--weight-power", c.weight_power, "weight <X>^mu for the class norm")->check(CLI::Range(-50.0, 50.0));
    sn->add_option("--out", c.out, "seminorm field CSV");

    auto* ro = app.add_subcommand("remainder-order", "decay of the Born-Jordan expansion remainder under dilation");
    ro->add_option("--symbol", c.symbol, "PSF1 symbol; default is a Gaussian bump");
    ro->add_option("--width", c.width, "bump exp(-(x^2+xi^2)/width)");
    ro->add_option("--lambdas", c.lambdas)->delimiter(',');
    ro->add_option("--terms", c.terms, "even truncation order N")->check(CLI::Range(2, max_expansion_terms));
    ro->add_option("--out", c.out, "report CSV");
    add_grid_options(ro, c);

    auto* gd = app.add_subcommand("ghost-demo", "two-tone cross-term comparison");
    gd->add_option("--omega1", c.omega1);
    gd->add_option("--omega2", c.omega2);
    gd->add_option("--sigma", c.sigma)->check(CLI::PositiveNumber);
    gd->add_option("--n", c.n)->check(CLI::Range(8, 1 << 12));
    gd->add_option("--prefix", c.prefix, "array CSV prefix; empty to skip");
    add_nodes(gd, c);

    app.add_subcommand("selfcheck", "run the transform invariant suite");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app("bjq: Born-Jordan quantization and time-frequency toolkit", "bjq");
    RunConfig c;
    build(app, c);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "bjq: " << e.what() << "\n";
        return usage;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        if (c.command == "selfcheck") return detail::selfcheck_cmd(out);
        std::ostringstream buf;
        detail::Report r(buf, c);
        int code = ok;
        if (c.command == "make-signal") code = detail::make_signal(c, r);
        else if (c.command == "make-symbol") code = detail::make_symbol(c, r);
        else if (c.command == "transform") code = detail::transform(c, r);
        else if (c.command == "quantize") code = detail::quantize_cmd(c, r);
        else if (c.command == "apply") code = detail::apply_cmd(c, r);
        else if (c.command == "convert") code = detail::convert_cmd(c, r);
        else if (c.command == "schatten") code = detail::schatten_cmd(c, r);
        else if (c.command == "gabor-norm") code = detail::gabor_norm_cmd(c, r);
        else if (c.command == "seminorm") code = detail::seminorm_cmd(c, r);
        else if (c.command == "remainder-order") code = detail::remainder_cmd(c, r);
        else if (c.command == "ghost-demo") code = detail::ghost_cmd(c, r);
        out << buf.str();
        return code;
    } catch (const NonFiniteError& e) {
        err << "bjq: numeric failure: " << e.what() << "\n";
        return numeric;
    } catch (const NumericError& e) {
        err << "bjq: numeric failure: " << e.what() << "\n";
        return numeric;
    } catch (const ValidationError& e) {
        err << "bjq: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "bjq: numeric failure: " << e.what() << "\n";
        return numeric;
    }
}

}  // namespace bjq::cli
