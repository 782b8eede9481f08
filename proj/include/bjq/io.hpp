#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bjq/error.hpp"
#include "bjq/gabor.hpp"
#include "bjq/quantize.hpp"
#include "bjq/signal.hpp"
#include "bjq/spectral.hpp"
#include "bjq/symclass.hpp"

namespace bjq::io {

namespace detail {

// Little-endian encoding independent of host byte order.
class ByteWriter {
public:
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void f64(double d) {
        const auto v = std::bit_cast<std::uint64_t>(d);
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void magic(std::string_view m) { bytes_.insert(bytes_.end(), m.begin(), m.end()); }
    void complex(cd z) {
        f64(z.real());
        f64(z.imag());
    }
    const std::vector<char>& bytes() const noexcept { return bytes_; }

private:
    std::vector<char> bytes_;
};

class ByteReader {
public:
    explicit ByteReader(const std::vector<char>& bytes) : bytes_(bytes) {}

    void magic(std::string_view m) {
        need(m.size(), "file too short for magic bytes");
        if (std::string_view(bytes_.data() + pos_, m.size()) != m)
            throw FormatError("bad magic bytes, expected " + std::string(m), pos_);
        pos_ += m.size();
    }
    std::uint32_t u32() {
        need(4, "truncated u32");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    double f64() {
        need(8, "truncated f64");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }
    cd complex() {
        const double re = f64();
        return {re, f64()};
    }
    void expect_payload(std::size_t count, std::size_t width) {
        if (bytes_.size() - pos_ < count * width)
            throw FormatError("truncated payload: expected " + std::to_string(count) + " values", bytes_.size());
    }
    void finish() {
        if (pos_ != bytes_.size()) throw FormatError("trailing bytes after payload", pos_);
    }
    std::size_t offset() const noexcept { return pos_; }

private:
    void need(std::size_t n, const char* what) {
        if (bytes_.size() - pos_ < n) throw FormatError(what, bytes_.size());
    }
    const std::vector<char>& bytes_;
    std::size_t pos_ = 0;
};

inline std::vector<char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ValidationError("write failed for " + path);
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid described by (n, origin, spacing); only centered grids are representable.
inline Grid grid_from_header(std::uint32_t n, double origin, double spacing, std::size_t offset) {
    if (n < 8 || n % 2 != 0 || !(spacing > 0.0) || !std::isfinite(spacing))
        throw FormatError("invalid grid header", offset);
    const Grid g = make_centered_grid(n, spacing);
    if (std::abs(origin - g.origin()) > 1e-12 * g.half_width())
        throw FormatError("grid origin must be -(N/2)*spacing", offset);
    return g;
}

}  // namespace detail

// -- Signal CSV: header x,re,im --

inline std::string signal_csv(const Signal& f) {
    std::string s = "x,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j) {
        s += detail::fmt(f.grid().point(j)) + "," + detail::fmt(f[j].real()) + "," + detail::fmt(f[j].imag()) + "\n";
    }
    return s;
}

inline void write_signal_csv(const std::string& path, const Signal& f) { detail::write_file(path, signal_csv(f)); }

inline Signal parse_signal_csv(const std::string& text) {
    std::size_t pos = 0;
    auto next_line = [&](std::string& line) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = end + 1;
        return true;
    };
    std::string line;
    if (!next_line(line) || line != "x,re,im") throw FormatError("signal CSV must start with header x,re,im", 0);
    std::vector<double> xs;
    std::vector<cd> vals;
    while (true) {
        const std::size_t start = pos;
        if (!next_line(line)) break;
        if (line.empty()) continue;
        double x, re, im;
        char tail;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &x, &re, &im, &tail) != 3)
            throw FormatError("malformed signal CSV row", start);
        if (!std::isfinite(x) || !std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite value in signal CSV", start);
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 8 || xs.size() % 2 != 0) throw FormatError("signal CSV needs an even number (>= 8) of rows", text.size());
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    const Grid g = detail::grid_from_header(static_cast<std::uint32_t>(xs.size()), xs.front(), dx, 0);
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (std::abs(xs[j] - g.point(j)) > 1e-9 * g.spacing()) throw FormatError("signal CSV abscissae are not a uniform centered grid", 0);
    return Signal(g, std::move(vals));
}

inline Signal read_signal_csv(const std::string& path) {
    const auto bytes = detail::read_file(path);
    return parse_signal_csv(std::string(bytes.begin(), bytes.end()));
}

// -- PSF1 phase-space binary --

inline std::vector<char> psf_bytes(const PhaseSpaceArray& a) {
    detail::ByteWriter w;
    const PhaseGrid& g = a.grid();
    w.magic("PSF1");
    w.u32(static_cast<std::uint32_t>(g.x_grid.size()));
    w.u32(static_cast<std::uint32_t>(g.xi_grid.size()));
    w.f64(g.x_grid.origin());
    w.f64(g.x_grid.spacing());
    w.f64(g.xi_grid.origin());
    w.f64(g.xi_grid.spacing());
    for (std::size_t j = 0; j < g.x_grid.size(); ++j)
        for (std::size_t k = 0; k < g.xi_grid.size(); ++k) w.complex(a(j, k));
    return w.bytes();
}

inline PhaseSpaceArray parse_psf(const std::vector<char>& bytes) {
    detail::ByteReader r(bytes);
    r.magic("PSF1");
    const std::size_t hdr = r.offset();
    const std::uint32_t nx = r.u32(), nxi = r.u32();
    const double x0 = r.f64(), dx = r.f64(), xi0 = r.f64(), dxi = r.f64();
    const PhaseGrid g{detail::grid_from_header(nx, x0, dx, hdr), detail::grid_from_header(nxi, xi0, dxi, hdr)};
    r.expect_payload(std::size_t{nx} * nxi, 16);
    ComplexMatrix m(nx, nxi);
    for (std::uint32_t j = 0; j < nx; ++j)
        for (std::uint32_t k = 0; k < nxi; ++k) m(j, k) = r.complex();
    r.finish();
    if (!m.allFinite()) throw FormatError("non-finite value in PSF1 payload", hdr);
    return PhaseSpaceArray(g, std::move(m));
}

inline void write_psf(const std::string& path, const PhaseSpaceArray& a) {
    const auto b = psf_bytes(a);
    detail::write_file(path, {b.data(), b.size()});
}

inline PhaseSpaceArray read_psf(const std::string& path) { return parse_psf(detail::read_file(path)); }

// -- OPM1 operator binary --

inline std::vector<char> opm_bytes(const OperatorMatrix& op) {
    detail::ByteWriter w;
    w.magic("OPM1");
    w.u32(static_cast<std::uint32_t>(op.size()));
    w.f64(op.grid().origin());
    w.f64(op.grid().spacing());
    const auto& v = op.values();
    for (Eigen::Index p = 0; p < v.rows(); ++p)
        for (Eigen::Index q = 0; q < v.cols(); ++q) w.complex(v(p, q));
    return w.bytes();
}

inline OperatorMatrix parse_opm(const std::vector<char>& bytes) {
    detail::ByteReader r(bytes);
    r.magic("OPM1");
    const std::size_t hdr = r.offset();
    const std::uint32_t n = r.u32();
    const double x0 = r.f64(), dx = r.f64();
    const Grid g = detail::grid_from_header(n, x0, dx, hdr);
    r.expect_payload(std::size_t{n} * n, 16);
    Eigen::MatrixXcd m(n, n);
    for (std::uint32_t p = 0; p < n; ++p)
        for (std::uint32_t q = 0; q < n; ++q) m(p, q) = r.complex();
    r.finish();
    if (!m.allFinite()) throw FormatError("non-finite value in OPM1 payload", hdr);
    return OperatorMatrix(g, std::move(m));
}

inline void write_opm(const std::string& path, const OperatorMatrix& op) {
    const auto b = opm_bytes(op);
    detail::write_file(path, {b.data(), b.size()});
}

inline OperatorMatrix read_opm(const std::string& path) { return parse_opm(detail::read_file(path)); }

// -- human-facing CSV reports --

inline std::string gabor_csv(const GaborCoefficients& c) {
    std::ostringstream s;
    s << "jx,jxi,kx,kxi,re,im\n";
    const auto& d = c.dims();
    for (std::size_t a = 0; a < d[0]; ++a)
        for (std::size_t b = 0; b < d[1]; ++b)
            for (std::size_t e = 0; e < d[2]; ++e)
                for (std::size_t f = 0; f < d[3]; ++f) {
                    const cd z = c(a, b, e, f);
                    s << c.label(0, a) << ',' << c.label(1, b) << ',' << c.label(2, e) << ',' << c.label(3, f) << ','
                      << detail::fmt(z.real()) << ',' << detail::fmt(z.imag()) << '\n';
                }
    return s.str();
}

inline std::string spectrum_csv(const SingularSpectrum& s) {
    std::string out = "index,sigma\n";
    for (std::size_t i = 0; i < s.size(); ++i) out += std::to_string(i) + "," + detail::fmt(s[i]) + "\n";
    return out;
}

inline std::string remainder_csv(const RemainderReport& r) {
    std::string out = "lambda,residual\n";
    for (std::size_t i = 0; i < r.lambdas.size(); ++i) out += detail::fmt(r.lambdas[i]) + "," + detail::fmt(r.residuals[i]) + "\n";
    out += "slope," + (r.degenerate ? std::string("degenerate") : detail::fmt(r.slope)) + "\n";
    return out;
}

inline void write_text(const std::string& path, const std::string& text) { detail::write_file(path, text); }

}  // namespace bjq::io
