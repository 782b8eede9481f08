#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bjq/error.hpp"
#include "bjq/quantize.hpp"

namespace bjq {

/// Singular values, nonincreasing. M already carries the dx weight, and on a
/// uniform grid the symmetric sqrt(dx) weighting is a scalar identity, so
/// these approximate the continuum operator's singular values directly.
class SingularSpectrum {
public:
    explicit SingularSpectrum(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            require(std::isfinite(values_[i]) && values_[i] >= 0.0, "singular values must be finite and nonnegative");
            require(i == 0 || values_[i] <= values_[i - 1], "singular values must be nonincreasing");
        }
    }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

inline SingularSpectrum singular_values(const OperatorMatrix& m) {
    require(m.size() <= max_operator_size, "singular values: N <= 512 required");
    if (!m.values().allFinite()) throw NumericError("singular values: non-finite matrix entries");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.values());
    const Eigen::VectorXd s = svd.singularValues();
    return SingularSpectrum(std::vector<double>(s.data(), s.data() + s.size()));
}


/// l^p norm of the singular values; p = infinity gives the largest.
inline double schatten_norm(const SingularSpectrum& s, double p) {
    require(p >= 1.0, "Schatten norm needs p >= 1");
    if (s.size() == 0) return 0.0;
    const double top = s[0];
    if (std::isinf(p) || top == 0.0) return top;
    double acc = 0.0;
    for (double v : s.values()) acc += std::pow(v / top, p);
    return top * std::pow(acc, 1.0 / p);
}

/// Smallest eigenvalue of (M + M^*)/2. Refuses operators that are not
/// Hermitian to 1e-8 instead of silently symmetrizing them.
inline double min_eigenvalue_hermitian(const OperatorMatrix& m) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= 1e-8)) throw ValidationError("operator is not Hermitian (defect " + std::to_string(defect) + ")");
    const Eigen::MatrixXcd h = 0.5 * (m.values() + m.values().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
    return es.eigenvalues()(0);
}

struct DecayLevel {
    double threshold;     ///< fraction of the leading value
    std::size_t index;    ///< number of singular values >= threshold * s_0 (N if it never drops)
    double tail_fraction; ///< sum_{i >= index} s_i / sum_i s_i
};

struct DecayReport {
    std::array<DecayLevel, 3> levels;
};

inline DecayReport singular_decay_report(const SingularSpectrum& s) {
    DecayReport r{};
    const std::array<double, 3> thresholds{1e-1, 1e-2, 1e-3};
    double total = 0.0;
    for (double v : s.values()) total += v;
    for (std::size_t l = 0; l < thresholds.size(); ++l) {
        const double cut = thresholds[l] * (s.size() ? s[0] : 0.0);
        std::size_t idx = 0;
        while (idx < s.size() && s[idx] >= cut && s[idx] > 0.0) ++idx;
        double tail = 0.0;
        for (std::size_t i = idx; i < s.size(); ++i) tail += s[i];
        r.levels[l] = {thresholds[l], idx, total > 0.0 ? tail / total : 0.0};
    }
    return r;
}

}  // namespace bjq
