#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "bjq/error.hpp"

namespace bjq {

/// Quadrature rule on [0, 1] for the averaging variable t.
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
        : nodes_(std::move(nodes)), weights_(std::move(weights)) {
        require(!nodes_.empty() && nodes_.size() == weights_.size(), "quadrature nodes and weights must match");
        double total = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            require(nodes_[i] >= 0.0 && nodes_[i] <= 1.0, "quadrature node outside [0, 1]");
            require(weights_[i] > 0.0, "quadrature weights must be positive");
            total += weights_[i];
        }
        require(std::abs(total - 1.0) <= 1e-14, "quadrature weights must sum to 1");
    }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    template <class Fn>
    auto integrate(Fn&& fn) const {
        auto acc = weights_[0] * fn(nodes_[0]);
        for (std::size_t i = 1; i < nodes_.size(); ++i) acc += weights_[i] * fn(nodes_[i]);
        return acc;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// n-point Gauss-Legendre rule mapped to [0, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(std::size_t n) {
    require(n >= 1 && n <= 512, "Gauss-Legendre node count must be in [1, 512]");
    std::vector<double> nodes(n), weights(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // nodes on [-1, 1] are +-z; map to [0, 1]
        const double w = 1.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = 0.5 * (1.0 - z);
        nodes[n - 1 - i] = 0.5 * (1.0 + z);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.5;
    // normalize so the weights sum to exactly one within rounding
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    return QuadratureRule(std::move(nodes), std::move(weights));
}

}  // namespace bjq
