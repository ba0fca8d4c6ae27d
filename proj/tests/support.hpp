#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "wallach/core.hpp"

namespace testing_support {

using wallach::Metric;
using wallach::Vec3;

inline Metric random_metric(std::mt19937_64& rng, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    return {std::exp(d(rng)), std::exp(d(rng)), std::exp(d(rng))};
}

inline Metric random_sigma_metric(std::mt19937_64& rng) { return wallach::normalize_to_sigma(random_metric(rng)); }

// Central differences with step h, scaled to each coordinate.
inline Vec3 fd_gradient(const std::function<double(const Metric&)>& f, const Metric& m, double h = 1e-6) {
    Vec3 g;
    for (int c = 0; c < 3; ++c) {
        Vec3 up = m.vec(), dn = m.vec();
        const double step = h * std::max(1.0, std::abs(up[c]));
        up[c] += step;
        dn[c] -= step;
        g[c] = (f(Metric(up)) - f(Metric(dn))) / (2.0 * step);
    }
    return g;
}

inline double rel_diff(const Vec3& a, const Vec3& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace testing_support
