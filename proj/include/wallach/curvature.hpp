#pragma once

#include <array>
#include <string_view>

#include "wallach/core.hpp"

namespace wallach {

// Curvature functionals of the diagonal metric. Throughout, k is the
// distinguished index and {i, j} = complement(k).

/// Sectional-curvature functional: (x_i - x_j)^2 + 2 x_k (x_i + x_j) - 3 x_k^2.
/// Positive for all k exactly on the positively curved set S of the Wallach spaces.
double gamma(int k, const Metric& m);

/// Ricci functional: x_i x_j + a_k (x_k^2 - x_i^2 - x_j^2). The difference of
/// squares is evaluated in factored form so that points near the invariant
/// lines x_i = x_j (where it nearly cancels) keep their sign.
double lambda(int k, const Metric& m, const SpaceParams& p);

/// Principal Ricci curvature r_k = 1/(2 x_k) + (a_k/2)(x_k/(x_i x_j) - x_j/(x_k x_i) - x_i/(x_k x_j)).
/// Satisfies 2 V r_k = lambda(k, m, p).
double principal_ricci(int k, const Metric& m, const SpaceParams& p);

/// d1 r1 + d2 r2 + d3 r3; throws MissingDimensions without p.d.
double scalar_curvature(const Metric& m, const SpaceParams& p);

/// Exact gradient of gamma(k, .).
Vec3 grad_gamma(int k, const Metric& m);
/// Half of grad_gamma: component x_k + x_l - x_other off the distinguished
/// slot and -3 x_k + x_i + x_j on it. The normal used in the transversality argument.
Vec3 gamma_normal(int k, const Metric& m);
Vec3 grad_lambda(int k, const Metric& m, const SpaceParams& p);
/// (x2 x3, x1 x3, x1 x2).
Vec3 grad_volume(const Metric& m);

std::array<double, 3> gammas(const Metric& m);
std::array<double, 3> lambdas(const Metric& m, const SpaceParams& p);

enum class CurvatureLabel { PositiveSectional, PositiveRicciOnly, MixedRicci, Boundary };

std::string_view to_string(CurvatureLabel label);

struct CurvatureSigns {
    std::array<double, 3> gamma{};
    std::array<double, 3> lambda{};
    bool sec_positive = false;
    bool ricci_positive = false;
    CurvatureLabel label = CurvatureLabel::Boundary;
};

CurvatureSigns classify(const Metric& m, const SpaceParams& p, const Tolerances& tol = {});

}  // namespace wallach
