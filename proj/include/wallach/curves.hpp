#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wallach/core.hpp"

namespace wallach {

// Closed-form curves on the unit-volume surface x1 x2 x3 = 1. Each curve is
// attached to a distinguished index k with {i, j} = complement(k), and every
// parametrization has the shape x_k = 1/(t g^2), x_i = t g, x_j = g so that
// the product is exactly 1.
//
//   s_k : gamma_k = 0          g = alpha(t),   t > 0
//   r_k : lambda_k = 0         g = beta(t),    t in (0, a] (trimmed)
//   l_k : x_k = x_i + x_j      g = phi(t),     t > 0 (separatrix at a = 1/6)
//   I_k : x_i = x_j = p, x_k = p^-2

enum class Family { S, R, L, I };

/// Component of r_k: TowardI is r_ki (x_i carries the factor t; meets r_i at
/// P_ki), TowardJ is r_kj.
enum class Branch { TowardI, TowardJ };

struct CurveId {
    Family family;
    int k;
    std::optional<Branch> branch;

    /// Throws DomainError if the branch is missing for R or present otherwise.
    void validate() const;
    /// "s3", "r1i", "l2", "I1", ...
    std::string name() const;
    static CurveId parse(std::string_view name);
};

struct CurveSample {
    double t;
    Metric m;
};

/// Evaluated through the conjugate-rationalized form
/// alpha^3 = 3 / (t (t + 1 + 2 sqrt(t^2 - t + 1))), which has no removable
/// singularity at t = 1 (there it equals cbrt(6)/2). Throws DomainError for t <= 0.
double alpha(double t);
/// cbrt(6)/2, the unique point where I_k meets s_k.
double p0();

CurveSample sample_s(int k, double t);

/// Roots m < 1 < M of t^2 - t/a + 1, with m M = 1.
std::pair<double, double> m_M(const SpaceParams& p);

/// (t^2 (t - m)(t - M))^(-1/6); throws DomainError unless t in (0, m) or (M, inf).
double beta(double t, const SpaceParams& p);

/// Trimmed range t in (0, a] unless untrimmed, then (0, m) or (M, inf).
CurveSample sample_r(int k, Branch branch, double t, const SpaceParams& p, bool untrimmed = false);

double phi(double t);

/// Kaehler curve x_k = x_i + x_j on the unit-volume surface. Requires
/// a = 1/6 (within 1e-9) unless allow_any_a is set.
CurveSample sample_l(int k, double t, const SpaceParams& p, bool allow_any_a = false);
bool is_one_sixth(double a);

CurveSample sample_I(int k, double p_param);

/// Common point of r_i and r_j: x_i = x_j = a^(1/3), x_k = a^(-2/3).
Metric intersection_P(int i, int j, const SpaceParams& p);

/// I_k meets s_k at p = p0.
Metric s_I_intersection(int k);

/// Small-t expansions near the I_2 asymptote, in the coordinate labels where
/// x2 is the vanishing coordinate: s3 ~ (t^-1/3, t^2/3, t^-1/3) and
/// r1 ~ (t^-1/3, t^2/3 + t^5/3/(6a), t^-1/3 + t^2/3/(6a)). t in (0, 0.1].
Metric asymptote_s3(double t);
Metric asymptote_r1(double t, const SpaceParams& p);

/// Planar projections onto (x1, x2) of s_k, r_k and the Kaehler curves.
enum class Projection { S1p, S2p, S3p, R1p, R2p, R3p, K1p, K2p, K3p };

double project_implicit(Projection curve, double x1, double x2, const SpaceParams& p);

struct SampleOptions {
    bool untrimmed = false;
    bool allow_any_a = false;
};

CurveSample sample_curve(const CurveId& id, double t, const SpaceParams& p, const SampleOptions& opts = {});

/// n points from t_min to t_max inclusive; geometric when log_spacing.
std::vector<double> parameter_grid(double t_min, double t_max, int n, bool log_spacing = true);

}  // namespace wallach
