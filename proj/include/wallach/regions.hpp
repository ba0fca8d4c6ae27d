#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wallach/core.hpp"

namespace wallach {

/// All gamma_k > 0: positive sectional curvature on the Wallach spaces.
bool in_S(const Metric& m);
/// All lambda_k > 0: positive Ricci curvature.
bool in_R(const Metric& m, const SpaceParams& p);
bool in_sigma_S(const Metric& m, const Tolerances& tol = {});
bool in_sigma_R(const Metric& m, const SpaceParams& p, const Tolerances& tol = {});
/// x_k < x_i + x_j for every k: the domain cut out by the three Kaehler planes.
bool in_kahler_region(const Metric& m);

/// Ray t (nu, mu, 1) on the cone gamma_k = 0, with x_k = nu t, x_i = mu t,
/// x_j = t for {i, j} = complement(k).
struct ConeGenerator {
    int k;
    double nu;
    double mu;
    Vec3 direction;

    Metric at(double t) const { return Metric(t * direction); }
};

/// mu = 1 - nu + 2 sqrt(nu (nu - 1)); DomainError unless nu > 1.
ConeGenerator cone_generator(int k, double nu);

/// Along a generator, lambda_k = (X - Y) t^2 with X, Y as below, and
/// X^2 - Y^2 = (nu - 1) p(nu).
double cone_X(double nu, double a);
double cone_Y(double nu, double a);
double p_nu(double nu, double a);
/// Both roots of p; negative for every a in (0, 1/2).
std::pair<double, double> p_nu_roots(double a);

struct InclusionReport {
    double a = 0.0;
    std::uint64_t seed = 0;
    int rays_per_cone = 0;
    long boundary_points = 0;
    /// min of lambda_k / t^2 over sampled boundary points.
    double min_boundary_lambda = 0.0;
    int p_grid_points = 0;
    double min_p_nu = 0.0;
    long random_samples = 0;
    long random_in_S = 0;
    std::vector<std::string> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// Checks S inside R three ways: lambda_k > 0 on generator rays of every
/// cone gamma_k = 0 (nu - 1 log-spaced up to 999, t in {0.1, 1, 10}),
/// p(nu) > 0 on a grid, and a seeded brute-force scan of random metrics in
/// [0.05, 20]^3. Violations are reported, never thrown.
InclusionReport verify_S_subset_R(const SpaceParams& p, int rays_per_cone, std::uint64_t seed = 7,
                                  long random_samples = 100000, int p_grid_points = 10000);

struct ConeIntersectionReport {
    int i = 1;
    int j = 2;
    /// Direction of the interior common line of Lambda_i and Lambda_j.
    Vec3 lambda_line_direction = Vec3::Zero();
    double max_lambda_line_residual = 0.0;
    /// Where the common line meets the unit-volume surface.
    Metric sigma_point{1.0, 1.0, 1.0};
    /// min over the search of max(|gamma_i|, |gamma_j|) on Gamma_i.
    double gamma_min_separation = 0.0;
    /// Same, divided by max(x)^2.
    double gamma_min_relative_separation = 0.0;
    Metric gamma_closest_point{1.0, 1.0, 1.0};
};

/// Lambda_i, Lambda_j share the line x_i = x_j = a v, x_k = v; Gamma_i and
/// Gamma_j are disjoint in the open octant. The Gamma part is a falsification
/// search on a 300 x 300 grid over [0.05, 20] plus local refinement.
ConeIntersectionReport cone_intersections(int i, int j, const SpaceParams& p);

}  // namespace wallach
