#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "wallach/core.hpp"

namespace wallach {

enum class EquilibriumName { O0, O1, O2, O3 };

/// Focus is never expected for this system; it is reported rather than hidden.
enum class EquilibriumKind { StableNode, UnstableNode, HyperbolicSaddle, DegenerateLinearZero, Focus };

std::string_view to_string(EquilibriumName name);
std::string_view to_string(EquilibriumKind kind);

struct Equilibrium {
    Metric m;
    EquilibriumName name;
    /// Eigenvalues of the Jacobian restricted to the tangent plane of the
    /// unit-volume surface, ordered by real part.
    std::array<std::complex<double>, 2> restricted_eigenvalues;
    /// Eigenvectors in R^3 (unit length, lying in the tangent plane); only
    /// meaningful when the eigenvalues are real.
    std::array<Vec3, 2> eigenvectors;
    EquilibriumKind kind;
};

/// (1 - 2a) / (2a).
double kappa(const SpaceParams& p);

/// Analytic Jacobian of the equal-a vector field.
Mat3 jacobian(const Metric& m, const SpaceParams& p);

/// Restricts the Jacobian to the orthogonal complement of grad_volume and
/// classifies the 2 x 2 spectrum. Throws NotAnEquilibrium when the field
/// norm exceeds 1e-10.
Equilibrium classify_on_sigma(const Metric& point, const SpaceParams& p, const Tolerances& tol = {});

/// o0 = (1, 1, 1) and o_k = (q kappa, q, q) placed at k, q = kappa^(-1/3).
/// At a = 1/4 the families merge and only o0 is returned.
std::vector<Equilibrium> equilibria_on_sigma(const SpaceParams& p, const Tolerances& tol = {});

struct EquilibriumRegionEntry {
    Equilibrium equilibrium;
    std::array<double, 3> gamma;
    std::array<double, 3> lambda;
    bool in_sigma_R;
    bool in_sigma_S;
    /// Some gamma within boundary_tol * max(x)^2 of zero (o_k on s_k at a = 3/14).
    bool on_s_boundary;
};

struct EquilibriaReport {
    double a;
    std::vector<EquilibriumRegionEntry> entries;
};

EquilibriaReport equilibria_in_regions(const SpaceParams& p, const Tolerances& tol = {});

}  // namespace wallach
