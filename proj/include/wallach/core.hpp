#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

namespace wallach {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveCoordinate : public Error {
public:
    explicit NonPositiveCoordinate(int index);
    int index() const noexcept { return index_; }

private:
    int index_;
};

class MissingDimensions : public Error {
public:
    MissingDimensions();
};

/// Argument outside the domain of a closed-form expression or parametrization.
class DomainError : public Error {
public:
    using Error::Error;
};

class KahlerOnlyAtOneSixth : public Error {
public:
    explicit KahlerOnlyAtOneSixth(double a);
};

class NotAnEquilibrium : public Error {
public:
    explicit NotAnEquilibrium(double field_norm);
};

// ---------------------------------------------------------------------------
// Index helpers (1-based, as used throughout the formulas)
// ---------------------------------------------------------------------------

/// Complementary pair {i, j} of a distinguished index k, in increasing order.
struct Complement {
    int i;
    int j;
};

/// Throws DomainError unless 1 <= k <= 3.
void check_index(int k);
Complement complement(int k);
/// The index different from both i and j (i != j required).
int third_index(int i, int j);

// ---------------------------------------------------------------------------
// Metric
// ---------------------------------------------------------------------------

/// Diagonal invariant metric (x1, x2, x3) with strictly positive entries.
class Metric {
public:
    /// Throws NonPositiveCoordinate on the first coordinate that is not > 0
    /// (NaN included).
    Metric(double x1, double x2, double x3);
    explicit Metric(const Vec3& v) : Metric(v[0], v[1], v[2]) {}

    double x1() const noexcept { return x_[0]; }
    double x2() const noexcept { return x_[1]; }
    double x3() const noexcept { return x_[2]; }
    /// 1-based coordinate access.
    double operator()(int k) const { return x_[static_cast<std::size_t>(k - 1)]; }

    const std::array<double, 3>& coords() const noexcept { return x_; }
    Vec3 vec() const { return {x_[0], x_[1], x_[2]}; }

    bool on_sigma(double tol) const;
    /// Pairwise-distinct coordinates, compared relative to the largest one.
    bool generic(double tol) const;

    Metric scaled(double c) const { return {c * x_[0], c * x_[1], c * x_[2]}; }

    friend bool operator==(const Metric&, const Metric&) = default;

private:
    std::array<double, 3> x_;
};

Metric validate_metric(double x1, double x2, double x3);
double volume(const Metric& m);
/// m / volume(m)^(1/3); lands on the unit-volume surface.
Metric normalize_to_sigma(const Metric& m);

/// Metric built from (distinguished, first complement, second complement)
/// values placed at (k, i, j).
Metric place(int k, double xk, double xi, double xj);

// ---------------------------------------------------------------------------
// Parameters and tolerances
// ---------------------------------------------------------------------------

struct SpaceParams {
    double a = 1.0 / 6.0;
    std::optional<std::array<double, 3>> a_i;
    std::optional<std::array<int, 3>> d;

    /// Equal-parameter space; throws DomainError unless 0 < a < 1/2.
    static SpaceParams equal(double a);
    /// Equal a plus module dimensions.
    static SpaceParams with_dims(double a, std::array<int, 3> d);

    /// Per-index parameter (defaults to a).
    double a_at(int k) const;
    bool has_dims() const noexcept { return d.has_value(); }
    /// Throws DomainError on a broken invariant.
    void validate() const;
};

struct Tolerances {
    double sigma_tol = 1e-10;
    double root_tol = 1e-12;
    double eig_tol = 1e-9;
    double grad_fd_tol = 1e-6;
    /// Curvature values within boundary_tol * max(x)^2 of zero count as boundary.
    double boundary_tol = 1e-9;

    void validate() const;
};

}  // namespace wallach
