#include "wallach/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wallach {

namespace {

std::string describe(const char* what, double v) {
    std::ostringstream os;
    os.precision(17);
    os << what << v;
    return os.str();
}

}  // namespace

NonPositiveCoordinate::NonPositiveCoordinate(int index)
    : Error("metric coordinate x" + std::to_string(index) + " must be strictly positive"),
      index_(index) {}

MissingDimensions::MissingDimensions()
    : Error("module dimensions d1, d2, d3 are required for this operation") {}

KahlerOnlyAtOneSixth::KahlerOnlyAtOneSixth(double a)
    : Error(describe("Kaehler separatrices are defined for a = 1/6 only; got a = ", a)) {}

NotAnEquilibrium::NotAnEquilibrium(double field_norm)
    : Error(describe("point is not an equilibrium, field norm = ", field_norm)) {}

void check_index(int k) {
    if (k < 1 || k > 3) {
        throw DomainError("index must be 1, 2 or 3; got " + std::to_string(k));
    }
}

Complement complement(int k) {
    check_index(k);
    switch (k) {
        case 1: return {2, 3};
        case 2: return {1, 3};
        default: return {1, 2};
    }
}

int third_index(int i, int j) {
    check_index(i);
    check_index(j);
    if (i == j) throw DomainError("indices must differ");
    return 6 - i - j;
}

Metric::Metric(double x1, double x2, double x3) : x_{x1, x2, x3} {
    for (int k = 0; k < 3; ++k) {
        if (!(x_[static_cast<std::size_t>(k)] > 0.0)) throw NonPositiveCoordinate(k + 1);
    }
}

bool Metric::on_sigma(double tol) const { return std::abs(volume(*this) - 1.0) <= tol; }

bool Metric::generic(double tol) const {
    const double s = *std::max_element(x_.begin(), x_.end());
    const auto apart = [&](double u, double v) { return std::abs(u - v) > tol * s; };
    return apart(x_[0], x_[1]) && apart(x_[1], x_[2]) && apart(x_[0], x_[2]);
}

Metric validate_metric(double x1, double x2, double x3) { return {x1, x2, x3}; }

double volume(const Metric& m) { return m.x1() * m.x2() * m.x3(); }

Metric normalize_to_sigma(const Metric& m) {
    // Scaling by the geometric mean keeps each factor near 1 and avoids
    // under/overflow of the product for extreme coordinates.
    const double log_mean = (std::log(m.x1()) + std::log(m.x2()) + std::log(m.x3())) / 3.0;
    const double c = std::exp(-log_mean);
    Metric out = m.scaled(c);
    // One correction pass absorbs the rounding of exp/log.
    const double v = volume(out);
    return out.scaled(1.0 / std::cbrt(v));
}

Metric place(int k, double xk, double xi, double xj) {
    const auto [i, j] = complement(k);
    std::array<double, 3> x{};
    x[static_cast<std::size_t>(k - 1)] = xk;
    x[static_cast<std::size_t>(i - 1)] = xi;
    x[static_cast<std::size_t>(j - 1)] = xj;
    return {x[0], x[1], x[2]};
}

SpaceParams SpaceParams::equal(double a) {
    SpaceParams p;
    p.a = a;
    p.validate();
    return p;
}

SpaceParams SpaceParams::with_dims(double a, std::array<int, 3> d) {
    SpaceParams p;
    p.a = a;
    p.d = d;
    p.validate();
    return p;
}

double SpaceParams::a_at(int k) const {
    check_index(k);
    return a_i ? (*a_i)[static_cast<std::size_t>(k - 1)] : a;
}

void SpaceParams::validate() const {
    if (!(a > 0.0 && a < 0.5)) throw DomainError(describe("parameter a must lie in (0, 1/2); got ", a));
    if (a_i) {
        for (double v : *a_i) {
            if (!(v > 0.0 && v <= 0.5)) throw DomainError(describe("a_i must lie in (0, 1/2]; got ", v));
        }
    }
    if (d) {
        for (int v : *d) {
            if (v < 1) throw DomainError("module dimensions must be >= 1");
        }
    }
}

void Tolerances::validate() const {
    for (double v : {sigma_tol, root_tol, eig_tol, grad_fd_tol, boundary_tol}) {
        if (!(v > 0.0)) throw DomainError(describe("tolerances must be positive; got ", v));
    }
}

}  // namespace wallach
