#include "wallach/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "wallach/curvature.hpp"
#include "wallach/flow.hpp"
#include "wallach/regions.hpp"

namespace wallach {

std::string_view to_string(EquilibriumName name) {
    switch (name) {
        case EquilibriumName::O0: return "o0";
        case EquilibriumName::O1: return "o1";
        case EquilibriumName::O2: return "o2";
        case EquilibriumName::O3: return "o3";
    }
    return "o0";
}

std::string_view to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::StableNode: return "StableNode";
        case EquilibriumKind::UnstableNode: return "UnstableNode";
        case EquilibriumKind::HyperbolicSaddle: return "HyperbolicSaddle";
        case EquilibriumKind::DegenerateLinearZero: return "DegenerateLinearZero";
        case EquilibriumKind::Focus: return "Focus";
    }
    return "Focus";
}

double kappa(const SpaceParams& p) {
    p.validate();
    return (1.0 - 2.0 * p.a) / (2.0 * p.a);
}

Mat3 jacobian(const Metric& m, const SpaceParams& p) {
    const double a = p.a;
    Mat3 J;
    for (int k = 1; k <= 3; ++k) {
        const auto [i, j] = complement(k);
        const double xk = m(k), xi = m(i), xj = m(j);
        J(k - 1, k - 1) = 1.0 / xi + 1.0 / xj - 8.0 * a * xk / (xi * xj);
        // f_k is symmetric in (x_i, x_j); the same expression serves both.
        const auto off = [&](double u, double v) {
            return -xk / (u * u) + 2.0 * a * (1.0 / v - v / (u * u) + 2.0 * xk * xk / (u * u * v));
        };
        J(k - 1, i - 1) = off(xi, xj);
        J(k - 1, j - 1) = off(xj, xi);
    }
    return J;
}

namespace {

EquilibriumName name_of(const Metric& m) {
    const double s = m.vec().maxCoeff();
    const double d12 = std::abs(m.x1() - m.x2()), d13 = std::abs(m.x1() - m.x3()),
                 d23 = std::abs(m.x2() - m.x3());
    if (std::max({d12, d13, d23}) <= 1e-9 * s) return EquilibriumName::O0;
    // The odd coordinate is the one outside the closest pair.
    if (d23 <= d12 && d23 <= d13) return EquilibriumName::O1;
    if (d13 <= d12) return EquilibriumName::O2;
    return EquilibriumName::O3;
}

Vec3 eigenvector_2x2(const Eigen::Matrix2d& A, double mu, const Eigen::Matrix<double, 3, 2>& basis) {
    const Eigen::Vector2d v1(A(0, 1), mu - A(0, 0));
    const Eigen::Vector2d v2(mu - A(1, 1), A(1, 0));
    Eigen::Vector2d v = v1.norm() >= v2.norm() ? v1 : v2;
    if (v.norm() == 0.0) v = Eigen::Vector2d(1.0, 0.0);  // A is a multiple of the identity
    const Vec3 w = basis * v.normalized();
    return w.normalized();
}

}  // namespace

Equilibrium classify_on_sigma(const Metric& point, const SpaceParams& p, const Tolerances& tol) {
    const double fnorm = vector_field_equal_a(point, p).norm();
    if (!(fnorm <= 1e-10)) throw NotAnEquilibrium(fnorm);

    const Vec3 n = grad_volume(point).normalized();
    const Vec3 e1 = n.unitOrthogonal();
    const Vec3 e2 = n.cross(e1).normalized();
    Eigen::Matrix<double, 3, 2> basis;
    basis.col(0) = e1;
    basis.col(1) = e2;
    const Eigen::Matrix2d A = basis.transpose() * jacobian(point, p) * basis;

    const double tr = A.trace();
    const double det = A.determinant();
    // Discriminant without the tr^2 - 4 det cancellation at double eigenvalues.
    const double half_gap = 0.5 * (A(0, 0) - A(1, 1));
    const double disc = half_gap * half_gap + A(0, 1) * A(1, 0);

    Equilibrium eq{point, name_of(point), {}, {Vec3::Zero(), Vec3::Zero()}, EquilibriumKind::Focus};
    if (disc >= 0.0) {
        // Stable root pair: the larger-magnitude root first, the other from det.
        const double r = std::sqrt(disc);
        const double big = 0.5 * tr + std::copysign(r, tr);
        const double small = big != 0.0 ? det / big : 0.0;
        const double lo = std::min(big, small), hi = std::max(big, small);
        eq.restricted_eigenvalues = {std::complex<double>(lo), std::complex<double>(hi)};
        eq.eigenvectors = {eigenvector_2x2(A, lo, basis), eigenvector_2x2(A, hi, basis)};
    } else {
        const double im = std::sqrt(-disc);
        eq.restricted_eigenvalues = {std::complex<double>(0.5 * tr, -im), std::complex<double>(0.5 * tr, im)};
    }

    const auto& ev = eq.restricted_eigenvalues;
    const bool real = std::abs(ev[0].imag()) <= tol.eig_tol && std::abs(ev[1].imag()) <= tol.eig_tol;
    const double l0 = ev[0].real(), l1 = ev[1].real();
    if (!real) {
        eq.kind = std::abs(l0) <= tol.eig_tol ? EquilibriumKind::DegenerateLinearZero : EquilibriumKind::Focus;
    } else if (std::abs(l0) <= tol.eig_tol || std::abs(l1) <= tol.eig_tol) {
        eq.kind = EquilibriumKind::DegenerateLinearZero;
    } else if (l0 < 0.0 && l1 < 0.0) {
        eq.kind = EquilibriumKind::StableNode;
    } else if (l0 > 0.0 && l1 > 0.0) {
        eq.kind = EquilibriumKind::UnstableNode;
    } else {
        eq.kind = EquilibriumKind::HyperbolicSaddle;
    }
    return eq;
}

std::vector<Equilibrium> equilibria_on_sigma(const SpaceParams& p, const Tolerances& tol) {
    const double kap = kappa(p);
    std::vector<Equilibrium> out;
    out.push_back(classify_on_sigma(Metric(1.0, 1.0, 1.0), p, tol));
    if (std::abs(kap - 1.0) <= 1e-12) return out;
    const double q = std::cbrt(1.0 / kap);
    for (int k = 1; k <= 3; ++k) out.push_back(classify_on_sigma(place(k, q * kap, q, q), p, tol));
    return out;
}

EquilibriaReport equilibria_in_regions(const SpaceParams& p, const Tolerances& tol) {
    EquilibriaReport report{p.a, {}};
    for (auto& eq : equilibria_on_sigma(p, tol)) {
        const auto g = gammas(eq.m);
        const auto l = lambdas(eq.m, p);
        const double s = eq.m.vec().maxCoeff();
        const bool boundary =
            std::any_of(g.begin(), g.end(), [&](double v) { return std::abs(v) <= tol.boundary_tol * s * s; });
        report.entries.push_back({eq, g, l, in_sigma_R(eq.m, p, tol), in_sigma_S(eq.m, tol), boundary});
    }
    return report;
}

}  // namespace wallach
