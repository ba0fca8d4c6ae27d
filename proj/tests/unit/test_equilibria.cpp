#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"
#include "wallach/equilibria.hpp"
#include "wallach/flow.hpp"

using namespace wallach;
using testing_support::random_metric;

namespace {
const auto sixth = SpaceParams::equal(1.0 / 6.0);

double angle(const Vec3& u, const Vec3& v) {
    return std::acos(std::min(1.0, std::abs(u.normalized().dot(v.normalized()))));
}
}  // namespace

TEST_CASE("kappa") {
    CHECK(kappa(sixth) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(kappa(SpaceParams::equal(0.25)) == 1.0);
    CHECK(kappa(SpaceParams::equal(0.4999999)) < 1e-6);
}

TEST_CASE("equilibrium locations") {
    const auto eq = equilibria_on_sigma(sixth);
    REQUIRE(eq.size() == 4);
    CHECK(eq[0].m == Metric(1, 1, 1));
    CHECK(eq[0].name == EquilibriumName::O0);
    CHECK(eq[3].name == EquilibriumName::O3);
    CHECK(std::abs(eq[3].m.x1() - std::pow(2.0, -1.0 / 3)) <= 1e-15);
    CHECK(std::abs(eq[3].m.x3() - std::pow(2.0, 2.0 / 3)) <= 1e-15);
    CHECK(equilibria_on_sigma(SpaceParams::equal(0.25)).size() == 1);

    for (int n = 0; n < 50; ++n) {
        const double a = 0.01 + 0.48 * n / 49.0;
        if (std::abs(a - 0.25) < 1e-9) continue;
        const auto p = SpaceParams::equal(a);
        for (const auto& e : equilibria_on_sigma(p)) {
            CHECK(vector_field_equal_a(e.m, p).norm() <= 1e-12);
            CHECK(e.m.on_sigma(1e-10));
        }
    }
}

TEST_CASE("lambda at (tau kappa, tau, tau)") {
    for (double a : {0.05, 1.0 / 6, 0.3}) {
        const auto p = SpaceParams::equal(a);
        const double kap = kappa(p);
        for (double tau : {0.5, 1.0, 2.0}) {
            for (int k = 1; k <= 3; ++k) {
                CHECK(lambda(k, Metric(tau * kap, tau, tau), p) ==
                      doctest::Approx((1 - 4 * a * a) / (4 * a) * tau * tau).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("jacobian") {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 200; ++n) {
        const Metric m = random_metric(rng);
        const Mat3 J = jacobian(m, sixth);
        CHECK((J * m.vec()).norm() <= 1e-11 * std::max(1.0, J.norm() * m.vec().norm()));
        for (int c = 0; c < 3; ++c) {
            Vec3 up = m.vec(), dn = m.vec();
            const double h = 1e-6 * up[c];
            up[c] += h;
            dn[c] -= h;
            const Vec3 col = (vector_field_equal_a(Metric(up), sixth) - vector_field_equal_a(Metric(dn), sixth)) / (2 * h);
            CHECK((col - J.col(c)).norm() <= 1e-6 * std::max(1.0, col.norm()));
        }
        // permutation equivariance
        Mat3 P;
        P << 0, 1, 0, 0, 0, 1, 1, 0, 0;
        const Metric pm(P * m.vec());
        CHECK((P * J * P.transpose() - jacobian(pm, sixth)).norm() <= 1e-11 * std::max(1.0, J.norm()));
    }
    CHECK((jacobian(Metric(1, 1, 1), sixth) * Vec3::Ones()).norm() <= 1e-15);
}

TEST_CASE("classification table") {
    for (double a : {0.05, 0.1, 1.0 / 6, 0.2, 3.0 / 14, 0.24, 0.26, 0.3, 0.4, 0.45}) {
        const auto eq = equilibria_on_sigma(SpaceParams::equal(a));
        REQUIRE(eq.size() == 4);
        CHECK(eq[0].kind == (a < 0.25 ? EquilibriumKind::UnstableNode : EquilibriumKind::StableNode));
        CHECK(eq[0].restricted_eigenvalues[0].real() == doctest::Approx(3 * (1 - 4 * a)).epsilon(1e-10));
        CHECK(eq[0].restricted_eigenvalues[1].real() == doctest::Approx(3 * (1 - 4 * a)).epsilon(1e-10));
        for (int k = 1; k <= 3; ++k) CHECK(eq[k].kind == EquilibriumKind::HyperbolicSaddle);
    }
    const auto quarter = equilibria_on_sigma(SpaceParams::equal(0.25));
    CHECK(quarter[0].kind == EquilibriumKind::DegenerateLinearZero);
    CHECK(std::abs(quarter[0].restricted_eigenvalues[0]) <= 1e-8);
    CHECK_THROWS_AS(classify_on_sigma(Metric(1, 2, 3), sixth), NotAnEquilibrium);
}

TEST_CASE("manifolds of o_3 at a = 1/6") {
    const auto eq = equilibria_on_sigma(sixth);
    const auto& o3 = eq[3];
    REQUIRE(o3.restricted_eigenvalues[0].real() < 0.0);
    REQUIRE(o3.restricted_eigenvalues[1].real() > 0.0);
    CHECK(angle(o3.eigenvectors[0], Vec3(1, 1, -4)) <= 1e-8);
    CHECK(angle(o3.eigenvectors[1], Vec3(1, -1, 0)) <= 1e-8);
    for (const auto& v : o3.eigenvectors) CHECK(std::abs(v.dot(grad_volume(o3.m))) <= 1e-12);
}

TEST_CASE("equilibria in the curvature regions") {
    for (double a : {0.05, 1.0 / 6, 0.25, 0.3, 0.45}) {
        const auto r = equilibria_in_regions(SpaceParams::equal(a));
        for (const auto& e : r.entries) {
            CHECK(e.in_sigma_R);
            CHECK(*std::min_element(e.lambda.begin(), e.lambda.end()) > 0.0);
            if (e.equilibrium.name != EquilibriumName::O0) CHECK(e.in_sigma_S == (a > 3.0 / 14));
        }
    }
    const auto q = equilibria_in_regions(SpaceParams::equal(0.25));
    REQUIRE(q.entries.size() == 1);
    CHECK(q.entries[0].lambda[0] == doctest::Approx(0.75).epsilon(1e-15));

    const auto crit = equilibria_in_regions(SpaceParams::equal(3.0 / 14));
    for (const auto& e : crit.entries) {
        if (e.equilibrium.name == EquilibriumName::O0) continue;
        const int k = static_cast<int>(e.equilibrium.name);
        CHECK(std::abs(e.gamma[k - 1]) <= 1e-12);
        CHECK(e.on_s_boundary);
    }
    // gamma_k at o_k in closed form
    for (double a : {0.1, 0.3}) {
        const auto p = SpaceParams::equal(a);
        const double kap = kappa(p), q3 = std::cbrt(1 / kap);
        const auto r = equilibria_in_regions(p);
        CHECK(r.entries[1].gamma[0] == doctest::Approx(q3 * q3 * kap * (4 - 3 * kap)).epsilon(1e-12));
    }
}
