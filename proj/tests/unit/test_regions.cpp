#include <doctest.h>

#include <cmath>

#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"
#include "wallach/equilibria.hpp"
#include "wallach/regions.hpp"

using namespace wallach;

namespace {
const auto sixth = SpaceParams::equal(1.0 / 6.0);
}

TEST_CASE("membership predicates") {
    const Metric one(1, 1, 1);
    CHECK(in_S(one));
    CHECK(in_R(one, sixth));
    CHECK(in_sigma_S(one));
    CHECK(in_sigma_R(one, sixth));
    CHECK_FALSE(in_sigma_S(Metric(2, 2, 2)));
    CHECK(std::abs(gamma(3, s_I_intersection(3))) <= 1e-12);
    const Metric o3 = equilibria_on_sigma(sixth)[3].m;
    CHECK(in_R(o3, sixth));
    CHECK_FALSE(in_S(o3));
    for (double c : {0.1, 10.0}) {
        CHECK(in_S(Metric(1, 2, 2.5).scaled(c)) == in_S(Metric(1, 2, 2.5)));
        CHECK(in_R(Metric(1, 1, 10).scaled(c), sixth) == in_R(Metric(1, 1, 10), sixth));
    }
    CHECK(in_kahler_region(one));
    CHECK_FALSE(in_kahler_region(Metric(1, 1, 2)));
    CHECK_FALSE(in_kahler_region(Metric(1, 1, 3)));
}

TEST_CASE("cone generators") {
    CHECK_THROWS_AS(cone_generator(1, 1.0), DomainError);
    CHECK(cone_generator(1, 1 + 1e-12).mu < 1e-5);
    const auto g = cone_generator(2, 2.0);
    CHECK(g.mu == doctest::Approx(-1 + 2 * std::sqrt(2.0)));
    for (double t : {0.5, 1.0, 3.0}) CHECK(std::abs(gamma(2, g.at(t))) <= 1e-10 * t * t);
    CHECK(cone_X(5, 0.1) == doctest::Approx((0.4 * 4 + 2) * std::sqrt(20.0)));
    CHECK(cone_Y(5, 0.1) == doctest::Approx(0.4 * 25 + 0.4 * 5 + 0.2 - 1));
}

TEST_CASE("lambda along a generator equals (X - Y) t^2") {
    for (double a : {0.05, 1.0 / 6, 0.3, 0.45}) {
        const auto p = SpaceParams::equal(a);
        for (double nu : {1.001, 1.5, 2.0, 10.0, 300.0}) {
            for (int k = 1; k <= 3; ++k) {
                const auto g = cone_generator(k, nu);
                for (double t : {0.1, 1.0, 10.0}) {
                    const double direct = lambda(k, g.at(t), p);
                    const double via = (cone_X(nu, a) - cone_Y(nu, a)) * t * t;
                    CHECK(direct == doctest::Approx(via).epsilon(1e-9).scale(nu * nu * t * t));
                }
            }
            const double X = cone_X(nu, a), Y = cone_Y(nu, a);
            CHECK(X * X - Y * Y == doctest::Approx((nu - 1) * p_nu(nu, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("roots of p are negative") {
    for (double a : {0.01, 0.05, 0.2, 1.0 / 6, 0.3, 0.45, 0.49}) {
        const auto [r1, r2] = p_nu_roots(a);
        CHECK(r1 < 0.0);
        CHECK(r2 < 0.0);
        CHECK(r1 != r2);
        CHECK(std::abs(p_nu(r1, a)) <= 1e-12);
        CHECK(std::abs(p_nu(r2, a)) <= 1e-12);
    }
}

TEST_CASE("S is contained in R") {
    for (double a : {1.0 / 6, 0.45}) {
        const auto r = verify_S_subset_R(SpaceParams::equal(a), 200, 7, 20000);
        CHECK(r.passed());
        CHECK(r.boundary_points == 3 * 200 * 3);
        CHECK(r.random_in_S > 100);
        CHECK(r.min_boundary_lambda > 0.0);
        CHECK(r.min_p_nu > 0.0);
    }
    const auto a1 = verify_S_subset_R(sixth, 20, 42, 5000);
    const auto a2 = verify_S_subset_R(sixth, 20, 42, 5000);
    CHECK(a1.random_in_S == a2.random_in_S);
    CHECK(a1.min_boundary_lambda == a2.min_boundary_lambda);
}

TEST_CASE("boundary sandwich around s_k") {
    for (int k = 1; k <= 3; ++k) {
        for (double t : {0.1, 0.7, 3.0}) {
            const Metric m = sample_s(k, t).m;
            Vec3 lo = m.vec(), hi = m.vec();
            lo[k - 1] *= 1 - 1e-6;
            hi[k - 1] *= 1 + 1e-6;
            CHECK(gamma(k, Metric(lo)) > 0.0);
            CHECK(gamma(k, Metric(hi)) < 0.0);
        }
    }
}

TEST_CASE("cone intersections") {
    for (double a : {0.1, 1.0 / 6, 0.3}) {
        const auto p = SpaceParams::equal(a);
        const auto r = cone_intersections(1, 2, p);
        CHECK(r.max_lambda_line_residual <= 1e-12);
        CHECK((r.sigma_point.vec() - intersection_P(1, 2, p).vec()).norm() <= 1e-12);
        CHECK(r.gamma_min_separation > 1e-8);
    }
    for (double v : {0.5, 1.0, 2.0}) {
        const Metric m(sixth.a * v, sixth.a * v, v);
        CHECK(std::abs(lambda(1, m, sixth)) <= 1e-12);
        CHECK(std::abs(lambda(2, m, sixth)) <= 1e-12);
    }
}
