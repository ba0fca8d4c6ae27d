#include "wallach/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"

namespace wallach {

bool in_S(const Metric& m) {
    const auto g = gammas(m);
    return g[0] > 0.0 && g[1] > 0.0 && g[2] > 0.0;
}

bool in_R(const Metric& m, const SpaceParams& p) {
    const auto l = lambdas(m, p);
    return l[0] > 0.0 && l[1] > 0.0 && l[2] > 0.0;
}

bool in_sigma_S(const Metric& m, const Tolerances& tol) { return m.on_sigma(tol.sigma_tol) && in_S(m); }

bool in_sigma_R(const Metric& m, const SpaceParams& p, const Tolerances& tol) {
    return m.on_sigma(tol.sigma_tol) && in_R(m, p);
}

bool in_kahler_region(const Metric& m) {
    return m.x1() < m.x2() + m.x3() && m.x2() < m.x1() + m.x3() && m.x3() < m.x1() + m.x2();
}

ConeGenerator cone_generator(int k, double nu) {
    check_index(k);
    if (!(nu > 1.0)) throw DomainError("cone generator needs nu > 1");
    const double mu = 1.0 - nu + 2.0 * std::sqrt(nu * (nu - 1.0));
    return {k, nu, mu, place(k, nu, mu, 1.0).vec()};
}

double cone_X(double nu, double a) { return (4.0 * a * (nu - 1.0) + 2.0) * std::sqrt(nu * (nu - 1.0)); }

double cone_Y(double nu, double a) { return 4.0 * a * nu * nu + (1.0 - 6.0 * a) * nu + 2.0 * a - 1.0; }

double p_nu(double nu, double a) {
    const double b = 2.0 * a - 1.0;
    return 8.0 * a * nu * nu - (2.0 * a + 3.0) * b * nu + b * b;
}

std::pair<double, double> p_nu_roots(double a) {
    const double b = 2.0 * a - 1.0;
    const double disc = std::sqrt(b * (2.0 * a - 9.0));
    const double c = b / (16.0 * a);
    return {c * (2.0 * a + 3.0 + disc), c * (2.0 * a + 3.0 - disc)};
}

namespace {

std::string describe(const char* what, const Metric& m, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at (" << m.x1() << ", " << m.x2() << ", " << m.x3() << "): " << value;
    return os.str();
}

}  // namespace

InclusionReport verify_S_subset_R(const SpaceParams& p, int rays_per_cone, std::uint64_t seed,
                                  long random_samples, int p_grid_points) {
    p.validate();
    InclusionReport r;
    r.a = p.a;
    r.seed = seed;
    r.rays_per_cone = rays_per_cone;
    r.p_grid_points = p_grid_points;
    r.random_samples = random_samples;
    r.min_boundary_lambda = std::numeric_limits<double>::infinity();
    r.min_p_nu = std::numeric_limits<double>::infinity();

    // (a) boundary rays of S
    const auto offsets = parameter_grid(1e-6, 999.0, std::max(rays_per_cone, 1), true);
    for (int k = 1; k <= 3; ++k) {
        for (double off : offsets) {
            const auto gen = cone_generator(k, 1.0 + off);
            for (double t : {0.1, 1.0, 10.0}) {
                const Metric m = gen.at(t);
                const double l = lambda(k, m, p);
                ++r.boundary_points;
                r.min_boundary_lambda = std::min(r.min_boundary_lambda, l / (t * t));
                if (!(l > 0.0)) r.violations.push_back(describe("lambda <= 0 on cone generator", m, l));
            }
        }
    }

    // (b) the quadratic p(nu)
    for (double off : parameter_grid(1e-6, 999.0, std::max(p_grid_points, 1), true)) {
        const double v = p_nu(1.0 + off, p.a);
        r.min_p_nu = std::min(r.min_p_nu, v);
        if (!(v > 0.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "p(nu) <= 0 at nu = " << 1.0 + off << ": " << v;
            r.violations.push_back(os.str());
        }
    }

    // (c) brute force
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.05, 20.0);
    for (long s = 0; s < random_samples; ++s) {
        const double x1 = coord(rng), x2 = coord(rng), x3 = coord(rng);
        const Metric m(x1, x2, x3);
        if (!in_S(m)) continue;
        ++r.random_in_S;
        if (!in_R(m, p)) {
            const auto l = lambdas(m, p);
            r.violations.push_back(describe("in S but not in R", m, *std::min_element(l.begin(), l.end())));
        }
    }
    return r;
}

namespace {

// Positive sheet of gamma_k = 0 solved for the distinguished coordinate.
double cone_sheet(double u, double v) { return (u + v + 2.0 * std::sqrt(u * u - u * v + v * v)) / 3.0; }

}  // namespace

ConeIntersectionReport cone_intersections(int i, int j, const SpaceParams& p) {
    const int k = third_index(i, j);
    p.validate();
    ConeIntersectionReport r;
    r.i = i;
    r.j = j;

    const auto line = [&](double v) { return place(k, v, p.a * v, p.a * v); };
    r.lambda_line_direction = line(1.0).vec();
    for (double v : parameter_grid(0.1, 10.0, 20, true)) {
        const Metric m = line(v);
        r.max_lambda_line_residual =
            std::max({r.max_lambda_line_residual, std::abs(lambda(i, m, p)), std::abs(lambda(j, m, p))});
    }
    r.sigma_point = line(std::pow(p.a, -2.0 / 3.0));

    // Gamma_i parametrized by the two coordinates other than x_i.
    const auto [u_idx, v_idx] = complement(i);
    const auto point = [&, u_idx = u_idx, v_idx = v_idx](double lu, double lv) {
        const double u = std::exp(lu), v = std::exp(lv);
        std::array<double, 3> x{};
        x[static_cast<std::size_t>(i - 1)] = cone_sheet(u, v);
        x[static_cast<std::size_t>(u_idx - 1)] = u;
        x[static_cast<std::size_t>(v_idx - 1)] = v;
        return Metric(x[0], x[1], x[2]);
    };
    const auto separation = [&](const Metric& m) { return std::max(std::abs(gamma(i, m)), std::abs(gamma(j, m))); };
    const double lo = std::log(0.05), hi = std::log(20.0);
    const auto inside = [&](const Metric& m) {
        return std::all_of(m.coords().begin(), m.coords().end(), [](double x) { return x >= 0.05 && x <= 20.0; });
    };

    constexpr int kGrid = 300;
    double best = std::numeric_limits<double>::infinity();
    double best_u = lo, best_v = lo;
    for (int row = 0; row < kGrid; ++row) {
        for (int col = 0; col < kGrid; ++col) {
            const double lu = lo + (hi - lo) * row / (kGrid - 1);
            const double lv = lo + (hi - lo) * col / (kGrid - 1);
            const Metric m = point(lu, lv);
            if (!inside(m)) continue;
            const double s = separation(m);
            if (s < best) {
                best = s;
                best_u = lu;
                best_v = lv;
            }
        }
    }

    // Compass search around the best grid node.
    double step = (hi - lo) / (kGrid - 1);
    while (step > 1e-12) {
        bool moved = false;
        constexpr std::array<std::pair<double, double>, 4> kMoves{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}};
        for (const auto& [du, dv] : kMoves) {
            const double lu = std::clamp(best_u + du * step, lo, hi);
            const double lv = std::clamp(best_v + dv * step, lo, hi);
            const Metric m = point(lu, lv);
            if (!inside(m)) continue;
            const double s = separation(m);
            if (s < best) {
                best = s;
                best_u = lu;
                best_v = lv;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }

    r.gamma_closest_point = point(best_u, best_v);
    r.gamma_min_separation = best;
    const double sc = r.gamma_closest_point.vec().maxCoeff();
    r.gamma_min_relative_separation = best / (sc * sc);
    return r;
}

}  // namespace wallach
