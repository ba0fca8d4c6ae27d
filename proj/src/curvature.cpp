#include "wallach/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace wallach {

namespace {

struct Split {
    double k, i, j;
};

Split split(int k, const Metric& m) {
    const auto [i, j] = complement(k);
    return {m(k), m(i), m(j)};
}

// xk^2 - xi^2 - xj^2, pairing xk with the larger of xi, xj.
double square_difference(double xk, double xi, double xj) {
    if (xi >= xj) return (xk - xi) * (xk + xi) - xj * xj;
    return (xk - xj) * (xk + xj) - xi * xi;
}

}  // namespace

double gamma(int k, const Metric& m) {
    const auto [xk, xi, xj] = split(k, m);
    const double d = xi - xj;
    return d * d + 2.0 * xk * (xi + xj) - 3.0 * xk * xk;
}

double lambda(int k, const Metric& m, const SpaceParams& p) {
    const auto [xk, xi, xj] = split(k, m);
    return xi * xj + p.a_at(k) * square_difference(xk, xi, xj);
}

double principal_ricci(int k, const Metric& m, const SpaceParams& p) {
    const auto [xk, xi, xj] = split(k, m);
    const double ak = p.a_at(k);
    return 0.5 / xk + 0.5 * ak * (xk / (xi * xj) - xj / (xk * xi) - xi / (xk * xj));
}

double scalar_curvature(const Metric& m, const SpaceParams& p) {
    if (!p.d) throw MissingDimensions();
    double s = 0.0;
    for (int k = 1; k <= 3; ++k) s += (*p.d)[static_cast<std::size_t>(k - 1)] * principal_ricci(k, m, p);
    return s;
}

Vec3 gamma_normal(int k, const Metric& m) {
    const auto [i, j] = complement(k);
    Vec3 g;
    g[k - 1] = -3.0 * m(k) + m(i) + m(j);
    g[i - 1] = m(k) + m(i) - m(j);
    g[j - 1] = m(k) + m(j) - m(i);
    return g;
}

Vec3 grad_gamma(int k, const Metric& m) { return 2.0 * gamma_normal(k, m); }

Vec3 grad_lambda(int k, const Metric& m, const SpaceParams& p) {
    const auto [i, j] = complement(k);
    const double a = p.a_at(k);
    Vec3 g;
    g[k - 1] = 2.0 * a * m(k);
    g[i - 1] = m(j) - 2.0 * a * m(i);
    g[j - 1] = m(i) - 2.0 * a * m(j);
    return g;
}

Vec3 grad_volume(const Metric& m) {
    return {m.x2() * m.x3(), m.x1() * m.x3(), m.x1() * m.x2()};
}

std::array<double, 3> gammas(const Metric& m) { return {gamma(1, m), gamma(2, m), gamma(3, m)}; }

std::array<double, 3> lambdas(const Metric& m, const SpaceParams& p) {
    return {lambda(1, m, p), lambda(2, m, p), lambda(3, m, p)};
}

std::string_view to_string(CurvatureLabel label) {
    switch (label) {
        case CurvatureLabel::PositiveSectional: return "PositiveSectional";
        case CurvatureLabel::PositiveRicciOnly: return "PositiveRicciOnly";
        case CurvatureLabel::MixedRicci: return "MixedRicci";
        case CurvatureLabel::Boundary: return "Boundary";
    }
    return "Boundary";
}

CurvatureSigns classify(const Metric& m, const SpaceParams& p, const Tolerances& tol) {
    CurvatureSigns out;
    out.gamma = gammas(m);
    out.lambda = lambdas(m, p);
    out.sec_positive = *std::min_element(out.gamma.begin(), out.gamma.end()) > 0.0;
    out.ricci_positive = *std::min_element(out.lambda.begin(), out.lambda.end()) > 0.0;

    // gamma and lambda are quadratic forms; compare against the squared scale
    // so that the label does not depend on the overall size of the metric.
    const double s = std::max({m.x1(), m.x2(), m.x3()});
    const double band = tol.boundary_tol * s * s;
    const auto near_zero = [band](const std::array<double, 3>& v) {
        return std::any_of(v.begin(), v.end(), [band](double x) { return std::abs(x) <= band; });
    };

    if (near_zero(out.gamma) || near_zero(out.lambda)) {
        out.label = CurvatureLabel::Boundary;
    } else if (out.sec_positive) {
        out.label = CurvatureLabel::PositiveSectional;
    } else if (out.ricci_positive) {
        out.label = CurvatureLabel::PositiveRicciOnly;
    } else {
        out.label = CurvatureLabel::MixedRicci;
    }
    return out;
}

}  // namespace wallach
