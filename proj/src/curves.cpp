#include "wallach/curves.hpp"

#include <cmath>
#include <sstream>

namespace wallach {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive(double t, const char* what) {
    if (!(t > 0.0)) throw DomainError(std::string(what) + " must be positive; got " + fmt(t));
}

CurveSample from_generator(int k, double t, double g, bool t_on_i) {
    const double xk = 1.0 / (t * g * g);
    return t_on_i ? CurveSample{t, place(k, xk, t * g, g)} : CurveSample{t, place(k, xk, g, t * g)};
}

}  // namespace

void CurveId::validate() const {
    check_index(k);
    if ((family == Family::R) != branch.has_value()) {
        throw DomainError("a branch is required for r-curves and only for them");
    }
}

std::string CurveId::name() const {
    std::string out;
    switch (family) {
        case Family::S: out = "s"; break;
        case Family::R: out = "r"; break;
        case Family::L: out = "l"; break;
        case Family::I: out = "I"; break;
    }
    out += std::to_string(k);
    if (branch) out += *branch == Branch::TowardI ? "i" : "j";
    return out;
}

CurveId CurveId::parse(std::string_view name) {
    auto bad = [&] { return DomainError("unknown curve '" + std::string(name) + "'"); };
    if (name.size() < 2 || name[1] < '1' || name[1] > '3') throw bad();
    CurveId id{Family::S, name[1] - '0', std::nullopt};
    switch (name[0]) {
        case 's': id.family = Family::S; break;
        case 'r': id.family = Family::R; break;
        case 'l': id.family = Family::L; break;
        case 'I': id.family = Family::I; break;
        default: throw bad();
    }
    if (id.family == Family::R) {
        if (name.size() != 3 || (name[2] != 'i' && name[2] != 'j')) throw bad();
        id.branch = name[2] == 'i' ? Branch::TowardI : Branch::TowardJ;
    } else if (name.size() != 2) {
        throw bad();
    }
    return id;
}

double p0() { return std::cbrt(6.0) / 2.0; }

double alpha(double t) {
    require_positive(t, "alpha parameter t");
    const double root = std::sqrt(t * t - t + 1.0);
    return std::cbrt(3.0 / (t * (t + 1.0 + 2.0 * root)));
}

CurveSample sample_s(int k, double t) {
    check_index(k);
    return from_generator(k, t, alpha(t), true);
}

std::pair<double, double> m_M(const SpaceParams& p) {
    p.validate();
    const double root = std::sqrt((1.0 - 2.0 * p.a) * (1.0 + 2.0 * p.a));
    // Small root via the conjugate to avoid cancellation for small a.
    const double m = 2.0 * p.a / (1.0 + root);
    const double big = (1.0 + root) / (2.0 * p.a);
    return {m, big};
}

double beta(double t, const SpaceParams& p) {
    require_positive(t, "beta parameter t");
    const auto [m, big] = m_M(p);
    const double radicand = t * t * (t - m) * (t - big);
    if (!(radicand > 0.0)) {
        throw DomainError("beta is undefined for t in [m, M] = [" + fmt(m) + ", " + fmt(big) + "]; got t = " + fmt(t));
    }
    return std::pow(radicand, -1.0 / 6.0);
}

CurveSample sample_r(int k, Branch branch, double t, const SpaceParams& p, bool untrimmed) {
    check_index(k);
    require_positive(t, "r-curve parameter t");
    if (!untrimmed && t > p.a) {
        throw DomainError("trimmed r-curve parameter must lie in (0, a]; got t = " + fmt(t));
    }
    return from_generator(k, t, beta(t, p), branch == Branch::TowardI);
}

double phi(double t) {
    require_positive(t, "phi parameter t");
    return std::cbrt(1.0 / (t * t + t));
}

bool is_one_sixth(double a) { return std::abs(a - 1.0 / 6.0) <= 1e-9; }

CurveSample sample_l(int k, double t, const SpaceParams& p, bool allow_any_a) {
    check_index(k);
    if (!allow_any_a && !is_one_sixth(p.a)) throw KahlerOnlyAtOneSixth(p.a);
    return from_generator(k, t, phi(t), true);
}

CurveSample sample_I(int k, double p_param) {
    check_index(k);
    require_positive(p_param, "invariant-curve parameter p");
    return {p_param, place(k, 1.0 / (p_param * p_param), p_param, p_param)};
}

Metric intersection_P(int i, int j, const SpaceParams& p) {
    const int k = third_index(i, j);
    p.validate();
    const double c = std::cbrt(p.a);
    return place(k, 1.0 / (c * c), c, c);
}

Metric s_I_intersection(int k) { return sample_I(k, p0()).m; }

namespace {

void check_asymptotic(double t) {
    if (!(t > 0.0 && t <= 0.1)) throw DomainError("asymptotic expansions need t in (0, 0.1]; got " + fmt(t));
}

}  // namespace

Metric asymptote_s3(double t) {
    check_asymptotic(t);
    const double lead = std::cbrt(1.0 / t);
    return {lead, std::cbrt(t * t), lead};
}

Metric asymptote_r1(double t, const SpaceParams& p) {
    check_asymptotic(t);
    p.validate();
    const double t13 = std::cbrt(t);
    const double t23 = t13 * t13;
    const double c = 1.0 / (6.0 * p.a);
    return {1.0 / t13, t23 + c * t * t23, 1.0 / t13 + c * t23};
}

double project_implicit(Projection curve, double x1, double x2, const SpaceParams& p) {
    const double a = p.a;
    const double u = x1, v = x2;
    const double u2 = u * u, v2 = v * v;
    switch (curve) {
        case Projection::S1p:
            return 3 * u2 * u2 * v2 - 2 * u2 * u * v2 * v - u2 * v2 * v2 - 2 * u2 * v + 2 * u * v2 - 1;
        case Projection::S2p:
            return 3 * v2 * v2 * u2 - 2 * v2 * v * u2 * u - v2 * u2 * u2 - 2 * v2 * u + 2 * v * u2 - 1;
        case Projection::S3p:
            return u2 * u2 * v2 - 2 * u2 * u * v2 * v + u2 * v2 * v2 + 2 * u2 * v + 2 * u * v2 - 3;
        case Projection::R1p: return a * u2 * v2 * ((u - v) * (u + v)) + u * v2 - a;
        case Projection::R2p: return a * u2 * v2 * ((v - u) * (v + u)) + v * u2 - a;
        case Projection::R3p: return a * u2 * u2 * v2 + a * u2 * v2 * v2 - u2 * u * v2 * v - a;
        case Projection::K1p: return u * v * (u - v) - 1;
        case Projection::K2p: return u * v * (v - u) - 1;
        case Projection::K3p: return u * v * (u + v) - 1;
    }
    return 0.0;
}

CurveSample sample_curve(const CurveId& id, double t, const SpaceParams& p, const SampleOptions& opts) {
    id.validate();
    switch (id.family) {
        case Family::S: return sample_s(id.k, t);
        case Family::R: return sample_r(id.k, *id.branch, t, p, opts.untrimmed);
        case Family::L: return sample_l(id.k, t, p, opts.allow_any_a);
        case Family::I: return sample_I(id.k, t);
    }
    throw DomainError("unknown curve family");
}

std::vector<double> parameter_grid(double t_min, double t_max, int n, bool log_spacing) {
    if (n < 1) throw DomainError("sample count must be positive");
    if (!(t_max >= t_min)) throw DomainError("t_max must be >= t_min");
    if (log_spacing && !(t_min > 0.0)) throw DomainError("log spacing needs t_min > 0");
    std::vector<double> ts(static_cast<std::size_t>(n));
    if (n == 1) {
        ts[0] = t_min;
        return ts;
    }
    for (int q = 0; q < n; ++q) {
        const double s = static_cast<double>(q) / (n - 1);
        ts[static_cast<std::size_t>(q)] =
            log_spacing ? t_min * std::pow(t_max / t_min, s) : t_min + s * (t_max - t_min);
    }
    // Pin the endpoints exactly.
    ts.front() = t_min;
    ts.back() = t_max;
    return ts;
}

}  // namespace wallach
