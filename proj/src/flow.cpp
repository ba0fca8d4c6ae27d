#include "wallach/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "wallach/curvature.hpp"

namespace wallach {

namespace {

// Field on a raw state vector; intermediate Runge-Kutta stages are not
// guaranteed to stay in the positive octant, so no Metric is formed here.
Vec3 field(const Vec3& x, double a) {
    Vec3 f;
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        const double xk = x[k], xi = x[i], xj = x[j];
        f[k] = xk / xi + xk / xj + 2.0 * a * (xi / xj + xj / xi - 2.0 * xk * xk / (xi * xj)) - 2.0;
    }
    return f;
}

bool in_band(const Vec3& y) {
    return std::all_of(y.begin(), y.end(), [](double v) {
        return std::isfinite(v) && v >= kBlowUpLower && v <= kBlowUpUpper;
    });
}

double prod(const Vec3& y) { return y[0] * y[1] * y[2]; }

// The integrators advance u = log x. The volume is then the linear
// invariant u1 + u2 + u3, which every Runge-Kutta method preserves.
Vec3 log_field(const Vec3& u, double a) {
    const Vec3 x = u.array().exp();
    return field(x, a).cwiseQuotient(x);
}

Vec3 to_log(const Vec3& x) { return x.array().log(); }
Vec3 from_log(const Vec3& u) { return u.array().exp(); }

Vec3 rk4_log_step(const Vec3& u, double h, double a) {
    const Vec3 k1 = log_field(u, a);
    const Vec3 k2 = log_field(u + 0.5 * h * k1, a);
    const Vec3 k3 = log_field(u + 0.5 * h * k2, a);
    const Vec3 k4 = log_field(u + h * k3, a);
    return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b* (error weights)
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct DpResult {
    Vec3 y;
    Vec3 err;
};

DpResult dp_step(const Vec3& y, const Vec3& k1, double h, double a) {
    using D = DormandPrince;
    const Vec3 k2 = log_field(y + h * (D::a21 * k1), a);
    const Vec3 k3 = log_field(y + h * (D::a31 * k1 + D::a32 * k2), a);
    const Vec3 k4 = log_field(y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3), a);
    const Vec3 k5 = log_field(y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4), a);
    const Vec3 k6 =
        log_field(y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5), a);
    const Vec3 y5 = y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
    const Vec3 k7 = log_field(y5, a);
    const Vec3 err =
        h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);
    return {y5, err};
}

std::string position(double t, const Vec3& y) {
    std::ostringstream os;
    os.precision(10);
    os << "t = " << t << ", x = (" << y[0] << ", " << y[1] << ", " << y[2] << ")";
    return os.str();
}

class Recorder {
public:
    Recorder(Trajectory& traj, int store_every, double v0)
        : traj_(traj), store_every_(store_every), v0_(v0) {}

    void drift(const Vec3& y) {
        traj_.max_volume_drift = std::max(traj_.max_volume_drift, std::abs(prod(y) - v0_) / v0_);
    }

    void step(double t, const Vec3& y) {
        last_t_ = t;
        last_y_ = y;
        if (++count_ % store_every_ == 0) push(t, y);
    }

    void finish() {
        if (traj_.samples.empty() || traj_.samples.back().t < last_t_) push(last_t_, last_y_);
    }

    void start(double t, const Vec3& y) {
        last_t_ = t;
        last_y_ = y;
        push(t, y);
    }

private:
    void push(double t, const Vec3& y) { traj_.samples.push_back({t, Metric(y)}); }

    Trajectory& traj_;
    int store_every_;
    double v0_;
    long count_ = 0;
    double last_t_ = 0.0;
    Vec3 last_y_ = Vec3::Ones();
};

Vec3 project(const Vec3& y) { return y / std::cbrt(prod(y)); }

}  // namespace

Vec3 vector_field_equal_a(const Metric& m, const SpaceParams& p) { return field(m.vec(), p.a); }

Vec3 vector_field_general(const Metric& m, const SpaceParams& p) {
    if (!p.d) throw MissingDimensions();
    const auto& d = *p.d;
    const double n = d[0] + d[1] + d[2];
    const double s = scalar_curvature(m, p);
    Vec3 out;
    for (int k = 1; k <= 3; ++k) {
        const double xk = m(k);
        out[k - 1] = -2.0 * xk * principal_ricci(k, m, p) + 2.0 * xk * s / n;
    }
    return out;
}

void IntegratorOptions::validate() const {
    if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerances must be positive");
    if (store_every < 1) throw DomainError("store_every must be a positive integer");
}

std::string_view to_string(CrossingKind kind) {
    return kind == CrossingKind::GammaZero ? "gamma_zero" : "lambda_zero";
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::BlowUp: return "blow_up";
        case Termination::StepFailure: return "step_failure";
    }
    return "completed";
}

Trajectory integrate(const Metric& m0, const SpaceParams& p, const IntegratorOptions& opts) {
    opts.validate();
    p.validate();
    const double a = p.a;

    Trajectory traj;
    traj.options = opts;
    Vec3 y = opts.renormalize_each_step ? normalize_to_sigma(m0).vec() : m0.vec();
    Vec3 u = to_log(y);
    const double v0 = prod(y);
    Recorder rec(traj, opts.store_every, v0);
    rec.start(0.0, y);

    double t = 0.0;
    const double t_end = opts.t_end;

    auto accept = [&](double t_new, const Vec3& u_new) -> bool {
        Vec3 y_new = from_log(u_new);
        if (!in_band(y_new)) {
            traj.termination = Termination::BlowUp;
            traj.diagnostic = "coordinate left [1e-12, 1e12] at " + position(t_new, y_new);
            return false;
        }
        rec.drift(y_new);
        u = u_new;
        if (opts.renormalize_each_step) {
            y_new = project(y_new);
            u = to_log(y_new);
        }
        t = t_new;
        y = y_new;
        rec.step(t, y);
        return true;
    };

    if (opts.method == Method::RK4Fixed) {
        const long n = static_cast<long>(std::ceil(t_end / opts.dt - 1e-9));
        for (long s = 1; s <= n; ++s) {
            const double t_new = std::min(t_end, static_cast<double>(s) * opts.dt);
            if (!accept(t_new, rk4_log_step(u, t_new - t, a))) break;
        }
    } else {
        double h = std::min(opts.dt, t_end);
        Vec3 k1 = log_field(u, a);
        while (t < t_end) {
            h = std::min(h, t_end - t);
            if (h < kMinStep && t_end - t > kMinStep) {
                traj.termination = Termination::StepFailure;
                traj.diagnostic = "adaptive step fell below 1e-14 at " + position(t, y);
                break;
            }
            const auto [u_new, err_vec] = dp_step(u, k1, h, a);
            // Error in x is x times the error in log x; the usual mixed norm is applied to that.
            double err = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double x = std::exp(std::max(u[c], u_new[c]));
                const double sc = opts.abs_tol + opts.rel_tol * x;
                err = std::max(err, x * std::abs(err_vec[c]) / sc);
            }
            if (!std::isfinite(err)) {
                h *= 0.25;
                continue;
            }
            if (err <= 1.0) {
                const double t_new = (t_end - t <= h) ? t_end : t + h;
                if (!accept(t_new, u_new)) break;
                k1 = log_field(u, a);
                const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                h *= grow;
            } else {
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            }
        }
    }
    rec.finish();

    if (opts.detect_events) traj.events = detect_crossings(traj, p);
    return traj;
}

std::vector<CrossingEvent> detect_crossings(const Trajectory& traj, const SpaceParams& p,
                                            const Tolerances& tol) {
    std::vector<CrossingEvent> events;
    const auto& s = traj.samples;
    if (s.size() < 2) return events;

    const int substeps = std::max(8, 4 * traj.options.store_every);
    const bool on_sigma = traj.options.renormalize_each_step;

    using Functional = double (*)(int, const Vec3&, const SpaceParams&);
    const Functional gamma_f = [](int k, const Vec3& y, const SpaceParams&) { return gamma(k, Metric(y)); };
    const Functional lambda_f = [](int k, const Vec3& y, const SpaceParams& q) {
        return lambda(k, Metric(y), q);
    };

    for (std::size_t n = 0; n + 1 < s.size(); ++n) {
        const Vec3 y0 = s[n].m.vec();
        const Vec3 y1 = s[n + 1].m.vec();
        const double t0 = s[n].t;
        const double dt = s[n + 1].t - t0;

        // State at t0 + h along the segment: fixed RK4 replay, continuous in h.
        auto replay = [&](double h) -> Vec3 {
            Vec3 u = to_log(y0);
            const double sub = h / substeps;
            for (int q = 0; q < substeps; ++q) u = rk4_log_step(u, sub, p.a);
            return from_log(u);
        };
        auto chord = [&](double h) -> Vec3 { return y0 + (h / dt) * (y1 - y0); };

        for (const auto kind : {CrossingKind::GammaZero, CrossingKind::LambdaZero}) {
            const Functional g = kind == CrossingKind::GammaZero ? gamma_f : lambda_f;
            for (int k = 1; k <= 3; ++k) {
                const double g0 = g(k, y0, p);
                const double g1 = g(k, y1, p);
                if (!((g0 > 0.0 && g1 <= 0.0) || (g0 < 0.0 && g1 >= 0.0))) continue;

                auto eval = [&](auto&& path, double h, double& out, Vec3& y) {
                    y = path(h);
                    if (!in_band(y)) return false;
                    out = g(k, y, p);
                    return std::isfinite(out);
                };

                auto refine = [&](auto&& path, CrossingEvent& ev) -> bool {
                    double lo = 0.0, hi = dt, glo = g0, ghi = 0.0;
                    Vec3 ylo = y0, yhi;
                    if (!eval(path, hi, ghi, yhi) || (glo > 0.0) == (ghi > 0.0)) return false;
                    for (int it = 0; it < 200; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (mid <= lo || mid >= hi) break;
                        double gm = 0.0;
                        Vec3 ym;
                        if (!eval(path, mid, gm, ym)) return false;
                        const double sc = ym.maxCoeff();
                        if (std::abs(gm) <= tol.root_tol * sc * sc) {
                            lo = hi = mid;
                            ylo = yhi = ym;
                            glo = ghi = gm;
                            break;
                        }
                        if ((gm > 0.0) == (glo > 0.0)) {
                            lo = mid; glo = gm; ylo = ym;
                        } else {
                            hi = mid; ghi = gm; yhi = ym;
                        }
                    }
                    const bool take_lo = std::abs(glo) <= std::abs(ghi);
                    Vec3 y = take_lo ? ylo : yhi;
                    if (on_sigma) y = project(y);
                    ev = {t0 + (take_lo ? lo : hi), kind, k, Metric(y)};
                    return true;
                };

                CrossingEvent ev{t0, kind, k, s[n].m};
                if (!refine(replay, ev)) refine(chord, ev);
                events.push_back(ev);
            }
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const CrossingEvent& l, const CrossingEvent& r) { return l.t < r.t; });
    return events;
}

}  // namespace wallach
