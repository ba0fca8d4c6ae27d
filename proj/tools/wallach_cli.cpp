#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"
#include "wallach/equilibria.hpp"
#include "wallach/flow.hpp"
#include "wallach/io.hpp"
#include "wallach/verify.hpp"

namespace {

using namespace wallach;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kTruncated = 3;

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        std::cout.flush();
    } else {
        io::write_atomic(out, content);
    }
}

struct CurveArgs {
    std::string curve;
    std::string a;
    std::optional<double> t_min, t_max;
    int n = 200;
    bool log_spacing = true;
    bool untrimmed = false;
    bool force_kahler = false;
    std::string out;
    std::string format = "csv";
};

int run_sample_curve(const CurveArgs& args) {
    const CurveId id = CurveId::parse(args.curve);
    const bool needs_a = id.family == Family::R || id.family == Family::L;
    if (needs_a && args.a.empty()) throw DomainError("--a is required for curve " + id.name());
    const SpaceParams p = SpaceParams::equal(args.a.empty() ? 1.0 / 6.0 : io::parse_real(args.a));
    if (args.untrimmed && id.family != Family::R) throw DomainError("--untrimmed applies to r curves only");
    if (id.family == Family::L && !args.force_kahler && !is_one_sixth(p.a)) throw KahlerOnlyAtOneSixth(p.a);
    if (args.n < 1) throw DomainError("--n must be positive");

    double lo = 0.01, hi = 100.0;
    if (id.family == Family::R && !args.untrimmed) {
        lo = 1e-3 * p.a;
        hi = p.a;
    }
    lo = args.t_min.value_or(lo);
    hi = args.t_max.value_or(hi);
    if (!(lo <= hi)) throw DomainError("--t-min must not exceed --t-max");
    if (args.log_spacing && !(lo > 0.0)) throw DomainError("log spacing needs --t-min > 0");

    const SampleOptions opts{args.untrimmed, args.force_kahler};
    std::vector<CurveSample> samples;
    for (double t : parameter_grid(lo, hi, args.n, args.log_spacing)) samples.push_back(sample_curve(id, t, p, opts));

    if (args.format == "json") {
        emit(args.out, io::output_record(p, "curve_samples", io::curve_json(id, samples)).dump(2) + "\n");
    } else {
        emit(args.out, io::curve_csv(samples));
    }
    return kOk;
}

struct IntegrateArgs {
    std::string x0;
    std::string a;
    double t_end = 10.0;
    std::string method = "rk45";
    std::optional<double> dt;
    std::optional<double> rel_tol;
    bool renormalize = false;
    bool events = false;
    int store_every = 1;
    std::string out;
    std::string format = "csv";
};

std::string events_csv(const std::vector<CrossingEvent>& events) {
    std::string s = "time,kind,index,x1,x2,x3\n";
    for (const auto& e : events) {
        s += io::format_double(e.t) + ',' + std::string(to_string(e.kind)) + ',' + std::to_string(e.k) + ',' +
             io::format_double(e.m.x1()) + ',' + io::format_double(e.m.x2()) + ',' + io::format_double(e.m.x3()) +
             '\n';
    }
    return s;
}

int run_integrate(const IntegrateArgs& args) {
    const auto x = io::parse_triple(args.x0);
    const Metric m0 = normalize_to_sigma(validate_metric(x[0], x[1], x[2]));
    const SpaceParams p = SpaceParams::equal(io::parse_real(args.a));

    IntegratorOptions opts;
    opts.method = args.method == "rk4" ? Method::RK4Fixed : Method::RK45Adaptive;
    if (args.dt) opts.dt = *args.dt;
    if (args.rel_tol) opts.rel_tol = opts.abs_tol = *args.rel_tol;
    opts.t_end = args.t_end;
    opts.renormalize_each_step = args.renormalize;
    opts.store_every = args.store_every;
    opts.detect_events = args.events;

    const Trajectory traj = integrate(m0, p, opts);
    if (args.format == "json") {
        emit(args.out, io::output_record(p, "trajectory", io::to_json(traj)).dump(2) + "\n");
    } else {
        emit(args.out, io::trajectory_csv(traj));
        if (args.events) {
            if (args.out.empty() || args.out == "-") {
                std::cerr << events_csv(traj.events);
            } else {
                io::write_atomic(args.out + ".events.csv", events_csv(traj.events));
            }
        }
    }
    if (traj.truncated()) {
        std::cerr << "integration truncated (" << to_string(traj.termination) << "): " << traj.diagnostic << "\n";
        return kTruncated;
    }
    return kOk;
}

int run_classify(const std::string& xs, const std::string& a) {
    const auto x = io::parse_triple(xs);
    const Metric m = validate_metric(x[0], x[1], x[2]);
    const SpaceParams p = SpaceParams::equal(io::parse_real(a));
    io::json payload = io::to_json(classify(m, p));
    payload["x"] = io::to_json(m);
    std::cout << io::output_record(p, "classify_result", payload).dump(2) << "\n";
    return kOk;
}

int run_equilibria(const std::string& a, const std::string& out) {
    const SpaceParams p = SpaceParams::equal(io::parse_real(a));
    emit(out, io::output_record(p, "equilibria_report", io::to_json(equilibria_in_regions(p))).dump(2) + "\n");
    return kOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::vector<std::string> a;
    std::uint64_t seed = 7;
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    const Suite suite = parse_suite(args.suite);
    std::vector<double> a_values;
    for (const auto& s : args.a) {
        if (s == "sweep") continue;
        a_values.push_back(io::parse_real(s));
    }
    const VerifyReport report = run_suite(suite, a_values, args.seed);
    for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (c.a) std::cout << " [a=" << io::format_double(*c.a) << "]";
        std::cout << ": " << io::format_double(c.measured) << ' ' << c.comparison << ' '
                  << io::format_double(c.threshold) << "\n";
    }
    const SpaceParams p = SpaceParams::equal(a_values.empty() ? 1.0 / 6.0 : a_values.front());
    if (!args.out.empty()) {
        io::write_atomic(args.out, io::output_record(p, "verify_report", io::to_json(report)).dump(2) + "\n");
    }
    const bool ok = report.passed();
    std::cout << (ok ? "all checks passed" : "verification FAILED") << " (" << report.checks.size() << " checks)\n";
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normalized Ricci flow on generalized Wallach spaces with equal parameters"};
    app.require_subcommand(1);

    CurveArgs curve;
    auto* sc = app.add_subcommand("sample-curve", "Sample an invariant or boundary curve on the unit-volume surface");
    sc->add_option("--curve", curve.curve, "s1..s3, r1i..r3j, l1..l3, I1..I3")->required();
    sc->add_option("--a", curve.a, "Parameter a in (0, 1/2); accepts rationals such as 1/6");
    sc->add_option("--t-min", curve.t_min);
    sc->add_option("--t-max", curve.t_max);
    sc->add_option("--n", curve.n, "Number of samples")->capture_default_str();
    sc->add_flag("--log-spacing,!--linear-spacing", curve.log_spacing, "Geometric parameter grid (default)");
    sc->add_flag("--untrimmed", curve.untrimmed, "Use the full r-curve domain (0, m) or (M, inf)");
    sc->add_flag("--force-kahler", curve.force_kahler, "Allow Kaehler curves at a != 1/6");
    sc->add_option("--out", curve.out, "Output path (stdout when omitted)");
    sc->add_option("--format", curve.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    IntegrateArgs integ;
    auto* ic = app.add_subcommand("integrate", "Integrate the flow from an initial metric");
    ic->add_option("--x0", integ.x0, "x1,x2,x3")->required();
    ic->add_option("--a", integ.a)->required();
    ic->add_option("--t-end", integ.t_end)->capture_default_str();
    ic->add_option("--method", integ.method)->check(CLI::IsMember({"rk4", "rk45"}))->capture_default_str();
    auto* dt = ic->add_option("--dt", integ.dt, "Fixed step (rk4) or initial step (rk45)");
    auto* rt = ic->add_option("--rel-tol", integ.rel_tol, "Error tolerance (rk45)");
    dt->excludes(rt);
    ic->add_flag("--renormalize", integ.renormalize, "Project onto x1 x2 x3 = 1 after every step");
    ic->add_flag("--events", integ.events, "Detect gamma/lambda zero crossings");
    ic->add_option("--store-every", integ.store_every)->check(CLI::PositiveNumber)->capture_default_str();
    ic->add_option("--out", integ.out);
    ic->add_option("--format", integ.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::string cls_x, cls_a = "1/6";
    auto* cc = app.add_subcommand("classify", "Curvature signs of a metric");
    cc->add_option("--x", cls_x, "x1,x2,x3")->required();
    cc->add_option("--a", cls_a)->capture_default_str();

    std::string eq_a, eq_out;
    auto* ec = app.add_subcommand("equilibria", "Singular points on the unit-volume surface");
    ec->add_option("--a", eq_a)->required();
    ec->add_option("--out", eq_out);

    VerifyArgs ver;
    auto* vc = app.add_subcommand("verify", "Run a verification suite");
    vc->add_option("--suite", ver.suite)
        ->check(CLI::IsMember({"all", "theorem1", "theorem2", "inclusion", "kahler", "asymptotics"}))
        ->capture_default_str();
    vc->add_option("--a", ver.a, "Values of a, or 'sweep' for the suite default")->delimiter(',');
    vc->add_option("--seed", ver.seed)->capture_default_str();
    vc->add_option("--out", ver.out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*sc) return run_sample_curve(curve);
        if (*ic) return run_integrate(integ);
        if (*cc) return run_classify(cls_x, cls_a);
        if (*ec) return run_equilibria(eq_a, eq_out);
        if (*vc) return run_verify(ver);
    } catch (const wallach::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
