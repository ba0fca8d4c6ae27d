#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"
#include "wallach/equilibria.hpp"
#include "wallach/flow.hpp"
#include "wallach/io.hpp"
#include "wallach/regions.hpp"
#include "wallach/verify.hpp"

namespace py = pybind11;
using namespace wallach;

namespace {

using Triple = std::array<double, 3>;

Metric to_metric(const Triple& x) { return validate_metric(x[0], x[1], x[2]); }
Triple to_triple(const Metric& m) { return {m.x1(), m.x2(), m.x3()}; }
Triple to_triple(const Vec3& v) { return {v[0], v[1], v[2]}; }

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Normalized Ricci flow on generalized Wallach spaces with a1 = a2 = a3 = a";

    const auto error = py::register_exception<Error>(mod, "Error", PyExc_ValueError);
    py::register_exception<DomainError>(mod, "DomainError", error.ptr());

    mod.def("volume", [](const Triple& x) { return volume(to_metric(x)); });
    mod.def("normalize", [](const Triple& x) { return to_triple(normalize_to_sigma(to_metric(x))); });
    mod.def("gamma", [](int k, const Triple& x) { return gamma(k, to_metric(x)); }, py::arg("k"), py::arg("x"));
    mod.def("lambda_", [](int k, const Triple& x, double a) { return lambda(k, to_metric(x), SpaceParams::equal(a)); },
            py::arg("k"), py::arg("x"), py::arg("a"));
    mod.def(
        "classify",
        [](const Triple& x, double a) {
            return py::module_::import("json").attr("loads")(
                io::to_json(classify(to_metric(x), SpaceParams::equal(a))).dump());
        },
        py::arg("x"), py::arg("a"));
    mod.def(
        "vector_field",
        [](const Triple& x, double a) { return to_triple(vector_field_equal_a(to_metric(x), SpaceParams::equal(a))); },
        py::arg("x"), py::arg("a"));

    mod.def(
        "sample_curve",
        [](const std::string& name, const std::vector<double>& ts, std::optional<double> a, bool untrimmed,
           bool force_kahler) {
            const CurveId id = CurveId::parse(name);
            const SpaceParams p = SpaceParams::equal(a.value_or(1.0 / 6.0));
            std::vector<Triple> out;
            out.reserve(ts.size());
            for (double t : ts) out.push_back(to_triple(sample_curve(id, t, p, {untrimmed, force_kahler}).m));
            return out;
        },
        py::arg("curve"), py::arg("t"), py::arg("a") = py::none(), py::arg("untrimmed") = false,
        py::arg("force_kahler") = false);
    mod.def("p0", &p0);

    mod.def(
        "integrate",
        [](const Triple& x0, double a, double t_end, const std::string& method, double rel_tol, bool renormalize,
           bool events) {
            IntegratorOptions o;
            o.method = method == "rk4" ? Method::RK4Fixed : Method::RK45Adaptive;
            o.t_end = t_end;
            o.rel_tol = o.abs_tol = rel_tol;
            o.renormalize_each_step = renormalize;
            o.detect_events = events;
            const Trajectory traj = integrate(to_metric(x0), SpaceParams::equal(a), o);
            py::dict d;
            std::vector<double> ts;
            std::vector<Triple> xs;
            for (const auto& s : traj.samples) {
                ts.push_back(s.t);
                xs.push_back(to_triple(s.m));
            }
            py::list ev;
            for (const auto& e : traj.events) {
                ev.append(py::make_tuple(e.t, std::string(to_string(e.kind)), e.k, to_triple(e.m)));
            }
            d["t"] = ts;
            d["x"] = xs;
            d["events"] = ev;
            d["max_volume_drift"] = traj.max_volume_drift;
            d["termination"] = std::string(to_string(traj.termination));
            return d;
        },
        py::arg("x0"), py::arg("a"), py::arg("t_end") = 10.0, py::arg("method") = "rk45", py::arg("rel_tol") = 1e-10,
        py::arg("renormalize") = false, py::arg("events") = false);

    mod.def(
        "equilibria",
        [](double a) {
            return py::module_::import("json").attr("loads")(
                io::to_json(equilibria_in_regions(SpaceParams::equal(a))).dump());
        },
        py::arg("a"));

    mod.def(
        "verify",
        [](const std::string& suite, const std::vector<double>& a, std::uint64_t seed) {
            return py::module_::import("json").attr("loads")(io::to_json(run_suite(parse_suite(suite), a, seed)).dump());
        },
        py::arg("suite"), py::arg("a") = std::vector<double>{}, py::arg("seed") = 7);
}
