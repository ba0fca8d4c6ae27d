#include "wallach/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace wallach::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_decimal(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
        throw DomainError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

double parse_real(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    const double num = parse_decimal(text.substr(0, slash));
    const double den = parse_decimal(text.substr(slash + 1));
    if (den == 0.0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

std::array<double, 3> parse_triple(std::string_view text) {
    std::array<double, 3> out{};
    std::size_t n = 0;
    while (true) {
        const auto comma = text.find(',');
        if (n == 3) throw DomainError("expected three comma-separated values");
        out[n++] = parse_real(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (n != 3) throw DomainError("expected three comma-separated values");
    return out;
}

std::string curve_csv(const std::vector<CurveSample>& samples) {
    std::string out = "t,x1,x2,x3\n";
    for (const auto& s : samples) {
        out += format_double(s.t) + ',' + format_double(s.m.x1()) + ',' + format_double(s.m.x2()) + ',' +
               format_double(s.m.x3()) + '\n';
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "time,x1,x2,x3,volume_drift\n";
    if (traj.samples.empty()) return out;
    const double v0 = volume(traj.samples.front().m);
    for (const auto& s : traj.samples) {
        out += format_double(s.t) + ',' + format_double(s.m.x1()) + ',' + format_double(s.m.x2()) + ',' +
               format_double(s.m.x3()) + ',' + format_double(std::abs(volume(s.m) - v0) / v0) + '\n';
    }
    return out;
}

CsvTable read_csv(std::string_view text) {
    CsvTable table;
    bool first = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto c = line.find(',', start);
            cells.emplace_back(line.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
            if (c == std::string_view::npos) break;
            start = c + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) row.push_back(parse_decimal(cell));
        table.rows.push_back(std::move(row));
    }
    return table;
}

json to_json(const SpaceParams& p) {
    json j = {{"a", p.a}};
    if (p.a_i) j["a_i"] = *p.a_i;
    if (p.d) j["d"] = *p.d;
    return j;
}

json to_json(const Metric& m) { return json::array({m.x1(), m.x2(), m.x3()}); }

json to_json(const CurvatureSigns& s) {
    return {{"gamma", s.gamma},
            {"lambda", s.lambda},
            {"sec_positive", s.sec_positive},
            {"ricci_positive", s.ricci_positive},
            {"label", std::string(to_string(s.label))}};
}

json to_json(const Trajectory& traj) {
    json samples = json::array();
    const double v0 = traj.samples.empty() ? 1.0 : volume(traj.samples.front().m);
    for (const auto& s : traj.samples) {
        samples.push_back({{"time", s.t}, {"x", to_json(s.m)}, {"volume_drift", std::abs(volume(s.m) - v0) / v0}});
    }
    json events = json::array();
    for (const auto& e : traj.events) {
        events.push_back({{"time", e.t}, {"kind", std::string(to_string(e.kind))}, {"index", e.k}, {"x", to_json(e.m)}});
    }
    const auto& o = traj.options;
    return {{"method", o.method == Method::RK4Fixed ? "rk4" : "rk45"},
            {"dt", o.dt},
            {"rel_tol", o.rel_tol},
            {"abs_tol", o.abs_tol},
            {"t_end", o.t_end},
            {"renormalize", o.renormalize_each_step},
            {"store_every", o.store_every},
            {"termination", std::string(to_string(traj.termination))},
            {"diagnostic", traj.diagnostic},
            {"max_volume_drift", traj.max_volume_drift},
            {"samples", samples},
            {"events", events}};
}

json to_json(const EquilibriaReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        const auto& eq = e.equilibrium;
        json eig = json::array();
        for (const auto& ev : eq.restricted_eigenvalues) eig.push_back({{"re", ev.real()}, {"im", ev.imag()}});
        entries.push_back({{"name", std::string(to_string(eq.name))},
                           {"x", to_json(eq.m)},
                           {"restricted_eigenvalues", eig},
                           {"kind", std::string(to_string(eq.kind))},
                           {"gamma", e.gamma},
                           {"lambda", e.lambda},
                           {"in_sigma_r", e.in_sigma_R},
                           {"in_sigma_s", e.in_sigma_S},
                           {"on_s_boundary", e.on_s_boundary}});
    }
    return {{"a", r.a}, {"equilibria", entries}};
}

json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j = {{"name", c.name},
                  {"measured", c.measured},
                  {"comparison", c.comparison},
                  {"threshold", c.threshold},
                  {"passed", c.passed}};
        j["a"] = c.a ? json(*c.a) : json(nullptr);
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(std::move(j));
    }
    return {{"suite", r.suite}, {"a_values", r.a_values}, {"seed", r.seed}, {"passed", r.passed()}, {"checks", checks}};
}

json curve_json(const CurveId& id, const std::vector<CurveSample>& samples) {
    json rows = json::array();
    for (const auto& s : samples) rows.push_back({{"t", s.t}, {"x", to_json(s.m)}});
    return {{"curve", id.name()}, {"samples", rows}};
}

json output_record(const SpaceParams& p, std::string_view kind, json payload) {
    return {{"schema_version", "1"}, {"space", to_json(p)}, {"payload_kind", kind}, {"payload", std::move(payload)}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    std::random_device rd;
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

}  // namespace wallach::io
