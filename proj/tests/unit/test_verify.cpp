#include <doctest.h>

#include <cmath>

#include "wallach/io.hpp"
#include "wallach/verify.hpp"

using namespace wallach;

TEST_CASE("suite names") {
    CHECK(parse_suite("kahler") == Suite::Kahler);
    CHECK(to_string(Suite::Theorem2) == "theorem2");
    CHECK_THROWS_AS(parse_suite("nope"), DomainError);
}

TEST_CASE("slope fit") {
    std::vector<double> ts, es;
    for (double t : {1e-4, 1e-3, 1e-2}) {
        ts.push_back(t);
        es.push_back(3.0 * std::pow(t, 8.0 / 3.0));
    }
    CHECK(loglog_slope(ts, es) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("suites pass") {
    for (const auto s : {Suite::Theorem1, Suite::Theorem2, Suite::Inclusion, Suite::Kahler, Suite::Asymptotics}) {
        const auto r = run_suite(s, {}, 7);
        CAPTURE(std::string(to_string(s)));
        for (const auto& c : r.checks) {
            CAPTURE(c.name);
            CAPTURE(c.measured);
            CHECK(c.passed);
        }
        CHECK(!r.checks.empty());
    }
}

TEST_CASE("Kaehler suite needs a = 1/6") {
    CHECK_THROWS_AS(run_suite(Suite::Kahler, {0.2}, 7), KahlerOnlyAtOneSixth);
    CHECK_NOTHROW(run_suite(Suite::Kahler, {1.0 / 6.0}, 7));
    CHECK_THROWS_AS(run_suite(Suite::Theorem2, {0.7}, 7), DomainError);
}

TEST_CASE("reports are deterministic") {
    const auto a = io::to_json(run_suite(Suite::Inclusion, {0.45}, 7)).dump();
    const auto b = io::to_json(run_suite(Suite::Inclusion, {0.45}, 7)).dump();
    CHECK(a == b);
}
