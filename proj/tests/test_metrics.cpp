#include <doctest.h>

#include <cmath>

#include "ddforge/metrics.hpp"
#include "ddforge/rng.hpp"

using namespace ddforge;

namespace {
std::map<std::string, double> random_distribution(Rng& rng, int outcomes) {
    std::map<std::string, double> d;
    double total = 0;
    for (int i = 0; i < outcomes; ++i) {
        double w = rng.uniform() + 1e-6;
        d["k" + std::to_string(i)] = w;
        total += w;
    }
    for (auto& [k, v] : d) v /= total;
    return d;
}
} // namespace

TEST_CASE("pst") {
    CountsResult r;
    r.shots = 8192;
    r.counts = {{"101", 8192}};
    CHECK(pst(r, "101") == 1.0);
    r.counts = {{"101", 4096}, {"000", 4096}};
    CHECK(pst(r, "101") == 0.5);
    CHECK(pst(r, "111") == 0.0); // missing key
    CountsResult empty;
    CHECK_THROWS(static_cast<void>(pst(empty, "0")));
    // complement property
    double rest = 0;
    for (auto& [k, v] : r.counts)
        if (k != "101") rest += static_cast<double>(v) / r.shots;
    CHECK(pst(r, "101") + rest == 1.0);
}

TEST_CASE("jsd") {
    SUBCASE("identical distributions diverge by zero") {
        std::map<std::string, double> p = {{"0", 0.5}, {"1", 0.5}};
        CHECK(jsd(p, p) == 0.0);
    }
    SUBCASE("point mass vs uniform, hand-evaluated KL terms") {
        std::map<std::string, double> p = {{"0", 1.0}};
        std::map<std::string, double> q = {{"0", 0.5}, {"1", 0.5}};
        // M = {0: 0.75, 1: 0.25}
        double expected = 0.5 * (1.0 * std::log2(1.0 / 0.75)) +
                          0.5 * (0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25));
        CHECK(jsd(p, q) == doctest::Approx(expected).epsilon(1e-15));
    }
    SUBCASE("disjoint point masses diverge maximally") {
        std::map<std::string, double> p = {{"0", 1.0}};
        std::map<std::string, double> q = {{"1", 1.0}};
        CHECK(jsd(p, q) == doctest::Approx(1.0));
    }
    SUBCASE("unnormalized inputs are rejected") {
        std::map<std::string, double> p = {{"0", 0.7}};
        std::map<std::string, double> ok = {{"0", 1.0}};
        CHECK_THROWS(static_cast<void>(jsd(p, ok)));
        CHECK_THROWS(static_cast<void>(jsd(ok, p)));
    }
    SUBCASE("symmetry, bounds, zero iff equal") {
        Rng rng(2024);
        for (int trial = 0; trial < 200; ++trial) {
            auto p = random_distribution(rng, 6);
            auto q = random_distribution(rng, 6);
            double a = jsd(p, q), b = jsd(q, p);
            CHECK(std::abs(a - b) < 1e-12);
            CHECK(a >= 0.0);
            CHECK(a <= 1.0 + 1e-12);
            if (a < 1e-15) {
                for (auto& [k, v] : p) CHECK(v == doctest::Approx(q[k]));
            }
        }
    }
}

TEST_CASE("approximation_ratio") {
    Graph k4 = complete_graph(4);
    SUBCASE("all shots on a maximum cut give 1.0") {
        CountsResult r;
        r.shots = 100;
        r.counts = {{"0011", 100}}; // cut value 4 on K4
        CHECK(approximation_ratio(r, k4) == 1.0);
    }
    SUBCASE("uniform counts on K4 give exactly 0.75") {
        CountsResult r;
        r.shots = 16;
        for (int z = 0; z < 16; ++z) {
            std::string key;
            for (int b = 3; b >= 0; --b) key.push_back(char('0' + ((z >> b) & 1)));
            r.counts[key] = 1;
        }
        CHECK(approximation_ratio(r, k4) == 0.75);
    }
    SUBCASE("all shots on all-zeros give 0") {
        CountsResult r;
        r.shots = 10;
        r.counts = {{"0000", 10}};
        CHECK(approximation_ratio(r, k4) == 0.0);
    }
    SUBCASE("edgeless graph is an error") {
        Graph none;
        none.n = 2;
        CountsResult r;
        r.shots = 1;
        r.counts = {{"00", 1}};
        CHECK_THROWS(static_cast<void>(approximation_ratio(r, none)));
    }
}

TEST_CASE("relative_report conventions") {
    CHECK(relative_report(0.2, 0.4, MetricKind::Pst) == 2.0);
    CHECK(relative_report(0.30, 0.25, MetricKind::Jsd) == 0.30 / 0.25);
    CHECK(relative_report(0.60, 0.668, MetricKind::ApproxRatio) ==
          doctest::Approx(0.068).epsilon(1e-12));
    CHECK_THROWS(static_cast<void>(relative_report(0.0, 0.4, MetricKind::Pst)));
    CHECK_THROWS(static_cast<void>(relative_report(0.0, 0.4, MetricKind::Jsd)));
}
