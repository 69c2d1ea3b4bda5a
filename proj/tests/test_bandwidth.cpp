#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace spectral_seed;

namespace {

std::vector<double> as_vector(const Array2D<double>& a) { return {a.flat().begin(), a.flat().end()}; }

DensityField clustered_field(std::uint64_t layout_seed, int k, std::uint64_t data_seed) {
    oracle::TestRng rng(layout_seed);
    const auto specs = oracle::random_cluster_layout(rng, k, 0.25);
    const PointSet pts = generate(specs, data_seed);
    return rasterize(pts, build_grid(pts, 0.004));
}

}  // namespace

TEST_CASE("self correlation is one") {
    oracle::TestRng rng(1);
    Array2D<double> a(8, 8);
    for (double& v : a.flat()) v = rng.uniform();
    CHECK(pearson_correlation(a, a) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("correlation is invariant to positive affine maps") {
    oracle::TestRng rng(2);
    Array2D<double> a(8, 8), b(8, 8);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a.flat()[i] = rng.uniform();
        b.flat()[i] = 3.5 * a.flat()[i] - 7.0;
    }
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("correlation matches the textbook oracle") {
    oracle::TestRng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Array2D<double> a(8, 8), b(8, 8);
        for (double& v : a.flat()) v = rng.uniform();
        for (double& v : b.flat()) v = rng.uniform();
        const double c = pearson_correlation(a, b);
        CHECK(std::abs(c - oracle::textbook_pearson(as_vector(a), as_vector(b))) <= 1e-12);
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("correlation errors") {
    Array2D<double> flat(4, 4, 1.0), other(4, 4), small(3, 4);
    other(1, 1) = 1.0;
    CHECK_THROWS_WITH_AS(pearson_correlation(flat, other), "zero variance", Error);
    CHECK_THROWS_WITH_AS(pearson_correlation(other, flat), "zero variance", Error);
    CHECK_THROWS_AS(pearson_correlation(other, small), Error);
}

TEST_CASE("loose epsilon stops at the earliest legal iteration") {
    const DensityField f = clustered_field(5, 3, 1);
    const auto sel = select_bandwidth(f, 0.9);
    CHECK(sel.trace.converged_n == 2);
    CHECK(sel.trace.entries.size() == 2);
}

TEST_CASE("bandwidth selection matches a scripted reference run") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const DensityField f = clustered_field(10 + seed, 3, seed);
        const double L = f.grid.max_extent();
        const std::vector<double> raw = as_vector(f.values);
        int expected = 0;
        double previous = 0.0;
        std::vector<double> correlations;
        for (int n = 1; n <= 64; ++n) {
            const double c = oracle::textbook_pearson(raw, as_vector(smooth_raw(f, n / L).values));
            correlations.push_back(c);
            if (n >= 2 && std::abs(c - previous) < 0.01) {
                expected = n;
                break;
            }
            previous = c;
        }
        REQUIRE(expected > 0);
        const auto sel = select_bandwidth(f, 0.01);
        CHECK(sel.trace.converged_n == expected);
        REQUIRE(sel.trace.entries.size() == correlations.size());
        for (std::size_t i = 0; i < correlations.size(); ++i)
            CHECK(sel.trace.entries[i].correlation == doctest::Approx(correlations[i]).epsilon(1e-12));
    }
}

TEST_CASE("trace invariants") {
    const DensityField f = clustered_field(21, 4, 7);
    const auto sel = select_bandwidth(f, 0.01);
    const auto& t = sel.trace;
    const double L = f.grid.max_extent();
    REQUIRE(t.converged_n >= 2);
    REQUIRE(static_cast<int>(t.entries.size()) == t.converged_n);
    CHECK(t.epsilon == 0.01);
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto& e = t.entries[i];
        CHECK(e.n == static_cast<int>(i) + 1);
        CHECK(e.sigma_tilde == static_cast<double>(e.n) / L);
        CHECK(e.correlation >= -1.0);
        CHECK(e.correlation <= 1.0);
        if (i == 0) {
            CHECK_FALSE(e.delta.has_value());
        } else {
            REQUIRE(e.delta.has_value());
            CHECK(*e.delta == std::abs(e.correlation - t.entries[i - 1].correlation));
        }
    }
    CHECK(*t.entries.back().delta < 0.01);
    CHECK(sel.field.sigma_tilde == t.entries.back().sigma_tilde);
    CHECK(sel.field.normalized);
}

TEST_CASE("correlation increases with the bandwidth index on clustered data") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const DensityField f = clustered_field(30 + seed, 5, seed);
        ConvergenceTrace trace;
        try {
            trace = select_bandwidth(f, 1e-12, 12).trace;
        } catch (const ConvergenceError& e) {
            trace = e.trace();
        }
        REQUIRE(trace.entries.size() >= 2);
        for (std::size_t i = 1; i < trace.entries.size(); ++i)
            CHECK(trace.entries[i].correlation >= trace.entries[i - 1].correlation - 1e-9);
    }
}

TEST_CASE("non-convergence raises with the trace attached") {
    const DensityField f = clustered_field(40, 3, 2);
    try {
        select_bandwidth(f, 1e-12, 3);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.trace().entries.size() == 3);
        CHECK(e.trace().converged_n == 0);
    }
}

TEST_CASE("bandwidth selection argument checks") {
    const DensityField f = clustered_field(41, 2, 2);
    CHECK_THROWS_AS(select_bandwidth(f, 0.0), Error);
    CHECK_THROWS_AS(select_bandwidth(f, -0.1), Error);
    CHECK_THROWS_AS(select_bandwidth(f, 0.01, 1), Error);
}

TEST_CASE("bandwidth selection is bit-for-bit deterministic") {
    const DensityField f = clustered_field(50, 4, 9);
    const auto a = select_bandwidth(f);
    const auto b = select_bandwidth(f);
    REQUIRE(a.trace.entries.size() == b.trace.entries.size());
    for (std::size_t i = 0; i < a.trace.entries.size(); ++i)
        CHECK(a.trace.entries[i].correlation == b.trace.entries[i].correlation);
    CHECK(a.field.values == b.field.values);
}
