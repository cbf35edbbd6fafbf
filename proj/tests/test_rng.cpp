#include <doctest.h>

#include <cmath>
#include <vector>

#include "thermex/rng.hpp"

using thermex::RngStream;

TEST_CASE("identical seeds give identical draw sequences") {
    RngStream a(1234567);
    RngStream b(1234567);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("uniform stays in [0,1) and differs across seeds") {
    RngStream a(1);
    RngStream b(2);
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double ua = a.uniform();
        CHECK(ua >= 0.0);
        CHECK(ua < 1.0);
        any_diff = any_diff || ua != b.uniform();
    }
    CHECK(any_diff);
}

TEST_CASE("uniform_int covers the whole inclusive range") {
    RngStream rng(7);
    std::vector<int> hits(6, 0);
    for (int i = 0; i < 6000; ++i) {
        const auto v = rng.uniform_int(10, 15);
        REQUIRE(v >= 10);
        REQUIRE(v <= 15);
        ++hits[static_cast<std::size_t>(v - 10)];
    }
    for (int h : hits)
        CHECK(h > 800); // ~1000 expected per value
}

TEST_CASE("poisson matches its mean and variance roughly") {
    RngStream rng(99);
    const double lam = 8.0;
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const int k = rng.poisson(lam);
        REQUIRE(k >= 0);
        sum += k;
        sq += double(k) * k;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(lam).epsilon(0.02));
    CHECK(var == doctest::Approx(lam).epsilon(0.06));
}

TEST_CASE("gauss consumes exactly two uniforms per draw") {
    RngStream a(42);
    RngStream b(42);
    (void)a.gauss();
    b.next_u64();
    b.next_u64();
    // Streams must now be aligned again.
    CHECK(a.next_u64() == b.next_u64());
}
