#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kerdock/channel.hpp"
#include "kerdock/rng.hpp"

using namespace kerdock;

TEST_CASE("substream derivation is a pure function") {
    REQUIRE(substream_seed(1, 0, 0) == substream_seed(1, 0, 0));
    REQUIRE(substream_seed(1, 0, 0) != substream_seed(1, 0, 1));
    REQUIRE(substream_seed(1, 0, 0) != substream_seed(1, 1, 0));
    REQUIRE(substream_seed(1, 0, 0) != substream_seed(2, 0, 0));
}

TEST_CASE("trial streams replay exactly") {
    TrialRng a(substream_seed(7, 3, 11));
    TrialRng b(substream_seed(7, 3, 11));
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

    TrialRng c(substream_seed(7, 3, 11));
    TrialRng d(substream_seed(7, 3, 12));
    bool all_same = true;
    for (int i = 0; i < 16; ++i) all_same = all_same && (c.next_u64() == d.next_u64());
    REQUIRE_FALSE(all_same);
}

TEST_CASE("uniforms live in [0, 1)") {
    TrialRng r(1234);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("channel draws are zero-mean unit-variance complex gaussians") {
    const int draws = 100000;
    double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
    for (int t = 0; t < draws; ++t) {
        TrialRng rng(substream_seed(99, 0, std::uint64_t(t)));
        const ComplexMatrix h = draw_channel(rng, 2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                sum_re += h(r, c).real();
                sum_im += h(r, c).imag();
                sum_sq += std::norm(h(r, c));
            }
    }
    const double n = 4.0 * draws;
    REQUIRE(std::abs(sum_re / n) < 0.02);
    REQUIRE(std::abs(sum_im / n) < 0.02);
    REQUIRE(sum_sq / n == Catch::Approx(1.0).epsilon(0.02));
}

TEST_CASE("channel draw is deterministic for a fixed seed") {
    TrialRng a(substream_seed(5, 2, 77));
    TrialRng b(substream_seed(5, 2, 77));
    const ComplexMatrix ha = draw_channel(a, 4, 4);
    const ComplexMatrix hb = draw_channel(b, 4, 4);
    REQUIRE(ha == hb);
}
