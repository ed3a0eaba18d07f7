#include <catch2/catch_amalgamated.hpp>

#include "kerdock/complexity.hpp"

using namespace kerdock;

TEST_CASE("storage estimates") {
    SECTION("kerdock generators are a fixed handful of bits") {
        REQUIRE(storage_bits(CodebookKind::Kerdock, 4, 1, 20, 16) == 12);
        REQUIRE(storage_bits(CodebookKind::Kerdock, 2, 1, 6, 16) == 8);
        REQUIRE_THROWS_AS(storage_bits(CodebookKind::Kerdock, 3, 1, 6, 16), std::invalid_argument);
        REQUIRE_THROWS_AS(storage_bits(CodebookKind::Kerdock, 8, 1, 6, 16), std::invalid_argument);
    }
    SECTION("reference scenario: N=16 beamforming plus N=8 two-stream precoding") {
        const std::vector<std::pair<std::uint64_t, int>> modes = {{16, 1}, {8, 2}};
        for (int nb : {8, 16, 32}) {
            REQUIRE(storage_bits_combined(CodebookKind::Fourier, 4, modes, nb) ==
                    std::uint64_t(40) * nb);
            REQUIRE(storage_bits_combined(CodebookKind::Grassmannian, 4, modes, nb) ==
                    std::uint64_t(256) * nb);
            REQUIRE(storage_bits_combined(CodebookKind::Kerdock, 4, modes, nb) == 12);
        }
    }
    SECTION("fourier storage is independent of codebook size") {
        REQUIRE(storage_bits(CodebookKind::Fourier, 4, 2, 8, 10) ==
                storage_bits(CodebookKind::Fourier, 4, 2, 64, 10));
    }
    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(storage_bits(CodebookKind::Fourier, 0, 1, 8, 10), std::invalid_argument);
        REQUIRE_THROWS_AS(storage_bits(CodebookKind::Grassmannian, 4, 1, 8, 0), std::invalid_argument);
    }
}

TEST_CASE("selection operation counts") {
    SECTION("beamforming row") {
        const auto g = selection_ops(CodebookKind::Grassmannian, SelectionProblem::Beamforming, 16, 4, 4, 1);
        REQUIRE(g.multiplies == 256);
        REQUIRE(g.additions == 192);
        const auto k = selection_ops(CodebookKind::Kerdock, SelectionProblem::Beamforming, 16, 4, 4, 1);
        REQUIRE(k.multiplies == 0);
        REQUIRE(k.additions == g.additions);
    }
    SECTION("kerdock never multiplies") {
        for (auto mode : {SelectionProblem::Beamforming, SelectionProblem::SmProj2Norm,
                          SelectionProblem::SmFubiniStudy}) {
            REQUIRE(selection_ops(CodebookKind::Kerdock, mode, 30, 4, 4, 2).multiplies == 0);
        }
    }
    SECTION("spatial multiplexing rows") {
        const auto p2 = selection_ops(CodebookKind::Fourier, SelectionProblem::SmProj2Norm, 8, 4, 4, 2);
        REQUIRE(p2.multiplies == 8ull * 2 * 4 * 4);
        REQUIRE(p2.additions == 8ull * 4 * 4 * (2 - 1));
        const auto fs = selection_ops(CodebookKind::Fourier, SelectionProblem::SmFubiniStudy, 8, 4, 4, 2);
        REQUIRE(fs.multiplies == 8ull * 2 * 2 * 4);
        REQUIRE(fs.additions == 8ull * 2 * 2 * (4 - 1));
    }
    SECTION("addition rows match across kinds") {
        for (auto mode : {SelectionProblem::Beamforming, SelectionProblem::SmProj2Norm,
                          SelectionProblem::SmFubiniStudy}) {
            REQUIRE(selection_ops(CodebookKind::Kerdock, mode, 20, 4, 4, 2).additions ==
                    selection_ops(CodebookKind::Grassmannian, mode, 20, 4, 4, 2).additions);
        }
    }
}
