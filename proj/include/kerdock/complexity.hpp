#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kerdock {

enum class CodebookKind { Kerdock, Fourier, Grassmannian };
enum class SelectionProblem { Beamforming, SmProj2Norm, SmFubiniStudy };

inline const char* kind_name(CodebookKind k) {
    switch (k) {
        case CodebookKind::Kerdock: return "kerdock";
        case CodebookKind::Fourier: return "fourier";
        case CodebookKind::Grassmannian: return "grassmannian";
    }
    return "?";
}

/// Storage and codeword-search cost summary for one codebook family.
struct ComplexityReport {
    CodebookKind kind = CodebookKind::Kerdock;
    SelectionProblem mode = SelectionProblem::Beamforming;
    std::uint64_t storage_bits = 0;
    std::uint64_t multiplies = 0;
    std::uint64_t additions = 0;
};

/// Bits needed to store one codebook of N codewords of shape mt x ms, with Nb
/// bits per real component.
///
///   Grassmannian: element by element, 2 Nb N mt ms.
///   Fourier: a diagonal generator (mt complex) plus an mt x ms slice of the
///     DFT matrix per transmission mode, 2 Nb (mt + mt ms); independent of N.
///   Kerdock: only the generator in symbol form. mt=2: the 2x2 Hadamard sign
///     pattern (4 bits) plus two 2-bit diagonal symbols = 8 bits. mt=4: four
///     2-bit diagonal symbols plus the 2x2 Hadamard sign pattern the full
///     matrix expands from (4 bits) = 12 bits. Independent of both Nb and N.
inline std::uint64_t storage_bits(CodebookKind kind, int mt, int ms, std::uint64_t n, int nb) {
    if (mt < 1 || ms < 1 || n < 1 || nb < 1)
        throw std::invalid_argument("storage_bits: parameters must be positive");
    switch (kind) {
        case CodebookKind::Grassmannian:
            return 2ull * nb * n * mt * ms;
        case CodebookKind::Fourier:
            return 2ull * nb * (std::uint64_t(mt) + std::uint64_t(mt) * ms);
        case CodebookKind::Kerdock:
            if (mt == 2) return 8;
            if (mt == 4) return 12;
            throw std::invalid_argument("storage_bits: Kerdock figures are defined for mt in {2,4}");
    }
    throw std::logic_error("storage_bits: unknown kind");
}

/// Combined storage across several transmission modes, each given as
/// (codebook size N, streams ms). One Kerdock generator serves every mode, so
/// its figure does not accumulate.
inline std::uint64_t storage_bits_combined(CodebookKind kind, int mt,
                                           const std::vector<std::pair<std::uint64_t, int>>& modes,
                                           int nb) {
    if (kind == CodebookKind::Kerdock) return storage_bits(kind, mt, 1, 1, nb);
    std::uint64_t total = 0;
    for (const auto& [n, ms] : modes) total += storage_bits(kind, mt, ms, n, nb);
    return total;
}

/// Arithmetic needed to score every codeword of one codebook at the receiver
/// (the per-codeword effective-channel products; norm bookkeeping is common
/// to all entries and not counted). Kerdock entries are signs and real/imag
/// swaps, so its multiply count is zero in every mode; addition counts match
/// the generic figure.
inline ComplexityReport selection_ops(CodebookKind kind, SelectionProblem mode, std::uint64_t n,
                                      int mt, int mr, int ms) {
    if (mt < 1 || mr < 1 || ms < 1 || n < 1)
        throw std::invalid_argument("selection_ops: parameters must be positive");
    ComplexityReport rep;
    rep.kind = kind;
    rep.mode = mode;
    const bool multiplierless = (kind == CodebookKind::Kerdock);
    switch (mode) {
        case SelectionProblem::Beamforming:
            rep.multiplies = multiplierless ? 0 : n * std::uint64_t(mt) * mr;
            rep.additions = n * std::uint64_t(mr) * (mt - 1);
            break;
        case SelectionProblem::SmProj2Norm:
            rep.multiplies = multiplierless ? 0 : n * std::uint64_t(ms) * mr * mr;
            rep.additions = n * std::uint64_t(mr) * mr * (ms - 1);
            break;
        case SelectionProblem::SmFubiniStudy:
            rep.multiplies = multiplierless ? 0 : n * std::uint64_t(ms) * ms * mr;
            rep.additions = n * std::uint64_t(ms) * ms * (mr - 1);
            break;
    }
    return rep;
}

}  // namespace kerdock
