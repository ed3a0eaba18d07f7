#pragma once

#include <cstdint>
#include <stdexcept>

#include "kerdock/codebook.hpp"
#include "kerdock/linalg.hpp"
#include "kerdock/quaternary.hpp"

namespace kerdock {

/// Arithmetic ledger for a codeword search. Counts follow the dense
/// accumulation schedule (mt terms, mt-1 additions per output entry) so that
/// quaternary and generic paths report identical addition counts; the final
/// per-entry real scaling is sign_or_swap-class work, not a general complex
/// multiply.
struct OpCounter {
    std::uint64_t complex_multiplies = 0;
    std::uint64_t complex_additions = 0;
    std::uint64_t sign_or_swap_ops = 0;

    void reset() { *this = OpCounter{}; }
    OpCounter& operator+=(const OpCounter& o) {
        complex_multiplies += o.complex_multiplies;
        complex_additions += o.complex_additions;
        sign_or_swap_ops += o.sign_or_swap_ops;
        return *this;
    }
};

/// h * decode(w) without complex multiplies: each quaternary entry is a sign
/// change or a real/imag swap with sign change, and the matrix scale is one
/// real scaling per output entry at the end.
inline ComplexMatrix quaternary_apply(const ComplexMatrix& h, const QuaternaryMatrix& w,
                                      OpCounter& ops) {
    if (h.cols() != w.rows) throw DimensionMismatch("quaternary_apply: inner dimensions differ");
    ComplexMatrix out(h.rows(), w.cols);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < w.cols; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < w.rows; ++k) {
                const Complex& x = h(i, k);
                switch (w.at(k, j)) {
                    case QSymbol::Zero: break;
                    case QSymbol::PlusOne:
                        acc += x;
                        ++ops.sign_or_swap_ops;
                        break;
                    case QSymbol::MinusOne:
                        acc -= x;
                        ++ops.sign_or_swap_ops;
                        break;
                    case QSymbol::PlusJ:
                        acc += Complex{-x.imag(), x.real()};
                        ++ops.sign_or_swap_ops;
                        break;
                    case QSymbol::MinusJ:
                        acc += Complex{x.imag(), -x.real()};
                        ++ops.sign_or_swap_ops;
                        break;
                }
            }
            ops.complex_additions += w.rows - 1;
            if (w.has_unit_phase()) {
                out(i, j) = acc * w.scale;
                ++ops.sign_or_swap_ops;
            } else {
                out(i, j) = acc * (w.phase * w.scale);
                ++ops.complex_multiplies;
            }
        }
    return out;
}

/// Plain complex matmul with the same op ledger a codebook without symbol
/// structure would pay.
inline ComplexMatrix counted_matmul(const ComplexMatrix& h, const ComplexMatrix& w, OpCounter& ops) {
    if (h.cols() != w.rows()) throw DimensionMismatch("counted_matmul: inner dimensions differ");
    ComplexMatrix out(h.rows(), w.cols());
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < h.cols(); ++k) acc += h(i, k) * w(k, j);
            ops.complex_multiplies += h.cols();
            ops.complex_additions += h.cols() - 1;
            out(i, j) = acc;
        }
    return out;
}

enum class ApplyPath { Auto, Quaternary, Generic };

struct SelectionResult {
    std::size_t index = 0;   // position in the codebook
    double score = 0.0;      // effective gain for beamforming, smin for precoding
    OpCounter counter;
};

namespace detail {

inline ComplexMatrix apply_codeword(const ComplexMatrix& h, const Codeword& w, ApplyPath path,
                                    OpCounter& ops) {
    const bool use_q =
        path == ApplyPath::Quaternary || (path == ApplyPath::Auto && w.quaternary.has_value());
    if (use_q) {
        if (!w.quaternary)
            throw std::invalid_argument("quaternary path requested for a codeword without codes");
        return quaternary_apply(h, *w.quaternary, ops);
    }
    return counted_matmul(h, w.dense, ops);
}

}  // namespace detail

/// Effective-SNR beamformer selection: argmax over the codebook of the
/// receive gain ||H w||^2. Ties keep the lowest index.
inline SelectionResult select_beamformer(const ComplexMatrix& h, const Codebook& cb,
                                         ApplyPath path = ApplyPath::Auto) {
    if (cb.mode != CodebookMode::Beamforming)
        throw std::invalid_argument("select_beamformer: needs a beamforming codebook");
    if (h.cols() != static_cast<std::size_t>(cb.mt))
        throw DimensionMismatch("select_beamformer: channel columns != mt");
    SelectionResult res;
    double best = -1.0;
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const ComplexMatrix hw = detail::apply_codeword(h, cb.codewords[i], path, res.counter);
        double gain = 0.0;
        for (std::size_t r = 0; r < hw.rows(); ++r) gain += std::norm(hw(r, 0));
        if (gain > best) {
            best = gain;
            res.index = i;
        }
    }
    res.score = best;
    return res;
}

/// Minimum-singular-value precoder selection: argmax over the codebook of
/// smin(H W). Ties keep the lowest index.
inline SelectionResult select_precoder_msv(const ComplexMatrix& h, const Codebook& cb,
                                           ApplyPath path = ApplyPath::Auto) {
    if (cb.mode != CodebookMode::Precoding)
        throw std::invalid_argument("select_precoder_msv: needs a precoding codebook");
    if (h.cols() != static_cast<std::size_t>(cb.mt))
        throw DimensionMismatch("select_precoder_msv: channel columns != mt");
    if (h.rows() < static_cast<std::size_t>(cb.ms))
        throw DimensionMismatch("select_precoder_msv: needs mr >= ms");
    SelectionResult res;
    double best = -1.0;
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const ComplexMatrix hw = detail::apply_codeword(h, cb.codewords[i], path, res.counter);
        const double smin = svd(hw).singular_values.back();
        if (smin > best) {
            best = smin;
            res.index = i;
        }
    }
    res.score = best;
    return res;
}

/// Unquantized optimum: the first ms right singular vectors of the channel.
inline ComplexMatrix optimal_precoder(const ComplexMatrix& h, int ms) {
    if (ms < 1 || static_cast<std::size_t>(ms) > std::min(h.rows(), h.cols()))
        throw DimensionMismatch("optimal_precoder: ms out of range");
    const SvdResult s = svd(h);
    std::vector<std::size_t> cols(ms);
    for (int c = 0; c < ms; ++c) cols[c] = c;
    return s.v.columns(cols);
}

/// Approximate beamformer selection: minimize the chordal distance to the
/// dominant right singular vector instead of testing the effective SNR
/// directly. Reported score is the receive gain of the chosen codeword.
inline SelectionResult select_beamformer_chordal(const ComplexMatrix& h, const Codebook& cb) {
    if (cb.mode != CodebookMode::Beamforming)
        throw std::invalid_argument("select_beamformer_chordal: needs a beamforming codebook");
    const ComplexMatrix v1 = optimal_precoder(h, 1);
    SelectionResult res;
    double best_ip = -1.0;
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const double ip = std::abs(column_inner(cb.codewords[i].dense, 0, v1, 0));
        res.counter.complex_multiplies += cb.codewords[i].quaternary ? 0 : h.cols();
        res.counter.complex_additions += h.cols() - 1;
        if (ip > best_ip) {
            best_ip = ip;
            res.index = i;
        }
    }
    OpCounter scratch;
    const ComplexMatrix hw = detail::apply_codeword(h, cb.codewords[res.index], ApplyPath::Auto, scratch);
    double gain = 0.0;
    for (std::size_t r = 0; r < hw.rows(); ++r) gain += std::norm(hw(r, 0));
    res.score = gain;
    return res;
}

}  // namespace kerdock
