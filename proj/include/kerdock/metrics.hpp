#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kerdock/codebook.hpp"
#include "kerdock/distances.hpp"
#include "kerdock/mub.hpp"

namespace kerdock {

/// Full pairwise distance table of a codebook under one metric.
struct DistanceSpectrum {
    Metric metric = Metric::Chordal;
    std::size_t n = 0;
    std::vector<double> pairwise;         // n x n, row-major, symmetric, zero diagonal
    double min_offdiag = 0.0;
    std::vector<double> distinct_values;  // ascending, grouped within tol().dedup

    double at(std::size_t k, std::size_t l) const { return pairwise[k * n + l]; }
};

inline DistanceSpectrum spectrum(const Codebook& cb, Metric metric) {
    if (cb.size() < 2) throw std::invalid_argument("spectrum: need at least two codewords");
    if (metric == Metric::Chordal && cb.ms != 1)
        throw std::invalid_argument("spectrum: chordal distance is for beamforming codebooks only");

    DistanceSpectrum sp;
    sp.metric = metric;
    sp.n = cb.size();
    sp.pairwise.assign(sp.n * sp.n, 0.0);
    sp.min_offdiag = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sp.n; ++k)
        for (std::size_t l = k + 1; l < sp.n; ++l) {
            const double d = subspace_distance(metric, cb.codewords[k].dense, cb.codewords[l].dense);
            sp.pairwise[k * sp.n + l] = d;
            sp.pairwise[l * sp.n + k] = d;
            sp.min_offdiag = std::min(sp.min_offdiag, d);
        }

    std::vector<double> vals;
    vals.reserve(sp.n * (sp.n - 1) / 2);
    for (std::size_t k = 0; k < sp.n; ++k)
        for (std::size_t l = k + 1; l < sp.n; ++l) vals.push_back(sp.at(k, l));
    std::sort(vals.begin(), vals.end());
    for (double v : vals)
        if (sp.distinct_values.empty() || v - sp.distinct_values.back() > tol().dedup)
            sp.distinct_values.push_back(v);
    return sp;
}

/// Rankin bound sqrt(N (Mt-1) / (Mt (N-1))) on the minimum chordal distance
/// of an N-line packing.
inline double rankin_bound(std::size_t n, int mt) {
    if (n < 2) throw std::invalid_argument("rankin_bound: needs n > 1");
    const double nn = static_cast<double>(n);
    return std::sqrt(nn * (mt - 1.0) / (mt * (nn - 1.0)));
}

/// Mean squared cross inner product (1/(N(N-1))) sum_{l != l'} |f_l^* f_l'|^2
/// of a beamforming codebook.
inline double average_inner_product(const Codebook& cb) {
    if (cb.ms != 1) throw std::invalid_argument("average_inner_product: beamforming codebooks only");
    if (cb.size() < 2) throw std::invalid_argument("average_inner_product: need at least two codewords");
    double acc = 0.0;
    for (std::size_t k = 0; k < cb.size(); ++k)
        for (std::size_t l = 0; l < cb.size(); ++l) {
            if (k == l) continue;
            acc += std::norm(column_inner(cb.codewords[k].dense, 0, cb.codewords[l].dense, 0));
        }
    const double n = static_cast<double>(cb.size());
    return acc / (n * (n - 1.0));
}

struct MubReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks within-basis orthonormality and the cross-basis inner product
/// magnitude 1/sqrt(mt) on dense bases, collecting every violation.
inline MubReport verify_mub_dense(const std::vector<ComplexMatrix>& bases, int mt, double eps) {
    MubReport rep;
    const double target = 1.0 / std::sqrt(static_cast<double>(mt));
    for (std::size_t n = 0; n < bases.size(); ++n) {
        const ComplexMatrix gram = hermitian(bases[n]) * bases[n];
        for (int r = 0; r < mt; ++r)
            for (int c = 0; c < mt; ++c) {
                const double err = std::abs(gram(r, c) - (r == c ? 1.0 : 0.0));
                if (err > eps) {
                    rep.ok = false;
                    rep.violations.push_back("basis " + std::to_string(n) + " gram(" +
                                             std::to_string(r) + "," + std::to_string(c) +
                                             ") off by " + std::to_string(err));
                }
            }
        for (std::size_t m = n + 1; m < bases.size(); ++m) {
            const ComplexMatrix cross = hermitian(bases[n]) * bases[m];
            for (int r = 0; r < mt; ++r)
                for (int c = 0; c < mt; ++c) {
                    const double err = std::abs(std::abs(cross(r, c)) - target);
                    if (err > eps) {
                        rep.ok = false;
                        rep.violations.push_back("bases " + std::to_string(n) + "," +
                                                 std::to_string(m) + " columns " + std::to_string(r) +
                                                 "," + std::to_string(c) +
                                                 " |inner product| off by " + std::to_string(err));
                    }
                }
        }
    }
    return rep;
}

inline MubReport verify_mub(const MubSet& set, double eps = tol().mub) {
    std::vector<ComplexMatrix> dense;
    dense.reserve(set.bases.size());
    for (const auto& b : set.bases) dense.push_back(b.dense());
    return verify_mub_dense(dense, set.mt, eps);
}

}  // namespace kerdock
