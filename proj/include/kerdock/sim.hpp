#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kerdock/channel.hpp"
#include "kerdock/codebook.hpp"
#include "kerdock/qam.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/select.hpp"

namespace kerdock {

struct NotBracketed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SelectionRule { EffSnr, MsvSc, EffSnrChordal };

struct SimConfig {
    int mt = 4;
    int mr = 4;
    int ms = 1;
    int modulation = 4;                 // QAM order, 4/16/64
    std::vector<double> snr_db;         // Es/N0 grid in dB
    std::uint64_t trials_per_point = 1000;
    std::uint64_t seed = 1;
    SelectionRule selection = SelectionRule::EffSnr;
    int threads = 1;
};

struct SimPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double vser = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal approximation, on vser or rate
    double rate_bpcu = 0.0;
    std::uint64_t erasures = 0;  // near-singular effective channels, counted as errors
};

struct SimResult {
    bool has_rate = false;
    std::vector<SimPoint> points;
};

namespace detail {

// Trials are aggregated in fixed blocks merged in index order, so sums of
// floating-point rate samples come out bit-identical for any thread count.
constexpr std::uint64_t kBlockTrials = 1024;

struct BlockStats {
    std::uint64_t errors = 0, erasures = 0;
    double rate_sum = 0.0, rate_sumsq = 0.0;
};

struct TrialOutcome {
    bool error = false;
    bool erasure = false;
    double rate = 0.0;
};

template <typename TrialFn>
SimPoint run_point(const SimConfig& cfg, std::size_t point_idx, double snr_db, bool rate_mode,
                   const TrialFn& fn) {
    const std::uint64_t trials = cfg.trials_per_point;
    const std::uint64_t nblocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<BlockStats> blocks(nblocks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        while (true) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) break;
            BlockStats st;
            const std::uint64_t lo = b * kBlockTrials;
            const std::uint64_t hi = std::min(trials, lo + kBlockTrials);
            for (std::uint64_t t = lo; t < hi; ++t) {
                TrialRng rng(substream_seed(cfg.seed, point_idx, t));
                const TrialOutcome oc = fn(rng);
                if (oc.error) ++st.errors;
                if (oc.erasure) ++st.erasures;
                st.rate_sum += oc.rate;
                st.rate_sumsq += oc.rate * oc.rate;
            }
            blocks[b] = st;
        }
    };

    const int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SimPoint p;
    p.snr_db = snr_db;
    p.trials = trials;
    double rate_sum = 0.0, rate_sumsq = 0.0;
    for (const BlockStats& st : blocks) {  // fixed merge order
        p.errors += st.errors;
        p.erasures += st.erasures;
        rate_sum += st.rate_sum;
        rate_sumsq += st.rate_sumsq;
    }
    p.vser = double(p.errors) / double(trials);
    if (rate_mode) {
        p.rate_bpcu = rate_sum / double(trials);
        const double var = std::max(0.0, rate_sumsq / double(trials) - p.rate_bpcu * p.rate_bpcu);
        p.ci_halfwidth = 1.96 * std::sqrt(var / double(trials));
    } else {
        p.ci_halfwidth = 1.96 * std::sqrt(p.vser * (1.0 - p.vser) / double(trials));
    }
    return p;
}

inline ComplexMatrix pick_beamformer(const ComplexMatrix& h, const Codebook* cb,
                                     SelectionRule rule) {
    if (!cb) return optimal_precoder(h, 1);
    const SelectionResult r = rule == SelectionRule::EffSnrChordal
                                  ? select_beamformer_chordal(h, *cb)
                                  : select_beamformer(h, *cb);
    return cb->codewords[r.index].dense;
}

inline ComplexMatrix pick_precoder(const ComplexMatrix& h, const Codebook* cb, int ms) {
    if (!cb) return optimal_precoder(h, ms);
    return cb->codewords[select_precoder_msv(h, *cb).index].dense;
}

}  // namespace detail

/// Beamforming link: one QAM symbol per use through y = H f s + n, MRC
/// combining, minimum-distance slicing. cb == nullptr simulates perfect CSIT
/// (the dominant right singular vector as beamformer).
inline SimResult run_beamforming_vser(const SimConfig& cfg, const Codebook* cb) {
    if (cfg.ms != 1) throw std::invalid_argument("run_beamforming_vser: ms must be 1");
    if (cb && (cb->mode != CodebookMode::Beamforming || cb->mt != cfg.mt))
        throw std::invalid_argument("run_beamforming_vser: codebook does not match configuration");
    const Qam qam(cfg.modulation);
    SimResult out;
    for (std::size_t pi = 0; pi < cfg.snr_db.size(); ++pi) {
        const double n0 = std::pow(10.0, -cfg.snr_db[pi] / 10.0);
        const double noise_amp = std::sqrt(n0);
        auto trial = [&](TrialRng& rng) {
            detail::TrialOutcome oc;
            const ComplexMatrix h = draw_channel(rng, cfg.mr, cfg.mt);
            const ComplexMatrix f = detail::pick_beamformer(h, cb, cfg.selection);
            const ComplexMatrix hf = h * f;
            const unsigned word = unsigned(rng.next_u64() & std::uint64_t(qam.order() - 1));
            const Complex s = qam.modulate(word);
            Complex z{0.0, 0.0};
            double gain = 0.0;
            for (std::size_t r = 0; r < hf.rows(); ++r) {
                const Complex y = hf(r, 0) * s + noise_amp * rng.cnormal();
                z += std::conj(hf(r, 0)) * y;
                gain += std::norm(hf(r, 0));
            }
            oc.error = qam.demodulate(z / gain) != word;
            return oc;
        };
        out.points.push_back(detail::run_point(cfg, pi, cfg.snr_db[pi], false, trial));
    }
    return out;
}

/// Spatial multiplexing link: ms QAM streams through y = sqrt(Es/ms) H F s + n,
/// zero-forcing detection, a vector symbol error when any stream slices wrong.
/// A near-singular effective channel counts as an error and is tallied as an
/// erasure.
inline SimResult run_sm_vser(const SimConfig& cfg, const Codebook* cb) {
    if (cfg.ms < 2 || cfg.ms > std::min(cfg.mt, cfg.mr))
        throw std::invalid_argument("run_sm_vser: needs 1 < ms <= min(mt, mr)");
    if (cb && (cb->mode != CodebookMode::Precoding || cb->mt != cfg.mt || cb->ms != cfg.ms))
        throw std::invalid_argument("run_sm_vser: codebook does not match configuration");
    const Qam qam(cfg.modulation);
    SimResult out;
    for (std::size_t pi = 0; pi < cfg.snr_db.size(); ++pi) {
        const double n0 = std::pow(10.0, -cfg.snr_db[pi] / 10.0);
        const double noise_amp = std::sqrt(n0);
        const double tx_amp = std::sqrt(1.0 / double(cfg.ms));
        auto trial = [&](TrialRng& rng) {
            detail::TrialOutcome oc;
            const ComplexMatrix h = draw_channel(rng, cfg.mr, cfg.mt);
            const ComplexMatrix f = detail::pick_precoder(h, cb, cfg.ms);
            const ComplexMatrix hf = h * f;
            std::vector<unsigned> words(cfg.ms);
            ComplexMatrix s(cfg.ms, 1);
            for (int k = 0; k < cfg.ms; ++k) {
                words[k] = unsigned(rng.next_u64() & std::uint64_t(qam.order() - 1));
                s(k, 0) = qam.modulate(words[k]);
            }
            ComplexMatrix y(cfg.mr, 1);
            for (int r = 0; r < cfg.mr; ++r) {
                Complex acc{0.0, 0.0};
                for (int k = 0; k < cfg.ms; ++k) acc += hf(r, k) * s(k, 0);
                y(r, 0) = tx_amp * acc + noise_amp * rng.cnormal();
            }
            ComplexMatrix g(cfg.ms, cfg.mr);
            try {
                g = pseudo_inverse(hf);
            } catch (const RankDeficient&) {
                oc.error = true;
                oc.erasure = true;
                return oc;
            }
            for (int k = 0; k < cfg.ms && !oc.error; ++k) {
                Complex soft{0.0, 0.0};
                for (int r = 0; r < cfg.mr; ++r) soft += g(k, r) * y(r, 0);
                if (qam.demodulate(soft / tx_amp) != words[k]) oc.error = true;
            }
            return oc;
        };
        out.points.push_back(detail::run_point(cfg, pi, cfg.snr_db[pi], false, trial));
    }
    return out;
}

/// Monte Carlo achievable rate log2 det(I + Es/(ms N0) F^* H^* H F) with the
/// precoder chosen per realization by the configured rule.
inline SimResult achievable_rate(const SimConfig& cfg, const Codebook* cb) {
    if (cb && cb->mt != cfg.mt)
        throw std::invalid_argument("achievable_rate: codebook does not match configuration");
    SimResult out;
    out.has_rate = true;
    for (std::size_t pi = 0; pi < cfg.snr_db.size(); ++pi) {
        const double n0 = std::pow(10.0, -cfg.snr_db[pi] / 10.0);
        auto trial = [&](TrialRng& rng) {
            detail::TrialOutcome oc;
            const ComplexMatrix h = draw_channel(rng, cfg.mr, cfg.mt);
            const ComplexMatrix f = cfg.ms == 1 ? detail::pick_beamformer(h, cb, cfg.selection)
                                                : detail::pick_precoder(h, cb, cfg.ms);
            const ComplexMatrix hf = h * f;
            ComplexMatrix m = ComplexMatrix::identity(cfg.ms);
            const double rho = 1.0 / (double(cfg.ms) * n0);
            for (int a = 0; a < cfg.ms; ++a)
                for (int b = 0; b < cfg.ms; ++b) m(a, b) += rho * column_inner(hf, a, hf, b);
            oc.rate = std::log2(std::abs(det(m)));
            return oc;
        };
        out.points.push_back(detail::run_point(cfg, pi, cfg.snr_db[pi], true, trial));
    }
    return out;
}

/// SNR (dB) at which the curve crosses the target VSER, by log-linear
/// interpolation between the first bracketing grid points.
inline double snr_at_vser(const SimResult& res, double target) {
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
        const double v1 = res.points[i].vser, v2 = res.points[i + 1].vser;
        if (v1 == target) return res.points[i].snr_db;
        if (v1 > target && target > v2 && v2 > 0.0) {
            const double x1 = res.points[i].snr_db, x2 = res.points[i + 1].snr_db;
            return x1 + (std::log10(target) - std::log10(v1)) * (x2 - x1) /
                            (std::log10(v2) - std::log10(v1));
        }
    }
    if (!res.points.empty() && res.points.back().vser == target) return res.points.back().snr_db;
    throw NotBracketed("snr_at_vser: curve does not cross the target within the simulated range");
}

/// SNR gap (dB) between two curves at a target VSER: positive when curve_b
/// needs more SNR than curve_a.
inline double snr_gap(const SimResult& curve_a, const SimResult& curve_b, double target_vser) {
    return snr_at_vser(curve_b, target_vser) - snr_at_vser(curve_a, target_vser);
}

/// SNR (dB) at which a rate curve reaches the target rate, linear interpolation.
inline double snr_at_rate(const SimResult& res, double target) {
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
        const double r1 = res.points[i].rate_bpcu, r2 = res.points[i + 1].rate_bpcu;
        if (r1 <= target && target <= r2) {
            const double x1 = res.points[i].snr_db, x2 = res.points[i + 1].snr_db;
            if (r2 == r1) return x1;
            return x1 + (target - r1) * (x2 - x1) / (r2 - r1);
        }
    }
    throw NotBracketed("snr_at_rate: curve does not reach the target rate within the simulated range");
}

/// Horizontal gap between two achievable-rate curves, measured at the middle
/// of the rate range both curves attain on the simulated grid.
inline double rate_gap_db(const SimResult& ideal, const SimResult& other) {
    if (ideal.points.size() < 2 || other.points.size() < 2)
        throw std::invalid_argument("rate_gap_db: need at least two points per curve");
    const double lo = std::max(ideal.points.front().rate_bpcu, other.points.front().rate_bpcu);
    const double hi = std::min(ideal.points.back().rate_bpcu, other.points.back().rate_bpcu);
    const double target = 0.5 * (lo + hi);
    return snr_at_rate(other, target) - snr_at_rate(ideal, target);
}

/// CSV serialization; fixed formats so identical results are byte-identical.
inline std::string to_csv(const SimResult& res) {
    std::string out = res.has_rate ? "snr_db,trials,errors,vser,ci_halfwidth,rate_bpcu\n"
                                   : "snr_db,trials,errors,vser,ci_halfwidth\n";
    char buf[256];
    for (const SimPoint& p : res.points) {
        if (res.has_rate) {
            std::snprintf(buf, sizeof(buf), "%.10g,%llu,%llu,%.10g,%.10g,%.10g\n", p.snr_db,
                          static_cast<unsigned long long>(p.trials),
                          static_cast<unsigned long long>(p.errors), p.vser, p.ci_halfwidth,
                          p.rate_bpcu);
        } else {
            std::snprintf(buf, sizeof(buf), "%.10g,%llu,%llu,%.10g,%.10g\n", p.snr_db,
                          static_cast<unsigned long long>(p.trials),
                          static_cast<unsigned long long>(p.errors), p.vser, p.ci_halfwidth);
        }
        out += buf;
    }
    return out;
}

}  // namespace kerdock
