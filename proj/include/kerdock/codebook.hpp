#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kerdock/distances.hpp"
#include "kerdock/linalg.hpp"
#include "kerdock/mub.hpp"
#include "kerdock/quaternary.hpp"

namespace kerdock {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CodebookMode { Beamforming, Precoding };

/// A single precoder. `dense` is always present; `quaternary` carries the
/// exact symbol codes when the codeword has them (every Kerdock codeword
/// does), which is what the multiplier-less search path consumes.
struct Codeword {
    ComplexMatrix dense;
    std::optional<QuaternaryMatrix> quaternary;
    std::string label;
};

struct Codebook {
    int mt = 0;
    int ms = 1;
    CodebookMode mode = CodebookMode::Beamforming;
    std::vector<Codeword> codewords;

    std::size_t size() const { return codewords.size(); }

    bool all_quaternary() const {
        for (const auto& w : codewords)
            if (!w.quaternary) return false;
        return !codewords.empty();
    }
};

namespace detail {

inline void validate_codeword_columns(const Codebook& cb) {
    for (std::size_t i = 0; i < cb.codewords.size(); ++i)
        for (std::size_t a = 0; a < cb.codewords[i].dense.cols(); ++a)
            for (std::size_t b = a; b < cb.codewords[i].dense.cols(); ++b) {
                const Complex ip = column_inner(cb.codewords[i].dense, a, cb.codewords[i].dense, b);
                const double want = (a == b) ? 1.0 : 0.0;
                if (std::abs(ip - want) > tol().ortho_cols)
                    throw std::logic_error("codebook construction produced a codeword without "
                                           "orthonormal columns (index " + std::to_string(i) + ")");
            }
}

inline std::string subset_label(std::size_t basis, const std::vector<std::size_t>& cols) {
    std::string s = "S" + std::to_string(basis) + ":";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(cols[i] + 1);  // columns are 1-based in labels
    }
    return s;
}

inline std::vector<std::vector<std::size_t>> column_subsets(int mt, int ms) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(ms);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = ms - 1;
        while (i >= 0 && idx[i] == static_cast<std::size_t>(mt - ms + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < ms; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

/// Beamforming codebook: all columns of all bases, basis-major. With the
/// default flag the identity basis stays in (antenna selection codewords);
/// pass false to drop it.
inline Codebook beamforming_codebook(const MubSet& mub, bool include_identity = true) {
    Codebook cb;
    cb.mt = mub.mt;
    cb.ms = 1;
    cb.mode = CodebookMode::Beamforming;
    for (std::size_t n = 0; n < mub.bases.size(); ++n) {
        const QuaternaryMatrix& basis = mub.bases[n];
        if (!include_identity && basis.is_identity()) continue;
        const ComplexMatrix dense = basis.dense();
        for (std::size_t c = 0; c < basis.cols; ++c) {
            Codeword w;
            w.dense = dense.column(c);
            w.quaternary = basis.columns({c});
            w.label = detail::subset_label(n, {c});
            cb.codewords.push_back(std::move(w));
        }
    }
    detail::validate_codeword_columns(cb);
    return cb;
}

/// Every ms-column subset of every basis, basis-major then subset-lexicographic.
struct AllSubsets {};

/// The built-in eight-codeword arrangement for mt=4, ms=2: two complementary
/// column pairs per non-identity basis, chosen to maximize the pairwise
/// projection 2-norm distance.
struct Table1 {};

/// Exhaustive max-min search over subset families under a distance metric.
struct MaxMinSearch {
    enum class Mode {
        OnePerBasis,      // one ms-subset from each basis
        PatternPerBasis,  // mt=4, ms=2 only: one complementary-pair pattern per basis
        Unrestricted      // any family_size-subset of all candidate codewords
    };
    Metric metric = Metric::Proj2Norm;
    Mode mode = Mode::OnePerBasis;
    std::size_t family_size = 0;  // Unrestricted only
    std::size_t budget = 1'000'000;
};

using PrecodingStrategy = std::variant<AllSubsets, Table1, MaxMinSearch>;

namespace detail {

inline Codeword make_subset_codeword(const MubSet& mub, std::size_t basis,
                                     const std::vector<std::size_t>& cols) {
    Codeword w;
    w.quaternary = mub.bases[basis].columns(cols);
    w.dense = w.quaternary->dense();
    w.label = subset_label(basis, cols);
    return w;
}

inline double family_min_distance(const std::vector<Codeword>& fam, Metric metric) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < fam.size(); ++a)
        for (std::size_t b = a + 1; b < fam.size(); ++b)
            best = std::min(best, subspace_distance(metric, fam[a].dense, fam[b].dense));
    return best;
}

inline Codebook maxmin_search(const MubSet& mub, int ms, const MaxMinSearch& cfg) {
    const std::size_t nb = mub.bases.size();
    const auto subsets = column_subsets(mub.mt, ms);
    std::vector<std::vector<Codeword>> candidates;  // per enumeration unit
    std::size_t space = 1;

    std::vector<std::vector<std::vector<Codeword>>> per_basis_choices(nb);
    if (cfg.mode == MaxMinSearch::Mode::PatternPerBasis) {
        if (mub.mt != 4 || ms != 2)
            throw std::invalid_argument("MaxMinSearch pattern mode requires mt=4, ms=2");
        const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> patterns = {
            {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
        for (std::size_t b = 0; b < nb; ++b) {
            for (const auto& [p1, p2] : patterns)
                per_basis_choices[b].push_back(
                    {make_subset_codeword(mub, b, p1), make_subset_codeword(mub, b, p2)});
            space *= patterns.size();
            if (space > cfg.budget) throw BudgetExceeded("MaxMinSearch: search space over budget");
        }
    } else if (cfg.mode == MaxMinSearch::Mode::OnePerBasis) {
        for (std::size_t b = 0; b < nb; ++b) {
            for (const auto& s : subsets) per_basis_choices[b].push_back({make_subset_codeword(mub, b, s)});
            space *= subsets.size();
            if (space > cfg.budget) throw BudgetExceeded("MaxMinSearch: search space over budget");
        }
    }

    double best_score = -1.0;
    std::vector<Codeword> best_family;

    if (cfg.mode == MaxMinSearch::Mode::Unrestricted) {
        std::vector<Codeword> all;
        for (std::size_t b = 0; b < nb; ++b)
            for (const auto& s : subsets) all.push_back(make_subset_codeword(mub, b, s));
        const std::size_t k = cfg.family_size;
        if (k < 2 || k > all.size())
            throw std::invalid_argument("MaxMinSearch: family_size out of range");
        // C(all.size(), k) against the budget
        double combos = 1.0;
        for (std::size_t i = 0; i < k; ++i) combos = combos * double(all.size() - i) / double(i + 1);
        if (combos > double(cfg.budget)) throw BudgetExceeded("MaxMinSearch: search space over budget");

        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<Codeword> fam;
            for (std::size_t i : idx) fam.push_back(all[i]);
            const double score = family_min_distance(fam, cfg.metric);
            if (score > best_score + 1e-15) {
                best_score = score;
                best_family = std::move(fam);
            }
            int i = int(k) - 1;
            while (i >= 0 && idx[i] == all.size() - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        // lexicographic product over per-basis choices
        std::vector<std::size_t> pick(nb, 0);
        while (true) {
            std::vector<Codeword> fam;
            for (std::size_t b = 0; b < nb; ++b)
                for (const auto& w : per_basis_choices[b][pick[b]]) fam.push_back(w);
            const double score = family_min_distance(fam, cfg.metric);
            if (score > best_score + 1e-15) {
                best_score = score;
                best_family = std::move(fam);
            }
            int b = int(nb) - 1;
            while (b >= 0 && pick[b] == per_basis_choices[b].size() - 1) --b;
            if (b < 0) break;
            ++pick[b];
            for (std::size_t j = b + 1; j < nb; ++j) pick[j] = 0;
        }
    }

    Codebook cb;
    cb.mt = mub.mt;
    cb.ms = ms;
    cb.mode = CodebookMode::Precoding;
    cb.codewords = std::move(best_family);
    validate_codeword_columns(cb);
    return cb;
}

}  // namespace detail

/// Spatial-multiplexing codebook from ms-column subsets of the bases.
inline Codebook precoding_codebook(const MubSet& mub, int ms, const PrecodingStrategy& strategy) {
    if (ms <= 1 || ms > mub.mt)
        throw std::invalid_argument("precoding_codebook: requires 1 < ms <= mt");

    if (std::holds_alternative<AllSubsets>(strategy)) {
        Codebook cb;
        cb.mt = mub.mt;
        cb.ms = ms;
        cb.mode = CodebookMode::Precoding;
        const auto subsets = detail::column_subsets(mub.mt, ms);
        for (std::size_t b = 0; b < mub.bases.size(); ++b)
            for (const auto& s : subsets) cb.codewords.push_back(detail::make_subset_codeword(mub, b, s));
        detail::validate_codeword_columns(cb);
        return cb;
    }

    if (std::holds_alternative<Table1>(strategy)) {
        if (mub.mt != 4 || ms != 2)
            throw std::invalid_argument("Table1 arrangement is defined for mt=4, ms=2 only");
        if (mub.bases.size() < 4)
            throw std::invalid_argument("Table1 arrangement needs the four non-identity bases");
        Codebook cb;
        cb.mt = 4;
        cb.ms = 2;
        cb.mode = CodebookMode::Precoding;
        const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> picks = {
            {0, {0, 1}}, {0, {2, 3}}, {1, {0, 2}}, {1, {1, 3}},
            {2, {0, 3}}, {2, {1, 2}}, {3, {0, 3}}, {3, {1, 2}}};
        for (const auto& [b, cols] : picks) cb.codewords.push_back(detail::make_subset_codeword(mub, b, cols));
        detail::validate_codeword_columns(cb);
        return cb;
    }

    return detail::maxmin_search(mub, ms, std::get<MaxMinSearch>(strategy));
}

/// DFT-based comparison codebook: codeword k is Theta^k F0 with F0 the first
/// ms columns of the unit-norm DFT matrix and Theta = diag(exp(2*pi*j*u_t/n)).
inline Codebook fourier_codebook(int mt, int ms, int n, const std::vector<int>& u) {
    if (mt < 1 || ms < 1 || ms > mt || n < 1)
        throw std::invalid_argument("fourier_codebook: bad dimensions");
    if (static_cast<int>(u.size()) != mt)
        throw std::invalid_argument("fourier_codebook: generator needs mt exponents");
    for (int e : u)
        if (e < 0 || e >= n) throw std::invalid_argument("fourier_codebook: exponent out of [0, n)");

    ComplexMatrix f0(mt, ms);
    const double inv = 1.0 / std::sqrt(static_cast<double>(mt));
    for (int r = 0; r < mt; ++r)
        for (int c = 0; c < ms; ++c)
            f0(r, c) = std::polar(inv, -2.0 * M_PI * double(r) * double(c) / double(mt));

    Codebook cb;
    cb.mt = mt;
    cb.ms = ms;
    cb.mode = ms == 1 ? CodebookMode::Beamforming : CodebookMode::Precoding;
    for (int k = 0; k < n; ++k) {
        Codeword w;
        w.dense = ComplexMatrix(mt, ms);
        for (int r = 0; r < mt; ++r) {
            const Complex rot = std::polar(1.0, 2.0 * M_PI * double(u[r]) * double(k) / double(n));
            for (int c = 0; c < ms; ++c) w.dense(r, c) = rot * f0(r, c);
        }
        w.label = "F" + std::to_string(k);
        cb.codewords.push_back(std::move(w));
    }
    detail::validate_codeword_columns(cb);
    return cb;
}

namespace detail {

// Distance between F0 and Theta^r F0 for all shifts r; diagonal rotations make
// every codeword pair reduce to a shift, so a candidate generator is scored by
// min over r in [1, n). All phases are roots of unity of order lcm(mt, n),
// evaluated by table lookup.
class FourierSearchScorer {
  public:
    FourierSearchScorer(int mt, int ms, int n, Metric metric)
        : mt_(mt), ms_(ms), n_(n), metric_(metric) {
        l_ = std::lcm(mt, n);
        roots_.resize(l_);
        for (int k = 0; k < l_; ++k) roots_[k] = std::polar(1.0, 2.0 * M_PI * double(k) / double(l_));
    }

    // min distance over shifts; stops early once the running minimum cannot
    // beat `floor`
    double score(const std::vector<int>& u, double floor) const {
        double mind = std::numeric_limits<double>::infinity();
        for (int r = 1; r < n_; ++r) {
            mind = std::min(mind, shift_distance(u, r));
            if (mind <= floor) break;
        }
        return mind;
    }

  private:
    double shift_distance(const std::vector<int>& u, int r) const {
        // m(a,b) = (1/mt) sum_t roots[(l/mt) t (a-b) + (l/n) u_t r]
        ComplexMatrix m(ms_, ms_);
        const long long lm = l_ / mt_, ln = l_ / n_;
        for (int a = 0; a < ms_; ++a)
            for (int b = 0; b < ms_; ++b) {
                Complex acc{0.0, 0.0};
                for (int t = 0; t < mt_; ++t) {
                    long long idx = (lm * t * (a - b) % l_ + ln * u[t] * r) % l_;
                    idx = ((idx % l_) + l_) % l_;
                    acc += roots_[idx];
                }
                m(a, b) = acc / double(mt_);
            }
        switch (metric_) {
            case Metric::Chordal:
                return std::sqrt(std::max(0.0, 1.0 - std::norm(m(0, 0))));
            case Metric::FubiniStudy:
                return std::acos(std::clamp(std::abs(det(m)), 0.0, 1.0));
            case Metric::Proj2Norm: {
                double smin;
                if (ms_ == 1) {
                    smin = std::abs(m(0, 0));
                } else if (ms_ == 2) {
                    const double t2 = std::norm(m(0, 0)) + std::norm(m(0, 1)) + std::norm(m(1, 0)) +
                                      std::norm(m(1, 1));
                    const double dt = std::norm(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
                    const double disc = std::sqrt(std::max(0.0, t2 * t2 - 4.0 * dt));
                    smin = std::sqrt(std::max(0.0, (t2 - disc) / 2.0));
                } else {
                    smin = svd(m).singular_values.back();
                }
                return std::sqrt(std::max(0.0, 1.0 - smin * smin));
            }
        }
        return 0.0;
    }

    int mt_, ms_, n_;
    Metric metric_;
    int l_;
    std::vector<Complex> roots_;
};

}  // namespace detail

/// Exhaustive search for the generator exponents maximizing the min pairwise
/// distance of the Fourier codebook. Candidates are enumerated in
/// lexicographic order and ties keep the first maximizer.
inline std::vector<int> search_fourier_generator(int mt, int ms, int n, Metric metric,
                                                 std::size_t budget = 1'000'000) {
    if (metric == Metric::Chordal && ms != 1)
        throw std::invalid_argument("search_fourier_generator: chordal metric needs ms=1");
    double space = 1.0;
    for (int t = 0; t < mt; ++t) space *= double(n);
    if (space > double(budget)) throw BudgetExceeded("search_fourier_generator: space over budget");

    const detail::FourierSearchScorer scorer(mt, ms, n, metric);
    std::vector<int> u(mt, 0), best_u(mt, 0);
    double best = -1.0;
    while (true) {
        const double s = scorer.score(u, best);
        if (s > best + 1e-15) {
            best = s;
            best_u = u;
        }
        int t = mt - 1;
        while (t >= 0 && u[t] == n - 1) --t;
        if (t < 0) break;
        ++u[t];
        for (int j = t + 1; j < mt; ++j) u[j] = 0;
    }
    return best_u;
}

}  // namespace kerdock
