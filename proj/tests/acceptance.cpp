// Acceptance suite: runs the project's verification criteria end to end and
// prints one pass/fail line each. Criteria 1-6 are exact or deterministic and
// finish in seconds; 7-10 are Monte Carlo and take minutes.
//
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kerdock/kerdock.hpp"

using namespace kerdock;

namespace {

int g_threads = 2;

char g_detail[1024];

#define DETAIL(...) std::snprintf(g_detail, sizeof(g_detail), __VA_ARGS__)

// ---------------------------------------------------------------- criterion 1
bool criterion1() {
    const MubSet m2 = kerdock_mub_mt2();
    const MubSet m4 = kerdock_mub_mt4();
    const bool ok2 = m2.bases.size() == 3 && verify_mub(m2, 1e-12).ok;
    const bool ok4 = m4.bases.size() == 5 && verify_mub(m4, 1e-12).ok;

    const GintMatrix q = kerdock_mt4_generator().gaussian();
    GintMatrix p = q;
    for (int n = 1; n < 5; ++n) p = gint_matmul(p, q);
    bool exact = true;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            exact = exact && (p(r, c) == (r == c ? Gint{32, 0} : Gint{0, 0}));

    DETAIL("mt2 bases=%zu ok=%d, mt4 bases=%zu ok=%d, D^5=I exact=%d", m2.bases.size(), ok2,
           m4.bases.size(), ok4, exact);
    return ok2 && ok4 && exact;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2() {
    const auto sp2 = spectrum(beamforming_codebook(kerdock_mub_mt2()), Metric::Chordal);
    const auto sp4 = spectrum(beamforming_codebook(kerdock_mub_mt4()), Metric::Chordal);
    const bool ok2 = sp2.n == 6 && sp2.distinct_values.size() == 2 &&
                     std::abs(sp2.distinct_values[0] - std::sqrt(0.5)) <= 1e-12 &&
                     std::abs(sp2.distinct_values[1] - 1.0) <= 1e-12;
    const bool ok4 = sp4.n == 20 && sp4.distinct_values.size() == 2 &&
                     std::abs(sp4.distinct_values[0] - std::sqrt(3.0) / 2.0) <= 1e-12 &&
                     std::abs(sp4.distinct_values[1] - 1.0) <= 1e-12;
    DETAIL("mt2 n=%zu values={%.12g, %.12g}, mt4 n=%zu values={%.12g, %.12g}", sp2.n,
           sp2.distinct_values[0], sp2.distinct_values[1], sp4.n, sp4.distinct_values[0],
           sp4.distinct_values[1]);
    return ok2 && ok4;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3() {
    const MubSet mub = kerdock_mub_mt4();
    const Codebook sm2 = precoding_codebook(mub, 2, AllSubsets{});
    std::size_t pairs2 = 0;
    bool ok2 = sm2.size() == 30;
    for (std::size_t a = 0; a < sm2.size(); ++a)
        for (std::size_t b = a + 1; b < sm2.size(); ++b) {
            ++pairs2;
            const double d = std::abs(det(hermitian(sm2.codewords[a].dense) * sm2.codewords[b].dense));
            ok2 = ok2 && (d <= 1e-12 || std::abs(d - 0.5) <= 1e-12);
        }

    const Codebook sm3 = precoding_codebook(mub, 3, AllSubsets{});
    bool ok3 = sm3.size() == 20;
    std::size_t cross = 0;
    for (std::size_t a = 0; a < sm3.size(); ++a)
        for (std::size_t b = a + 1; b < sm3.size(); ++b) {
            if (a / 4 == b / 4) continue;  // four subsets per basis, same-basis pairs excluded
            ++cross;
            const double d = std::abs(det(hermitian(sm3.codewords[a].dense) * sm3.codewords[b].dense));
            ok3 = ok3 && std::abs(d - 0.5) <= 1e-12;
        }
    DETAIL("ms=2: %zu pairs in {0, 0.5}; ms=3: %zu cross-basis pairs at 0.5", pairs2, cross);
    return ok2 && ok3 && pairs2 == 435 && cross == 160;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4() {
    const double direct = average_inner_product(beamforming_codebook(kerdock_mub_mt4()));
    const double formula = 16.0 / 76.0;
    DETAIL("direct sum %.17g vs closed form %.17g, |diff| = %.3g", direct, formula,
           std::abs(direct - formula));
    return std::abs(direct - formula) <= 1e-14;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5() {
    bool ok = true;
    const std::vector<std::pair<std::uint64_t, int>> scenario = {{16, 1}, {8, 2}};
    for (int nb : {8, 16, 32}) {
        ok = ok && storage_bits_combined(CodebookKind::Kerdock, 4, scenario, nb) == 12;
        ok = ok && storage_bits_combined(CodebookKind::Fourier, 4, scenario, nb) == 40ull * nb;
        ok = ok && storage_bits_combined(CodebookKind::Grassmannian, 4, scenario, nb) == 256ull * nb;
    }
    ok = ok && storage_bits(CodebookKind::Kerdock, 2, 1, 6, 16) == 8;

    for (auto mode : {SelectionProblem::Beamforming, SelectionProblem::SmProj2Norm,
                      SelectionProblem::SmFubiniStudy})
        ok = ok && selection_ops(CodebookKind::Kerdock, mode, 30, 4, 4, 2).multiplies == 0;
    ok = ok && selection_ops(CodebookKind::Grassmannian, SelectionProblem::Beamforming, 16, 4, 4, 1)
                       .multiplies == 256;
    ok = ok && selection_ops(CodebookKind::Grassmannian, SelectionProblem::Beamforming, 16, 4, 4, 1)
                       .additions == 192;
    ok = ok && selection_ops(CodebookKind::Fourier, SelectionProblem::SmProj2Norm, 8, 4, 4, 2)
                       .multiplies == 8ull * 2 * 16;

    // live instrumented searches over the N=20 codebook
    const Codebook cb = beamforming_codebook(kerdock_mub_mt4());
    TrialRng rng(substream_seed(2024, 0, 0));
    const ComplexMatrix h = draw_channel(rng, 4, 4);
    const auto live_q = select_beamformer(h, cb, ApplyPath::Quaternary);
    const auto live_g = select_beamformer(h, cb, ApplyPath::Generic);
    const std::uint64_t want_adds = 20ull * 4 * (4 - 1);
    ok = ok && live_q.counter.complex_multiplies == 0 && live_q.counter.complex_additions == want_adds;
    ok = ok && live_g.counter.complex_multiplies == 20ull * 4 * 4 &&
         live_g.counter.complex_additions == want_adds;
    DETAIL("storage (12, 40nb, 256nb) ok; live search: quaternary %llu mul / %llu add, generic %llu mul / %llu add",
           (unsigned long long)live_q.counter.complex_multiplies,
           (unsigned long long)live_q.counter.complex_additions,
           (unsigned long long)live_g.counter.complex_multiplies,
           (unsigned long long)live_g.counter.complex_additions);
    return ok;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6() {
    const Codebook cb = beamforming_codebook(kerdock_mub_mt4());
    std::size_t agree = 0;
    const std::size_t total = 10000;
    for (std::size_t t = 0; t < total; ++t) {
        TrialRng rng(substream_seed(606, 0, t));
        const ComplexMatrix h = draw_channel(rng, 4, 4);
        if (select_beamformer(h, cb, ApplyPath::Quaternary).index ==
            select_beamformer(h, cb, ApplyPath::Generic).index)
            ++agree;
    }
    DETAIL("index agreement %zu / %zu", agree, total);
    return agree == total;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7() {
    SimConfig cfg;
    cfg.mt = cfg.mr = 4;
    cfg.ms = 1;
    cfg.trials_per_point = 20000;
    cfg.seed = 777;
    cfg.threads = g_threads;
    for (double s = 0.0; s <= 20.0; s += 2.0) cfg.snr_db.push_back(s);

    const Codebook cb = beamforming_codebook(kerdock_mub_mt4());
    const SimResult ideal = achievable_rate(cfg, nullptr);
    const SimResult quant = achievable_rate(cfg, &cb);
    const double gap = rate_gap_db(ideal, quant);
    DETAIL("horizontal gap %.3f dB at the midpoint of the common rate range (want 1.5 +- 0.5)", gap);
    return gap >= 1.0 && gap <= 2.0;
}

// ---------------------------------------------------------------- criterion 8
std::optional<double> crossing_ci(const SimResult& res, double target) {
    SimResult lo = res, hi = res;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        lo.points[i].vser = std::max(res.points[i].vser - res.points[i].ci_halfwidth, 1e-12);
        hi.points[i].vser = res.points[i].vser + res.points[i].ci_halfwidth;
    }
    try {
        return (snr_at_vser(hi, target) - snr_at_vser(lo, target)) / 2.0;
    } catch (const NotBracketed&) {
        return std::nullopt;
    }
}

bool dominates_within_ci(const SimResult& better, const SimResult& worse) {
    for (std::size_t i = 0; i < better.points.size(); ++i)
        if (better.points[i].vser >
            worse.points[i].vser + better.points[i].ci_halfwidth + worse.points[i].ci_halfwidth)
            return false;
    return true;
}

bool monotone_within_ci(const SimResult& res) {
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i)
        if (res.points[i + 1].vser >
            res.points[i].vser + res.points[i].ci_halfwidth + res.points[i + 1].ci_halfwidth)
            return false;
    return true;
}

bool criterion8() {
    const std::uint64_t trials = 100000;

    // beamforming experiment: 64-QAM, MRC
    SimConfig bf;
    bf.mt = bf.mr = 4;
    bf.ms = 1;
    bf.modulation = 64;
    bf.snr_db = {6, 8, 10, 12, 14, 16};
    bf.trials_per_point = trials;
    bf.seed = 808;
    bf.threads = g_threads;
    const Codebook kerdock_bf = beamforming_codebook(kerdock_mub_mt4());
    const Codebook fourier_bf =
        fourier_codebook(4, 1, 16, search_fourier_generator(4, 1, 16, Metric::Chordal));
    const SimResult bf_ideal = run_beamforming_vser(bf, nullptr);
    const SimResult bf_kerd = run_beamforming_vser(bf, &kerdock_bf);
    const SimResult bf_four = run_beamforming_vser(bf, &fourier_bf);

    // two-stream experiment: 16-QAM, zero forcing
    SimConfig sm;
    sm.mt = sm.mr = 4;
    sm.ms = 2;
    sm.modulation = 16;
    sm.snr_db = {8, 10, 12, 14, 16};
    sm.trials_per_point = trials;
    sm.seed = 809;
    sm.selection = SelectionRule::MsvSc;
    sm.threads = g_threads;
    const Codebook kerdock_sm = precoding_codebook(kerdock_mub_mt4(), 2, AllSubsets{});
    const Codebook fourier_sm = fourier_codebook(
        4, 2, 32, search_fourier_generator(4, 2, 32, Metric::Proj2Norm, 2'000'000));
    const SimResult sm_ideal = run_sm_vser(sm, nullptr);
    const SimResult sm_kerd = run_sm_vser(sm, &kerdock_sm);
    const SimResult sm_four = run_sm_vser(sm, &fourier_sm);

    const bool dom = dominates_within_ci(bf_ideal, bf_kerd) && dominates_within_ci(bf_ideal, bf_four) &&
                     dominates_within_ci(sm_ideal, sm_kerd) && dominates_within_ci(sm_ideal, sm_four);
    const bool mono = monotone_within_ci(bf_ideal) && monotone_within_ci(bf_kerd) &&
                      monotone_within_ci(bf_four) && monotone_within_ci(sm_ideal) &&
                      monotone_within_ci(sm_kerd) && monotone_within_ci(sm_four);

    const double target = 1e-2;
    const double gap_k = snr_gap(sm_ideal, sm_kerd, target);
    const double gap_f = snr_gap(sm_ideal, sm_four, target);
    const double ci_k = crossing_ci(sm_kerd, target).value_or(0.15);
    const double ci_f = crossing_ci(sm_four, target).value_or(0.15);
    const bool order = gap_k <= gap_f + ci_k + ci_f;

    DETAIL("dominance=%d monotone=%d; sm gaps at 1e-2: kerdock %.3f dB vs fourier %.3f dB (ci %.3f/%.3f)",
           dom, mono, gap_k, gap_f, ci_k, ci_f);
    return dom && mono && order;
}

// ---------------------------------------------------------------- criterion 9
bool criterion9() {
    const Codebook cb = beamforming_codebook(kerdock_mub_mt2());
    const std::vector<std::pair<double, std::uint64_t>> schedule = {
        {8.0, 1000000}, {10.0, 1000000}, {12.0, 2000000},
        {14.0, 10000000}, {16.0, 30000000}, {18.0, 60000000}};
    std::vector<SimPoint> pts;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        SimConfig cfg;
        cfg.mt = cfg.mr = 2;
        cfg.ms = 1;
        cfg.modulation = 4;
        cfg.snr_db = {schedule[i].first};
        cfg.trials_per_point = schedule[i].second;
        cfg.seed = 900 + i;  // independent draws per point
        cfg.threads = g_threads;
        pts.push_back(run_beamforming_vser(cfg, &cb).points[0]);
    }
    bool mono = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        mono = mono &&
               pts[i + 1].vser <= pts[i].vser + pts[i].ci_halfwidth + pts[i + 1].ci_halfwidth;
    const double v_low = pts.front().vser;   // 8 dB
    const double v_top = pts.back().vser;    // 18 dB
    const double slope = std::log10(v_low) - std::log10(v_top);
    std::string curve;
    for (const auto& p : pts) {
        char b[64];
        std::snprintf(b, sizeof(b), " %.3g", p.vser);
        curve += b;
    }
    DETAIL("vser(8..18 dB):%s; slope over the top decade %.2f (want >= 3.3), errors at top %llu",
           curve.c_str(), slope, (unsigned long long)pts.back().errors);
    return v_top > 0.0 && slope >= 3.3 && mono;
}

// --------------------------------------------------------------- criterion 10
bool criterion10() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "kerdock_acceptance_c10";
    fs::create_directories(dir);
    const std::string cfg = (dir / "c10.cfg").string();
    {
        std::ofstream out(cfg);
        out << "mt=4\nmr=4\nms=2\nmodulation=16\nsnr_db=10,14\ntrials=20000\nseed=1234\n"
            << "selection=msvsc\nexperiment=vser\ncurve=perfect\ncurve=kerdock\n";
    }
    auto shell = [&](const std::string& args) {
        const std::string cmd = std::string(KERDOCK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = (dir / "a").string(), b = (dir / "b").string();
    bool ok = shell("simulate " + cfg + " -o " + a + " --threads 1");
    ok = ok && shell("simulate --from-manifest " + a + "_manifest.json -o " + b + " --threads 2");
    const std::string pa = slurp(a + "_perfect.csv"), pb = slurp(b + "_perfect.csv");
    const std::string ka = slurp(a + "_kerdock.csv"), kb = slurp(b + "_kerdock.csv");
    ok = ok && !pa.empty() && pa == pb && !ka.empty() && ka == kb;
    DETAIL("csv bytes: perfect %zu==%zu, kerdock %zu==%zu, identical across 1 vs 2 threads: %d",
           pa.size(), pb.size(), ka.size(), kb.size(), ok);
    std::error_code ec;
    fs::remove_all(dir, ec);
    return ok;
}

struct Criterion {
    int id;
    const char* name;
    double max_seconds;  // 0 = unlimited
    std::function<bool()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("KERDOCK_THREADS")) g_threads = std::atoi(env);

    const std::vector<Criterion> all = {
        {1, "exact MUB verification and symbol-level generator power", 1.0, criterion1},
        {2, "two-valued chordal spectra", 1.0, criterion2},
        {3, "determinant magnitude structure of the subset codebooks", 1.0, criterion3},
        {4, "average inner product matches the closed form", 1.0, criterion4},
        {5, "storage and selection-cost tables with live counters", 1.0, criterion5},
        {6, "multiplier-less path selects identically to the generic path", 0.0, criterion6},
        {7, "beamforming rate gap to perfect CSIT", 0.0, criterion7},
        {8, "vser ordering, monotonicity and gap comparison", 0.0, criterion8},
        {9, "two-antenna diversity slope", 0.0, criterion9},
        {10, "byte-identical simulate reruns across thread counts", 0.0, criterion10},
    };

    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    if (wanted.empty())
        for (const auto& c : all) wanted.push_back(c.id);

    int failures = 0;
    for (int id : wanted) {
        const Criterion* cr = nullptr;
        for (const auto& c : all)
            if (c.id == id) cr = &c;
        if (!cr) {
            std::printf("[FAIL] criterion %d: unknown\n", id);
            ++failures;
            continue;
        }
        g_detail[0] = '\0';
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = cr->fn();
        } catch (const std::exception& e) {
            DETAIL("exception: %s", e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr->max_seconds > 0.0 && secs > cr->max_seconds) {
            ok = false;
            std::strncat(g_detail, " [over time budget]", sizeof(g_detail) - strlen(g_detail) - 1);
        }
        std::printf("[%s] criterion %d: %s -- %s (%.2fs)\n", ok ? "PASS" : "FAIL", cr->id, cr->name,
                    g_detail, secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
