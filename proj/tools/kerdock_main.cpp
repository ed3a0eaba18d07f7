// kerdock: construct finite-alphabet MUB precoding codebooks, analyze their
// subspace distances and complexity, and run link-level Monte Carlo
// simulations with CSV artifacts.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerdock/kerdock.hpp"

using namespace kerdock;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what) {}
};

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

Metric parse_metric(const std::string& s) {
    if (s == "chordal") return Metric::Chordal;
    if (s == "p2") return Metric::Proj2Norm;
    if (s == "fs") return Metric::FubiniStudy;
    throw std::invalid_argument("unknown metric '" + s + "' (chordal|p2|fs)");
}

struct ManifestWriter {
    std::string command_line;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string config_text;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const std::string& path) const {
        json m;
        m["tool"] = "kerdock";
        m["version"] = kVersion;
        m["command_line"] = command_line;
        m["seed"] = seed;
        m["threads"] = threads;
        if (!config_text.empty()) m["config"] = config_text;
        m["outputs"] = outputs;
        m["duration_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  start)
                .count();
        write_file_atomic(path, m.dump(2) + "\n");
    }
};

// ---------------------------------------------------------------------------
// construct

MubSet make_mub(int mt, const std::string& construction) {
    if (mt == 2) {
        if (construction == "power") return power_mub(mt2_power_generator(), 3);
        return kerdock_mub_mt2();
    }
    if (mt == 4) return kerdock_mub_mt4();
    throw std::invalid_argument("kerdock construction covers mt in {2,4}");
}

void print_codebook_summary(const Codebook& cb) {
    std::printf("codebook: mt=%d ms=%d n=%zu mode=%s quaternary=%s\n", cb.mt, cb.ms, cb.size(),
                cb.mode == CodebookMode::Beamforming ? "beamforming" : "precoding",
                cb.all_quaternary() ? "yes" : "no");
    const Metric metric = cb.ms == 1 ? Metric::Chordal : Metric::Proj2Norm;
    if (cb.size() >= 2) {
        const DistanceSpectrum sp = spectrum(cb, metric);
        std::printf("min %s distance: %.12g (distinct values:", metric_name(metric), sp.min_offdiag);
        for (double v : sp.distinct_values) std::printf(" %.12g", v);
        std::printf(")\n");
        if (cb.ms == 1)
            std::printf("rankin bound for n=%zu, mt=%d: %.12g\n", cb.size(), cb.mt,
                        rankin_bound(cb.size(), cb.mt));
    }
}

int cmd_construct(const std::string& kind, int mt, int ms, bool ms_set, const std::string& mode,
                  const std::string& strategy, const std::string& construction,
                  bool no_identity, int n, const std::string& u_csv, bool do_search,
                  const std::string& metric_s, std::size_t budget, const std::string& out,
                  ManifestWriter& manifest) {
    Codebook cb;
    if (kind == "kerdock") {
        const MubSet mub = make_mub(mt, construction);
        if (mode == "bf") {
            cb = beamforming_codebook(mub, !no_identity);
        } else if (mode == "sm") {
            if (strategy == "all") {
                cb = precoding_codebook(mub, ms, AllSubsets{});
            } else if (strategy == "table1") {
                cb = precoding_codebook(mub, ms, Table1{});
            } else if (strategy == "maxmin") {
                MaxMinSearch cfg;
                cfg.metric = metric_s.empty() ? Metric::Proj2Norm : parse_metric(metric_s);
                cfg.mode = MaxMinSearch::Mode::PatternPerBasis;
                cfg.budget = budget;
                cb = precoding_codebook(mub.without_identity(), ms, cfg);
            } else {
                throw std::invalid_argument("unknown strategy '" + strategy + "' (all|table1|maxmin)");
            }
        } else {
            throw std::invalid_argument("unknown mode '" + mode + "' (bf|sm)");
        }
    } else if (kind == "fourier") {
        const int streams = mode == "sm" ? ms : (ms_set ? ms : 1);
        std::vector<int> u;
        if (do_search || u_csv.empty()) {
            const Metric metric = metric_s.empty()
                                      ? (streams == 1 ? Metric::Chordal : Metric::Proj2Norm)
                                      : parse_metric(metric_s);
            u = search_fourier_generator(mt, streams, n, metric, budget);
            std::printf("searched generator u =");
            for (int e : u) std::printf(" %d", e);
            std::printf("\n");
        } else {
            u = parse_int_list(u_csv);
        }
        cb = fourier_codebook(mt, streams, n, u);
    } else {
        throw std::invalid_argument("unknown kind '" + kind + "' (kerdock|fourier)");
    }

    save_codebook(cb, out);
    manifest.outputs.push_back(out);
    print_codebook_summary(cb);
    manifest.write(out + ".manifest.json");
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

CodebookKind parse_kind(const std::string& s, const Codebook& cb) {
    if (s == "kerdock") return CodebookKind::Kerdock;
    if (s == "fourier") return CodebookKind::Fourier;
    if (s == "grassmannian") return CodebookKind::Grassmannian;
    if (s == "auto") return cb.all_quaternary() ? CodebookKind::Kerdock : CodebookKind::Grassmannian;
    throw std::invalid_argument("unknown kind '" + s + "'");
}

std::string spectrum_csv(const DistanceSpectrum& sp) {
    std::string out = "metric,k,l,value\n";
    char buf[128];
    for (std::size_t k = 0; k < sp.n; ++k)
        for (std::size_t l = k + 1; l < sp.n; ++l) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.12g\n", metric_name(sp.metric), k, l,
                          sp.at(k, l));
            out += buf;
        }
    std::snprintf(buf, sizeof(buf), "%s,min,,%.12g\n", metric_name(sp.metric), sp.min_offdiag);
    out += buf;
    for (std::size_t i = 0; i < sp.distinct_values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,distinct,%zu,%.12g\n", metric_name(sp.metric), i,
                      sp.distinct_values[i]);
        out += buf;
    }
    return out;
}

int cmd_analyze(const std::string& path, const std::string& metric_s, const std::string& csv_out,
                bool show_ops, bool show_storage, const std::string& kind_s, int mr, int nb,
                int bf_n, int sm_n, int sm_ms, std::uint64_t seed, ManifestWriter& manifest) {
    const Codebook cb = load_codebook(path);
    print_codebook_summary(cb);

    const Metric metric = metric_s.empty() ? (cb.ms == 1 ? Metric::Chordal : Metric::Proj2Norm)
                                           : parse_metric(metric_s);
    if (!csv_out.empty()) {
        if (cb.size() < 2) throw std::invalid_argument("spectrum needs at least two codewords");
        write_file_atomic(csv_out, spectrum_csv(spectrum(cb, metric)));
        manifest.outputs.push_back(csv_out);
        std::printf("spectrum csv: %s\n", csv_out.c_str());
    }

    const CodebookKind kind = parse_kind(kind_s, cb);
    const int use_mr = mr > 0 ? mr : cb.mt;

    if (show_storage) {
        std::printf("storage (nb=%d): this codebook as %s: %llu bits\n", nb, kind_name(kind),
                    static_cast<unsigned long long>(
                        storage_bits(kind, cb.mt, cb.ms, cb.size(), nb)));
        const std::vector<std::pair<std::uint64_t, int>> scenario = {
            {std::uint64_t(bf_n), 1}, {std::uint64_t(sm_n), sm_ms}};
        std::printf("reference scenario (bf n=%d + sm n=%d ms=%d, nb=%d):\n", bf_n, sm_n, sm_ms, nb);
        for (CodebookKind k :
             {CodebookKind::Kerdock, CodebookKind::Fourier, CodebookKind::Grassmannian}) {
            std::printf("  %-13s %llu bits\n", kind_name(k),
                        static_cast<unsigned long long>(
                            storage_bits_combined(k, cb.mt, scenario, nb)));
        }
    }

    if (show_ops) {
        const SelectionProblem problem =
            cb.ms == 1 ? SelectionProblem::Beamforming
                       : (metric == Metric::FubiniStudy ? SelectionProblem::SmFubiniStudy
                                                        : SelectionProblem::SmProj2Norm);
        const auto rep = selection_ops(kind, problem, cb.size(), cb.mt, use_mr, cb.ms);
        std::printf("selection ops (n=%zu, mt=%d, mr=%d, ms=%d, kind=%s): %llu multiplies, %llu additions\n",
                    cb.size(), cb.mt, use_mr, cb.ms, kind_name(kind),
                    static_cast<unsigned long long>(rep.multiplies),
                    static_cast<unsigned long long>(rep.additions));

        // live instrumented search on one seeded channel draw
        TrialRng rng(substream_seed(seed, 0, 0));
        const ComplexMatrix h = draw_channel(rng, use_mr, cb.mt);
        const bool quaternary = cb.all_quaternary();
        const ApplyPath path = quaternary ? ApplyPath::Quaternary : ApplyPath::Generic;
        const SelectionResult live = cb.ms == 1 ? select_beamformer(h, cb, path)
                                                : select_precoder_msv(h, cb, path);
        std::printf("live search (%s path): index=%zu score=%.8g, %llu multiplies, %llu additions, %llu sign/swap ops\n",
                    quaternary ? "quaternary" : "generic", live.index, live.score,
                    static_cast<unsigned long long>(live.counter.complex_multiplies),
                    static_cast<unsigned long long>(live.counter.complex_additions),
                    static_cast<unsigned long long>(live.counter.sign_or_swap_ops));
    }

    if (!csv_out.empty()) manifest.write(csv_out + ".manifest.json");
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct CurveSpec {
    std::string name;     // sanitized, for filenames
    std::string raw;      // as written in the config
};

struct SimFileConfig {
    SimConfig sim;
    int modulation_set = 0;
    std::string experiment = "vser";
    std::vector<CurveSpec> curves;
};

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return out;
}

SimFileConfig parse_sim_config(const std::string& text) {
    SimFileConfig cfg;
    cfg.sim.snr_db.clear();
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_trials = false, have_snr = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        try {
            if (key == "mt") cfg.sim.mt = std::stoi(val);
            else if (key == "mr") cfg.sim.mr = std::stoi(val);
            else if (key == "ms") cfg.sim.ms = std::stoi(val);
            else if (key == "modulation") { cfg.sim.modulation = std::stoi(val); cfg.modulation_set = 1; }
            else if (key == "snr_db") { cfg.sim.snr_db = parse_double_list(val); have_snr = true; }
            else if (key == "trials") { cfg.sim.trials_per_point = std::stoull(val); have_trials = true; }
            else if (key == "seed") cfg.sim.seed = std::stoull(val);
            else if (key == "threads") cfg.sim.threads = std::stoi(val);
            else if (key == "selection") {
                if (val == "effsnr") cfg.sim.selection = SelectionRule::EffSnr;
                else if (val == "msvsc") cfg.sim.selection = SelectionRule::MsvSc;
                else if (val == "effsnr-chordal") cfg.sim.selection = SelectionRule::EffSnrChordal;
                else throw std::invalid_argument("selection must be effsnr|msvsc|effsnr-chordal");
            }
            else if (key == "experiment") {
                if (val != "vser" && val != "rate") throw std::invalid_argument("experiment must be vser|rate");
                cfg.experiment = val;
            }
            else if (key == "curve") cfg.curves.push_back({sanitize(val), val});
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(lineno, e.what());
        }
    }
    if (!have_snr) throw ConfigError(lineno, "missing snr_db");
    if (!have_trials) throw ConfigError(lineno, "missing trials");
    if (cfg.curves.empty()) throw ConfigError(lineno, "at least one curve= entry required");
    if (cfg.experiment == "vser" && !cfg.modulation_set)
        throw ConfigError(lineno, "vser experiments need modulation=4|16|64");
    if (cfg.sim.ms > 1) cfg.sim.selection = SelectionRule::MsvSc;
    return cfg;
}

std::optional<Codebook> build_curve_codebook(const CurveSpec& spec, const SimFileConfig& cfg) {
    const std::string& raw = spec.raw;
    if (raw == "perfect") return std::nullopt;
    const MubSet mub = cfg.sim.mt == 2 ? kerdock_mub_mt2() : kerdock_mub_mt4();
    if (raw == "kerdock")
        return cfg.sim.ms == 1 ? beamforming_codebook(mub)
                               : precoding_codebook(mub, cfg.sim.ms, AllSubsets{});
    if (raw == "kerdock-noid") {
        if (cfg.sim.ms != 1) throw std::invalid_argument("kerdock-noid is a beamforming curve");
        return beamforming_codebook(mub, false);
    }
    if (raw == "kerdock-table1") return precoding_codebook(mub, cfg.sim.ms, Table1{});
    if (raw.rfind("fourier:", 0) == 0) {
        const std::string rest = raw.substr(8);
        const auto colon = rest.find(':');
        const int n = std::stoi(rest.substr(0, colon));
        std::vector<int> u;
        if (colon == std::string::npos) {
            const Metric metric = cfg.sim.ms == 1 ? Metric::Chordal : Metric::Proj2Norm;
            u = search_fourier_generator(cfg.sim.mt, cfg.sim.ms, n, metric, 2'000'000);
        } else {
            u = parse_int_list(rest.substr(colon + 1));
        }
        return fourier_codebook(cfg.sim.mt, cfg.sim.ms, n, u);
    }
    return load_codebook(raw);  // anything else is a codebook file path
}

int cmd_simulate(const std::string& config_path, const std::string& from_manifest,
                 const std::string& out_prefix, int threads_override,
                 std::optional<std::uint64_t> seed_override, const std::string& report,
                 double target, ManifestWriter& manifest) {
    std::string config_text;
    if (!from_manifest.empty()) {
        const json m = json::parse(read_file(from_manifest));
        config_text = m.at("config").get<std::string>();
    } else {
        config_text = read_file(config_path);
    }
    SimFileConfig cfg = parse_sim_config(config_text);

    if (const char* env = std::getenv("KERDOCK_SEED")) cfg.sim.seed = std::stoull(env);
    if (const char* env = std::getenv("KERDOCK_THREADS")) cfg.sim.threads = std::stoi(env);
    if (seed_override) cfg.sim.seed = *seed_override;
    if (threads_override > 0) cfg.sim.threads = threads_override;

    manifest.seed = cfg.sim.seed;
    manifest.threads = cfg.sim.threads;
    manifest.config_text = config_text;

    std::vector<std::pair<CurveSpec, SimResult>> results;
    for (const CurveSpec& spec : cfg.curves) {
        const std::optional<Codebook> cb = build_curve_codebook(spec, cfg);
        const Codebook* cbp = cb ? &*cb : nullptr;
        SimResult res;
        if (cfg.experiment == "rate") {
            res = achievable_rate(cfg.sim, cbp);
        } else if (cfg.sim.ms == 1) {
            res = run_beamforming_vser(cfg.sim, cbp);
        } else {
            res = run_sm_vser(cfg.sim, cbp);
        }
        const std::string file = out_prefix + "_" + spec.name + ".csv";
        write_file_atomic(file, to_csv(res));
        manifest.outputs.push_back(file);
        std::uint64_t erasures = 0;
        for (const auto& p : res.points) erasures += p.erasures;
        std::printf("curve %-24s -> %s%s\n", spec.raw.c_str(), file.c_str(),
                    erasures ? (" (erasures: " + std::to_string(erasures) + ")").c_str() : "");
        results.emplace_back(spec, std::move(res));
    }

    if (report == "snr-gap") {
        std::string csv = "curve,snr_at_target_db,gap_db\n";
        char buf[160];
        std::printf("snr gap at vser %.3g (reference: %s)\n", target, results[0].first.raw.c_str());
        for (const auto& [spec, res] : results) {
            try {
                const double x = snr_at_vser(res, target);
                const double gap = x - snr_at_vser(results[0].second, target);
                std::printf("  %-24s crosses at %7.3f dB, gap %+6.3f dB\n", spec.raw.c_str(), x, gap);
                std::snprintf(buf, sizeof(buf), "%s,%.6g,%.6g\n", spec.raw.c_str(), x, gap);
            } catch (const NotBracketed&) {
                std::printf("  %-24s does not cross the target in range\n", spec.raw.c_str());
                std::snprintf(buf, sizeof(buf), "%s,,\n", spec.raw.c_str());
            }
            csv += buf;
        }
        const std::string file = out_prefix + "_gaps.csv";
        write_file_atomic(file, csv);
        manifest.outputs.push_back(file);
    } else if (report == "rate-gap") {
        std::printf("horizontal rate gap vs %s\n", results[0].first.raw.c_str());
        for (std::size_t i = 1; i < results.size(); ++i)
            std::printf("  %-24s %+6.3f dB\n", results[i].first.raw.c_str(),
                        rate_gap_db(results[0].second, results[i].second));
    }

    manifest.write(out_prefix + "_manifest.json");
    std::printf("manifest: %s_manifest.json\n", out_prefix.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-alphabet MUB precoding codebooks: construction, analysis, simulation"};
    app.require_subcommand(1);

    ManifestWriter manifest;
    for (int i = 0; i < argc; ++i) {
        if (i) manifest.command_line += " ";
        manifest.command_line += argv[i];
    }

    // construct
    auto* c = app.add_subcommand("construct", "build a codebook and write it to a file");
    std::string c_kind, c_mode = "bf", c_strategy = "all", c_construction = "hadamard";
    std::string c_u, c_metric, c_out = "codebook.cb";
    int c_mt = 4, c_ms = 2, c_n = 16;
    bool c_noid = false, c_search = false;
    std::size_t c_budget = 1'000'000;
    c->add_option("kind", c_kind, "kerdock|fourier")->required();
    c->add_option("--mt", c_mt, "transmit antennas");
    auto* ms_opt = c->add_option("--ms", c_ms, "streams (sm mode)");
    c->add_option("--mode", c_mode, "bf|sm");
    c->add_option("--strategy", c_strategy, "all|table1|maxmin (kerdock sm)");
    c->add_option("--construction", c_construction, "hadamard|power (kerdock mt=2)");
    c->add_flag("--no-identity", c_noid, "drop the identity basis (bf)");
    c->add_option("--n", c_n, "codebook size (fourier)");
    c->add_option("--u", c_u, "comma-separated generator exponents (fourier)");
    c->add_flag("--search", c_search, "search the generator exponents (fourier)");
    c->add_option("--metric", c_metric, "chordal|p2|fs for searches");
    c->add_option("--budget", c_budget, "search budget");
    c->add_option("-o,--out", c_out, "output codebook file");

    // analyze
    auto* a = app.add_subcommand("analyze", "distance spectrum and complexity of a codebook file");
    std::string a_path, a_metric, a_csv, a_kind = "auto";
    int a_mr = 0, a_nb = 16, a_bfn = 16, a_smn = 8, a_smms = 2;
    bool a_ops = false, a_storage = false;
    std::uint64_t a_seed = 1;
    a->add_option("codebook", a_path, "codebook file")->required();
    a->add_option("--metric", a_metric, "chordal|p2|fs (default by ms)");
    a->add_option("--csv", a_csv, "write the pairwise spectrum as CSV");
    a->add_flag("--ops", a_ops, "selection operation counts plus a live instrumented search");
    a->add_flag("--storage", a_storage, "storage bit estimates");
    a->add_option("--kind", a_kind, "auto|kerdock|fourier|grassmannian");
    a->add_option("--mr", a_mr, "receive antennas for op counts (default mt)");
    a->add_option("--nb", a_nb, "bits per real component for storage");
    a->add_option("--bf-n", a_bfn, "beamforming codebook size of the storage scenario");
    a->add_option("--sm-n", a_smn, "precoding codebook size of the storage scenario");
    a->add_option("--sm-ms", a_smms, "streams of the storage scenario");
    a->add_option("--seed", a_seed, "seed for the live instrumented search");

    // simulate
    auto* s = app.add_subcommand("simulate", "run a configured Monte Carlo experiment");
    std::string s_config, s_manifest, s_out = "sim", s_report;
    int s_threads = 0;
    double s_target = 1e-2;
    std::uint64_t s_seed = 0;
    bool s_seed_set = false;
    s->add_option("config", s_config, "key=value config file");
    s->add_option("--from-manifest", s_manifest, "rerun the config embedded in a manifest");
    s->add_option("-o,--out", s_out, "output file prefix");
    s->add_option("--threads", s_threads, "worker thread count (results are unaffected)");
    auto* seed_opt = s->add_option("--seed", s_seed, "override the config seed");
    s->add_option("--report", s_report, "snr-gap|rate-gap");
    s->add_option("--target", s_target, "target vser for --report snr-gap");

    CLI11_PARSE(app, argc, argv);
    s_seed_set = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(c))
            return cmd_construct(c_kind, c_mt, c_ms, ms_opt->count() > 0, c_mode, c_strategy,
                                 c_construction, c_noid, c_n, c_u, c_search, c_metric, c_budget,
                                 c_out, manifest);
        if (app.got_subcommand(a))
            return cmd_analyze(a_path, a_metric, a_csv, a_ops, a_storage, a_kind, a_mr, a_nb,
                               a_bfn, a_smn, a_smms, a_seed, manifest);
        if (app.got_subcommand(s)) {
            if (s_config.empty() && s_manifest.empty())
                throw std::invalid_argument("simulate needs a config file or --from-manifest");
            return cmd_simulate(s_config, s_manifest, s_out, s_threads,
                                s_seed_set ? std::optional<std::uint64_t>(s_seed) : std::nullopt,
                                s_report, s_target, manifest);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
