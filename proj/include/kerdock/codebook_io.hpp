#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "kerdock/codebook.hpp"

namespace kerdock {

/// Parse failure; the offending 1-based line number is in `line` and in the
/// message.
struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t l, const std::string& what)
        : std::runtime_error("line " + std::to_string(l) + ": " + what), line(l) {}
};

/// Text format, one file per codebook:
///
///   codebook v1 mt=<int> ms=<int> n=<int>
///   # <index> <label>
///   <re> <im>  ... ms pairs ...        (mt rows per codeword, row-major)
///
/// Values are decimal with up to 17 significant digits, which round-trips
/// IEEE doubles exactly.
inline std::string codebook_to_string(const Codebook& cb) {
    std::string out = "codebook v1 mt=" + std::to_string(cb.mt) + " ms=" + std::to_string(cb.ms) +
                      " n=" + std::to_string(cb.size()) + "\n";
    char buf[96];
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const Codeword& w = cb.codewords[i];
        out += "# " + std::to_string(i) + " " + (w.label.empty() ? "-" : w.label) + "\n";
        for (int r = 0; r < cb.mt; ++r) {
            for (int c = 0; c < cb.ms; ++c) {
                std::snprintf(buf, sizeof(buf), c ? " %.17g %.17g" : "%.17g %.17g",
                              w.dense(r, c).real(), w.dense(r, c).imag());
                out += buf;
            }
            out += "\n";
        }
    }
    return out;
}

inline Codebook codebook_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError(1, "empty codebook file");
    int mt = 0, ms = 0;
    std::size_t n = 0;
    if (std::sscanf(line.c_str(), "codebook v1 mt=%d ms=%d n=%zu", &mt, &ms, &n) != 3)
        throw ParseError(lineno, "bad header, expected 'codebook v1 mt=<int> ms=<int> n=<int>'");
    if (mt < 1 || ms < 1 || ms > mt || n < 1) throw ParseError(lineno, "bad header dimensions");
    if (static_cast<std::size_t>(mt) > kMaxDim)
        throw ParseError(lineno, "mt exceeds the supported cap of " + std::to_string(kMaxDim));

    Codebook cb;
    cb.mt = mt;
    cb.ms = ms;
    cb.mode = ms == 1 ? CodebookMode::Beamforming : CodebookMode::Precoding;

    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line()) throw ParseError(lineno + 1, "expected codeword header '# <index> <label>'");
        std::size_t idx = 0;
        char label_buf[128] = {0};
        if (std::sscanf(line.c_str(), "# %zu %127s", &idx, label_buf) < 1 || line[0] != '#')
            throw ParseError(lineno, "expected codeword header '# <index> <label>'");
        if (idx != i) throw ParseError(lineno, "codeword index out of order");

        Codeword w;
        w.label = label_buf;
        w.dense = ComplexMatrix(mt, ms);
        for (int r = 0; r < mt; ++r) {
            if (!next_line()) throw ParseError(lineno + 1, "truncated codeword " + std::to_string(i));
            std::istringstream row(line);
            for (int c = 0; c < ms; ++c) {
                double re = 0.0, im = 0.0;
                if (!(row >> re >> im))
                    throw ParseError(lineno, "expected " + std::to_string(ms) +
                                                 " '<re> <im>' pairs in codeword " + std::to_string(i));
                w.dense(r, c) = Complex{re, im};
            }
            double extra;
            if (row >> extra) throw ParseError(lineno, "trailing values in codeword " + std::to_string(i));
        }
        if (!w.dense.is_finite())
            throw ParseError(lineno, "non-finite entry in codeword " + std::to_string(i));
        cb.codewords.push_back(std::move(w));
    }

    // validate column orthonormality, naming the offending codeword
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const ComplexMatrix& f = cb.codewords[i].dense;
        for (int a = 0; a < ms; ++a)
            for (int b = a; b < ms; ++b) {
                const Complex ip = column_inner(f, a, f, b);
                const double want = (a == b) ? 1.0 : 0.0;
                if (std::abs(ip - want) > tol().load_ortho)
                    throw std::invalid_argument("codeword " + std::to_string(i) +
                                                " does not have orthonormal columns");
            }
    }

    // recover exact symbol codes where the entries admit them
    const double unit_scale = 1.0 / std::sqrt(static_cast<double>(mt));
    for (auto& w : cb.codewords) {
        for (double s : {unit_scale, 1.0}) {
            if (auto q = try_encode(w.dense, s, 1e-9)) {
                w.quaternary = std::move(*q);
                break;
            }
        }
    }
    return cb;
}

inline void save_codebook(const Codebook& cb, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("save_codebook: cannot open " + tmp);
        out << codebook_to_string(cb);
        if (!out) throw std::runtime_error("save_codebook: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("save_codebook: cannot move " + tmp + " into place");
}

inline Codebook load_codebook(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_codebook: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return codebook_from_string(ss.str());
}

}  // namespace kerdock
