#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kerdock/linalg.hpp"

namespace kerdock {

/// Quaternary codeword symbol. Everything a Kerdock basis stores is one of
/// these plus a single scale factor for the whole matrix.
enum class QSymbol : std::uint8_t { Zero, PlusOne, MinusOne, PlusJ, MinusJ };

inline Complex decode(QSymbol s) {
    switch (s) {
        case QSymbol::Zero: return {0.0, 0.0};
        case QSymbol::PlusOne: return {1.0, 0.0};
        case QSymbol::MinusOne: return {-1.0, 0.0};
        case QSymbol::PlusJ: return {0.0, 1.0};
        case QSymbol::MinusJ: return {0.0, -1.0};
    }
    return {0.0, 0.0};
}

/// Gaussian integer, used for exact symbol-level arithmetic (powers of the
/// generator matrix, identity checks) with no floating point involved.
struct Gint {
    long long re = 0;
    long long im = 0;

    friend Gint operator+(Gint a, Gint b) { return {a.re + b.re, a.im + b.im}; }
    friend Gint operator-(Gint a, Gint b) { return {a.re - b.re, a.im - b.im}; }
    friend Gint operator*(Gint a, Gint b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(Gint a, Gint b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(Gint a, Gint b) { return !(a == b); }

    Gint conj() const { return {re, -im}; }
    long long norm2() const { return re * re + im * im; }  // |z|^2
    bool is_zero() const { return re == 0 && im == 0; }
};

inline Gint to_gint(QSymbol s) {
    switch (s) {
        case QSymbol::Zero: return {0, 0};
        case QSymbol::PlusOne: return {1, 0};
        case QSymbol::MinusOne: return {-1, 0};
        case QSymbol::PlusJ: return {0, 1};
        case QSymbol::MinusJ: return {0, -1};
    }
    return {0, 0};
}

/// Maps a unit Gaussian integer back to its symbol; nullopt for anything else.
inline std::optional<QSymbol> gint_to_symbol(Gint g) {
    if (g == Gint{0, 0}) return QSymbol::Zero;
    if (g == Gint{1, 0}) return QSymbol::PlusOne;
    if (g == Gint{-1, 0}) return QSymbol::MinusOne;
    if (g == Gint{0, 1}) return QSymbol::PlusJ;
    if (g == Gint{0, -1}) return QSymbol::MinusJ;
    return std::nullopt;
}

/// Dense matrix of Gaussian integers; only what the exact construction needs.
struct GintMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Gint> e;

    GintMatrix() = default;
    GintMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}

    Gint& operator()(std::size_t r, std::size_t c) { return e[r * cols + c]; }
    const Gint& operator()(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

    static GintMatrix identity(std::size_t n) {
        GintMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = {1, 0};
        return m;
    }

    friend bool operator==(const GintMatrix& a, const GintMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
    }
};

inline GintMatrix gint_matmul(const GintMatrix& a, const GintMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("gint_matmul: inner dimensions differ");
    GintMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Gint acc{0, 0};
            for (std::size_t k = 0; k < a.cols; ++k) acc = acc + a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

/// Matrix whose entries live in {0, +1, -1, +j, -j} up to one global scale.
///
/// `scale` is 1/sqrt(Mt) for a proper basis and 1 for the identity basis.
/// `phase` is a unit-modulus factor that is exactly 1 for every Kerdock
/// construction; it exists so that the two-antenna power construction (whose
/// bases have entries like (-1-j)/2 and are *not* plainly quaternary) still
/// decomposes into exact symbol codes.
struct QuaternaryMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<QSymbol> codes;  // row-major
    double scale = 1.0;
    Complex phase{1.0, 0.0};

    QuaternaryMatrix() = default;
    QuaternaryMatrix(std::size_t r, std::size_t c, double s)
        : rows(r), cols(c), codes(r * c, QSymbol::Zero), scale(s) {}

    QSymbol& at(std::size_t r, std::size_t c) { return codes[r * cols + c]; }
    QSymbol at(std::size_t r, std::size_t c) const { return codes[r * cols + c]; }

    static QuaternaryMatrix identity(std::size_t n) {
        QuaternaryMatrix m(n, n, 1.0);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = QSymbol::PlusOne;
        return m;
    }

    bool is_identity() const {
        if (rows != cols || scale != 1.0 || phase != Complex{1.0, 0.0}) return false;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (at(r, c) != (r == c ? QSymbol::PlusOne : QSymbol::Zero)) return false;
        return true;
    }

    bool has_unit_phase() const { return phase == Complex{1.0, 0.0}; }

    GintMatrix gaussian() const {
        GintMatrix g(rows, cols);
        for (std::size_t i = 0; i < rows * cols; ++i) g.e[i] = to_gint(codes[i]);
        return g;
    }

    ComplexMatrix dense() const {
        ComplexMatrix m(rows, cols);
        const Complex f = phase * scale;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = decode(at(r, c)) * f;
        return m;
    }

    /// New matrix keeping the given columns, in the given order.
    QuaternaryMatrix columns(const std::vector<std::size_t>& idx) const {
        QuaternaryMatrix out(rows, idx.size(), scale);
        out.phase = phase;
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (std::size_t r = 0; r < rows; ++r) out.at(r, c) = at(r, idx[c]);
        return out;
    }
};

/// Attempts to encode a dense matrix as quaternary symbols against the given
/// scale (phase 1). Returns nullopt if any entry is farther than `eps` from
/// {0, +-scale, +-j*scale}.
inline std::optional<QuaternaryMatrix> try_encode(const ComplexMatrix& m, double scale,
                                                  double eps = 1e-12) {
    QuaternaryMatrix q(m.rows(), m.cols(), scale);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            QSymbol best = QSymbol::Zero;
            double bestd = std::abs(z);
            for (QSymbol s : {QSymbol::PlusOne, QSymbol::MinusOne, QSymbol::PlusJ, QSymbol::MinusJ}) {
                const double d = std::abs(z - decode(s) * scale);
                if (d < bestd) { bestd = d; best = s; }
            }
            if (bestd > eps) return std::nullopt;
            q.at(r, c) = best;
        }
    return q;
}

}  // namespace kerdock
