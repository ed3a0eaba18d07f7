#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerdock/linalg.hpp"
#include "kerdock/quaternary.hpp"

namespace kerdock {

struct NotUnitary : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PowerNotIdentity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMutuallyUnbiased : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered collection of mutually unbiased bases for mt antennas. The last
/// basis of the power construction is the identity (antenna selection).
struct MubSet {
    int mt = 0;
    std::vector<QuaternaryMatrix> bases;

    std::size_t size() const { return bases.size(); }

    /// Copy with every identity basis removed.
    MubSet without_identity() const {
        MubSet out{mt, {}};
        for (const auto& b : bases)
            if (!b.is_identity()) out.bases.push_back(b);
        return out;
    }
};

/// Sylvester-Hadamard matrix of order mt = 2^B, entries +-1.
inline ComplexMatrix sylvester_hadamard(int mt) {
    if (mt < 2 || (mt & (mt - 1)) != 0)
        throw std::invalid_argument("sylvester_hadamard: order must be a power of two, at least 2");
    ComplexMatrix h(1, 1, {Complex{1.0, 0.0}});
    for (int n = 1; n < mt; n *= 2) {
        ComplexMatrix next(2 * n, 2 * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const Complex v = h(r, c);
                next(r, c) = v;
                next(r, c + n) = v;
                next(r + n, c) = v;
                next(r + n, c + n) = -v;
            }
        h = next;
    }
    return h;
}

namespace detail {

inline QSymbol qsym_mul(QSymbol a, QSymbol b) {
    const auto s = gint_to_symbol(to_gint(a) * to_gint(b));
    return *s;  // product of alphabet members stays in the alphabet
}

struct PhaseQuaternary {
    std::vector<QSymbol> codes;
    Gint divisor;
};

// Factors a Gaussian-integer matrix as divisor * codes with codes in
// {0,+-1,+-j}. Succeeds exactly when all nonzero entries share one value up
// to a unit, which holds for every power of a valid MUB generator.
inline std::optional<PhaseQuaternary> factor_phase_quaternary(const GintMatrix& p) {
    Gint g{0, 0};
    for (const Gint& e : p.e)
        if (!e.is_zero()) { g = e; break; }
    if (g.is_zero()) return std::nullopt;
    const long long n2 = g.norm2();
    PhaseQuaternary out{std::vector<QSymbol>(p.e.size(), QSymbol::Zero), g};
    for (std::size_t i = 0; i < p.e.size(); ++i) {
        const Gint& e = p.e[i];
        if (e.is_zero()) continue;
        const Gint num = e * g.conj();
        if (num.re % n2 != 0 || num.im % n2 != 0) return std::nullopt;
        const auto sym = gint_to_symbol({num.re / n2, num.im / n2});
        if (!sym) return std::nullopt;
        out.codes[i] = *sym;
    }
    return out;
}

inline double snap(double v, std::initializer_list<double> anchors, double eps = 1e-9) {
    for (double a : anchors)
        if (std::abs(v - a) <= eps) return a;
    return v;
}

inline Complex snap_phase(Complex p) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double re = snap(p.real(), {0.0, 1.0, -1.0, inv_sqrt2, -inv_sqrt2});
    const double im = snap(p.imag(), {0.0, 1.0, -1.0, inv_sqrt2, -inv_sqrt2});
    return {re, im};
}

inline void check_mutually_unbiased(const std::vector<ComplexMatrix>& dense, int mt, double eps) {
    const double target = 1.0 / std::sqrt(static_cast<double>(mt));
    for (std::size_t n = 0; n < dense.size(); ++n) {
        const ComplexMatrix gram = hermitian(dense[n]) * dense[n];
        for (int r = 0; r < mt; ++r)
            for (int c = 0; c < mt; ++c) {
                const double want = (r == c) ? 1.0 : 0.0;
                if (std::abs(gram(r, c) - want) > eps)
                    throw NotMutuallyUnbiased("basis " + std::to_string(n) +
                                              " does not have orthonormal columns");
            }
        for (std::size_t m = n + 1; m < dense.size(); ++m) {
            const ComplexMatrix cross = hermitian(dense[n]) * dense[m];
            for (int r = 0; r < mt; ++r)
                for (int c = 0; c < mt; ++c)
                    if (std::abs(std::abs(cross(r, c)) - target) > eps)
                        throw NotMutuallyUnbiased(
                            "bases " + std::to_string(n) + " and " + std::to_string(m) +
                            " have a column pair with inner product magnitude away from 1/sqrt(mt)");
        }
    }
}

}  // namespace detail

/// Power construction: bases are d, d^2, ..., d^count, with d^count required
/// to be the identity. Powers are evaluated exactly in Gaussian-integer
/// arithmetic on the symbol codes; the mutually unbiased property of the
/// result is verified and enforced.
inline MubSet power_mub(const QuaternaryMatrix& d, int count) {
    if (d.rows != d.cols) throw NotUnitary("power_mub: generator must be square");
    if (count < 1) throw std::invalid_argument("power_mub: count must be at least 1");
    const int mt = static_cast<int>(d.rows);

    {
        const ComplexMatrix dd = d.dense();
        const ComplexMatrix gram = hermitian(dd) * dd;
        for (int r = 0; r < mt; ++r)
            for (int c = 0; c < mt; ++c)
                if (std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)) > tol().unitary)
                    throw NotUnitary("power_mub: generator is not unitary");
    }

    const GintMatrix q = d.gaussian();
    const Complex base_factor = d.phase * d.scale;

    std::vector<GintMatrix> powers(count);
    powers[0] = q;
    for (int n = 1; n < count; ++n) powers[n] = gint_matmul(powers[n - 1], q);

    // d^count must be a scalar multiple of I at the symbol level and exactly
    // the identity once the accumulated scale and phase are applied.
    {
        const GintMatrix& last = powers[count - 1];
        const Gint diag = last(0, 0);
        for (int r = 0; r < mt; ++r)
            for (int c = 0; c < mt; ++c)
                if ((r == c && last(r, c) != diag) || (r != c && !last(r, c).is_zero()))
                    throw PowerNotIdentity("power_mub: generator power count is not a scalar matrix");
        const Complex total = std::pow(base_factor, count) * Complex(static_cast<double>(diag.re),
                                                                     static_cast<double>(diag.im));
        if (std::abs(total - Complex{1.0, 0.0}) > tol().unitary)
            throw PowerNotIdentity("power_mub: generator power count does not return to the identity");
    }

    MubSet set{mt, {}};
    const double unit_scale = 1.0 / std::sqrt(static_cast<double>(mt));
    for (int n = 0; n < count; ++n) {
        const auto fac = detail::factor_phase_quaternary(powers[n]);
        if (!fac)
            throw NotMutuallyUnbiased(
                "power_mub: power " + std::to_string(n + 1) +
                " does not have single-magnitude entries, so the set cannot be mutually unbiased");
        QuaternaryMatrix basis(mt, mt, 1.0);
        basis.codes = fac->codes;
        const Complex total =
            std::pow(base_factor, n + 1) *
            Complex(static_cast<double>(fac->divisor.re), static_cast<double>(fac->divisor.im));
        const double mag = std::abs(total);
        basis.scale = detail::snap(mag, {1.0, unit_scale});
        basis.phase = detail::snap_phase(total / mag);
        // A residual phase that is itself an alphabet unit folds into the
        // codes, keeping every plainly-quaternary basis at phase exactly 1.
        for (QSymbol u : {QSymbol::PlusOne, QSymbol::MinusOne, QSymbol::PlusJ, QSymbol::MinusJ}) {
            if (std::abs(basis.phase - decode(u)) <= 1e-9) {
                for (QSymbol& c : basis.codes) c = detail::qsym_mul(c, u);
                basis.phase = Complex{1.0, 0.0};
                break;
            }
        }
        set.bases.push_back(std::move(basis));
    }

    std::vector<ComplexMatrix> dense;
    dense.reserve(set.bases.size());
    for (const auto& b : set.bases) dense.push_back(b.dense());
    detail::check_mutually_unbiased(dense, mt, tol().mub);
    return set;
}

/// Two-antenna Kerdock set from the Sylvester-Hadamard construction:
/// S0 = H2/sqrt(2), S1 = diag(1,j) H2/sqrt(2), S2 = I2.
inline MubSet kerdock_mub_mt2() {
    const double s = 1.0 / std::sqrt(2.0);
    QuaternaryMatrix s0(2, 2, s);
    s0.codes = {QSymbol::PlusOne, QSymbol::PlusOne, QSymbol::PlusOne, QSymbol::MinusOne};
    QuaternaryMatrix s1(2, 2, s);
    s1.codes = {QSymbol::PlusOne, QSymbol::PlusOne, QSymbol::PlusJ, QSymbol::MinusJ};
    MubSet set{2, {s0, s1, QuaternaryMatrix::identity(2)}};

    std::vector<ComplexMatrix> dense;
    for (const auto& b : set.bases) dense.push_back(b.dense());
    detail::check_mutually_unbiased(dense, 2, tol().mub);
    return set;
}

/// Four-antenna generator D = (1/2) diag(-j, 1, -j, -1) (H2 kron H2).
/// Its powers D, D^2, ..., D^5 = I form the five-basis Kerdock set.
inline QuaternaryMatrix kerdock_mt4_generator() {
    const ComplexMatrix h4 = sylvester_hadamard(4);
    const QSymbol diag[4] = {QSymbol::MinusJ, QSymbol::PlusOne, QSymbol::MinusJ, QSymbol::MinusOne};
    QuaternaryMatrix d(4, 4, 0.5);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const QSymbol h = h4(r, c).real() > 0 ? QSymbol::PlusOne : QSymbol::MinusOne;
            d.at(r, c) = detail::qsym_mul(diag[r], h);
        }
    return d;
}

inline MubSet kerdock_mub_mt4() { return power_mub(kerdock_mt4_generator(), 5); }

/// Two-antenna power-construction generator, D = (1/2) [[-1-j, -1+j],
/// [1+j, -1+j]]. Not plainly quaternary: it carries the unit phase (1+j)/sqrt(2)
/// on top of quaternary codes. D^3 = I, giving a three-basis set.
inline QuaternaryMatrix mt2_power_generator() {
    QuaternaryMatrix d(2, 2, 1.0 / std::sqrt(2.0));
    d.phase = Complex{1.0, 1.0} / std::sqrt(2.0);
    d.codes = {QSymbol::MinusOne, QSymbol::PlusJ, QSymbol::PlusOne, QSymbol::PlusJ};
    return d;
}

}  // namespace kerdock
