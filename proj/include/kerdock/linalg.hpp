#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kerdock {

using Complex = std::complex<double>;

/// All matrices in this library are small by contract (limited-feedback
/// precoding never needs more than a handful of antennas), so storage is a
/// fixed inline buffer and nothing here ever touches the heap.
inline constexpr std::size_t kMaxDim = 8;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonFiniteInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical tolerances used across the library, collected in one record so
/// every threshold is visible (and overridable in one place if a caller needs
/// looser arithmetic).
struct Tolerances {
    double svd_offdiag = 1e-14;   // Jacobi stop: max relative column coupling
    double svd_ortho = 1e-10;     // orthonormality of computed U/V
    double pinv_rank = 1e-10;     // smin > pinv_rank * smax required for pinv
    double unitary = 1e-12;       // basis unitarity checks
    double mub = 1e-12;           // cross-basis inner product magnitude checks
    double ortho_cols = 1e-12;    // codeword column orthonormality
    double load_ortho = 1e-6;     // orthonormality accepted when importing files
    double dedup = 1e-9;          // distance spectrum distinct-value grouping
    double unit_norm = 1e-9;      // unit-norm precondition on chordal inputs
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

/// Dense complex matrix with row-major inline storage, capped at 8x8.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        check_dims(rows, cols);
        entries_.fill(Complex{0.0, 0.0});
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> vals)
        : ComplexMatrix(rows, cols) {
        if (vals.size() != rows * cols)
            throw DimensionMismatch("initializer size does not match matrix shape");
        std::copy(vals.begin(), vals.end(), entries_.begin());
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    /// Column view as a fresh rows x 1 matrix.
    ComplexMatrix column(std::size_t c) const {
        ComplexMatrix out(rows_, 1);
        for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
        return out;
    }

    /// New matrix keeping the given columns, in the given order.
    ComplexMatrix columns(const std::vector<std::size_t>& idx) const {
        ComplexMatrix out(rows_, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, idx[c]);
        return out;
    }

    bool is_finite() const {
        for (std::size_t i = 0; i < rows_ * cols_; ++i)
            if (!std::isfinite(entries_[i].real()) || !std::isfinite(entries_[i].imag())) return false;
        return true;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.rows_ * a.cols_; ++i)
            if (a.entries_[i] != b.entries_[i]) return false;
        return true;
    }

  private:
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows < 1 || cols < 1) throw DimensionMismatch("matrix dimensions must be at least 1x1");
        if (rows > kMaxDim || cols > kMaxDim)
            throw DimensionMismatch("matrix dimensions exceed the supported cap of " +
                                    std::to_string(kMaxDim));
    }

    std::size_t rows_, cols_;
    std::array<Complex, kMaxDim * kMaxDim> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix hermitian(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix scale(const ComplexMatrix& a, Complex s) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
    return out;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shapes differ");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

inline ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sub: shapes differ");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

/// Inner product conj(a)^T b of two equal-length column vectors.
inline Complex column_inner(const ComplexMatrix& a, std::size_t ca, const ComplexMatrix& b,
                            std::size_t cb) {
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < a.rows(); ++r) acc += std::conj(a(r, ca)) * b(r, cb);
    return acc;
}

/// Determinant by LU with partial pivoting. Exact enough at these sizes
/// (relative error well under 1e-12 for dimensions up to 8).
inline Complex det(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("det: matrix must be square");
    if (!a.is_finite()) throw NonFiniteInput("det: non-finite entries");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    Complex d{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(lu(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return Complex{0.0, 0.0};
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            d = -d;
        }
        d *= lu(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = lu(r, k) / lu(k, k);
            for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return d;
}

struct SvdResult {
    ComplexMatrix u;                       // m x k, orthonormal columns
    std::vector<double> singular_values;   // k values, nonincreasing
    ComplexMatrix v;                       // n x k, orthonormal columns
};

namespace detail {

// One-sided Jacobi on the columns of w (m x n, m >= n), accumulating the
// right rotations into v. Sweeps until the largest relative column coupling
// drops below tol().svd_offdiag.
inline void jacobi_sweeps(ComplexMatrix& w, ComplexMatrix& v) {
    const std::size_t n = w.cols();
    const std::size_t m = w.rows();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq{0.0, 0.0};
                for (std::size_t r = 0; r < m; ++r) {
                    app += std::norm(w(r, p));
                    aqq += std::norm(w(r, q));
                    apq += std::conj(w(r, p)) * w(r, q);
                }
                const double mag = std::abs(apq);
                if (app == 0.0 || aqq == 0.0 || mag == 0.0) continue;
                const double rel = mag / std::sqrt(app * aqq);
                worst = std::max(worst, rel);
                if (rel <= tol().svd_offdiag) continue;

                // Unitary 2x2 rotation diagonalizing [[app, apq],[apq*, aqq]]:
                // factor the phase out of apq, then a real Jacobi rotation.
                const Complex phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex iphase = std::conj(phase);
                for (std::size_t r = 0; r < m; ++r) {
                    const Complex wp = w(r, p), wq = w(r, q);
                    w(r, p) = c * wp - s * (iphase * wq);
                    w(r, q) = s * (phase * wp) + c * wq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - s * (iphase * vq);
                    v(r, q) = s * (phase * vp) + c * vq;
                }
            }
        }
        if (worst <= tol().svd_offdiag) break;
    }
}

// Replace (near-)null columns of u with unit vectors orthogonal to all other
// columns, so u always has orthonormal columns even for rank-deficient input.
inline void complete_orthonormal(ComplexMatrix& u, const std::vector<bool>& needs_fill) {
    const std::size_t m = u.rows();
    const std::size_t k = u.cols();
    for (std::size_t j = 0; j < k; ++j) {
        if (!needs_fill[j]) continue;
        for (std::size_t cand = 0; cand < m; ++cand) {
            ComplexMatrix e(m, 1);
            e(cand, 0) = 1.0;
            for (std::size_t c = 0; c < k; ++c) {
                if (c == j) continue;
                if (needs_fill[c] && c > j) continue;  // not yet filled
                const Complex ip = column_inner(u, c, e, 0);
                for (std::size_t r = 0; r < m; ++r) e(r, 0) -= ip * u(r, c);
            }
            double nrm = 0.0;
            for (std::size_t r = 0; r < m; ++r) nrm += std::norm(e(r, 0));
            nrm = std::sqrt(nrm);
            if (nrm > 0.5) {  // candidate basis vector not in the span
                for (std::size_t r = 0; r < m; ++r) u(r, j) = e(r, 0) / nrm;
                break;
            }
        }
    }
}

inline SvdResult svd_tall(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    jacobi_sweeps(w, v);

    std::vector<double> sig(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < m; ++r) acc += std::norm(w(r, j));
        sig[j] = std::sqrt(acc);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

    SvdResult out;
    out.u = ComplexMatrix(m, n);
    out.v = ComplexMatrix(n, n);
    out.singular_values.resize(n);
    const double smax = sig[order[0]];
    std::vector<bool> needs_fill(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = sig[src];
        for (std::size_t r = 0; r < n; ++r) out.v(r, j) = v(r, src);
        if (sig[src] > smax * 1e-15 && sig[src] > 0.0) {
            for (std::size_t r = 0; r < m; ++r) out.u(r, j) = w(r, src) / sig[src];
        } else {
            needs_fill[j] = true;
        }
    }
    complete_orthonormal(out.u, needs_fill);
    return out;
}

}  // namespace detail

/// Thin SVD a = u * diag(singular_values) * hermitian(v), singular values
/// sorted nonincreasing, ties kept in stable column order.
inline SvdResult svd(const ComplexMatrix& a) {
    if (!a.is_finite()) throw NonFiniteInput("svd: non-finite entries");
    if (a.rows() >= a.cols()) return detail::svd_tall(a);
    SvdResult t = detail::svd_tall(hermitian(a));
    return SvdResult{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

inline double smallest_singular_value(const ComplexMatrix& a) {
    return svd(a).singular_values.back();
}

/// Moore-Penrose pseudo-inverse of a full-column-rank matrix.
inline ComplexMatrix pseudo_inverse(const ComplexMatrix& a) {
    if (a.cols() > a.rows())
        throw RankDeficient("pseudo_inverse: more columns than rows, cannot have full column rank");
    const SvdResult s = svd(a);
    const double smax = s.singular_values.front();
    const double smin = s.singular_values.back();
    if (!(smin > tol().pinv_rank * smax) || smax == 0.0)
        throw RankDeficient("pseudo_inverse: effectively rank-deficient input");
    // v * diag(1/s) * u^*
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < s.singular_values.size(); ++k)
                acc += s.v(i, k) * std::conj(s.u(j, k)) / s.singular_values[k];
            out(i, j) = acc;
        }
    return out;
}

}  // namespace kerdock
