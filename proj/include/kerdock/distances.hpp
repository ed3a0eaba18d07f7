#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kerdock/linalg.hpp"

namespace kerdock {

enum class Metric { Chordal, Proj2Norm, FubiniStudy };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::Chordal: return "chordal";
        case Metric::Proj2Norm: return "p2";
        case Metric::FubiniStudy: return "fs";
    }
    return "?";
}

namespace detail {

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(what) + ": codeword shapes differ");
}

inline void require_orthonormal_columns(const ComplexMatrix& f, const char* what,
                                        double eps = tol().ortho_cols * 10.0) {
    for (std::size_t a = 0; a < f.cols(); ++a)
        for (std::size_t b = a; b < f.cols(); ++b) {
            const Complex ip = column_inner(f, a, f, b);
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - want) > eps)
                throw std::invalid_argument(std::string(what) +
                                            ": codeword columns are not orthonormal");
        }
}

}  // namespace detail

/// Chordal distance sqrt(1 - |f1^* f2|^2) between unit-norm vectors.
inline double chordal(const ComplexMatrix& f1, const ComplexMatrix& f2) {
    detail::require_same_shape(f1, f2, "chordal");
    if (f1.cols() != 1) throw DimensionMismatch("chordal: defined for column vectors");
    if (std::abs(frobenius_norm(f1) - 1.0) > tol().unit_norm ||
        std::abs(frobenius_norm(f2) - 1.0) > tol().unit_norm)
        throw std::invalid_argument("chordal: inputs must be unit norm");
    const Complex ip = column_inner(f1, 0, f2, 0);
    return std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
}

/// Projection 2-norm distance sqrt(1 - smin^2(F1^* F2)), equal to the
/// operator norm of the projector difference F1 F1^* - F2 F2^*.
inline double proj_2norm(const ComplexMatrix& f1, const ComplexMatrix& f2) {
    detail::require_same_shape(f1, f2, "proj_2norm");
    detail::require_orthonormal_columns(f1, "proj_2norm");
    detail::require_orthonormal_columns(f2, "proj_2norm");
    const ComplexMatrix m = hermitian(f1) * f2;
    const double smin = svd(m).singular_values.back();
    return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

/// Fubini-Study distance arccos|det(F1^* F2)|, in radians.
inline double fubini_study(const ComplexMatrix& f1, const ComplexMatrix& f2) {
    detail::require_same_shape(f1, f2, "fubini_study");
    detail::require_orthonormal_columns(f1, "fubini_study");
    detail::require_orthonormal_columns(f2, "fubini_study");
    const double d = std::abs(det(hermitian(f1) * f2));
    return std::acos(std::clamp(d, 0.0, 1.0));
}

inline double subspace_distance(Metric metric, const ComplexMatrix& f1, const ComplexMatrix& f2) {
    switch (metric) {
        case Metric::Chordal: return chordal(f1, f2);
        case Metric::Proj2Norm: return proj_2norm(f1, f2);
        case Metric::FubiniStudy: return fubini_study(f1, f2);
    }
    throw std::logic_error("unknown metric");
}

}  // namespace kerdock
