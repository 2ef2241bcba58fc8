#pragma once

#include "ddl/curve.hpp"

#include <optional>
#include <string>

namespace ddl {

/// Built-in curves used throughout the experiments and tests.
///
///   davenport-schmidt   (s, s^2),         m = 1, n = 2
///   bugeaud-<n>         (s, s^2, ..., s^n), m = 1
///   scalar-<m>          s I_m,            m = n
///   pencil-trap         [[0, 0], [s, s^2]], m = n = 2
///   escape              (s, 0),           m = 1, n = 2
///
/// All on the interval [0, 2].
inline std::optional<MatrixCurve> catalog_curve(const std::string& name) {
    const Rational lo(0), hi(2);
    auto mono = [](int k) { return RationalFunction(Polynomial::monomial(Rational(1), k)); };
    if (name == "davenport-schmidt" || name == "ds") {
        RFMatrix e(1, 2);
        e(0, 0) = mono(1);
        e(0, 1) = mono(2);
        return MatrixCurve(e, lo, hi);
    }
    if (name.rfind("bugeaud-", 0) == 0) {
        int n = std::atoi(name.c_str() + 8);
        if (n < 2 || n > 8) return std::nullopt;
        RFMatrix e(1, n);
        for (int j = 0; j < n; ++j) e(0, j) = mono(j + 1);
        return MatrixCurve(e, lo, hi);
    }
    if (name.rfind("scalar-", 0) == 0) {
        int m = std::atoi(name.c_str() + 7);
        if (m < 1 || m > 4) return std::nullopt;
        RFMatrix e(m, m);
        for (int i = 0; i < m; ++i) e(i, i) = mono(1);
        return MatrixCurve(e, lo, hi);
    }
    if (name == "pencil-trap") {
        RFMatrix e(2, 2);
        e(1, 0) = mono(1);
        e(1, 1) = mono(2);
        return MatrixCurve(e, lo, hi);
    }
    if (name == "escape") {
        RFMatrix e(1, 2);
        e(0, 0) = mono(1);
        return MatrixCurve(e, lo, hi);
    }
    return std::nullopt;
}

}  // namespace ddl
