#pragma once

#include <cstdint>
#include <random>

#include "flagvar/matrix.hpp"

namespace testutil {

using flagvar::FieldSpec;
using flagvar::GFp;
using flagvar::Matrix;
using flagvar::Rat;
using flagvar::Vec;

// Raw engine output is reduced directly so streams are reproducible
// independent of the standard library's distribution implementations.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <class K>
K random_scalar(std::mt19937_64& rng, const FieldSpec& f);

template <>
inline GFp random_scalar<GFp>(std::mt19937_64& rng, const FieldSpec& f) {
    return GFp::from_int(f, draw(rng, 0, f.characteristic - 1));
}

template <>
inline Rat random_scalar<Rat>(std::mt19937_64& rng, const FieldSpec&) {
    return Rat(draw(rng, -9, 9), draw(rng, 1, 4));
}

template <class K>
Vec<K> random_vec(std::mt19937_64& rng, int n, const FieldSpec& f) {
    Vec<K> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(random_scalar<K>(rng, f));
    return v;
}

template <class K>
Matrix<K> random_matrix(std::mt19937_64& rng, int rows, int cols, const FieldSpec& f) {
    Matrix<K> m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar<K>(rng, f);
    return m;
}

template <class K>
Matrix<K> random_invertible(std::mt19937_64& rng, int n, const FieldSpec& f) {
    for (;;) {
        Matrix<K> m = random_matrix<K>(rng, n, n, f);
        if (!flagvar::det(m).is_zero()) return m;
    }
}

/// Cofactor-expansion determinant, kept deliberately naive as an
/// independent oracle for the elimination-based implementation.
template <class K>
K naive_det(const Matrix<K>& m) {
    const int n = m.rows();
    if (n == 1) return m.at(0, 0);
    K s = K::zero(m.spec());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Matrix<K> minor(n - 1, n - 1, m.spec());
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        K term = m.at(0, j) * naive_det(minor);
        s += (j % 2 == 0) ? term : -term;
    }
    return s;
}

}  // namespace testutil
