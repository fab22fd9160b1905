#pragma once

#include <array>
#include <optional>
#include <tuple>

#include "matrix.hpp"

namespace flagvar {

// ---------------------------------------------------------------------------
// exterior algebra of a 4-dimensional space
//
// Basis conventions, fixed once for the whole library:
//   Lambda^2: e01, e02, e03, e12, e13, e23            (lexicographic)
//   Lambda^3: coordinate m holds the coefficient of the wedge of the three
//             basis vectors other than b_m, in ascending order
//   Lambda^4: identified with the scalars via b0^b1^b2^b3 -> 1
// ---------------------------------------------------------------------------

inline constexpr int kWedgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

/// Position of e_i^e_j (i < j) in the lexicographic Lambda^2 basis.
inline int wedge_index(int i, int j) {
    static constexpr int table[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

/// a ^ b of two vectors, as the 6 Pluecker coordinates
/// (p01, p02, p03, p12, p13, p23) with p_ij = a_i b_j - a_j b_i.
template <class K>
Vec<K> wedge2(const Vec<K>& a, const Vec<K>& b) {
    if (a.size() != 4 || b.size() != 4)
        throw DimensionMismatchError("wedge2 expects 4-vectors");
    Vec<K> out;
    out.reserve(6);
    for (const auto& [i, j] : kWedgePairs)
        out.push_back(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                      a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)]);
    return out;
}

/// v ^ t for a vector v and a bivector t, in Lambda^3 coordinates.
template <class K>
Vec<K> wedge12(const Vec<K>& v, const Vec<K>& t) {
    if (v.size() != 4 || t.size() != 6)
        throw DimensionMismatchError("wedge12 expects a 4-vector and a 6-vector");
    const FieldSpec f = v[0].spec();
    Vec<K> out = zero_vec<K>(4, f);
    for (int c = 0; c < 4; ++c) {
        if (v[static_cast<std::size_t>(c)].is_zero()) continue;
        for (int w = 0; w < 6; ++w) {
            const int j = kWedgePairs[w][0], k = kWedgePairs[w][1];
            if (c == j || c == k) continue;
            const int m = 6 - c - j - k;  // the omitted index
            K term = v[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(w)];
            // sign of sorting (c, j, k) with j < k
            if (j < c && c < k) term = -term;
            out[static_cast<std::size_t>(m)] += term;
        }
    }
    return out;
}

/// Coefficient of b0^b1^b2^b3 in x ^ y for two bivectors.
template <class K>
K wedge22(const Vec<K>& x, const Vec<K>& y) {
    if (x.size() != 6 || y.size() != 6)
        throw DimensionMismatchError("wedge22 expects 6-vectors");
    K s = K::zero(x[0].spec());
    s += x[0] * y[5] + x[5] * y[0];
    s -= x[1] * y[4] + x[4] * y[1];
    s += x[2] * y[3] + x[3] * y[2];
    return s;
}

/// The Pluecker quadric p01 p23 - p02 p13 + p03 p12. Vanishes exactly on
/// the decomposable bivectors; written out directly so it survives
/// characteristic 2, where wedge22(t, t) is identically zero.
template <class K>
K quadric_form(const Vec<K>& t) {
    if (t.size() != 6) throw DimensionMismatchError("quadric form expects a 6-vector");
    return t[0] * t[5] - t[1] * t[4] + t[2] * t[3];
}

/// Contraction of a bivector with a covector:
/// (b_j ^ b_k) . e = e(b_j) b_k - e(b_k) b_j, extended bilinearly.
template <class K>
Vec<K> contract(const Vec<K>& t, const Vec<K>& e) {
    if (t.size() != 6 || e.size() != 4)
        throw DimensionMismatchError("contract expects a 6-vector and a 4-vector");
    const FieldSpec f = e[0].spec();
    Vec<K> out = zero_vec<K>(4, f);
    for (int w = 0; w < 6; ++w) {
        if (t[static_cast<std::size_t>(w)].is_zero()) continue;
        const int j = kWedgePairs[w][0], k = kWedgePairs[w][1];
        out[static_cast<std::size_t>(k)] += t[static_cast<std::size_t>(w)] *
                                            e[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)] -= t[static_cast<std::size_t>(w)] *
                                            e[static_cast<std::size_t>(k)];
    }
    return out;
}

/// Matrix of the linear map x -> x ^ t from V to Lambda^3 (4 x 4).
template <class K>
Matrix<K> wedge_map(const Vec<K>& t) {
    if (t.size() != 6) throw DimensionMismatchError("wedge map expects a 6-vector");
    const FieldSpec f = t[0].spec();
    Matrix<K> m(4, 4, f);
    for (int c = 0; c < 4; ++c) {
        Vec<K> basis = zero_vec<K>(4, f);
        basis[static_cast<std::size_t>(c)] = K::one(f);
        Vec<K> img = wedge12(basis, t);
        for (int r = 0; r < 4; ++r) m.at(r, c) = img[static_cast<std::size_t>(r)];
    }
    return m;
}

/// Basis of {x in V : x ^ t = 0}. For t != 0 the dimension is 2 exactly
/// when t is decomposable, else 0.
template <class K>
std::vector<Vec<K>> wedge_annihilator(const Vec<K>& t) {
    return kernel_basis(wedge_map(t));
}

template <class K>
bool is_decomposable(const Vec<K>& t) {
    if (vec_is_zero(t)) return false;
    return wedge_annihilator(t).size() == 2;
}

/// The polarity of the Klein quadric as a 6 x 6 matrix d, characterised by
/// dot(d x, y) = wedge22(x, y). It is symmetric and an involution.
template <class K>
Matrix<K> klein_polarity_matrix(const FieldSpec& f) {
    Matrix<K> d(6, 6, f);
    const K one = K::one(f);
    d.at(0, 5) = one;
    d.at(5, 0) = one;
    d.at(1, 4) = -one;
    d.at(4, 1) = -one;
    d.at(2, 3) = one;
    d.at(3, 2) = one;
    return d;
}

/// Induced map on Lambda^2: entries are the 2 x 2 minors of m, so that
/// exterior_square(m) * wedge2(a, b) = wedge2(m a, m b).
template <class K>
Matrix<K> exterior_square(const Matrix<K>& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw DimensionMismatchError("exterior square expects a 4 x 4 matrix");
    Matrix<K> out(6, 6, m.spec());
    for (int row = 0; row < 6; ++row) {
        const int r = kWedgePairs[row][0], s = kWedgePairs[row][1];
        for (int col = 0; col < 6; ++col) {
            const int i = kWedgePairs[col][0], j = kWedgePairs[col][1];
            out.at(row, col) = m.at(r, i) * m.at(s, j) - m.at(r, j) * m.at(s, i);
        }
    }
    return out;
}

/// Contragredient (f^T)^{-1}, the induced action on the dual space.
template <class K>
Matrix<K> inverse_transpose(const Matrix<K>& m) {
    return inverse(m.transpose());
}

// ---------------------------------------------------------------------------
// the 96-dimensional space V (x) Lambda^2 V (x) V*
// ---------------------------------------------------------------------------

/// Flat position of the basis tensor b_i (x) e_jk (x) b_l*.
inline int t96_index(int i, int jk, int l) { return 24 * i + 4 * jk + l; }

inline constexpr int kDim96 = 96;

/// p (x) t (x) e as a 96-vector.
template <class K>
Vec<K> tensor3(const Vec<K>& p, const Vec<K>& t, const Vec<K>& e) {
    if (p.size() != 4 || t.size() != 6 || e.size() != 4)
        throw DimensionMismatchError("tensor3 expects shapes 4, 6, 4");
    Vec<K> out;
    out.reserve(kDim96);
    for (int i = 0; i < 4; ++i)
        for (int jk = 0; jk < 6; ++jk) {
            const K pt = p[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(jk)];
            for (int l = 0; l < 4; ++l) out.push_back(pt * e[static_cast<std::size_t>(l)]);
        }
    return out;
}

/// Flattening V (x) Lambda^2 V (x) V* -> Lambda^3 V (x) V* sending
/// p (x) t (x) e to (p ^ t) (x) e, as a 16 x 96 matrix. Rows are flattened
/// as 4 m + l over the Lambda^3 coordinate m and dual coordinate l.
template <class K>
Matrix<K> wedge_flattening(const FieldSpec& f) {
    Matrix<K> out(16, kDim96, f);
    for (int i = 0; i < 4; ++i) {
        Vec<K> basis = zero_vec<K>(4, f);
        basis[static_cast<std::size_t>(i)] = K::one(f);
        for (int jk = 0; jk < 6; ++jk) {
            Vec<K> tbasis = zero_vec<K>(6, f);
            tbasis[static_cast<std::size_t>(jk)] = K::one(f);
            Vec<K> w = wedge12(basis, tbasis);
            for (int m = 0; m < 4; ++m) {
                if (w[static_cast<std::size_t>(m)].is_zero()) continue;
                for (int l = 0; l < 4; ++l)
                    out.at(4 * m + l, t96_index(i, jk, l)) = w[static_cast<std::size_t>(m)];
            }
        }
    }
    return out;
}

/// Flattening V (x) Lambda^2 V (x) V* -> V (x) V sending p (x) t (x) e to
/// p (x) (t . e), as a 16 x 96 matrix. Rows are flattened as 4 i + r.
template <class K>
Matrix<K> contraction_flattening(const FieldSpec& f) {
    Matrix<K> out(16, kDim96, f);
    for (int jk = 0; jk < 6; ++jk) {
        Vec<K> tbasis = zero_vec<K>(6, f);
        tbasis[static_cast<std::size_t>(jk)] = K::one(f);
        for (int l = 0; l < 4; ++l) {
            Vec<K> ebasis = zero_vec<K>(4, f);
            ebasis[static_cast<std::size_t>(l)] = K::one(f);
            Vec<K> c = contract(tbasis, ebasis);
            for (int r = 0; r < 4; ++r) {
                if (c[static_cast<std::size_t>(r)].is_zero()) continue;
                for (int i = 0; i < 4; ++i)
                    out.at(4 * i + r, t96_index(i, jk, l)) = c[static_cast<std::size_t>(r)];
            }
        }
    }
    return out;
}

/// Factorisation of a 96-vector as lambda * (p (x) t (x) e) with each factor
/// scaled to leading coefficient 1. Empty when x is zero or not simple.
template <class K>
struct SimpleTensorFactors {
    Vec<K> point;      // 4
    Vec<K> bivector;   // 6
    Vec<K> covector;   // 4
    K scale;
};

template <class K>
std::optional<SimpleTensorFactors<K>> segre_factors(const Vec<K>& x) {
    if (static_cast<int>(x.size()) != kDim96)
        throw DimensionMismatchError("expected a 96-vector");
    int pos0 = first_nonzero(x);
    if (pos0 < 0) return std::nullopt;
    const FieldSpec f = x[0].spec();
    const int i0 = pos0 / 24, jk0 = (pos0 / 4) % 6, l0 = pos0 % 4;
    const K x0 = x[static_cast<std::size_t>(pos0)];

    Vec<K> p = zero_vec<K>(4, f), t = zero_vec<K>(6, f), e = zero_vec<K>(4, f);
    for (int i = 0; i < 4; ++i)
        p[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(t96_index(i, jk0, l0))];
    for (int jk = 0; jk < 6; ++jk)
        t[static_cast<std::size_t>(jk)] = x[static_cast<std::size_t>(t96_index(i0, jk, l0))];
    for (int l = 0; l < 4; ++l)
        e[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(t96_index(i0, jk0, l))];

    // x is simple iff x0^2 * x equals p (x) t (x) e entrywise
    Vec<K> cand = tensor3(p, t, e);
    const K x0sq = x0 * x0;
    for (int k = 0; k < kDim96; ++k)
        if (x0sq * x[static_cast<std::size_t>(k)] != cand[static_cast<std::size_t>(k)])
            return std::nullopt;

    const K inv = x0.inverse();
    return SimpleTensorFactors<K>{vec_scaled(p, inv), vec_scaled(t, inv), vec_scaled(e, inv),
                                  x0};
}

}  // namespace flagvar
