#pragma once

#include <cassert>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace flagvar {

template <class K>
using Vec = std::vector<K>;

// ---------------------------------------------------------------------------
// vector helpers
// ---------------------------------------------------------------------------

template <class K>
bool vec_is_zero(const Vec<K>& v) {
    for (const K& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Index of the first nonzero entry, or -1 for the zero vector.
template <class K>
int first_nonzero(const Vec<K>& v) {
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) return i;
    return -1;
}

template <class K>
void require_same_size(const Vec<K>& a, const Vec<K>& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("vectors of length " + std::to_string(a.size()) +
                                     " and " + std::to_string(b.size()));
}

template <class K>
Vec<K> vec_add(Vec<K> a, const Vec<K>& b) {
    require_same_size(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <class K>
Vec<K> vec_sub(Vec<K> a, const Vec<K>& b) {
    require_same_size(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <class K>
Vec<K> vec_scaled(Vec<K> v, const K& c) {
    for (K& x : v) x *= c;
    return v;
}

/// y += c * x
template <class K>
void vec_axpy(Vec<K>& y, const K& c, const Vec<K>& x) {
    require_same_size(y, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

template <class K>
K dot(const Vec<K>& a, const Vec<K>& b) {
    require_same_size(a, b);
    if (a.empty()) throw DimensionMismatchError("dot product of empty vectors");
    K s = K::zero(a[0].spec());
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class K>
Vec<K> zero_vec(int n, const FieldSpec& f) {
    return Vec<K>(static_cast<std::size_t>(n), K::zero(f));
}

/// Scales a nonzero vector so its first nonzero entry becomes 1. The zero
/// vector is returned unchanged.
template <class K>
Vec<K> projective_canonical(Vec<K> v) {
    int i = first_nonzero(v);
    if (i < 0) return v;
    K inv = v[static_cast<std::size_t>(i)].inverse();
    for (K& x : v) x *= inv;
    return v;
}

// ---------------------------------------------------------------------------
// dense exact matrix
// ---------------------------------------------------------------------------

/// Dense matrix over an exact scalar type (GFp or Rat). Row-major storage;
/// every entry lives in the matrix's ground field.
template <class K>
class Matrix {
  public:
    Matrix(int rows, int cols, const FieldSpec& spec)
        : rows_(rows), cols_(cols), spec_(spec),
          data_(checked_extent(rows, cols), K::zero(spec)) {}

    static Matrix identity(int n, const FieldSpec& spec) {
        Matrix m(n, n, spec);
        for (int i = 0; i < n; ++i) m.at(i, i) = K::one(spec);
        return m;
    }

    /// Builds a matrix from row vectors, validating shape and that all
    /// entries belong to one ground field.
    static Matrix from_rows(const std::vector<Vec<K>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw DimensionMismatchError("matrix must have positive extent");
        FieldSpec f = rows[0][0].spec();
        Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), f);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size())
                throw DimensionMismatchError("ragged rows in matrix literal");
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                if (rows[i][j].spec() != f)
                    throw FieldMismatchError("matrix entries from different fields");
                m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
            }
        }
        return m;
    }

    /// Convenience literal over integers.
    static Matrix from_ints(const std::vector<std::vector<std::int64_t>>& rows,
                            const FieldSpec& f) {
        if (rows.empty() || rows.front().empty())
            throw DimensionMismatchError("matrix must have positive extent");
        Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), f);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size())
                throw DimensionMismatchError("ragged rows in matrix literal");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                m.at(static_cast<int>(i), static_cast<int>(j)) = K::from_int(f, rows[i][j]);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& spec() const { return spec_; }

    K& at(int r, int c) {
        assert(0 <= r && r < rows_ && 0 <= c && c < cols_);
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }
    const K& at(int r, int c) const {
        assert(0 <= r && r < rows_ && 0 <= c && c < cols_);
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    Vec<K> row(int r) const {
        Vec<K> out;
        out.reserve(cols_);
        for (int c = 0; c < cols_; ++c) out.push_back(at(r, c));
        return out;
    }

    Vec<K> col(int c) const {
        Vec<K> out;
        out.reserve(rows_);
        for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
        return out;
    }

    void set_row(int r, const Vec<K>& v) {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatchError("row length does not match column count");
        for (int c = 0; c < cols_; ++c) at(r, c) = v[static_cast<std::size_t>(c)];
    }

    std::vector<Vec<K>> to_rows() const {
        std::vector<Vec<K>> out;
        out.reserve(rows_);
        for (int r = 0; r < rows_; ++r) out.push_back(row(r));
        return out;
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    void scale_row(int r, const K& s) {
        for (int c = 0; c < cols_; ++c) at(r, c) *= s;
    }

    /// row_i -= f * row_j
    void add_scaled_row(int i, int j, const K& f) {
        for (int c = 0; c < cols_; ++c) at(i, c) -= f * at(j, c);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, spec_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionMismatchError("matrix product shape mismatch");
        if (spec_ != o.spec_) throw FieldMismatchError("matrix product across fields");
        Matrix out(rows_, o.cols_, spec_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const K& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
            }
        return out;
    }

    Vec<K> mul_vec(const Vec<K>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatchError("matrix-vector shape mismatch");
        Vec<K> out = zero_vec<K>(rows_, spec_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && spec_ == o.spec_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

  private:
    static std::size_t checked_extent(int rows, int cols) {
        if (rows <= 0 || cols <= 0)
            throw DimensionMismatchError("matrix must have positive extent");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_;
    int cols_;
    FieldSpec spec_;
    std::vector<K> data_;
};

// ---------------------------------------------------------------------------
// Gaussian elimination and friends
// ---------------------------------------------------------------------------

template <class K>
struct RrefResult {
    Matrix<K> reduced;
    int rank;
    std::vector<int> pivot_cols;
};

/// Reduced row echelon form. Deterministic pivoting: scan columns left to
/// right, take the first nonzero entry at or below the current row.
template <class K>
RrefResult<K> rref(const Matrix<K>& m) {
    Matrix<K> a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        a.swap_rows(r, pr);
        a.scale_row(r, a.at(r, c).inverse());
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            const K f = a.at(i, c);
            if (!f.is_zero()) a.add_scaled_row(i, r, f);
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult<K>{std::move(a), r, std::move(pivots)};
}

template <class K>
int rank(const Matrix<K>& m) {
    return rref(m).rank;
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// in ascending free-column order. The result is in reduced echelon form
/// up to sign of the free coordinates and is deterministic.
template <class K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m) {
    RrefResult<K> R = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : R.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Vec<K>> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec<K> v = zero_vec<K>(m.cols(), m.spec());
        v[static_cast<std::size_t>(f)] = K::one(m.spec());
        for (int i = 0; i < R.rank; ++i)
            v[static_cast<std::size_t>(R.pivot_cols[static_cast<std::size_t>(i)])] =
                -R.reduced.at(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

/// One solution of m x = rhs, or nullopt if the system is inconsistent.
/// Free variables are set to zero. The solution is verified by substitution.
template <class K>
std::optional<Vec<K>> solve_right(const Matrix<K>& m, const Vec<K>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows())
        throw DimensionMismatchError("right-hand side length does not match row count");
    Matrix<K> aug(m.rows(), m.cols() + 1, m.spec());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[static_cast<std::size_t>(i)];
    }
    RrefResult<K> R = rref(aug);
    for (int c : R.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    Vec<K> x = zero_vec<K>(m.cols(), m.spec());
    for (int i = 0; i < R.rank; ++i)
        x[static_cast<std::size_t>(R.pivot_cols[static_cast<std::size_t>(i)])] =
            R.reduced.at(i, m.cols());
    if (m.mul_vec(x) != rhs)
        throw InternalInconsistencyError("linear solve failed substitution check");
    return x;
}

/// Determinant by fraction-free forward elimination with row swaps.
template <class K>
K det(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatchError("determinant of non-square matrix");
    Matrix<K> a = m;
    const int n = a.rows();
    K d = K::one(a.spec());
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (!a.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) return K::zero(a.spec());
        if (pr != c) {
            a.swap_rows(c, pr);
            d = -d;
        }
        d *= a.at(c, c);
        const K inv = a.at(c, c).inverse();
        for (int i = c + 1; i < n; ++i) {
            const K f = a.at(i, c) * inv;
            if (!f.is_zero()) a.add_scaled_row(i, c, f);
        }
    }
    return d;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatchError("inverse of non-square matrix");
    const int n = m.rows();
    Matrix<K> aug(n, 2 * n, m.spec());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = K::one(m.spec());
    }
    RrefResult<K> R = rref(aug);
    if (R.rank < n || R.pivot_cols[static_cast<std::size_t>(n - 1)] != n - 1)
        throw SingularMatrixError("matrix has rank " + std::to_string(rank(m)) +
                                  " < " + std::to_string(n));
    Matrix<K> inv(n, n, m.spec());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = R.reduced.at(i, n + j);
    return inv;
}

/// Canonical (reduced-echelon) basis of the span of the given vectors.
template <class K>
std::vector<Vec<K>> row_space_basis(const std::vector<Vec<K>>& vectors) {
    if (vectors.empty()) return {};
    RrefResult<K> R = rref(Matrix<K>::from_rows(vectors));
    std::vector<Vec<K>> out;
    for (int i = 0; i < R.rank; ++i) out.push_back(R.reduced.row(i));
    return out;
}

/// Canonical basis of span(a) n span(b). Both inputs are lists of vectors
/// of one common ambient space; they need not be independent.
template <class K>
std::vector<Vec<K>> subspace_intersection(const std::vector<Vec<K>>& a,
                                          const std::vector<Vec<K>>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Vec<K>> abasis = row_space_basis(a);
    std::vector<Vec<K>> bbasis = row_space_basis(b);
    if (abasis.empty() || bbasis.empty()) return {};
    if (abasis[0].size() != bbasis[0].size())
        throw DimensionMismatchError("subspaces of different ambient spaces");
    std::vector<Vec<K>> stacked = abasis;
    stacked.insert(stacked.end(), bbasis.begin(), bbasis.end());
    // A combination of the stacked rows vanishes exactly when its a-part
    // equals minus its b-part, i.e. it names a vector of the intersection.
    Matrix<K> ct = Matrix<K>::from_rows(stacked).transpose();
    std::vector<Vec<K>> inter;
    for (const Vec<K>& x : kernel_basis(ct)) {
        Vec<K> v = zero_vec<K>(static_cast<int>(abasis[0].size()), ct.spec());
        for (std::size_t i = 0; i < abasis.size(); ++i) vec_axpy(v, x[i], abasis[i]);
        inter.push_back(std::move(v));
    }
    return row_space_basis(inter);
}

// ---------------------------------------------------------------------------
// incremental span tracking
// ---------------------------------------------------------------------------

/// Row space maintained in reduced echelon form, supporting incremental
/// insertion and membership tests. Used wherever many vectors feed one span.
template <class K>
class SpanBasis {
  public:
    SpanBasis(int ambient_dim, const FieldSpec& spec)
        : ambient_(ambient_dim), spec_(spec),
          row_of_pivot_(static_cast<std::size_t>(ambient_dim), -1) {}

    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient_dim() const { return ambient_; }
    const std::vector<Vec<K>>& rows() const { return rows_; }

    /// Adds v's residue to the basis; returns true if the span grew.
    bool insert(Vec<K> v) {
        reduce(v);
        int p = first_nonzero(v);
        if (p < 0) return false;
        K inv = v[static_cast<std::size_t>(p)].inverse();
        for (K& x : v) x *= inv;
        for (Vec<K>& r : rows_) {
            const K f = r[static_cast<std::size_t>(p)];
            if (!f.is_zero())
                for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * v[j];
        }
        // keep rows ordered by pivot column
        std::size_t pos = 0;
        while (pos < rows_.size() && pivot_of_row_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        pivot_of_row_.insert(pivot_of_row_.begin() + static_cast<std::ptrdiff_t>(pos), p);
        for (std::size_t i = pos; i < rows_.size(); ++i)
            row_of_pivot_[static_cast<std::size_t>(pivot_of_row_[i])] = static_cast<int>(i);
        return true;
    }

    bool contains(Vec<K> v) const {
        reduce(v);
        return vec_is_zero(v);
    }

  private:
    void reduce(Vec<K>& v) const {
        if (static_cast<int>(v.size()) != ambient_)
            throw DimensionMismatchError("vector does not fit span's ambient space");
        for (int c = 0; c < ambient_; ++c) {
            const K& x = v[static_cast<std::size_t>(c)];
            if (x.is_zero()) continue;
            int r = row_of_pivot_[static_cast<std::size_t>(c)];
            if (r < 0) continue;
            const K f = x;
            const Vec<K>& row = rows_[static_cast<std::size_t>(r)];
            for (std::size_t j = static_cast<std::size_t>(c); j < v.size(); ++j)
                v[j] -= f * row[j];
        }
    }

    int ambient_;
    FieldSpec spec_;
    std::vector<Vec<K>> rows_;
    std::vector<int> pivot_of_row_;
    std::vector<int> row_of_pivot_;
};

// ---------------------------------------------------------------------------
// plain-text serialization
// ---------------------------------------------------------------------------

/// Writes "rows cols p" followed by one space-separated row per line.
/// p is the field characteristic, 0 for the rationals whose entries are
/// rendered as num/den.
template <class K>
void write_matrix_text(std::ostream& os, const std::vector<Vec<K>>& rows,
                       const FieldSpec& spec, int cols) {
    os << rows.size() << ' ' << cols << ' ' << spec.characteristic << '\n';
    for (const Vec<K>& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) os << ' ';
            os << r[j].str();
        }
        os << '\n';
    }
}

template <class K>
void write_matrix_text(std::ostream& os, const Matrix<K>& m) {
    write_matrix_text(os, m.to_rows(), m.spec(), m.cols());
}

template <class K>
std::string matrix_to_text(const Matrix<K>& m) {
    std::ostringstream os;
    write_matrix_text(os, m);
    return os.str();
}

inline GFp parse_scalar_text(const std::string& tok, const FieldSpec& f, const GFp*) {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw Error("bad GF(p) literal '" + tok + "'");
    return GFp::from_int(f, v);
}

inline Rat parse_scalar_text(const std::string& tok, const FieldSpec&, const Rat*) {
    return Rat::parse(tok);
}

/// Reads the format written by write_matrix_text. The caller fixes the
/// scalar type; the header's characteristic must agree with it.
template <class K>
Matrix<K> read_matrix_text(std::istream& is) {
    long long rows = 0, cols = 0, p = -1;
    if (!(is >> rows >> cols >> p)) throw Error("bad matrix header");
    if (rows <= 0 || cols <= 0) throw DimensionMismatchError("matrix must have positive extent");
    FieldSpec f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(static_cast<std::uint32_t>(p));
    Matrix<K> m(static_cast<int>(rows), static_cast<int>(cols), f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::string tok;
            if (!(is >> tok)) throw Error("matrix body ends early");
            m.at(i, j) = parse_scalar_text(tok, f, static_cast<const K*>(nullptr));
        }
    return m;
}

template <class K>
Matrix<K> matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_matrix_text<K>(is);
}

}  // namespace flagvar
