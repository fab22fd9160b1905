#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "flagspace.hpp"

namespace flagvar {

/// Scales a matrix so that its first nonzero entry (row-major) is one,
/// the canonical representative for comparison up to scalar.
template <class K>
Matrix<K> scale_canonical(const Matrix<K>& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) {
                const K inv = m.at(i, j).inverse();
                Matrix<K> out = m;
                for (int r = 0; r < m.rows(); ++r)
                    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c) * inv;
                return out;
            }
    return m;
}

// ---------------------------------------------------------------------------
// collineations and dualities
// ---------------------------------------------------------------------------

/// Projective transformation of the space onto itself, given by an
/// invertible matrix acting on points; canonical up to scalar.
template <class K>
struct Collineation {
    Matrix<K> matrix;

    static Collineation from(const Matrix<K>& m) {
        if (m.rows() != 4 || m.cols() != 4)
            throw DimensionMismatchError("collineation wants a 4x4 matrix");
        if (det(m).is_zero()) throw SingularMatrixError("collineation matrix is singular");
        return Collineation{scale_canonical(m)};
    }

    bool operator==(const Collineation& o) const { return matrix == o.matrix; }
    bool operator!=(const Collineation& o) const { return !(*this == o); }
};

/// Incidence-reversing transformation onto the dual space, given by an
/// invertible matrix sending points to plane functionals.
template <class K>
struct Duality {
    Matrix<K> matrix;

    static Duality from(const Matrix<K>& m) {
        if (m.rows() != 4 || m.cols() != 4)
            throw DimensionMismatchError("duality wants a 4x4 matrix");
        if (det(m).is_zero()) throw SingularMatrixError("duality matrix is singular");
        return Duality{scale_canonical(m)};
    }

    bool operator==(const Duality& o) const { return matrix == o.matrix; }
    bool operator!=(const Duality& o) const { return !(*this == o); }
};

template <class K>
Point<K> apply_collineation(const Collineation<K>& k, const Point<K>& p) {
    return Point<K>::from(k.matrix.mul_vec(p.coords));
}

template <class K>
Line<K> apply_collineation(const Collineation<K>& k, const Line<K>& g) {
    return Line<K>::from_basis({k.matrix.mul_vec(g.basis0), k.matrix.mul_vec(g.basis1)});
}

/// Planes transform by the inverse transpose: the functional of the image
/// plane vanishes exactly on images of the original plane's points.
template <class K>
Plane<K> apply_collineation(const Collineation<K>& k, const Plane<K>& e) {
    return Plane<K>::from(inverse_transpose(k.matrix).mul_vec(e.coeffs));
}

template <class K>
Flag<K> apply_collineation(const Collineation<K>& k, const Flag<K>& f) {
    return make_flag(apply_collineation(k, f.point), apply_collineation(k, f.line),
                     apply_collineation(k, f.plane));
}

/// A point maps to the plane whose functional is its matrix image.
template <class K>
Plane<K> apply_duality(const Duality<K>& d, const Point<K>& p) {
    return Plane<K>::from(d.matrix.mul_vec(p.coords));
}

/// A plane maps to the point common to the images of its points.
template <class K>
Point<K> apply_duality(const Duality<K>& d, const Plane<K>& e) {
    return Point<K>::from(inverse_transpose(d.matrix).mul_vec(e.coeffs));
}

/// A line maps to the line on which the images of its points all vanish.
template <class K>
Line<K> apply_duality(const Duality<K>& d, const Line<K>& g) {
    auto ker = kernel_basis(
        Matrix<K>::from_rows({d.matrix.mul_vec(g.basis0), d.matrix.mul_vec(g.basis1)}));
    if (ker.size() != 2) throw InternalInconsistencyError("duality image of a line degenerated");
    return Line<K>::from_basis({ker[0], ker[1]});
}

/// Flags transform with point and plane exchanged: the image point comes
/// from the plane and the image plane from the point.
template <class K>
Flag<K> apply_duality(const Duality<K>& d, const Flag<K>& f) {
    return make_flag(apply_duality(d, f.plane), apply_duality(d, f.line),
                     apply_duality(d, f.point));
}

// ---------------------------------------------------------------------------
// flag maps: total bijections on the flags of a finite space
// ---------------------------------------------------------------------------

/// A bijection of the enumerated flags of a Space, stored as an image
/// table. Construction always verifies bijectivity.
template <class K>
class FlagMap {
  public:
    FlagMap(const Space<K>& space, std::vector<int> images)
        : space_(&space), img_(std::move(images)) {
        const std::size_t n = space.flags().size();
        if (img_.size() != n) throw NonBijectiveError("image table has the wrong length");
        std::vector<bool> hit(n, false);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(n) || hit[static_cast<std::size_t>(v)])
                throw NonBijectiveError("image table is not a bijection");
            hit[static_cast<std::size_t>(v)] = true;
        }
    }

    static FlagMap identity(const Space<K>& space) {
        std::vector<int> img(space.flags().size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<int>(i);
        return FlagMap(space, std::move(img));
    }

    static FlagMap from_collineation(const Space<K>& space, const Collineation<K>& k) {
        return from_component_maps(
            space, [&](const Point<K>& p) { return space.point_index(apply_collineation(k, p)); },
            [&](const Line<K>& g) { return space.line_index(apply_collineation(k, g)); },
            [&](const Plane<K>& e) { return space.plane_index(apply_collineation(k, e)); },
            /*swap_point_plane=*/false);
    }

    static FlagMap from_duality(const Space<K>& space, const Duality<K>& d) {
        return from_component_maps(
            space, [&](const Point<K>& p) { return space.plane_index(apply_duality(d, p)); },
            [&](const Line<K>& g) { return space.line_index(apply_duality(d, g)); },
            [&](const Plane<K>& e) { return space.point_index(apply_duality(d, e)); },
            /*swap_point_plane=*/true);
    }

    const Space<K>& space() const { return *space_; }
    const std::vector<int>& images() const { return img_; }
    int apply(int flag) const { return img_[static_cast<std::size_t>(flag)]; }
    Flag<K> apply(const Flag<K>& f) const {
        return space_->flag_at(apply(space_->flag_index(f)));
    }

    FlagMap inverse() const {
        std::vector<int> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            inv[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
        return FlagMap(*space_, std::move(inv));
    }

    /// Composition applying `first`, then `second`.
    static FlagMap compose(const FlagMap& second, const FlagMap& first) {
        if (second.space_ != first.space_)
            throw FieldMismatchError("flag maps live on different spaces");
        std::vector<int> img(first.img_.size());
        for (std::size_t i = 0; i < img.size(); ++i)
            img[i] = second.img_[static_cast<std::size_t>(first.img_[i])];
        return FlagMap(*first.space_, std::move(img));
    }

    bool operator==(const FlagMap& o) const { return space_ == o.space_ && img_ == o.img_; }
    bool operator!=(const FlagMap& o) const { return !(*this == o); }

  private:
    template <class FP, class FL, class FE>
    static FlagMap from_component_maps(const Space<K>& space, FP&& point_to, FL&& line_to,
                                       FE&& plane_to, bool swap_point_plane) {
        std::vector<int> pmap, lmap, emap;
        for (const auto& p : space.points()) pmap.push_back(point_to(p));
        for (const auto& g : space.lines()) lmap.push_back(line_to(g));
        for (const auto& e : space.planes()) emap.push_back(plane_to(e));
        std::vector<int> img;
        img.reserve(space.flags().size());
        for (const auto& f : space.flags()) {
            const int pi = pmap[static_cast<std::size_t>(f.point)];
            const int li = lmap[static_cast<std::size_t>(f.line)];
            const int ei = emap[static_cast<std::size_t>(f.plane)];
            img.push_back(swap_point_plane ? space.flag_index(ei, li, pi)
                                           : space.flag_index(pi, li, ei));
        }
        return FlagMap(space, std::move(img));
    }

    const Space<K>* space_;
    std::vector<int> img_;
};

/// A flag map preserves relatedness in both directions exactly when the
/// image of every flag's neighbour set is the neighbour set of the image.
/// Checking that per flag covers all related pairs forwards, and the set
/// equality rules out unrelated pairs becoming related.
template <class K>
bool is_plucker_transformation(const FlagSpaceModel<K>& model, const FlagMap<K>& map) {
    std::vector<int> image;
    for (int f = 0; f < model.flag_total(); ++f) {
        image.clear();
        for (int n : model.neighbors(f)) image.push_back(map.apply(n));
        std::sort(image.begin(), image.end());
        if (image != model.neighbors(map.apply(f))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// the induced line map and the decomposition into collineation or duality
// ---------------------------------------------------------------------------

/// A bijection of the enumerated lines of a Space.
template <class K>
class LineMap {
  public:
    LineMap(const Space<K>& space, std::vector<int> images)
        : space_(&space), img_(std::move(images)) {
        const std::size_t n = space.lines().size();
        if (img_.size() != n) throw NonBijectiveError("line table has the wrong length");
        std::vector<bool> hit(n, false);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(n) || hit[static_cast<std::size_t>(v)])
                throw NonBijectiveError("line table is not a bijection");
            hit[static_cast<std::size_t>(v)] = true;
        }
    }

    const Space<K>& space() const { return *space_; }
    const std::vector<int>& images() const { return img_; }
    int apply(int line) const { return img_[static_cast<std::size_t>(line)]; }
    Line<K> apply(const Line<K>& g) const {
        return space_->lines()[static_cast<std::size_t>(apply(space_->line_index(g)))];
    }

  private:
    const Space<K>* space_;
    std::vector<int> img_;
};

/// Extracts the line bijection underlying a flag map: all flags sharing a
/// line must map to flags sharing one line, which becomes the image.
template <class K>
LineMap<K> induced_line_map(const FlagMap<K>& map) {
    const Space<K>& s = map.space();
    std::vector<int> img(s.lines().size(), -1);
    for (std::size_t l = 0; l < s.lines().size(); ++l) {
        int common = -1;
        for (int p : s.points_on_line(static_cast<int>(l)))
            for (int e : s.planes_on_line(static_cast<int>(l))) {
                const int f = map.apply(s.flag_index(p, static_cast<int>(l), e));
                const int line_of_image = s.flags()[static_cast<std::size_t>(f)].line;
                if (common < 0) common = line_of_image;
                if (line_of_image != common)
                    throw NotPluckerMapError("flags of one line scatter over several lines");
            }
        img[l] = common;
    }
    return LineMap<K>(s, std::move(img));  // bijectivity checked on construction
}

enum class TransformKind { collineation, duality };

template <class K>
struct Decomposition {
    TransformKind kind;
    Matrix<K> matrix;  // canonical; acts on V, or into V* for a duality
};

namespace detail {

/// The common point of a family of lines, if any.
template <class K>
std::optional<Point<K>> common_point(const std::vector<Line<K>>& lines) {
    std::vector<Vec<K>> rows;
    for (const auto& g : lines) {
        auto ker = kernel_basis(Matrix<K>::from_rows({g.basis0, g.basis1}));
        for (auto& r : ker) rows.push_back(std::move(r));  // functionals vanishing on g
    }
    auto pts = kernel_basis(Matrix<K>::from_rows(rows));
    if (pts.size() != 1) return std::nullopt;
    return Point<K>::from(pts[0]);
}

/// The common plane of a family of lines, if any.
template <class K>
std::optional<Plane<K>> common_plane(const std::vector<Line<K>>& lines) {
    std::vector<Vec<K>> rows;
    for (const auto& g : lines) {
        rows.push_back(g.basis0);
        rows.push_back(g.basis1);
    }
    auto functionals = kernel_basis(Matrix<K>::from_rows(rows));
    if (functionals.size() != 1) return std::nullopt;
    return Plane<K>::from(functionals[0]);
}

/// Solves the projective frame equations: given the images q0..q3 of the
/// basis points and qu of the unit point, returns the matrix with columns
/// lambda_i * q_i where qu = sum lambda_i q_i. Every lambda must be
/// nonzero, otherwise the five images were not a frame.
template <class K>
Matrix<K> matrix_from_frame_images(const FieldSpec& f, const std::array<Vec<K>, 4>& q,
                                   const Vec<K>& qu) {
    Matrix<K> cols(4, 4, f);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            cols.at(i, j) = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    auto lambda = solve_right(cols, qu);
    if (!lambda) throw NotPluckerMapError("frame images are projectively degenerate");
    Matrix<K> m(4, 4, f);
    for (int j = 0; j < 4; ++j) {
        if ((*lambda)[static_cast<std::size_t>(j)].is_zero())
            throw NotPluckerMapError("frame images are projectively degenerate");
        for (int i = 0; i < 4; ++i)
            m.at(i, j) = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                         (*lambda)[static_cast<std::size_t>(j)];
    }
    return m;
}

/// Images under the line map of every line through a point.
template <class K>
std::vector<Line<K>> star_images(const LineMap<K>& beta, int point) {
    const Space<K>& s = beta.space();
    std::vector<Line<K>> out;
    for (int l : s.lines_on_point(point))
        out.push_back(s.lines()[static_cast<std::size_t>(beta.apply(l))]);
    return out;
}

}  // namespace detail

/// Splits a flag map into the collineation or duality inducing it. The
/// star of lines through a point maps either to a star (collineation) or
/// to the lines of a plane (duality); the matrix is then recovered from
/// the images of the five frame points and verified on every flag.
template <class K>
Decomposition<K> decompose(const FlagMap<K>& map) {
    const Space<K>& s = map.space();
    const FieldSpec f = s.spec();
    const LineMap<K> beta = induced_line_map(map);

    const auto star0 = detail::star_images(beta, s.point_index(
        Point<K>::from_ints({1, 0, 0, 0}, f)));
    const auto focus = detail::common_point(star0);
    const bool collinear_branch = focus.has_value();
    if (!collinear_branch && !detail::common_plane(star0))
        throw NotPluckerMapError("star image is neither a star nor a plane of lines");

    // images of the five frame points, as points or as plane functionals
    std::array<Vec<K>, 4> q;
    Vec<K> qu;
    const std::array<std::array<std::int64_t, 4>, 5> frame{
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}}};
    for (int i = 0; i < 5; ++i) {
        const auto& fr = frame[static_cast<std::size_t>(i)];
        const auto star = detail::star_images(
            beta, s.point_index(Point<K>::from_ints({fr[0], fr[1], fr[2], fr[3]}, f)));
        Vec<K> image;
        if (collinear_branch) {
            const auto pt = detail::common_point(star);
            if (!pt) throw NotPluckerMapError("star image lost its common point");
            image = pt->coords;
        } else {
            const auto pl = detail::common_plane(star);
            if (!pl) throw NotPluckerMapError("star image lost its common plane");
            image = pl->coeffs;
        }
        if (i < 4)
            q[static_cast<std::size_t>(i)] = std::move(image);
        else
            qu = std::move(image);
    }

    const Matrix<K> m = scale_canonical(detail::matrix_from_frame_images(f, q, qu));
    const FlagMap<K> rebuilt =
        collinear_branch ? FlagMap<K>::from_collineation(s, Collineation<K>{m})
                         : FlagMap<K>::from_duality(s, Duality<K>{m});
    if (rebuilt != map)
        throw InternalInconsistencyError("recovered matrix does not reproduce the flag map");
    return Decomposition<K>{
        collinear_branch ? TransformKind::collineation : TransformKind::duality, m};
}

// ---------------------------------------------------------------------------
// seeded random transformations (for round-trip checks and the CLI)
// ---------------------------------------------------------------------------

/// Uniform-ish random matrix with entries drawn by residue; deterministic
/// across platforms for a fixed seed.
template <class K>
Matrix<K> random_matrix_over(const FieldSpec& f, std::mt19937_64& rng) {
    if (!f.finite()) throw EnumerationError("random matrices are drawn over finite fields");
    Matrix<K> m(4, 4, f);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m.at(i, j) = K::from_int(f, static_cast<std::int64_t>(
                                            rng() % static_cast<std::uint64_t>(f.characteristic)));
    return m;
}

template <class K>
Matrix<K> random_invertible_over(const FieldSpec& f, std::mt19937_64& rng) {
    for (;;) {
        Matrix<K> m = random_matrix_over<K>(f, rng);
        if (!det(m).is_zero()) return m;
    }
}

}  // namespace flagvar
