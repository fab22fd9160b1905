#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "multilinear.hpp"

namespace flagvar {

// ---------------------------------------------------------------------------
// points, lines, planes of PG(3, K), all held in canonical coordinates so
// that operator== is projective equality
// ---------------------------------------------------------------------------

/// Point, as homogeneous coordinates with leading coefficient 1.
template <class K>
struct Point {
    Vec<K> coords;  // size 4, canonical

    static Point from(Vec<K> v) {
        if (v.size() != 4) throw DimensionMismatchError("point needs 4 coordinates");
        if (vec_is_zero(v)) throw Error("zero vector does not name a point");
        return Point{projective_canonical(std::move(v))};
    }

    static Point from_ints(const std::vector<std::int64_t>& v, const FieldSpec& f) {
        Vec<K> c;
        for (std::int64_t x : v) c.push_back(K::from_int(f, x));
        return from(std::move(c));
    }

    FieldSpec spec() const { return coords[0].spec(); }
    bool operator==(const Point& o) const { return coords == o.coords; }
    bool operator!=(const Point& o) const { return coords != o.coords; }
};

/// Plane, stored dually: the homogeneous coefficient vector of its
/// equation, with leading coefficient 1.
template <class K>
struct Plane {
    Vec<K> coeffs;  // size 4, canonical

    static Plane from(Vec<K> v) {
        if (v.size() != 4) throw DimensionMismatchError("plane needs 4 coefficients");
        if (vec_is_zero(v)) throw Error("zero vector does not name a plane");
        return Plane{projective_canonical(std::move(v))};
    }

    static Plane from_ints(const std::vector<std::int64_t>& v, const FieldSpec& f) {
        Vec<K> c;
        for (std::int64_t x : v) c.push_back(K::from_int(f, x));
        return from(std::move(c));
    }

    FieldSpec spec() const { return coeffs[0].spec(); }
    bool operator==(const Plane& o) const { return coeffs == o.coeffs; }
    bool operator!=(const Plane& o) const { return coeffs != o.coeffs; }
};

/// Line, stored as the reduced-echelon basis of its 2-dimensional subspace
/// together with the derived Pluecker coordinates. The echelon form makes
/// both representations canonical; the Pluecker vector automatically has
/// leading coefficient 1.
template <class K>
struct Line {
    Vec<K> basis0, basis1;  // echelon rows, size 4
    Vec<K> pluecker;        // size 6, canonical

    static Line from_basis(const std::vector<Vec<K>>& gens) {
        RrefResult<K> R = rref(Matrix<K>::from_rows(gens));
        if (R.rank != 2)
            throw DegenerateJoinError("line basis spans dimension " + std::to_string(R.rank));
        Line g{R.reduced.row(0), R.reduced.row(1), {}};
        g.pluecker = wedge2(g.basis0, g.basis1);
        assert(!g.pluecker.empty() &&
               g.pluecker[static_cast<std::size_t>(first_nonzero(g.pluecker))].is_one());
        return g;
    }

    static Line from_pluecker(Vec<K> t) {
        if (t.size() != 6) throw DimensionMismatchError("line needs 6 Pluecker coordinates");
        if (!is_decomposable(t))
            throw Error("bivector is not decomposable, so names no line");
        Line g = from_basis(wedge_annihilator(t));
        if (g.pluecker != projective_canonical(std::move(t)))
            throw InternalInconsistencyError("Pluecker round-trip failed");
        return g;
    }

    static Line from_ints(const std::vector<std::int64_t>& a,
                          const std::vector<std::int64_t>& b, const FieldSpec& f) {
        Vec<K> va, vb;
        for (std::int64_t x : a) va.push_back(K::from_int(f, x));
        for (std::int64_t x : b) vb.push_back(K::from_int(f, x));
        return from_basis({va, vb});
    }

    FieldSpec spec() const { return pluecker[0].spec(); }
    bool operator==(const Line& o) const { return pluecker == o.pluecker; }
    bool operator!=(const Line& o) const { return pluecker != o.pluecker; }
};

// ---------------------------------------------------------------------------
// incidence predicates
// ---------------------------------------------------------------------------

template <class K>
bool point_on_line(const Point<K>& p, const Line<K>& g) {
    return vec_is_zero(wedge12(p.coords, g.pluecker));
}

template <class K>
bool point_on_plane(const Point<K>& p, const Plane<K>& e) {
    return dot(p.coords, e.coeffs).is_zero();
}

/// g lies in e exactly when the contraction of g's bivector with e's
/// covector vanishes.
template <class K>
bool line_on_plane(const Line<K>& g, const Plane<K>& e) {
    return vec_is_zero(contract(g.pluecker, e.coeffs));
}

template <class K>
bool lines_meet(const Line<K>& g, const Line<K>& h) {
    return wedge22(g.pluecker, h.pluecker).is_zero();
}

// ---------------------------------------------------------------------------
// joins and meets
// ---------------------------------------------------------------------------

template <class K>
Line<K> join_points(const Point<K>& a, const Point<K>& b) {
    if (a == b) throw DegenerateJoinError("join of coincident points");
    return Line<K>::from_basis({a.coords, b.coords});
}

/// Plane spanned by a line and a point outside it.
template <class K>
Plane<K> join_line_point(const Line<K>& g, const Point<K>& p) {
    if (point_on_line(p, g)) throw DegenerateJoinError("point lies on the line");
    auto ker = kernel_basis(Matrix<K>::from_rows({g.basis0, g.basis1, p.coords}));
    if (ker.size() != 1)
        throw InternalInconsistencyError("span of a line and an outside point is not a plane");
    return Plane<K>::from(ker[0]);
}

template <class K>
Plane<K> join_three_points(const Point<K>& a, const Point<K>& b, const Point<K>& c) {
    return join_line_point(join_points(a, b), c);
}

template <class K>
Line<K> meet_planes(const Plane<K>& e, const Plane<K>& f) {
    if (e == f) throw DegenerateJoinError("meet of coincident planes");
    auto ker = kernel_basis(Matrix<K>::from_rows({e.coeffs, f.coeffs}));
    if (ker.size() != 2)
        throw InternalInconsistencyError("meet of distinct planes is not a line");
    return Line<K>::from_basis(ker);
}

/// Meet of a line with a plane not containing it.
template <class K>
Point<K> meet_line_plane(const Line<K>& g, const Plane<K>& e) {
    if (line_on_plane(g, e)) throw DegenerateJoinError("line lies in the plane");
    const K a = dot(e.coeffs, g.basis0), b = dot(e.coeffs, g.basis1);
    // x = b q - a r satisfies e(x) = 0 and is nonzero since (a, b) != 0
    Vec<K> x = vec_sub(vec_scaled(g.basis0, b), vec_scaled(g.basis1, a));
    return Point<K>::from(std::move(x));
}

/// Common point of two distinct coplanar lines; nullopt for skew lines.
template <class K>
std::optional<Point<K>> meet_lines(const Line<K>& g, const Line<K>& h) {
    if (g == h) throw DegenerateJoinError("meet of coincident lines");
    if (!lines_meet(g, h)) return std::nullopt;
    auto inter = subspace_intersection<K>({g.basis0, g.basis1}, {h.basis0, h.basis1});
    if (inter.size() != 1)
        throw InternalInconsistencyError("concurrent lines must meet in one point");
    return Point<K>::from(inter[0]);
}

// ---------------------------------------------------------------------------
// flags
// ---------------------------------------------------------------------------

/// Incident (point, line, plane) triple.
template <class K>
struct Flag {
    Point<K> point;
    Line<K> line;
    Plane<K> plane;

    bool operator==(const Flag& o) const {
        return point == o.point && line == o.line && plane == o.plane;
    }
    bool operator!=(const Flag& o) const { return !(*this == o); }
};

template <class K>
Flag<K> make_flag(const Point<K>& p, const Line<K>& g, const Plane<K>& e) {
    if (!point_on_line(p, g)) throw IncidenceError("point does not lie on the line");
    if (!line_on_plane(g, e)) throw IncidenceError("line does not lie in the plane");
    return Flag<K>{p, g, e};
}

// ---------------------------------------------------------------------------
// exhaustive enumeration over a finite ground field
// ---------------------------------------------------------------------------

namespace detail {

/// Canonical 1-dimensional subspaces of K^4: leading coordinate 1, the
/// earlier ones 0, the later ones running lexicographically.
template <class K>
std::vector<Vec<K>> unit_rays(const FieldSpec& f, int dim = 4) {
    const std::vector<K> elems = field_elements<K>(f);
    std::vector<Vec<K>> out;
    for (int lead = 0; lead < dim; ++lead) {
        const int tail = dim - 1 - lead;
        std::vector<std::size_t> odo(static_cast<std::size_t>(tail), 0);
        for (;;) {
            Vec<K> v = zero_vec<K>(dim, f);
            v[static_cast<std::size_t>(lead)] = K::one(f);
            for (int t = 0; t < tail; ++t)
                v[static_cast<std::size_t>(lead + 1 + t)] = elems[odo[static_cast<std::size_t>(t)]];
            out.push_back(std::move(v));
            int t = tail - 1;
            while (t >= 0 && ++odo[static_cast<std::size_t>(t)] == elems.size())
                odo[static_cast<std::size_t>(t--)] = 0;
            if (t < 0) break;
        }
    }
    return out;
}

template <class K>
std::string coord_key(const Vec<K>& v) {
    std::string s;
    for (const K& x : v) {
        s += x.str();
        s += ',';
    }
    return s;
}

}  // namespace detail

template <class K>
std::vector<Point<K>> all_points(const FieldSpec& f) {
    std::vector<Point<K>> out;
    for (Vec<K>& v : detail::unit_rays<K>(f)) out.push_back(Point<K>{std::move(v)});
    return out;
}

template <class K>
std::vector<Plane<K>> all_planes(const FieldSpec& f) {
    std::vector<Plane<K>> out;
    for (Vec<K>& v : detail::unit_rays<K>(f)) out.push_back(Plane<K>{std::move(v)});
    return out;
}

/// All lines, enumerated as the reduced-echelon 2 x 4 matrices: pivot
/// column pairs in lexicographic order, free entries in odometer order.
template <class K>
std::vector<Line<K>> all_lines(const FieldSpec& f) {
    const std::vector<K> elems = field_elements<K>(f);
    std::vector<Line<K>> out;
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = c1 + 1; c2 < 4; ++c2) {
            // free positions: row 0 gets columns > c1 excluding c2, row 1 columns > c2
            std::vector<std::pair<int, int>> free_pos;
            for (int c = c1 + 1; c < 4; ++c)
                if (c != c2) free_pos.emplace_back(0, c);
            for (int c = c2 + 1; c < 4; ++c) free_pos.emplace_back(1, c);
            std::vector<std::size_t> odo(free_pos.size(), 0);
            for (;;) {
                Vec<K> r0 = zero_vec<K>(4, f), r1 = zero_vec<K>(4, f);
                r0[static_cast<std::size_t>(c1)] = K::one(f);
                r1[static_cast<std::size_t>(c2)] = K::one(f);
                for (std::size_t t = 0; t < free_pos.size(); ++t) {
                    auto [row, col] = free_pos[t];
                    (row == 0 ? r0 : r1)[static_cast<std::size_t>(col)] = elems[odo[t]];
                }
                Line<K> g{r0, r1, wedge2(r0, r1)};
                assert(rref(Matrix<K>::from_rows({r0, r1})).reduced.row(0) == g.basis0);
                out.push_back(std::move(g));
                int t = static_cast<int>(free_pos.size()) - 1;
                while (t >= 0 && ++odo[static_cast<std::size_t>(t)] == elems.size())
                    odo[static_cast<std::size_t>(t--)] = 0;
                if (t < 0) break;
            }
        }
    return out;
}

/// The q + 1 points of a line, in deterministic order.
template <class K>
std::vector<Point<K>> points_of_line(const Line<K>& g) {
    const FieldSpec f = g.spec();
    std::vector<Point<K>> out;
    for (const K& lambda : field_elements<K>(f)) {
        Vec<K> v = g.basis0;
        vec_axpy(v, lambda, g.basis1);
        out.push_back(Point<K>::from(std::move(v)));
    }
    out.push_back(Point<K>::from(g.basis1));
    return out;
}

/// The q + 1 planes through a line, in deterministic order.
template <class K>
std::vector<Plane<K>> planes_through_line(const Line<K>& g) {
    const FieldSpec f = g.spec();
    auto ker = kernel_basis(Matrix<K>::from_rows({g.basis0, g.basis1}));
    if (ker.size() != 2)
        throw InternalInconsistencyError("a line must lie on a pencil of planes");
    std::vector<Plane<K>> out;
    for (const K& lambda : field_elements<K>(f)) {
        Vec<K> v = ker[0];
        vec_axpy(v, lambda, ker[1]);
        out.push_back(Plane<K>::from(std::move(v)));
    }
    out.push_back(Plane<K>::from(ker[1]));
    return out;
}

// ---------------------------------------------------------------------------
// fully indexed model of a finite PG(3, q) and its flag space
// ---------------------------------------------------------------------------

/// Enumerated points, lines, planes and flags of PG(3, q) with incidence
/// tables and constant-time index lookups. Flags are ordered line-major:
/// for each line, its points vary faster than its planes.
template <class K>
class Space {
  public:
    struct FlagRef {
        int point, line, plane;
        bool operator==(const FlagRef&) const = default;
    };

    explicit Space(const FieldSpec& f) : spec_(f) {
        points_ = all_points<K>(f);
        planes_ = all_planes<K>(f);
        lines_ = all_lines<K>(f);
        for (std::size_t i = 0; i < points_.size(); ++i)
            point_idx_[detail::coord_key(points_[i].coords)] = static_cast<int>(i);
        for (std::size_t i = 0; i < planes_.size(); ++i)
            plane_idx_[detail::coord_key(planes_[i].coeffs)] = static_cast<int>(i);
        for (std::size_t i = 0; i < lines_.size(); ++i)
            line_idx_[detail::coord_key(lines_[i].pluecker)] = static_cast<int>(i);

        points_on_line_.resize(lines_.size());
        planes_on_line_.resize(lines_.size());
        lines_on_point_.resize(points_.size());
        lines_on_plane_.resize(planes_.size());
        for (std::size_t l = 0; l < lines_.size(); ++l) {
            for (const Point<K>& p : points_of_line(lines_[l])) {
                int pi = point_index(p);
                points_on_line_[l].push_back(pi);
                lines_on_point_[static_cast<std::size_t>(pi)].push_back(static_cast<int>(l));
            }
            for (const Plane<K>& e : planes_through_line(lines_[l])) {
                int ei = plane_index(e);
                planes_on_line_[l].push_back(ei);
                lines_on_plane_[static_cast<std::size_t>(ei)].push_back(static_cast<int>(l));
            }
        }
        for (std::size_t l = 0; l < lines_.size(); ++l)
            for (int pi : points_on_line_[l])
                for (int ei : planes_on_line_[l]) {
                    flag_idx_[pack(pi, static_cast<int>(l), ei)] =
                        static_cast<int>(flags_.size());
                    flags_.push_back(FlagRef{pi, static_cast<int>(l), ei});
                }
    }

    const FieldSpec& spec() const { return spec_; }
    int q() const { return static_cast<int>(spec_.characteristic); }

    const std::vector<Point<K>>& points() const { return points_; }
    const std::vector<Line<K>>& lines() const { return lines_; }
    const std::vector<Plane<K>>& planes() const { return planes_; }
    const std::vector<FlagRef>& flags() const { return flags_; }

    int point_index(const Point<K>& p) const {
        return lookup(point_idx_, detail::coord_key(p.coords), "point");
    }
    int line_index(const Line<K>& g) const {
        return lookup(line_idx_, detail::coord_key(g.pluecker), "line");
    }
    int plane_index(const Plane<K>& e) const {
        return lookup(plane_idx_, detail::coord_key(e.coeffs), "plane");
    }

    int flag_index(int point, int line, int plane) const {
        auto it = flag_idx_.find(pack(point, line, plane));
        if (it == flag_idx_.end()) throw IncidenceError("triple is not a flag");
        return it->second;
    }
    int flag_index(const Flag<K>& f) const {
        return flag_index(point_index(f.point), line_index(f.line), plane_index(f.plane));
    }

    Flag<K> flag_at(int idx) const {
        const FlagRef& r = flags_.at(static_cast<std::size_t>(idx));
        return Flag<K>{points_[static_cast<std::size_t>(r.point)],
                       lines_[static_cast<std::size_t>(r.line)],
                       planes_[static_cast<std::size_t>(r.plane)]};
    }

    const std::vector<int>& points_on_line(int l) const {
        return points_on_line_[static_cast<std::size_t>(l)];
    }
    const std::vector<int>& planes_on_line(int l) const {
        return planes_on_line_[static_cast<std::size_t>(l)];
    }
    const std::vector<int>& lines_on_point(int p) const {
        return lines_on_point_[static_cast<std::size_t>(p)];
    }
    const std::vector<int>& lines_on_plane(int e) const {
        return lines_on_plane_[static_cast<std::size_t>(e)];
    }

  private:
    static std::uint64_t pack(int p, int l, int e) {
        return (static_cast<std::uint64_t>(p) << 42) | (static_cast<std::uint64_t>(l) << 21) |
               static_cast<std::uint64_t>(e);
    }
    static int lookup(const std::unordered_map<std::string, int>& m, const std::string& key,
                      const char* what) {
        auto it = m.find(key);
        if (it == m.end())
            throw Error(std::string("unknown ") + what + " (wrong field or corrupt object)");
        return it->second;
    }

    FieldSpec spec_;
    std::vector<Point<K>> points_;
    std::vector<Line<K>> lines_;
    std::vector<Plane<K>> planes_;
    std::vector<FlagRef> flags_;
    std::unordered_map<std::string, int> point_idx_, line_idx_, plane_idx_;
    std::unordered_map<std::uint64_t, int> flag_idx_;
    std::vector<std::vector<int>> points_on_line_, planes_on_line_;
    std::vector<std::vector<int>> lines_on_point_, lines_on_plane_;
};

/// Number of points (equally, planes) of PG(3, q).
inline std::int64_t point_count(std::int64_t q) { return ((q * q + 1) * (q + 1)); }
/// Number of lines of PG(3, q).
inline std::int64_t line_count(std::int64_t q) { return (q * q + 1) * (q * q + q + 1); }
/// Number of flags of PG(3, q).
inline std::int64_t flag_count(std::int64_t q) { return line_count(q) * (q + 1) * (q + 1); }

}  // namespace flagvar
