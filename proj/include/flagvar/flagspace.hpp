#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "projgeom.hpp"

namespace flagvar {

// ---------------------------------------------------------------------------
// relatedness
// ---------------------------------------------------------------------------

/// Number of components (point, line, plane) in which two flags differ.
template <class K>
int differing_components(const Flag<K>& a, const Flag<K>& b) {
    int d = 0;
    if (a.point != b.point) ++d;
    if (a.line != b.line) ++d;
    if (a.plane != b.plane) ++d;
    return d;
}

/// Two flags are related when they differ in at most one component.
template <class K>
bool related(const Flag<K>& a, const Flag<K>& b) {
    return differing_components(a, b) <= 1;
}

// ---------------------------------------------------------------------------
// pencils
// ---------------------------------------------------------------------------

/// Maximal family of mutually related flags, stored intensionally as its
/// type plus the two fixed components. The varying component is the one
/// whose dimension equals the type: a type-0 pencil fixes (line, plane)
/// and runs over the points of the line, a type-1 pencil fixes
/// (point, plane), a type-2 pencil fixes (point, line).
template <class K>
struct Pencil {
    int type;
    std::optional<Point<K>> point;  // fixed unless type == 0
    std::optional<Line<K>> line;    // fixed unless type == 1
    std::optional<Plane<K>> plane;  // fixed unless type == 2

    static Pencil type0(const Line<K>& g, const Plane<K>& e) {
        if (!line_on_plane(g, e)) throw IncidenceError("pencil needs its line in its plane");
        return Pencil{0, std::nullopt, g, e};
    }
    static Pencil type1(const Point<K>& p, const Plane<K>& e) {
        if (!point_on_plane(p, e)) throw IncidenceError("pencil needs its point in its plane");
        return Pencil{1, p, std::nullopt, e};
    }
    static Pencil type2(const Point<K>& p, const Line<K>& g) {
        if (!point_on_line(p, g)) throw IncidenceError("pencil needs its point on its line");
        return Pencil{2, p, g, std::nullopt};
    }

    bool contains(const Flag<K>& f) const {
        switch (type) {
            case 0: return f.line == *line && f.plane == *plane;
            case 1: return f.point == *point && f.plane == *plane;
            default: return f.point == *point && f.line == *line;
        }
    }

    bool operator==(const Pencil& o) const {
        return type == o.type && point == o.point && line == o.line && plane == o.plane;
    }
    bool operator!=(const Pencil& o) const { return !(*this == o); }
};

/// The q + 1 lines through p inside e, in deterministic order.
template <class K>
std::vector<Line<K>> lines_through_point_in_plane(const Point<K>& p, const Plane<K>& e) {
    if (!point_on_plane(p, e)) throw IncidenceError("point does not lie in the plane");
    const FieldSpec f = p.spec();
    auto plane_basis = kernel_basis(Matrix<K>::from_rows({e.coeffs}));
    if (plane_basis.size() != 3)
        throw InternalInconsistencyError("a plane's point space must be 3-dimensional");
    // complete p to a basis of the plane's point space
    SpanBasis<K> span(4, f);
    span.insert(p.coords);
    std::vector<Vec<K>> rest;
    for (const Vec<K>& v : plane_basis)
        if (span.insert(v)) rest.push_back(v);
    if (rest.size() != 2)
        throw InternalInconsistencyError("failed to complete a point to a plane basis");
    std::vector<Line<K>> out;
    for (const K& lambda : field_elements<K>(f)) {
        Vec<K> dir = rest[0];
        vec_axpy(dir, lambda, rest[1]);
        out.push_back(Line<K>::from_basis({p.coords, dir}));
    }
    out.push_back(Line<K>::from_basis({p.coords, rest[1]}));
    return out;
}

/// The member flags of a pencil, in deterministic order (finite fields).
template <class K>
std::vector<Flag<K>> pencil_members(const Pencil<K>& pencil) {
    std::vector<Flag<K>> out;
    switch (pencil.type) {
        case 0:
            for (const Point<K>& p : points_of_line(*pencil.line))
                out.push_back(Flag<K>{p, *pencil.line, *pencil.plane});
            break;
        case 1:
            for (const Line<K>& g : lines_through_point_in_plane(*pencil.point, *pencil.plane))
                out.push_back(Flag<K>{*pencil.point, g, *pencil.plane});
            break;
        default:
            for (const Plane<K>& e : planes_through_line(*pencil.line))
                out.push_back(Flag<K>{*pencil.point, *pencil.line, e});
            break;
    }
    return out;
}

/// The three pencils through a flag, indexed by type.
template <class K>
std::array<Pencil<K>, 3> pencils_of(const Flag<K>& f) {
    return {Pencil<K>::type0(f.line, f.plane), Pencil<K>::type1(f.point, f.plane),
            Pencil<K>::type2(f.point, f.line)};
}

/// The unique pencil containing two adjacent (related, distinct) flags.
template <class K>
Pencil<K> pencil_through(const Flag<K>& a, const Flag<K>& b) {
    const int d = differing_components(a, b);
    if (d == 0) throw Error("coincident flags lie on three pencils, not one");
    if (d > 1) throw Error("unrelated flags lie on no common pencil");
    if (a.point != b.point) return Pencil<K>::type0(a.line, a.plane);
    if (a.line != b.line) return Pencil<K>::type1(a.point, a.plane);
    return Pencil<K>::type2(a.point, a.line);
}

// ---------------------------------------------------------------------------
// indexed model of the whole flag space over a finite field
// ---------------------------------------------------------------------------

/// Pencil addressed by component indices into a Space.
struct PencilRef {
    int type;
    int a, b;  // type 0: (line, plane); type 1: (point, plane); type 2: (point, line)
    bool operator==(const PencilRef&) const = default;
};

/// The relatedness structure of all flags of a Space: every pencil, the
/// three pencils through each flag, and sorted neighbour lists. Pencils
/// are numbered type-0 block first, then type-1, then type-2.
template <class K>
class FlagSpaceModel {
  public:
    explicit FlagSpaceModel(const Space<K>& space) : space_(&space) {
        const auto& flags = space.flags();
        flag_pencils_.assign(flags.size(), {-1, -1, -1});

        for (int l = 0; l < static_cast<int>(space.lines().size()); ++l)
            for (int e : space.planes_on_line(l)) add_pencil(PencilRef{0, l, e});
        for (int p = 0; p < static_cast<int>(space.points().size()); ++p)
            for (int e = 0; e < static_cast<int>(space.planes().size()); ++e)
                if (point_on_plane(space.points()[static_cast<std::size_t>(p)],
                                   space.planes()[static_cast<std::size_t>(e)]))
                    add_pencil(PencilRef{1, p, e});
        for (int p = 0; p < static_cast<int>(space.points().size()); ++p)
            for (int l : space.lines_on_point(p)) add_pencil(PencilRef{2, p, l});

        for (std::size_t f = 0; f < flags.size(); ++f)
            for (int t = 0; t < 3; ++t)
                if (flag_pencils_[f][static_cast<std::size_t>(t)] < 0)
                    throw InternalInconsistencyError("flag missed by a pencil family");

        neighbors_.resize(flags.size());
        for (std::size_t f = 0; f < flags.size(); ++f) {
            auto& nb = neighbors_[f];
            for (int pid : flag_pencils_[f])
                for (int m : members_[static_cast<std::size_t>(pid)])
                    if (m != static_cast<int>(f)) nb.push_back(m);
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw InternalInconsistencyError("pencils through a flag overlap");
        }
    }

    const Space<K>& space() const { return *space_; }
    int flag_total() const { return static_cast<int>(space_->flags().size()); }
    int pencil_total() const { return static_cast<int>(pencils_.size()); }

    const std::vector<PencilRef>& pencils() const { return pencils_; }
    const std::vector<int>& members(int pencil) const {
        return members_[static_cast<std::size_t>(pencil)];
    }
    /// Pencil ids through a flag, indexed by pencil type.
    const std::array<int, 3>& pencils_of_flag(int flag) const {
        return flag_pencils_[static_cast<std::size_t>(flag)];
    }
    const std::vector<int>& neighbors(int flag) const {
        return neighbors_[static_cast<std::size_t>(flag)];
    }

    int pencil_count_of_type(int type) const {
        return type_count_[static_cast<std::size_t>(type)];
    }

    bool flags_related(int a, int b) const {
        if (a == b) return true;
        const auto& fa = space_->flags()[static_cast<std::size_t>(a)];
        const auto& fb = space_->flags()[static_cast<std::size_t>(b)];
        int d = (fa.point != fb.point) + (fa.line != fb.line) + (fa.plane != fb.plane);
        return d <= 1;
    }

    /// Id of the unique pencil through two adjacent flags.
    int pencil_through_ids(int a, int b) const {
        if (a == b) throw Error("coincident flags lie on three pencils, not one");
        const auto& fa = space_->flags()[static_cast<std::size_t>(a)];
        const auto& fb = space_->flags()[static_cast<std::size_t>(b)];
        int d = (fa.point != fb.point) + (fa.line != fb.line) + (fa.plane != fb.plane);
        if (d > 1) throw Error("unrelated flags lie on no common pencil");
        int type = fa.point != fb.point ? 0 : (fa.line != fb.line ? 1 : 2);
        return flag_pencils_[static_cast<std::size_t>(a)][static_cast<std::size_t>(type)];
    }

    /// Materialises a pencil as geometry.
    Pencil<K> pencil_at(int id) const {
        const PencilRef& r = pencils_[static_cast<std::size_t>(id)];
        const Space<K>& s = *space_;
        switch (r.type) {
            case 0:
                return Pencil<K>::type0(s.lines()[static_cast<std::size_t>(r.a)],
                                        s.planes()[static_cast<std::size_t>(r.b)]);
            case 1:
                return Pencil<K>::type1(s.points()[static_cast<std::size_t>(r.a)],
                                        s.planes()[static_cast<std::size_t>(r.b)]);
            default:
                return Pencil<K>::type2(s.points()[static_cast<std::size_t>(r.a)],
                                        s.lines()[static_cast<std::size_t>(r.b)]);
        }
    }

  private:
    void add_pencil(const PencilRef& ref) {
        const Space<K>& s = *space_;
        const int id = static_cast<int>(pencils_.size());
        pencils_.push_back(ref);
        ++type_count_[static_cast<std::size_t>(ref.type)];
        std::vector<int> mem;
        switch (ref.type) {
            case 0:
                for (int p : s.points_on_line(ref.a)) mem.push_back(s.flag_index(p, ref.a, ref.b));
                break;
            case 1: {
                const auto& lp = s.lines_on_point(ref.a);
                const auto& le = s.lines_on_plane(ref.b);
                std::vector<int> common;
                std::set_intersection(lp.begin(), lp.end(), le.begin(), le.end(),
                                      std::back_inserter(common));
                for (int l : common) mem.push_back(s.flag_index(ref.a, l, ref.b));
                break;
            }
            default:
                for (int e : s.planes_on_line(ref.b)) mem.push_back(s.flag_index(ref.a, ref.b, e));
                break;
        }
        std::sort(mem.begin(), mem.end());
        for (int f : mem) {
            int& slot = flag_pencils_[static_cast<std::size_t>(f)][static_cast<std::size_t>(ref.type)];
            if (slot >= 0) throw InternalInconsistencyError("two pencils of one type share a flag");
            slot = id;
        }
        members_.push_back(std::move(mem));
    }

    const Space<K>* space_;
    std::vector<PencilRef> pencils_;
    std::vector<std::vector<int>> members_;
    std::vector<std::array<int, 3>> flag_pencils_;
    std::vector<std::vector<int>> neighbors_;
    std::array<int, 3> type_count_{0, 0, 0};
};

// ---------------------------------------------------------------------------
// verification reports
// ---------------------------------------------------------------------------

/// One failed check, naming the flags or objects involved.
struct Violation {
    std::string what;
    std::vector<int> flags;
};

inline constexpr std::size_t kMaxRecordedViolations = 20;

struct ViolationLog {
    std::vector<Violation> recorded;
    std::int64_t total = 0;

    void add(std::string what, std::vector<int> flags) {
        ++total;
        if (recorded.size() < kMaxRecordedViolations)
            recorded.push_back(Violation{std::move(what), std::move(flags)});
    }
    bool clean() const { return total == 0; }
};

/// Result of the maximal-clique characterisation check.
struct MaxCliqueReport {
    std::array<std::int64_t, 3> pencils_by_type{0, 0, 0};
    std::int64_t pencil_size = 0;  // common size q + 1
    std::int64_t adjacent_pairs_checked = 0;
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

/// Checks that the pencils are exactly the maximal cliques of the
/// relatedness graph:
///   (a) every pencil is a clique of the expected size,
///   (b) no pencil extends by an outside flag,
///   (c) for every adjacent pair, the two flags plus their common
///       neighbours form precisely the pencil through the pair.
/// Together (a)-(c) identify maximal cliques and pencils, since (c) traps
/// any clique with two members inside one pencil.
template <class K>
MaxCliqueReport verify_pencils_are_max_cliques(const FlagSpaceModel<K>& model) {
    MaxCliqueReport rep;
    const int expect = model.space().q() + 1;
    rep.pencil_size = expect;
    for (int t = 0; t < 3; ++t)
        rep.pencils_by_type[static_cast<std::size_t>(t)] = model.pencil_count_of_type(t);

    for (int pid = 0; pid < model.pencil_total(); ++pid) {
        const auto& mem = model.members(pid);
        if (static_cast<int>(mem.size()) != expect)
            rep.log.add("pencil has wrong size", mem);
        for (std::size_t i = 0; i < mem.size(); ++i)
            for (std::size_t j = i + 1; j < mem.size(); ++j)
                if (!model.flags_related(mem[i], mem[j]))
                    rep.log.add("pencil is not a clique", {mem[i], mem[j]});
        // maximality: a flag related to every member would have to extend it
        for (int candidate : model.neighbors(mem[0])) {
            if (std::binary_search(mem.begin(), mem.end(), candidate)) continue;
            bool extends = true;
            for (int m : mem)
                if (!model.flags_related(candidate, m)) {
                    extends = false;
                    break;
                }
            if (extends) rep.log.add("pencil is not maximal", {pid, candidate});
        }
    }

    // (c): common neighbourhoods of adjacent pairs
    std::vector<int> closed;
    for (int a = 0; a < model.flag_total(); ++a) {
        const auto& na = model.neighbors(a);
        for (int b : na) {
            if (b <= a) continue;
            ++rep.adjacent_pairs_checked;
            const auto& nb = model.neighbors(b);
            closed.clear();
            std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                  std::back_inserter(closed));
            closed.push_back(a);
            closed.push_back(b);
            std::sort(closed.begin(), closed.end());
            if (closed != model.members(model.pencil_through_ids(a, b)))
                rep.log.add("common neighbourhood is not the joining pencil", {a, b});
        }
    }
    return rep;
}

/// Result of the row/column net check on the flags of one line.
struct TwoNetReport {
    int line = -1;
    std::int64_t flags_on_line = 0;
    std::int64_t row_pencils = 0;     // type 2, one per point of the line
    std::int64_t column_pencils = 0;  // type 0, one per plane through the line
    std::int64_t type1_inside = 0;    // must stay zero
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

/// The flags on a fixed line, rowed by their point and columned by their
/// plane, form a net: each row meets each column in exactly one flag, and
/// no type-1 pencil lies inside the family.
template <class K>
TwoNetReport verify_two_net(const FlagSpaceModel<K>& model, int line) {
    TwoNetReport rep;
    rep.line = line;
    const Space<K>& s = model.space();
    const auto& pts = s.points_on_line(line);
    const auto& pls = s.planes_on_line(line);
    rep.flags_on_line = static_cast<std::int64_t>(pts.size()) *
                        static_cast<std::int64_t>(pls.size());
    rep.row_pencils = static_cast<std::int64_t>(pts.size());
    rep.column_pencils = static_cast<std::int64_t>(pls.size());

    const int expect = s.q() + 1;
    for (int p : pts)
        for (int e : pls) {
            const int f = s.flag_index(p, line, e);
            const auto& through = model.pencils_of_flag(f);
            // row = the type-2 pencil (point, line); column = type-0 (line, plane)
            const auto& row = model.members(through[2]);
            const auto& col = model.members(through[0]);
            if (static_cast<int>(row.size()) < 3 || static_cast<int>(col.size()) < 3)
                rep.log.add("net pencil with fewer than 3 flags", {f});
            std::vector<int> meet;
            std::set_intersection(row.begin(), row.end(), col.begin(), col.end(),
                                  std::back_inserter(meet));
            if (meet != std::vector<int>{f})
                rep.log.add("row and column meet in more than their flag", {f});
            if (static_cast<int>(row.size()) != expect ||
                static_cast<int>(col.size()) != expect)
                rep.log.add("net pencil has wrong size", {f});
        }

    // no type-1 pencil lies inside the flags of this line
    for (int pid = 0; pid < model.pencil_total(); ++pid) {
        if (model.pencils()[static_cast<std::size_t>(pid)].type != 1) continue;
        bool inside = true;
        for (int f : model.members(pid))
            if (s.flags()[static_cast<std::size_t>(f)].line != line) {
                inside = false;
                break;
            }
        if (inside) {
            ++rep.type1_inside;
            rep.log.add("type-1 pencil inside one line's flags", model.members(pid));
        }
    }
    return rep;
}

/// Result of the closed-4-path type scan.
struct FourPathReport {
    std::int64_t cycles_checked = 0;
    std::array<std::int64_t, 3> edge_types_seen{0, 0, 0};
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

/// Every closed 4-path (a cycle of four flags, consecutively adjacent,
/// with both diagonals unrelated) uses only pencils of types 0 and 2.
template <class K>
FourPathReport verify_closed_4path(const FlagSpaceModel<K>& model) {
    FourPathReport rep;
    for (int f0 = 0; f0 < model.flag_total(); ++f0)
        for (int f1 : model.neighbors(f0)) {
            if (f1 <= f0) continue;
            for (int f2 : model.neighbors(f1)) {
                if (f2 <= f0 || model.flags_related(f0, f2)) continue;
                for (int f3 : model.neighbors(f2)) {
                    // f0 = min, f1 < f3 kills rotations and reflections
                    if (f3 <= f1 || f3 == f2 || model.flags_related(f1, f3)) continue;
                    if (!model.flags_related(f3, f0)) continue;
                    ++rep.cycles_checked;
                    const std::array<std::pair<int, int>, 4> edges{
                        {{f0, f1}, {f1, f2}, {f2, f3}, {f3, f0}}};
                    for (const auto& [x, y] : edges) {
                        int pid = model.pencil_through_ids(x, y);
                        int type = model.pencils()[static_cast<std::size_t>(pid)].type;
                        ++rep.edge_types_seen[static_cast<std::size_t>(type)];
                        if (type == 1)
                            rep.log.add("closed 4-path through a type-1 pencil",
                                        {f0, f1, f2, f3});
                    }
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// connectivity by the two-tetrahedron construction
// ---------------------------------------------------------------------------

namespace detail {

/// Candidate lines for path construction: every line of the space for a
/// finite field, otherwise lines spanned by pairs from a small integer
/// grid of points.
template <class K>
std::vector<Line<K>> path_candidate_lines(const FieldSpec& f) {
    if (f.finite()) return all_lines<K>(f);
    std::vector<Vec<K>> grid;
    for (std::int64_t a : {0, 1, -1, 2})
        for (std::int64_t b : {0, 1, -1, 2})
            for (std::int64_t c : {0, 1, -1, 2})
                for (std::int64_t d : {0, 1, -1, 2}) {
                    if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                    grid.push_back(Vec<K>{K::from_int(f, a), K::from_int(f, b),
                                          K::from_int(f, c), K::from_int(f, d)});
                }
    std::vector<Line<K>> out;
    std::unordered_map<std::string, bool> seen;
    for (std::size_t i = 0; i < grid.size() && out.size() < 600; ++i)
        for (std::size_t j = i + 1; j < grid.size() && out.size() < 600; ++j) {
            if (vec_is_zero(wedge2(grid[i], grid[j]))) continue;
            Line<K> g = Line<K>::from_basis({grid[i], grid[j]});
            if (!seen.emplace(coord_key(g.pluecker), true).second) continue;
            out.push_back(std::move(g));
        }
    return out;
}

/// Candidate points on a line / planes through a line, in a deterministic
/// order that is exhaustive for finite fields and generous for infinite.
template <class K>
std::vector<K> path_candidate_scalars(const FieldSpec& f) {
    if (f.finite()) return field_elements<K>(f);
    std::vector<K> out;
    for (std::int64_t n : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5})
        out.push_back(K::from_int(f, n));
    return out;
}

template <class K>
std::vector<Point<K>> path_candidate_points(const Line<K>& h) {
    const FieldSpec f = h.spec();
    if (f.finite()) return points_of_line(h);
    std::vector<Point<K>> out;
    for (const K& lambda : path_candidate_scalars<K>(f)) {
        Vec<K> v = h.basis0;
        vec_axpy(v, lambda, h.basis1);
        out.push_back(Point<K>::from(std::move(v)));
    }
    out.push_back(Point<K>::from(h.basis1));
    return out;
}

template <class K>
std::vector<Plane<K>> path_candidate_planes(const Line<K>& h) {
    const FieldSpec f = h.spec();
    if (f.finite()) return planes_through_line(h);
    auto ker = kernel_basis(Matrix<K>::from_rows({h.basis0, h.basis1}));
    std::vector<Plane<K>> out;
    for (const K& lambda : path_candidate_scalars<K>(f)) {
        Vec<K> v = ker[0];
        vec_axpy(v, lambda, ker[1]);
        out.push_back(Plane<K>::from(std::move(v)));
    }
    out.push_back(Plane<K>::from(ker[1]));
    return out;
}

/// Chain of 7 flags across the tetrahedron spanned by a flag (P, g, eps)
/// and an admissible far flag (Q, h, phi): h skew to g, Q outside eps,
/// phi missing P.
template <class K>
std::vector<Flag<K>> tetrahedron_chain(const Flag<K>& from, const Flag<K>& far) {
    const Point<K> p0 = from.point;
    const Point<K> p1 = meet_line_plane(from.line, far.plane);
    const Point<K> p2 = meet_line_plane(far.line, from.plane);
    const Point<K> p3 = far.point;
    const Line<K> g01 = from.line;
    const Line<K> g12 = join_points(p1, p2);
    const Line<K> g23 = far.line;
    const Plane<K> e3 = from.plane;
    const Plane<K> e0 = far.plane;
    return {make_flag(p0, g01, e3), make_flag(p1, g01, e3), make_flag(p1, g12, e3),
            make_flag(p1, g12, e0), make_flag(p2, g12, e0), make_flag(p2, g23, e0),
            make_flag(p3, g23, e0)};
}

}  // namespace detail

/// Path from a to b in the relatedness graph, of at most 12 steps. Related
/// flags give the direct path; otherwise two tetrahedron chains are glued
/// at an intermediate flag (Q, h, phi) whose line is skew to both given
/// lines, with Q outside both planes and phi missing both points. The
/// intermediate is found by scanning candidates in enumeration order.
template <class K>
std::vector<Flag<K>> connecting_path(const Flag<K>& a, const Flag<K>& b) {
    if (a == b) return {a};
    if (related(a, b)) return {a, b};

    for (const Line<K>& h : detail::path_candidate_lines<K>(a.point.spec())) {
        if (lines_meet(h, a.line) || lines_meet(h, b.line)) continue;
        for (const Point<K>& q : detail::path_candidate_points(h)) {
            if (point_on_plane(q, a.plane) || point_on_plane(q, b.plane)) continue;
            for (const Plane<K>& phi : detail::path_candidate_planes(h)) {
                if (point_on_plane(a.point, phi) || point_on_plane(b.point, phi)) continue;
                const Flag<K> mid = make_flag(q, h, phi);
                auto left = detail::tetrahedron_chain(a, mid);
                auto right = detail::tetrahedron_chain(b, mid);
                std::vector<Flag<K>> path = std::move(left);
                for (auto it = right.rbegin() + 1; it != right.rend(); ++it)
                    path.push_back(*it);
                // drop accidental consecutive repeats, keeping the path valid
                std::vector<Flag<K>> cleaned;
                for (auto& f : path)
                    if (cleaned.empty() || cleaned.back() != f) cleaned.push_back(std::move(f));
                return cleaned;
            }
        }
    }
    throw InternalInconsistencyError("no admissible intermediate flag among candidates");
}

/// Breadth-first distances from one flag to every other, an independent
/// oracle for connecting_path and the source of exact diameters.
template <class K>
std::vector<int> bfs_distances(const FlagSpaceModel<K>& model, int start) {
    std::vector<int> dist(static_cast<std::size_t>(model.flag_total()), -1);
    std::vector<int> frontier{start};
    dist[static_cast<std::size_t>(start)] = 0;
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<int> next;
        for (int f : frontier)
            for (int n : model.neighbors(f))
                if (dist[static_cast<std::size_t>(n)] < 0) {
                    dist[static_cast<std::size_t>(n)] = d;
                    next.push_back(n);
                }
        frontier = std::move(next);
    }
    return dist;
}

/// Exact diameter of the relatedness graph; -1 if disconnected.
template <class K>
int relatedness_diameter(const FlagSpaceModel<K>& model) {
    int diameter = 0;
    for (int f = 0; f < model.flag_total(); ++f) {
        for (int d : bfs_distances(model, f)) {
            if (d < 0) return -1;
            diameter = std::max(diameter, d);
        }
    }
    return diameter;
}

// ---------------------------------------------------------------------------
// exhaustive automorphism count of the flag-pencil incidence graph
// ---------------------------------------------------------------------------

struct AutomorphismCount {
    std::int64_t count = 0;
    /// A few of the counted automorphisms, as flag permutations, for
    /// cross-checks against the transformation machinery.
    std::vector<std::vector<int>> sampled;
};

namespace detail {

/// Backtracking automorphism counter on a vertex-coloured graph, using
/// individualisation with colour refinement. Counts colour-preserving
/// automorphisms; every accepted leaf is verified edge by edge. Vertex
/// signatures are packed into 64-bit words, so degrees are capped at 3
/// (the flag-pencil graph is 3-regular on both sides).
class AutomorphismSearch {
  public:
    AutomorphismSearch(std::vector<std::vector<int>> adj, std::vector<int> colors,
                       int sample_limit, int sample_stride)
        : adj_(std::move(adj)), n_(static_cast<int>(adj_.size())),
          sample_limit_(sample_limit), sample_stride_(sample_stride) {
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            if (a.size() > 3)
                throw SizeLimitError("automorphism search packs at most 3 neighbours");
        }
        std::vector<int> dom = colors, img = colors;
        if (refine(dom, img)) recurse(dom, img);
    }

    std::int64_t count() const { return count_; }
    const std::vector<std::vector<int>>& samples() const { return samples_; }

  private:
    /// Packed invariant of a vertex: own colour and sorted neighbour colours.
    std::uint64_t signature(const std::vector<int>& col, int v) const {
        std::array<std::uint64_t, 3> nb{0, 0, 0};
        const auto& row = adj_[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < row.size(); ++i)
            nb[i] = static_cast<std::uint64_t>(col[static_cast<std::size_t>(row[i])]) + 1;
        std::sort(nb.begin(), nb.end());
        return (static_cast<std::uint64_t>(col[static_cast<std::size_t>(v)]) << 48) |
               (nb[0] << 32) | (nb[1] << 16) | nb[2];
    }

    /// Simultaneous refinement to a stable partition; false when the two
    /// colourings can no longer correspond under any automorphism.
    bool refine(std::vector<int>& dom, std::vector<int>& img) {
        std::vector<std::uint64_t>& kd = kd_;
        std::vector<std::uint64_t>& ki = ki_;
        std::vector<std::uint64_t>& keys = keys_;
        kd.assign(static_cast<std::size_t>(n_), 0);
        ki.assign(static_cast<std::size_t>(n_), 0);
        for (;;) {
            for (int v = 0; v < n_; ++v) {
                kd[static_cast<std::size_t>(v)] = signature(dom, v);
                ki[static_cast<std::size_t>(v)] = signature(img, v);
            }
            keys = kd;
            std::sort(keys.begin(), keys.end());
            check_ = ki;
            std::sort(check_.begin(), check_.end());
            if (check_ != keys) return false;  // class contents or sizes differ
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
            bool changed = false;
            for (int v = 0; v < n_; ++v) {
                const int cd = static_cast<int>(
                    std::lower_bound(keys.begin(), keys.end(), kd[static_cast<std::size_t>(v)]) -
                    keys.begin());
                const int ci = static_cast<int>(
                    std::lower_bound(keys.begin(), keys.end(), ki[static_cast<std::size_t>(v)]) -
                    keys.begin());
                if (dom[static_cast<std::size_t>(v)] != cd) changed = true;
                dom[static_cast<std::size_t>(v)] = cd;
                img[static_cast<std::size_t>(v)] = ci;
            }
            if (!changed) return true;
        }
    }

    void recurse(const std::vector<int>& dom, const std::vector<int>& img) {
        // class sizes; colours are contiguous 0..k-1 after refine
        std::vector<int> size(static_cast<std::size_t>(n_) + 1, 0);
        int ncolors = 0;
        for (int v = 0; v < n_; ++v) {
            ++size[static_cast<std::size_t>(dom[static_cast<std::size_t>(v)])];
            ncolors = std::max(ncolors, dom[static_cast<std::size_t>(v)] + 1);
        }
        // smallest non-singleton class, ties broken by colour id
        int target = -1;
        for (int c = 0; c < ncolors; ++c)
            if (size[static_cast<std::size_t>(c)] > 1 &&
                (target < 0 ||
                 size[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(target)]))
                target = c;
        if (target < 0) {
            accept(dom, img);
            return;
        }
        int v = -1;
        for (int u = 0; u < n_ && v < 0; ++u)
            if (dom[static_cast<std::size_t>(u)] == target) v = u;  // canonical choice
        const int fresh = n_;  // colour id never produced by refine
        for (int w = 0; w < n_; ++w) {
            if (img[static_cast<std::size_t>(w)] != target) continue;
            std::vector<int> dom2 = dom, img2 = img;
            dom2[static_cast<std::size_t>(v)] = fresh;
            img2[static_cast<std::size_t>(w)] = fresh;
            if (refine(dom2, img2)) recurse(dom2, img2);
        }
    }

    void accept(const std::vector<int>& dom, const std::vector<int>& img) {
        std::vector<int> map(static_cast<std::size_t>(n_), -1);
        for (int v = 0; v < n_; ++v) {
            const int c = dom[static_cast<std::size_t>(v)];
            if (map[static_cast<std::size_t>(c)] != -1) return;  // class not a singleton
            map[static_cast<std::size_t>(c)] = v;
        }
        // map[] now sends colours to domain vertices; compose into vertex map
        std::vector<int> perm(static_cast<std::size_t>(n_), -1);
        for (int w = 0; w < n_; ++w) {
            const int c = img[static_cast<std::size_t>(w)];
            const int v = map[static_cast<std::size_t>(c)];
            if (v < 0 || perm[static_cast<std::size_t>(v)] != -1) return;
            perm[static_cast<std::size_t>(v)] = w;
        }
        // full edge-by-edge verification of the candidate bijection
        std::vector<int> image;
        for (int v = 0; v < n_; ++v) {
            image.clear();
            for (int w : adj_[static_cast<std::size_t>(v)])
                image.push_back(perm[static_cast<std::size_t>(w)]);
            std::sort(image.begin(), image.end());
            if (image != adj_[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])])
                return;
        }
        if (static_cast<int>(samples_.size()) < sample_limit_ &&
            count_ % sample_stride_ == 0)
            samples_.push_back(perm);
        ++count_;
    }

    std::vector<std::vector<int>> adj_;
    int n_;
    int sample_limit_;
    int sample_stride_;
    std::int64_t count_ = 0;
    std::vector<std::vector<int>> samples_;
    std::vector<std::uint64_t> kd_, ki_, keys_, check_;  // refine scratch
};

}  // namespace detail

/// Counts the automorphisms of the flag-pencil incidence graph that keep
/// the two sides fixed (flags to flags, pencils to pencils). Exhaustive,
/// so guarded to GF(2).
template <class K>
AutomorphismCount count_graph_automorphisms(const FlagSpaceModel<K>& model,
                                            int sample_limit = 0) {
    if (model.space().q() != 2)
        throw SizeLimitError("exhaustive automorphism count is limited to GF(2)");
    const int nf = model.flag_total();
    const int np = model.pencil_total();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nf + np));
    for (int pid = 0; pid < np; ++pid)
        for (int f : model.members(pid)) {
            adj[static_cast<std::size_t>(f)].push_back(nf + pid);
            adj[static_cast<std::size_t>(nf + pid)].push_back(f);
        }
    std::vector<int> colors(static_cast<std::size_t>(nf + np), 0);
    for (int i = nf; i < nf + np; ++i) colors[static_cast<std::size_t>(i)] = 1;

    const int stride = sample_limit > 0 ? 641 : 1;  // spread samples over the run
    detail::AutomorphismSearch search(std::move(adj), std::move(colors),
                                      sample_limit, stride);
    AutomorphismCount out;
    out.count = search.count();
    for (const auto& m : search.samples())
        out.sampled.emplace_back(m.begin(), m.begin() + nf);
    return out;
}

}  // namespace flagvar
