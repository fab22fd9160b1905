#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "transform.hpp"

namespace flagvar {

// ---------------------------------------------------------------------------
// the embedding of flags into the 96-dimensional tensor space
// ---------------------------------------------------------------------------

/// Image of a flag as a simple tensor point ⊗ (line bivector) ⊗ plane,
/// scaled canonically so images compare structurally.
template <class K>
Vec<K> embed_flag(const Flag<K>& f) {
    return projective_canonical(tensor3(f.point.coords, f.line.pluecker, f.plane.coeffs));
}

// ---------------------------------------------------------------------------
// incidence maps and their kernels
// ---------------------------------------------------------------------------

/// The two 16x96 incidence maps together with their kernels and the
/// kernel intersection, all as exact row bases.
template <class K>
struct IncidenceMaps {
    Matrix<K> i01;  // wedges the point into the bivector
    Matrix<K> i12;  // contracts the bivector with the plane
    std::vector<Vec<K>> ker01;
    std::vector<Vec<K>> ker12;
    std::vector<Vec<K>> intersection;
};

template <class K>
IncidenceMaps<K> build_incidence_maps(const FieldSpec& f) {
    IncidenceMaps<K> maps{wedge_flattening<K>(f), contraction_flattening<K>(f), {}, {}, {}};
    maps.ker01 = kernel_basis(maps.i01);
    maps.ker12 = kernel_basis(maps.i12);
    maps.intersection = subspace_intersection(maps.ker01, maps.ker12);
    return maps;
}

/// Membership of a simple tensor in the first kernel reads as the point
/// lying on the line of the bivector.
template <class K>
bool membership_i01(const Vec<K>& point, const Vec<K>& bivector, const Vec<K>& covector) {
    if (vec_is_zero(point) || vec_is_zero(bivector) || vec_is_zero(covector))
        throw Error("membership needs nonzero tensor factors");
    return vec_is_zero(wedge12(point, bivector));
}

/// Membership in the second kernel reads as the line of the bivector
/// lying inside the plane of the covector.
template <class K>
bool membership_i12(const Vec<K>& point, const Vec<K>& bivector, const Vec<K>& covector) {
    if (vec_is_zero(point) || vec_is_zero(bivector) || vec_is_zero(covector))
        throw Error("membership needs nonzero tensor factors");
    return vec_is_zero(contract(bivector, covector));
}

// ---------------------------------------------------------------------------
// the variety model over a finite field
// ---------------------------------------------------------------------------

/// All flag images over a finite field, with reverse lookup and the span.
template <class K>
class VarietyModel {
  public:
    explicit VarietyModel(const Space<K>& space)
        : space_(&space), span_(kDim96, space.spec()) {
        for (std::size_t i = 0; i < space.flags().size(); ++i) {
            Vec<K> x = embed_flag(space.flag_at(static_cast<int>(i)));
            const auto [it, fresh] = index_.emplace(detail::coord_key(x), static_cast<int>(i));
            if (!fresh) throw InternalInconsistencyError("two flags share one image");
            span_.insert(x);
            images_.push_back(std::move(x));
        }
    }

    const Space<K>& space() const { return *space_; }
    const std::vector<Vec<K>>& images() const { return images_; }
    const Vec<K>& image_of(int flag) const { return images_[static_cast<std::size_t>(flag)]; }
    int span_dim() const { return span_.dim(); }

    /// Flag whose image is the given tensor (up to scalar), if any.
    std::optional<int> preimage(const Vec<K>& tensor) const {
        if (vec_is_zero(tensor)) return std::nullopt;
        auto it = index_.find(detail::coord_key(projective_canonical(tensor)));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

  private:
    const Space<K>* space_;
    std::vector<Vec<K>> images_;
    std::unordered_map<std::string, int> index_;
    SpanBasis<K> span_;
};

/// Whether the whole projective line through two flag images stays inside
/// the variety; equivalent to relatedness of the flags, and cross-checked
/// against it.
template <class K>
bool variety_related(const VarietyModel<K>& model, const Vec<K>& x, const Vec<K>& y) {
    const auto fx = model.preimage(x);
    const auto fy = model.preimage(y);
    if (!fx || !fy) throw Error("variety relatedness is defined on flag images");
    if (*fx == *fy) return true;
    // the remaining point of the joining line is the image of y itself,
    // which lies inside by definition
    bool inside = true;
    for (const K& lambda : field_elements<K>(model.space().spec())) {
        Vec<K> p = model.image_of(*fx);
        vec_axpy(p, lambda, model.image_of(*fy));
        if (!model.preimage(p)) {
            inside = false;
            break;
        }
    }
    const bool rel = related(model.space().flag_at(*fx), model.space().flag_at(*fy));
    if (inside != rel)
        throw InternalInconsistencyError("line containment disagrees with relatedness");
    return inside;
}

// ---------------------------------------------------------------------------
// verification reports
// ---------------------------------------------------------------------------

/// Exhaustive (or sampled) check that kernel membership of simple tensors
/// reads as geometric incidence.
struct IncidenceReadingReport {
    std::int64_t triples_checked = 0;
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

template <class K>
IncidenceReadingReport verify_incidence_readings(const Space<K>& space,
                                                 const IncidenceMaps<K>& maps) {
    IncidenceReadingReport rep;
    for (const auto& p : space.points())
        for (const auto& g : space.lines())
            for (const auto& e : space.planes()) {
                ++rep.triples_checked;
                const Vec<K> x = tensor3(p.coords, g.pluecker, e.coeffs);
                const bool in01 = vec_is_zero(maps.i01.mul_vec(x));
                const bool in12 = vec_is_zero(maps.i12.mul_vec(x));
                if (in01 != point_on_line(p, g))
                    rep.log.add("first kernel disagrees with point-on-line", {});
                if (in12 != line_on_plane(g, e))
                    rep.log.add("second kernel disagrees with line-in-plane", {});
                if (in01 != membership_i01(p.coords, g.pluecker, e.coeffs))
                    rep.log.add("membership shortcut disagrees with the kernel", {});
                if (in12 != membership_i12(p.coords, g.pluecker, e.coeffs))
                    rep.log.add("membership shortcut disagrees with the kernel", {});
            }
    return rep;
}

/// Seeded sampled variant for fields where the triple count is too large.
template <class K>
IncidenceReadingReport verify_incidence_readings_sampled(const Space<K>& space,
                                                         const IncidenceMaps<K>& maps,
                                                         std::uint64_t seed, int trials) {
    IncidenceReadingReport rep;
    std::mt19937_64 rng(seed);
    const auto npts = space.points().size();
    const auto nlin = space.lines().size();
    const auto npls = space.planes().size();
    for (int t = 0; t < trials; ++t) {
        const auto& p = space.points()[rng() % npts];
        const auto& g = space.lines()[rng() % nlin];
        const auto& e = space.planes()[rng() % npls];
        ++rep.triples_checked;
        const Vec<K> x = tensor3(p.coords, g.pluecker, e.coeffs);
        if (vec_is_zero(maps.i01.mul_vec(x)) != point_on_line(p, g))
            rep.log.add("first kernel disagrees with point-on-line", {});
        if (vec_is_zero(maps.i12.mul_vec(x)) != line_on_plane(g, e))
            rep.log.add("second kernel disagrees with line-in-plane", {});
    }
    return rep;
}

/// Census of the Segre points inside both kernels: they must be exactly
/// the flag images.
struct VarietyCensusReport {
    std::int64_t segre_points = 0;
    std::int64_t inside_both = 0;
    std::int64_t flag_images = 0;
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

template <class K>
VarietyCensusReport verify_variety_census(const VarietyModel<K>& model,
                                          const IncidenceMaps<K>& maps) {
    VarietyCensusReport rep;
    const Space<K>& s = model.space();
    const FieldSpec f = s.spec();
    rep.flag_images = static_cast<std::int64_t>(model.images().size());
    for (const auto& p : detail::unit_rays<K>(f, 4))
        for (const auto& t : detail::unit_rays<K>(f, 6))
            for (const auto& e : detail::unit_rays<K>(f, 4)) {
                ++rep.segre_points;
                const Vec<K> x = tensor3(p, t, e);
                const bool inside = vec_is_zero(maps.i01.mul_vec(x)) &&
                                    vec_is_zero(maps.i12.mul_vec(x));
                if (inside) ++rep.inside_both;
                const bool image = model.preimage(x).has_value();
                if (inside != image)
                    rep.log.add(inside ? "non-flag Segre point inside both kernels"
                                       : "flag image escaped a kernel",
                                {});
            }
    return rep;
}

/// Line structure of the variety: pencil images are full lines inside it,
/// joining lines of unrelated images leave it, and joining lines of
/// related images are exactly the pencil lines.
struct VarietyLineReport {
    std::int64_t pencil_lines = 0;
    std::int64_t related_pairs = 0;
    std::int64_t unrelated_pairs = 0;
    ViolationLog log;
    bool pass() const { return log.clean(); }
};

template <class K>
VarietyLineReport verify_variety_lines(const VarietyModel<K>& model,
                                       const FlagSpaceModel<K>& flags) {
    VarietyLineReport rep;
    const Space<K>& s = model.space();
    const auto elems = field_elements<K>(s.spec());

    // forward: each pencil spans a projective line lying inside the variety
    for (int pid = 0; pid < flags.pencil_total(); ++pid) {
        ++rep.pencil_lines;
        const auto& mem = flags.members(pid);
        std::vector<Vec<K>> rows;
        for (int m : mem) rows.push_back(model.image_of(m));
        if (rank(Matrix<K>::from_rows(rows)) != 2) {
            rep.log.add("pencil image does not span a line", mem);
            continue;
        }
        // all points of the spanned line are pencil-member images
        std::vector<int> seen;
        for (const K& lambda : elems) {
            Vec<K> x = rows[0];
            vec_axpy(x, lambda, rows[1]);
            const auto back = model.preimage(x);
            if (!back || !std::binary_search(mem.begin(), mem.end(), *back))
                rep.log.add("line point is not a pencil member image", mem);
            else
                seen.push_back(*back);
        }
        const auto last = model.preimage(rows[1]);
        if (!last || !std::binary_search(mem.begin(), mem.end(), *last))
            rep.log.add("line point is not a pencil member image", mem);
        else
            seen.push_back(*last);
        std::sort(seen.begin(), seen.end());
        if (seen != mem) rep.log.add("pencil image line misses a member", mem);
    }

    // converse over all image pairs
    for (int a = 0; a < flags.flag_total(); ++a)
        for (int b = a + 1; b < flags.flag_total(); ++b) {
            const bool rel = flags.flags_related(a, b);
            if (rel) {
                ++rep.related_pairs;
                // the joining line is the image of the joining pencil
                const auto& mem = flags.members(flags.pencil_through_ids(a, b));
                for (const K& lambda : elems) {
                    Vec<K> x = model.image_of(a);
                    vec_axpy(x, lambda, model.image_of(b));
                    const auto back = model.preimage(x);
                    if (!back || !std::binary_search(mem.begin(), mem.end(), *back))
                        rep.log.add("joining line of a related pair leaves its pencil", {a, b});
                }
            } else {
                ++rep.unrelated_pairs;
                // some point of the joining line lies outside the variety
                bool witness = false;
                for (const K& lambda : elems) {
                    Vec<K> x = model.image_of(a);
                    vec_axpy(x, lambda, model.image_of(b));
                    if (!model.preimage(x)) {
                        witness = true;
                        break;
                    }
                }
                if (!witness)
                    rep.log.add("joining line of an unrelated pair stays inside", {a, b});
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// span dimensions and the characteristic-3 anomaly
// ---------------------------------------------------------------------------

struct SpanReport {
    std::string field;
    int dim_point_flags = 0;     // span of the images of one point's flags
    int dim_vertex_span = 0;     // W_P from the four coordinate points
    int dim_unit_span = 0;       // W_U from the four face unit points
    int dim_joint_span = 0;      // W_P + W_U
    int dim_variety_span = 0;    // span of all of the variety
    bool special_flag_used = false;
    bool special_flag_outside = false;  // outside W_P + W_U (characteristic 3)
};

/// The flag that completes the joint span in characteristic 3; a valid
/// flag over every supported field.
template <class K>
Flag<K> completion_flag(const FieldSpec& f) {
    return make_flag(Point<K>::from_ints({1, 1, 1, -1}, f),
                     Line<K>::from_ints({1, 0, 0, 0}, {0, 1, 1, -1}, f),
                     Plane<K>::from_ints({0, 0, 1, 1}, f));
}

namespace detail {

/// Deterministic family of flags through a fixed point, exhaustive over a
/// finite field and a finite grid sample over the rationals.
template <class K>
void span_flags_of_point(const Point<K>& q, SpanBasis<K>& span) {
    const FieldSpec f = q.spec();
    if (f.finite()) {
        for (const Line<K>& g : all_lines<K>(f)) {
            if (!point_on_line(q, g)) continue;
            for (const Plane<K>& e : planes_through_line(g))
                span.insert(embed_flag(make_flag(q, g, e)));
        }
        return;
    }
    // directions with coordinates 0, 1, -1 already span every line slope
    // needed to saturate the flag span of one point
    std::vector<Vec<K>> dirs;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d) {
                    Vec<K> v{K::from_int(f, a), K::from_int(f, b), K::from_int(f, c),
                             K::from_int(f, d)};
                    if (!vec_is_zero(v)) dirs.push_back(std::move(v));
                }
    for (const Vec<K>& dir : dirs) {
        if (vec_is_zero(wedge2(q.coords, dir))) continue;
        const Line<K> g = Line<K>::from_basis({q.coords, dir});
        auto ker = kernel_basis(Matrix<K>::from_rows({g.basis0, g.basis1}));
        for (std::int64_t lam : {0, 1, -1, 2}) {
            Vec<K> e = ker[0];
            vec_axpy(e, K::from_int(f, lam), ker[1]);
            span.insert(embed_flag(make_flag(q, g, Plane<K>::from(std::move(e)))));
        }
        span.insert(embed_flag(make_flag(q, g, Plane<K>::from(ker[1]))));
    }
}

}  // namespace detail

/// Exact span dimensions of the variety and its named subspaces; the
/// characteristic-3 drop of the joint span is reported explicitly.
template <class K>
SpanReport span_report(const FieldSpec& f) {
    SpanReport rep;
    rep.field = f.tag();

    SpanBasis<K> point_span(kDim96, f);
    detail::span_flags_of_point(Point<K>::from_ints({1, 0, 0, 0}, f), point_span);
    rep.dim_point_flags = point_span.dim();

    SpanBasis<K> wp(kDim96, f);
    for (int i = 0; i < 4; ++i) {
        std::vector<std::int64_t> coords(4, 0);
        coords[static_cast<std::size_t>(i)] = 1;
        detail::span_flags_of_point(Point<K>::from_ints(coords, f), wp);
    }
    rep.dim_vertex_span = wp.dim();

    SpanBasis<K> wu(kDim96, f);
    for (int i = 0; i < 4; ++i) {
        std::vector<std::int64_t> coords(4, 1);
        coords[static_cast<std::size_t>(i)] = 0;
        detail::span_flags_of_point(Point<K>::from_ints(coords, f), wu);
    }
    rep.dim_unit_span = wu.dim();

    SpanBasis<K> joint(kDim96, f);
    for (const auto& row : wp.rows()) joint.insert(row);
    for (const auto& row : wu.rows()) joint.insert(row);
    rep.dim_joint_span = joint.dim();

    const Vec<K> special = embed_flag(completion_flag<K>(f));
    SpanBasis<K> joint_plus = joint;
    const bool grew = joint_plus.insert(special);
    rep.special_flag_outside = grew;

    if (f.finite()) {
        SpanBasis<K> everything(kDim96, f);
        const Space<K> space(f);
        for (std::size_t i = 0; i < space.flags().size(); ++i)
            everything.insert(embed_flag(space.flag_at(static_cast<int>(i))));
        rep.dim_variety_span = everything.dim();
        rep.special_flag_used = false;
    } else {
        // over the rationals the joint span plus the completion flag
        // already meets the 64-dimensional kernel intersection bound
        rep.dim_variety_span = joint_plus.dim();
        rep.special_flag_used = grew;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// extension of flag maps to the ambient tensor space
// ---------------------------------------------------------------------------

/// The 96x96 matrix acting columnwise as m ⊗ (exterior square) ⊗
/// (inverse transpose) on the tensor basis.
template <class K>
Matrix<K> tensor_cube(const Matrix<K>& m) {
    const FieldSpec f = m.spec();
    const Matrix<K> hat = exterior_square(m);
    const Matrix<K> star = inverse_transpose(m);
    Matrix<K> out(kDim96, kDim96, f);
    for (int i = 0; i < 4; ++i)
        for (int jk = 0; jk < 6; ++jk)
            for (int l = 0; l < 4; ++l) {
                const Vec<K> x = tensor3(m.col(i), hat.col(jk), star.col(l));
                const int c = t96_index(i, jk, l);
                for (int r = 0; r < kDim96; ++r) out.at(r, c) = x[static_cast<std::size_t>(r)];
            }
    return out;
}

/// The duality analogue: the column image of b_i ⊗ (b_j∧b_k) ⊗ b_l* puts
/// the transformed covector slot into the point slot and conversely, with
/// the Klein polarity pulling the bivector back from its dual.
template <class K>
Matrix<K> tensor_cube_dual(const Matrix<K>& m) {
    const FieldSpec f = m.spec();
    const Matrix<K> hat = exterior_square(m);
    const Matrix<K> star = inverse_transpose(m);
    const Matrix<K> back = inverse(klein_polarity_matrix<K>(f)) * hat;
    Matrix<K> out(kDim96, kDim96, f);
    for (int i = 0; i < 4; ++i)
        for (int jk = 0; jk < 6; ++jk)
            for (int l = 0; l < 4; ++l) {
                const Vec<K> x = tensor3(star.col(l), back.col(jk), m.col(i));
                const int c = t96_index(i, jk, l);
                for (int r = 0; r < kDim96; ++r) out.at(r, c) = x[static_cast<std::size_t>(r)];
            }
    return out;
}

/// Extends a flag map to a collineation of the ambient 95-dimensional
/// projective space: every flag image must map to the image of the
/// mapped flag, up to scalar.
template <class K>
Matrix<K> extend_to_collineation(const VarietyModel<K>& model, const FlagMap<K>& map) {
    const Decomposition<K> dec = decompose(map);
    const Matrix<K> big = dec.kind == TransformKind::collineation
                              ? tensor_cube(dec.matrix)
                              : tensor_cube_dual(dec.matrix);
    for (int fl = 0; fl < static_cast<int>(model.images().size()); ++fl) {
        const Vec<K> moved = projective_canonical(big.mul_vec(model.image_of(fl)));
        if (moved != model.image_of(map.apply(fl)))
            throw InternalInconsistencyError("extension misses a flag image");
    }
    return big;
}

/// How a 96x96 matrix moves the two kernels: exact containment tests of
/// the image of each kernel in each kernel.
struct KernelAction {
    bool i01_into_i01 = false;
    bool i01_into_i12 = false;
    bool i12_into_i01 = false;
    bool i12_into_i12 = false;
};

template <class K>
KernelAction kernel_action(const IncidenceMaps<K>& maps, const Matrix<K>& big) {
    KernelAction act;
    auto lands_in = [&](const std::vector<Vec<K>>& basis, const Matrix<K>& target) {
        for (const auto& v : basis)
            if (!vec_is_zero(target.mul_vec(big.mul_vec(v)))) return false;
        return true;
    };
    act.i01_into_i01 = lands_in(maps.ker01, maps.i01);
    act.i01_into_i12 = lands_in(maps.ker01, maps.i12);
    act.i12_into_i01 = lands_in(maps.ker12, maps.i01);
    act.i12_into_i12 = lands_in(maps.ker12, maps.i12);
    return act;
}

/// Witnesses that any two extensions agreeing projectively on all flag
/// images agree on the whole span up to one global scalar: pencil images
/// are nondegenerate two-term combinations (so scalars propagate along
/// pencils), the relatedness graph is connected, and the images span a
/// 64-dimensional space.
struct UniquenessReport {
    int span_dim = 0;
    bool combinations_nondegenerate = false;
    bool graph_connected = false;
    bool pass() const {
        return span_dim == 64 && combinations_nondegenerate && graph_connected;
    }
};

template <class K>
UniquenessReport verify_uniqueness_on_span(const VarietyModel<K>& model,
                                           const FlagSpaceModel<K>& flags) {
    UniquenessReport rep;
    rep.span_dim = model.span_dim();

    // every pencil member is a combination of two others with both
    // coefficients nonzero, which forces equal scalars along pencils
    bool good = true;
    for (int pid = 0; pid < flags.pencil_total() && good; ++pid) {
        const auto& mem = flags.members(pid);
        Matrix<K> two(kDim96, 2, model.space().spec());
        for (int r = 0; r < kDim96; ++r) {
            two.at(r, 0) = model.image_of(mem[0])[static_cast<std::size_t>(r)];
            two.at(r, 1) = model.image_of(mem[1])[static_cast<std::size_t>(r)];
        }
        for (std::size_t rest = 2; rest < mem.size() && good; ++rest) {
            const auto coeff = solve_right(two, model.image_of(mem[rest]));
            if (!coeff || (*coeff)[0].is_zero() || (*coeff)[1].is_zero()) good = false;
        }
    }
    rep.combinations_nondegenerate = good;

    bool connected = true;
    for (int d : bfs_distances(flags, 0))
        if (d < 0) connected = false;
    rep.graph_connected = connected;
    return rep;
}

}  // namespace flagvar
