#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "flagvar/flagvariety.hpp"
#include "helpers.hpp"

using namespace flagvar;

namespace {

const Space<GFp>& space_of(std::uint32_t p) {
    static const Space<GFp> s2{FieldSpec::prime(2)};
    static const Space<GFp> s3{FieldSpec::prime(3)};
    switch (p) {
        case 2: return s2;
        default: return s3;
    }
}

const VarietyModel<GFp>& variety_of(std::uint32_t p) {
    static const VarietyModel<GFp> v2{space_of(2)};
    static const VarietyModel<GFp> v3{space_of(3)};
    switch (p) {
        case 2: return v2;
        default: return v3;
    }
}

const FlagSpaceModel<GFp>& flags_of(std::uint32_t p) {
    static const FlagSpaceModel<GFp> m2{space_of(2)};
    static const FlagSpaceModel<GFp> m3{space_of(3)};
    switch (p) {
        case 2: return m2;
        default: return m3;
    }
}

template <class K>
Flag<K> standard_flag(const FieldSpec& f) {
    return make_flag(Point<K>::from_ints({1, 0, 0, 0}, f),
                     Line<K>::from_ints({1, 0, 0, 0}, {0, 1, 0, 0}, f),
                     Plane<K>::from_ints({0, 0, 0, 1}, f));
}

/// Dimension of the intersection of a point's simple-tensor slab with
/// both incidence kernels; an upper bound for the span of the images of
/// the flags through that point.
template <class K>
std::vector<Vec<K>> point_slab_kernel_basis(const Point<K>& q, const IncidenceMaps<K>& maps) {
    const FieldSpec f = q.spec();
    std::vector<Vec<K>> slab;
    for (int jk = 0; jk < 6; ++jk)
        for (int l = 0; l < 4; ++l) {
            Vec<K> x = zero_vec<K>(kDim96, f);
            for (int i = 0; i < 4; ++i)
                x[static_cast<std::size_t>(t96_index(i, jk, l))] = q.coords[static_cast<std::size_t>(i)];
            slab.push_back(std::move(x));
        }
    return subspace_intersection(subspace_intersection(slab, maps.ker01), maps.ker12);
}

}  // namespace

TEST_CASE("incidence maps are surjective with eighty dimensional kernels") {
    auto check = [](const FieldSpec& f, auto tag) {
        using K = decltype(tag);
        const IncidenceMaps<K> maps = build_incidence_maps<K>(f);
        REQUIRE(maps.i01.rows() == 16);
        REQUIRE(maps.i01.cols() == 96);
        REQUIRE(maps.i12.rows() == 16);
        REQUIRE(maps.i12.cols() == 96);
        CHECK(rank(maps.i01) == 16);
        CHECK(rank(maps.i12) == 16);
        CHECK(maps.ker01.size() == 80);
        CHECK(maps.ker12.size() == 80);
        CHECK(maps.intersection.size() == 64);
        for (const auto& v : maps.intersection) {
            CHECK(vec_is_zero(maps.i01.mul_vec(v)));
            CHECK(vec_is_zero(maps.i12.mul_vec(v)));
        }
    };
    check(FieldSpec::prime(2), GFp::zero(FieldSpec::prime(2)));
    check(FieldSpec::prime(3), GFp::zero(FieldSpec::prime(3)));
    check(FieldSpec::prime(5), GFp::zero(FieldSpec::prime(5)));
    check(FieldSpec::rationals(), Rat(0));
}

TEST_CASE("flag images are canonical simple tensors") {
    const FieldSpec f = FieldSpec::rationals();

    // the standard flag hits exactly one tensor basis vector
    const Vec<Rat> x = embed_flag(standard_flag<Rat>(f));
    REQUIRE(x.size() == 96);
    for (int k = 0; k < kDim96; ++k) {
        if (k == t96_index(0, 0, 3))
            CHECK(x[static_cast<std::size_t>(k)] == Rat(1));
        else
            CHECK(x[static_cast<std::size_t>(k)].is_zero());
    }

    // rescaling every flag component leaves the image unchanged
    const Flag<Rat> scaled = make_flag(Point<Rat>::from_ints({2, 0, 0, 0}, f),
                                       Line<Rat>::from_ints({2, 0, 0, 0}, {0, 3, 0, 0}, f),
                                       Plane<Rat>::from_ints({0, 0, 0, 5}, f));
    CHECK(embed_flag(scaled) == x);

    // hand-expanded coordinates of the completion flag's image
    const Vec<Rat> y = embed_flag(completion_flag<Rat>(f));
    CHECK(y[static_cast<std::size_t>(t96_index(0, 0, 2))] == Rat(1));
    CHECK(y[static_cast<std::size_t>(t96_index(0, 0, 3))] == Rat(1));
    CHECK(y[static_cast<std::size_t>(t96_index(0, 2, 2))] == Rat(-1));
    CHECK(y[static_cast<std::size_t>(t96_index(3, 0, 2))] == Rat(-1));
    CHECK(y[static_cast<std::size_t>(t96_index(0, 0, 0))].is_zero());
    CHECK(y[static_cast<std::size_t>(t96_index(1, 3, 0))].is_zero());
}

TEST_CASE("image tensors of incident triples lie in both kernels over the rationals") {
    const FieldSpec f = FieldSpec::rationals();
    const IncidenceMaps<Rat> maps = build_incidence_maps<Rat>(f);
    const std::vector<Flag<Rat>> flags = {
        standard_flag<Rat>(f),
        completion_flag<Rat>(f),
        make_flag(Point<Rat>::from_ints({1, 2, 3, 4}, f),
                  Line<Rat>::from_ints({1, 2, 3, 4}, {1, 2, 0, 0}, f),
                  Plane<Rat>::from_ints({2, -1, 0, 0}, f)),
    };
    for (const Flag<Rat>& fl : flags) {
        const Vec<Rat> x = embed_flag(fl);
        CHECK(vec_is_zero(maps.i01.mul_vec(x)));
        CHECK(vec_is_zero(maps.i12.mul_vec(x)));
    }
}

TEST_CASE("variety model is injective and spans sixty four dimensions") {
    const VarietyModel<GFp>& v2 = variety_of(2);
    CHECK(v2.images().size() == 315);
    CHECK(v2.span_dim() == 64);

    const VarietyModel<GFp>& v3 = variety_of(3);
    CHECK(v3.images().size() == 2080);
    CHECK(v3.span_dim() == 64);

    // preimages ignore scaling
    const FieldSpec f3 = FieldSpec::prime(3);
    Vec<GFp> doubled = v3.image_of(17);
    for (GFp& c : doubled) c = c * GFp::from_int(f3, 2);
    auto back = v3.preimage(doubled);
    REQUIRE(back.has_value());
    CHECK(*back == 17);

    // a simple tensor of a non-incident triple is no image
    Vec<GFp> off = zero_vec<GFp>(kDim96, f3);
    off[static_cast<std::size_t>(t96_index(0, 0, 0))] = GFp::from_int(f3, 1);
    CHECK_FALSE(v3.preimage(off).has_value());
    CHECK_FALSE(v3.preimage(zero_vec<GFp>(kDim96, f3)).has_value());
}

TEST_CASE("kernel membership reads as incidence exhaustively over GF(2)") {
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(FieldSpec::prime(2));
    const IncidenceReadingReport rep = verify_incidence_readings(space_of(2), maps);
    CHECK(rep.triples_checked == 15 * 35 * 15);
    CHECK(rep.pass());
    CHECK(rep.log.total == 0);
}

TEST_CASE("kernel membership reads as incidence on samples over GF(3)") {
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(FieldSpec::prime(3));
    const IncidenceReadingReport rep =
        verify_incidence_readings_sampled(space_of(3), maps, 0, 10000);
    CHECK(rep.triples_checked == 10000);
    CHECK(rep.pass());
}

TEST_CASE("membership tests reject zero tensor factors") {
    const FieldSpec f = FieldSpec::prime(2);
    const Vec<GFp> p = Point<GFp>::from_ints({1, 0, 0, 0}, f).coords;
    const Vec<GFp> t = Line<GFp>::from_ints({1, 0, 0, 0}, {0, 1, 0, 0}, f).pluecker;
    const Vec<GFp> e = Plane<GFp>::from_ints({0, 0, 0, 1}, f).coeffs;
    const Vec<GFp> z4 = zero_vec<GFp>(4, f);
    const Vec<GFp> z6 = zero_vec<GFp>(6, f);
    CHECK(membership_i01(p, t, e));
    CHECK(membership_i12(p, t, e));
    CHECK_THROWS_AS(membership_i01(z4, t, e), Error);
    CHECK_THROWS_AS(membership_i01(p, z6, e), Error);
    CHECK_THROWS_AS(membership_i12(p, t, z4), Error);
}

TEST_CASE("segre census finds exactly the flag images over GF(2)") {
    const FieldSpec f = FieldSpec::prime(2);
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
    const VarietyCensusReport rep = verify_variety_census(variety_of(2), maps);
    CHECK(rep.segre_points == 15 * 63 * 15);
    CHECK(rep.inside_both == 315);
    CHECK(rep.flag_images == 315);
    CHECK(rep.pass());

    // independent count of the incident triples
    const Space<GFp>& s = space_of(2);
    std::int64_t incident = 0;
    for (const auto& p : s.points())
        for (const auto& g : s.lines())
            for (const auto& e : s.planes())
                if (point_on_line(p, g) && line_on_plane(g, e)) ++incident;
    CHECK(incident == rep.inside_both);
}

TEST_CASE("pencil images are full lines of the variety over GF(2)") {
    const VarietyLineReport rep = verify_variety_lines(variety_of(2), flags_of(2));
    CHECK(rep.pencil_lines == 315);
    CHECK(rep.related_pairs == 945);
    CHECK(rep.unrelated_pairs == 48510);
    CHECK(rep.pass());
}

TEST_CASE("variety relatedness coincides with flag relatedness") {
    const VarietyModel<GFp>& v = variety_of(2);
    const FlagSpaceModel<GFp>& m = flags_of(2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const int a = static_cast<int>(rng() % 315);
        const int b = static_cast<int>(rng() % 315);
        CHECK(variety_related(v, v.image_of(a), v.image_of(b)) ==
              (a == b || m.flags_related(a, b)));
    }

    // inputs must be flag images
    const FieldSpec f = FieldSpec::prime(2);
    Vec<GFp> off = zero_vec<GFp>(kDim96, f);
    off[static_cast<std::size_t>(t96_index(0, 0, 0))] = GFp::from_int(f, 1);
    CHECK_THROWS_AS(variety_related(v, v.image_of(0), off), Error);
}

TEST_CASE("span dimensions across the fields") {
    struct Expect {
        int joint;
        bool special_outside;
    };
    auto check = [](const FieldSpec& f, auto tag, Expect want) {
        using K = decltype(tag);
        const SpanReport rep = span_report<K>(f);
        CHECK(rep.dim_point_flags == 8);
        CHECK(rep.dim_vertex_span == 32);
        CHECK(rep.dim_unit_span == 32);
        CHECK(rep.dim_joint_span == want.joint);
        CHECK(rep.dim_variety_span == 64);
        CHECK(rep.special_flag_outside == want.special_outside);
    };
    check(FieldSpec::prime(2), GFp::zero(FieldSpec::prime(2)), {64, false});
    check(FieldSpec::prime(3), GFp::zero(FieldSpec::prime(3)), {63, true});
    check(FieldSpec::prime(5), GFp::zero(FieldSpec::prime(5)), {64, false});
    check(FieldSpec::rationals(), Rat(0), {64, false});
}

TEST_CASE("slab kernel intersections bound the point spans from above") {
    // Lower bounds for the span dimensions come from explicit flag
    // families; these intersections give the matching upper bounds.
    const FieldSpec f = FieldSpec::rationals();
    const IncidenceMaps<Rat> maps = build_incidence_maps<Rat>(f);

    std::vector<Vec<Rat>> vertex_stack;
    std::vector<Vec<Rat>> unit_stack;
    for (int i = 0; i < 4; ++i) {
        std::vector<std::int64_t> vcoords(4, 0);
        vcoords[static_cast<std::size_t>(i)] = 1;
        auto vbasis = point_slab_kernel_basis(Point<Rat>::from_ints(vcoords, f), maps);
        CHECK(vbasis.size() == 8);
        vertex_stack.insert(vertex_stack.end(), vbasis.begin(), vbasis.end());

        std::vector<std::int64_t> ucoords(4, 1);
        ucoords[static_cast<std::size_t>(i)] = 0;
        auto ubasis = point_slab_kernel_basis(Point<Rat>::from_ints(ucoords, f), maps);
        CHECK(ubasis.size() == 8);
        unit_stack.insert(unit_stack.end(), ubasis.begin(), ubasis.end());
    }
    CHECK(rank(Matrix<Rat>::from_rows(vertex_stack)) == 32);
    CHECK(rank(Matrix<Rat>::from_rows(unit_stack)) == 32);

    std::vector<Vec<Rat>> joint = vertex_stack;
    joint.insert(joint.end(), unit_stack.begin(), unit_stack.end());
    CHECK(rank(Matrix<Rat>::from_rows(joint)) == 64);
}

TEST_CASE("completion flag is valid over every field and new only in characteristic three") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const FieldSpec f = FieldSpec::prime(p);
        const Flag<GFp> fl = completion_flag<GFp>(f);
        CHECK(point_on_line(fl.point, fl.line));
        CHECK(line_on_plane(fl.line, fl.plane));
    }
    const Flag<Rat> fl = completion_flag<Rat>(FieldSpec::rationals());
    CHECK(point_on_line(fl.point, fl.line));
    CHECK(line_on_plane(fl.line, fl.plane));
}

TEST_CASE("tensor cube acts factorwise and respects composition") {
    const FieldSpec f = FieldSpec::prime(3);
    std::mt19937_64 rng(5);

    CHECK(tensor_cube(Matrix<GFp>::identity(4, f)) == Matrix<GFp>::identity(96, f));

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix<GFp> m = testutil::random_invertible<GFp>(rng, 4, f);
        Vec<GFp> pa = testutil::random_vec<GFp>(rng, 4, f);
        Vec<GFp> pb = testutil::random_vec<GFp>(rng, 4, f);
        Vec<GFp> pc = testutil::random_vec<GFp>(rng, 4, f);
        Vec<GFp> pe = testutil::random_vec<GFp>(rng, 4, f);
        const Vec<GFp> t = wedge2(pb, pc);
        if (vec_is_zero(pa) || vec_is_zero(t) || vec_is_zero(pe)) continue;
        const Vec<GFp> simple = tensor3(pa, t, pe);
        const Vec<GFp> moved = tensor_cube(m).mul_vec(simple);
        const Vec<GFp> expected = tensor3(m.mul_vec(pa), exterior_square(m).mul_vec(t),
                                          inverse_transpose(m).mul_vec(pe));
        CHECK(moved == expected);
    }

    for (int trial = 0; trial < 5; ++trial) {
        const Matrix<GFp> a = testutil::random_invertible<GFp>(rng, 4, f);
        const Matrix<GFp> b = testutil::random_invertible<GFp>(rng, 4, f);
        CHECK(tensor_cube(a * b) == tensor_cube(a) * tensor_cube(b));
    }
}

TEST_CASE("two dualities compose to the expected collineation on the tensor space") {
    // over GF(2) the determinant factor is one, so equality is exact
    const FieldSpec f = FieldSpec::prime(2);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix<GFp> a = testutil::random_invertible<GFp>(rng, 4, f);
        const Matrix<GFp> b = testutil::random_invertible<GFp>(rng, 4, f);
        const Matrix<GFp> composed = tensor_cube_dual(a) * tensor_cube_dual(b);
        const Matrix<GFp> expected = tensor_cube(inverse_transpose(a) * b);
        CHECK(composed == expected);
    }

    // over GF(3) the two sides agree after canonical scaling
    const FieldSpec f3 = FieldSpec::prime(3);
    std::mt19937_64 rng3(29);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix<GFp> a = testutil::random_invertible<GFp>(rng3, 4, f3);
        const Matrix<GFp> b = testutil::random_invertible<GFp>(rng3, 4, f3);
        const Matrix<GFp> composed = tensor_cube_dual(a) * tensor_cube_dual(b);
        const Matrix<GFp> expected = tensor_cube(inverse_transpose(a) * b);
        CHECK(scale_canonical(composed) == scale_canonical(expected));
    }
}

TEST_CASE("extensions carry flag images and sort the kernels by kind") {
    for (std::uint32_t p : {2u, 3u}) {
        const FieldSpec f = FieldSpec::prime(p);
        const Space<GFp>& s = space_of(p);
        const VarietyModel<GFp>& v = variety_of(p);
        const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
        std::mt19937_64 rng(100 + p);

        for (int trial = 0; trial < 3; ++trial) {
            const Matrix<GFp> mk = random_invertible_over<GFp>(f, rng);
            const FlagMap<GFp> cmap = FlagMap<GFp>::from_collineation(s, Collineation<GFp>::from(mk));
            const Matrix<GFp> big = extend_to_collineation(v, cmap);
            for (int fl = 0; fl < 20; ++fl) {
                const Vec<GFp> moved = projective_canonical(big.mul_vec(v.image_of(fl)));
                CHECK(moved == v.image_of(cmap.apply(fl)));
            }
            const KernelAction act = kernel_action(maps, big);
            CHECK(act.i01_into_i01);
            CHECK(act.i12_into_i12);
            CHECK_FALSE(act.i01_into_i12);
            CHECK_FALSE(act.i12_into_i01);
        }

        for (int trial = 0; trial < 3; ++trial) {
            const Matrix<GFp> md = random_invertible_over<GFp>(f, rng);
            const FlagMap<GFp> dmap = FlagMap<GFp>::from_duality(s, Duality<GFp>::from(md));
            const Matrix<GFp> big = extend_to_collineation(v, dmap);
            for (int fl = 0; fl < 20; ++fl) {
                const Vec<GFp> moved = projective_canonical(big.mul_vec(v.image_of(fl)));
                CHECK(moved == v.image_of(dmap.apply(fl)));
            }
            const KernelAction act = kernel_action(maps, big);
            CHECK(act.i01_into_i12);
            CHECK(act.i12_into_i01);
            CHECK_FALSE(act.i01_into_i01);
            CHECK_FALSE(act.i12_into_i12);
        }
    }
}

TEST_CASE("a frozen duality extension moves a frozen flag image correctly") {
    const FieldSpec f = FieldSpec::prime(2);
    const Space<GFp>& s = space_of(2);
    const VarietyModel<GFp>& v = variety_of(2);

    const Duality<GFp> delta = Duality<GFp>::from(Matrix<GFp>::identity(4, f));
    const FlagMap<GFp> dmap = FlagMap<GFp>::from_duality(s, delta);
    const Matrix<GFp> big = extend_to_collineation(v, dmap);

    const Flag<GFp> fl = standard_flag<GFp>(f);
    const Flag<GFp> img = apply_duality(delta, fl);
    // the standard flag dualizes to (last vertex, opposite edge, first face)
    CHECK(img.point.coords == Point<GFp>::from_ints({0, 0, 0, 1}, f).coords);
    CHECK(img.line.pluecker == Line<GFp>::from_ints({0, 0, 1, 0}, {0, 0, 0, 1}, f).pluecker);
    CHECK(img.plane.coeffs == Plane<GFp>::from_ints({1, 0, 0, 0}, f).coeffs);
    CHECK(projective_canonical(big.mul_vec(embed_flag(fl))) == embed_flag(img));
}

TEST_CASE("uniqueness evidence on the span") {
    for (std::uint32_t p : {2u, 3u}) {
        const UniquenessReport rep = verify_uniqueness_on_span(variety_of(p), flags_of(p));
        CHECK(rep.span_dim == 64);
        CHECK(rep.combinations_nondegenerate);
        CHECK(rep.graph_connected);
        CHECK(rep.pass());
    }
}

TEST_CASE("extensions are free off the span") {
    // a rank-one perturbation by a span annihilator fixes every flag
    // image while changing the matrix
    const FieldSpec f = FieldSpec::prime(2);
    const VarietyModel<GFp>& v = variety_of(2);

    SpanBasis<GFp> span(kDim96, f);
    for (const auto& img : v.images()) span.insert(img);
    REQUIRE(span.dim() == 64);
    const auto ann = kernel_basis(Matrix<GFp>::from_rows(span.rows()));
    REQUIRE(ann.size() == 32);

    Matrix<GFp> perturbed = Matrix<GFp>::identity(96, f);
    const Vec<GFp>& u = v.image_of(0);
    const Vec<GFp>& g = ann[0];
    for (int r = 0; r < 96; ++r)
        for (int c = 0; c < 96; ++c)
            perturbed.at(r, c) = perturbed.at(r, c) + u[static_cast<std::size_t>(r)] * g[static_cast<std::size_t>(c)];
    REQUIRE_FALSE(perturbed == Matrix<GFp>::identity(96, f));

    for (const auto& img : v.images()) CHECK(perturbed.mul_vec(img) == img);
}
