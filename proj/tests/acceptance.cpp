// Acceptance gate: every criterion prints exactly one PASS/FAIL line.
// All arithmetic is exact, so every expected value below is pinned as an
// integer constant and compared with operator==.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "flagvar/flagvariety.hpp"

using namespace flagvar;

namespace {

// pinned expectations, exact equality throughout
constexpr std::int64_t kKernelDim = 80;
constexpr std::int64_t kIntersectionDim = 64;
constexpr std::int64_t kPointFlagSpan = 8;
constexpr std::int64_t kVertexSpan = 32;
constexpr std::int64_t kUnitSpan = 32;
constexpr std::int64_t kJointSpan = 64;
constexpr std::int64_t kJointSpanChar3 = 63;
constexpr std::int64_t kVarietySpan = 64;
constexpr std::int64_t kTriplesGf2 = 15 * 35 * 15;
constexpr std::int64_t kSampledTriples = 10000;
constexpr std::int64_t kSegreTriplesGf2 = 15 * 63 * 15;
constexpr std::int64_t kFlagsGf2 = 315;
constexpr std::int64_t kFlagsGf3 = 2080;
constexpr std::int64_t kPencilsGf2 = 315;
constexpr std::int64_t kPencilsGf3 = 1560;
constexpr std::int64_t kRelatedPairsGf2 = 945;
constexpr std::int64_t kUnrelatedPairsGf2 = 48510;
constexpr std::int64_t kLinesGf2 = 35;
constexpr std::int64_t kLinesGf3 = 130;
constexpr std::int64_t kAutomorphismCount = 40320;  // 2 * |PGL(4,2)| = 2 * 20160
constexpr std::int64_t kRoundTripTrials = 100;
constexpr std::int64_t kExtendTrials = 20;
constexpr std::int64_t kMaxPathSteps = 12;

int failures = 0;

void verdict(int idx, const std::string& what, bool ok, double secs) {
    std::cout << (ok ? "PASS" : "FAIL") << " [" << std::setw(2) << idx << "] " << what << " ("
              << std::fixed << std::setprecision(2) << secs << " s)\n"
              << std::flush;
    if (!ok) ++failures;
}

template <class F>
void criterion(int idx, const std::string& what, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cout << "     [" << std::setw(2) << idx << "] threw: " << e.what() << "\n";
        ok = false;
    }
    const auto t1 = std::chrono::steady_clock::now();
    verdict(idx, what, ok, std::chrono::duration<double>(t1 - t0).count());
}

const Space<GFp>& space_of(std::uint32_t p) {
    static const Space<GFp> s2{FieldSpec::prime(2)};
    static const Space<GFp> s3{FieldSpec::prime(3)};
    static const Space<GFp> s5{FieldSpec::prime(5)};
    switch (p) {
        case 2: return s2;
        case 3: return s3;
        default: return s5;
    }
}

const FlagSpaceModel<GFp>& model_of(std::uint32_t p) {
    static const FlagSpaceModel<GFp> m2{space_of(2)};
    static const FlagSpaceModel<GFp> m3{space_of(3)};
    static const FlagSpaceModel<GFp> m5{space_of(5)};
    switch (p) {
        case 2: return m2;
        case 3: return m3;
        default: return m5;
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

template <class K>
bool kernel_dims_hold(const FieldSpec& f) {
    const IncidenceMaps<K> maps = build_incidence_maps<K>(f);
    return static_cast<std::int64_t>(maps.ker01.size()) == kKernelDim &&
           static_cast<std::int64_t>(maps.ker12.size()) == kKernelDim &&
           static_cast<std::int64_t>(maps.intersection.size()) == kIntersectionDim;
}

template <class K>
bool span_dims_hold(const FieldSpec& f) {
    const SpanReport rep = span_report<K>(f);
    const bool char3 = f.finite() && f.characteristic == 3;
    return rep.dim_point_flags == kPointFlagSpan && rep.dim_vertex_span == kVertexSpan &&
           rep.dim_unit_span == kUnitSpan &&
           rep.dim_joint_span == (char3 ? kJointSpanChar3 : kJointSpan) &&
           rep.special_flag_outside == char3 && rep.dim_variety_span == kVarietySpan;
}

bool round_trips_hold(std::uint32_t p) {
    const FieldSpec f = FieldSpec::prime(p);
    const Space<GFp>& s = space_of(p);
    const FlagSpaceModel<GFp>& model = model_of(p);
    std::mt19937_64 rng(1000 * p + 8);
    for (int t = 0; t < kRoundTripTrials; ++t) {
        const Collineation<GFp> k = Collineation<GFp>::from(random_invertible_over<GFp>(f, rng));
        const FlagMap<GFp> map = FlagMap<GFp>::from_collineation(s, k);
        if (!is_plucker_transformation(model, map)) return false;
        const Decomposition<GFp> dec = decompose(map);
        if (dec.kind != TransformKind::collineation || !(dec.matrix == k.matrix)) return false;
    }
    for (int t = 0; t < kRoundTripTrials; ++t) {
        const Duality<GFp> d = Duality<GFp>::from(random_invertible_over<GFp>(f, rng));
        const FlagMap<GFp> map = FlagMap<GFp>::from_duality(s, d);
        if (!is_plucker_transformation(model, map)) return false;
        const Decomposition<GFp> dec = decompose(map);
        if (dec.kind != TransformKind::duality || !(dec.matrix == d.matrix)) return false;
    }
    return true;
}

bool extensions_hold(std::uint32_t p) {
    const FieldSpec f = FieldSpec::prime(p);
    const Space<GFp>& s = space_of(p);
    const VarietyModel<GFp>& v = variety_of(p);
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
    std::mt19937_64 rng(1000 * p + 10);

    for (int t = 0; t < kExtendTrials; ++t) {
        const Collineation<GFp> k = Collineation<GFp>::from(random_invertible_over<GFp>(f, rng));
        // extend_to_collineation verifies that every flag image lands on
        // the image of the mapped flag, and throws otherwise
        const Matrix<GFp> big =
            extend_to_collineation(v, FlagMap<GFp>::from_collineation(s, k));
        const KernelAction act = kernel_action(maps, big);
        if (!act.i01_into_i01 || !act.i12_into_i12 || act.i01_into_i12 || act.i12_into_i01)
            return false;
    }
    for (int t = 0; t < kExtendTrials; ++t) {
        const Duality<GFp> d = Duality<GFp>::from(random_invertible_over<GFp>(f, rng));
        const Matrix<GFp> big = extend_to_collineation(v, FlagMap<GFp>::from_duality(s, d));
        const KernelAction act = kernel_action(maps, big);
        // a duality extension exchanges the two kernels
        if (!act.i01_into_i12 || !act.i12_into_i01 || act.i01_into_i01 || act.i12_into_i12)
            return false;
    }

    // uniqueness on the span: scalars propagate along pencils of the
    // connected relatedness graph, and the images span 64 dimensions
    const UniquenessReport uniq = verify_uniqueness_on_span(v, model_of(p));
    if (!uniq.pass()) return false;

    // and only on the span: a rank-one perturbation by a span annihilator
    // is a different matrix acting identically on every flag image
    SpanBasis<GFp> span(kDim96, f);
    for (const auto& img : v.images()) span.insert(img);
    const auto ann = kernel_basis(Matrix<GFp>::from_rows(span.rows()));
    if (span.dim() != kVarietySpan || ann.size() != 96 - kVarietySpan) return false;
    Matrix<GFp> perturbed = Matrix<GFp>::identity(96, f);
    for (int r = 0; r < 96; ++r)
        for (int c = 0; c < 96; ++c)
            perturbed.at(r, c) =
                perturbed.at(r, c) +
                v.image_of(0)[static_cast<std::size_t>(r)] * ann[0][static_cast<std::size_t>(c)];
    if (perturbed == Matrix<GFp>::identity(96, f)) return false;
    for (const auto& img : v.images())
        if (!(perturbed.mul_vec(img) == img)) return false;
    return true;
}

}  // namespace

int main() {
    criterion(1, "kernel dimensions 80/80/64 over GF(2), GF(3), GF(5) and Q", [] {
        return kernel_dims_hold<GFp>(FieldSpec::prime(2)) &&
               kernel_dims_hold<GFp>(FieldSpec::prime(3)) &&
               kernel_dims_hold<GFp>(FieldSpec::prime(5)) &&
               kernel_dims_hold<Rat>(FieldSpec::rationals());
    });

    criterion(2, "span dimensions 8/32/32/64 (63 in characteristic 3) and variety span 64", [] {
        return span_dims_hold<GFp>(FieldSpec::prime(2)) &&
               span_dims_hold<GFp>(FieldSpec::prime(3)) &&
               span_dims_hold<GFp>(FieldSpec::prime(5)) &&
               span_dims_hold<Rat>(FieldSpec::rationals());
    });

    criterion(3, "kernel membership reads as incidence: GF(2) exhaustive, GF(3) sampled", [] {
        const IncidenceReadingReport full = verify_incidence_readings(
            space_of(2), build_incidence_maps<GFp>(FieldSpec::prime(2)));
        const IncidenceReadingReport sampled = verify_incidence_readings_sampled(
            space_of(3), build_incidence_maps<GFp>(FieldSpec::prime(3)), 0,
            static_cast<int>(kSampledTriples));
        return full.triples_checked == kTriplesGf2 && full.pass() &&
               sampled.triples_checked == kSampledTriples && sampled.pass();
    });

    criterion(4, "of 14175 Segre triples over GF(2), exactly the 315 flag images lie in both kernels", [] {
        const VarietyCensusReport rep =
            verify_variety_census(variety_of(2), build_incidence_maps<GFp>(FieldSpec::prime(2)));
        return rep.segre_points == kSegreTriplesGf2 && rep.inside_both == kFlagsGf2 &&
               rep.flag_images == kFlagsGf2 && rep.pass();
    });

    criterion(5, "pencil images are the lines of the variety over GF(2)", [] {
        const VarietyLineReport rep = verify_variety_lines(variety_of(2), model_of(2));
        return rep.pencil_lines == kPencilsGf2 && rep.related_pairs == kRelatedPairsGf2 &&
               rep.unrelated_pairs == kUnrelatedPairsGf2 && rep.pass();
    });

    criterion(6, "maximal cliques are exactly the pencils over GF(2) and GF(3)", [] {
        const MaxCliqueReport r2 = verify_pencils_are_max_cliques(model_of(2));
        const MaxCliqueReport r3 = verify_pencils_are_max_cliques(model_of(3));
        const std::int64_t total2 = r2.pencils_by_type[0] + r2.pencils_by_type[1] + r2.pencils_by_type[2];
        const std::int64_t total3 = r3.pencils_by_type[0] + r3.pencils_by_type[1] + r3.pencils_by_type[2];
        return total2 == kPencilsGf2 && r2.pencil_size == 3 && r2.pass() &&
               total3 == kPencilsGf3 && r3.pencil_size == 4 && r3.pass();
    });

    criterion(7, "nets on every line over GF(2) and GF(3); closed 4-paths avoid type-1 pencils", [] {
        std::int64_t lines2 = 0, lines3 = 0;
        for (int g = 0; g < static_cast<int>(space_of(2).lines().size()); ++g) {
            if (!verify_two_net(model_of(2), g).pass()) return false;
            ++lines2;
        }
        for (int g = 0; g < static_cast<int>(space_of(3).lines().size()); ++g) {
            if (!verify_two_net(model_of(3), g).pass()) return false;
            ++lines3;
        }
        const FourPathReport paths = verify_closed_4path(model_of(2));
        return lines2 == kLinesGf2 && lines3 == kLinesGf3 && paths.pass() &&
               paths.edge_types_seen[1] == 0 && paths.cycles_checked > 0;
    });

    criterion(8, "100 collineation and 100 duality round trips over GF(2), GF(3), GF(5)", [] {
        return round_trips_hold(2) && round_trips_hold(3) && round_trips_hold(5);
    });

    criterion(9, "the flag-pencil incidence graph over GF(2) has exactly 40320 automorphisms", [] {
        const AutomorphismCount rep = count_graph_automorphisms(model_of(2));
        return rep.count == kAutomorphismCount;
    });

    criterion(10, "20+20 extensions over GF(2) and GF(3) carry flag images, sort the kernels, unique on the span", [] {
        return extensions_hold(2) && extensions_hold(3);
    });

    criterion(11, "connecting paths of at most 12 validated steps for all flag pairs over GF(2)", [] {
        const Space<GFp>& s = space_of(2);
        const int n = static_cast<int>(s.flags().size());
        std::vector<Flag<GFp>> fl;
        fl.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) fl.push_back(s.flag_at(i));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const std::vector<Flag<GFp>> walk = connecting_path(fl[a], fl[b]);
                if (!(walk.front() == fl[a]) || !(walk.back() == fl[b])) return false;
                if (static_cast<std::int64_t>(walk.size()) - 1 > kMaxPathSteps) return false;
                for (std::size_t i = 0; i + 1 < walk.size(); ++i)
                    if (!related(walk[i], walk[i + 1]) || walk[i] == walk[i + 1]) return false;
            }
        for (int d : bfs_distances(model_of(2), 0))
            if (d < 0) return false;
        return true;
    });

    criterion(12, "negative controls: scatter map, non-decomposable bivector, non-incident triple", [] {
        const FieldSpec f = FieldSpec::prime(2);
        const Space<GFp>& s = space_of(2);

        // transposing two flags that share no component is no Plucker map
        std::vector<int> images(s.flags().size());
        for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<int>(i);
        const auto& ref = s.flags()[0];
        int other = -1;
        for (std::size_t i = 1; i < s.flags().size(); ++i)
            if (s.flags()[i].point != ref.point && s.flags()[i].line != ref.line &&
                s.flags()[i].plane != ref.plane) {
                other = static_cast<int>(i);
                break;
            }
        if (other < 0) return false;
        std::swap(images[0], images[static_cast<std::size_t>(other)]);
        if (is_plucker_transformation(model_of(2), FlagMap<GFp>(s, images))) return false;

        // a non-decomposable bivector never passes the membership tests
        Vec<GFp> t = zero_vec<GFp>(6, f);
        t[0] = GFp::one(f);  // e0 ^ e1
        t[5] = GFp::one(f);  // plus e2 ^ e3
        if (is_decomposable(t)) return false;
        const Vec<GFp> p = Point<GFp>::from_ints({1, 0, 0, 0}, f).coords;
        const Vec<GFp> e = Plane<GFp>::from_ints({1, 0, 0, 0}, f).coeffs;
        if (membership_i01(p, t, e) || membership_i12(p, t, e)) return false;
        if (variety_of(2).preimage(tensor3(p, t, e)).has_value()) return false;

        // a non-incident triple is rejected as a flag
        try {
            make_flag(Point<GFp>::from_ints({1, 0, 0, 0}, f),
                      Line<GFp>::from_ints({0, 1, 0, 0}, {0, 0, 1, 0}, f),
                      Plane<GFp>::from_ints({0, 0, 0, 1}, f));
            return false;
        } catch (const IncidenceError&) {
        }
        try {
            make_flag(Point<GFp>::from_ints({0, 1, 0, 0}, f),
                      Line<GFp>::from_ints({0, 1, 0, 0}, {0, 0, 1, 0}, f),
                      Plane<GFp>::from_ints({0, 0, 1, 0}, f));
            return false;
        } catch (const IncidenceError&) {
        }
        return true;
    });

    std::cout << (failures == 0 ? "all criteria hold" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
