#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace flagvar {

// ---------------------------------------------------------------------------
// invocation options and report plumbing
// ---------------------------------------------------------------------------

struct RunOptions {
    std::string command;
    std::string field = "2";
    std::uint64_t seed = 0;
    int trials = 100;
    bool text = false;
    std::string in_path;     // flag map input for decompose
    std::string out_path;    // artifact destination for export
    std::string what;        // artifact selector for export
    std::string random_kind; // generator kind for decompose --random
    int from = -1;           // path endpoints as flag indices
    int to = -1;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Usage-class problem: unknown command, bad flag value, or a size guard
/// rejecting the requested field.
struct UsageError : Error {
    using Error::Error;
};

namespace cli_detail {

class ReportBuilder {
  public:
    ReportBuilder(std::string command, std::string field)
        : start_(std::chrono::steady_clock::now()) {
        report_["claims"] = Json::array();
        report_["command"] = std::move(command);
        report_["counts"] = Json::object();
        report_["field"] = std::move(field);
        report_["violations"] = Json::array();
    }

    void claim(const std::string& name, std::int64_t expected, std::int64_t computed) {
        Json row;
        row["computed"] = computed;
        row["expected"] = expected;
        row["name"] = name;
        row["pass"] = (expected == computed);
        report_["claims"].push_back(std::move(row));
    }

    void claim(const std::string& name, bool expected, bool computed) {
        claim(name, static_cast<std::int64_t>(expected), static_cast<std::int64_t>(computed));
    }

    void count(const std::string& name, std::int64_t value) { report_["counts"][name] = value; }
    void count(const std::string& name, const Json& value) { report_["counts"][name] = value; }

    void violations(const ViolationLog& log) {
        for (const Violation& v : log.recorded) {
            Json row;
            row["flags"] = v.flags;
            row["what"] = v.what;
            report_["violations"].push_back(std::move(row));
        }
        violation_total_ += log.total;
    }

    void extra(const std::string& key, const Json& value) { report_[key] = value; }

    /// Finalizes pass/elapsed and renders; returns the exit status.
    int emit(std::ostream& os, bool text) {
        bool pass = violation_total_ == 0;
        for (const Json& row : report_["claims"])
            if (!row["pass"].get<bool>()) pass = false;
        report_["counts"]["violations_total"] = violation_total_;
        report_["pass"] = pass;
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        report_["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        if (text)
            render_text(os);
        else
            os << report_.dump(2) << "\n";
        return pass ? kExitPass : kExitFail;
    }

  private:
    void render_text(std::ostream& os) const {
        os << "command: " << report_["command"].get<std::string>() << "\n";
        os << "field: " << report_["field"].get<std::string>() << "\n";
        for (const Json& row : report_["claims"])
            os << "claim " << row["name"].get<std::string>() << ": expected "
               << row["expected"] << ", computed " << row["computed"] << " ["
               << (row["pass"].get<bool>() ? "pass" : "FAIL") << "]\n";
        for (auto it = report_["counts"].begin(); it != report_["counts"].end(); ++it)
            os << "count " << it.key() << ": " << it.value() << "\n";
        for (const Json& row : report_["violations"])
            os << "violation: " << row["what"].get<std::string>() << "\n";
        os << "elapsed_ms: " << report_["elapsed_ms"] << "\n";
        os << "pass: " << (report_["pass"].get<bool>() ? "true" : "false") << "\n";
    }

    Json report_;
    std::int64_t violation_total_ = 0;
    std::chrono::steady_clock::time_point start_;
};

inline FieldSpec parse_field(const std::string& tag) {
    try {
        FieldSpec f = FieldSpec::parse(tag);
        if (f.finite()) {
            // reject non-prime characteristics up front
            for (std::uint32_t d = 2; d * d <= f.characteristic; ++d)
                if (f.characteristic % d == 0)
                    throw UsageError("field characteristic must be prime");
            if (f.characteristic < 2) throw UsageError("field characteristic must be prime");
        }
        return f;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

inline void require_finite(const FieldSpec& f, const std::string& command) {
    if (!f.finite())
        throw UsageError(command + " enumerates the space and needs a finite field");
}

inline void guard_characteristic(const FieldSpec& f, std::uint32_t max_p,
                                 const std::string& command) {
    require_finite(f, command);
    if (f.characteristic > max_p)
        throw UsageError(command + " is limited to characteristic at most " +
                         std::to_string(max_p));
}

// ---------------------------------------------------------------------------
// the individual commands (finite fields use K = GFp)
// ---------------------------------------------------------------------------

inline int run_stats(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 7, "stats");
    ReportBuilder rep("stats", f.tag());
    const Space<GFp> s(f);
    const FlagSpaceModel<GFp> model(s);
    const std::int64_t q = f.characteristic;
    const std::int64_t points = q * q * q + q * q + q + 1;
    const std::int64_t lines = (q * q + 1) * (q * q + q + 1);
    const std::int64_t flags = points * (q * q + q + 1) * (q + 1);
    rep.claim("points", points, static_cast<std::int64_t>(s.points().size()));
    rep.claim("lines", lines, static_cast<std::int64_t>(s.lines().size()));
    rep.claim("planes", points, static_cast<std::int64_t>(s.planes().size()));
    rep.claim("flags", flags, static_cast<std::int64_t>(s.flags().size()));
    rep.claim("pencils", 3 * flags / (q + 1), model.pencil_total());
    rep.count("flags", static_cast<std::int64_t>(s.flags().size()));
    rep.count("lines", static_cast<std::int64_t>(s.lines().size()));
    rep.count("pencils", model.pencil_total());
    rep.count("pencils_type0", model.pencil_count_of_type(0));
    rep.count("pencils_type1", model.pencil_count_of_type(1));
    rep.count("pencils_type2", model.pencil_count_of_type(2));
    rep.count("planes", static_cast<std::int64_t>(s.planes().size()));
    rep.count("points", static_cast<std::int64_t>(s.points().size()));
    return rep.emit(os, opt.text);
}

inline int run_verify_pencils(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 3, "verify-pencils");
    ReportBuilder rep("verify-pencils", f.tag());
    const Space<GFp> s(f);
    const FlagSpaceModel<GFp> model(s);
    const MaxCliqueReport r = verify_pencils_are_max_cliques(model);
    const std::int64_t q = f.characteristic;
    rep.claim("pencil_size", q + 1, r.pencil_size);
    rep.claim("pencils", model.pencil_total(),
              r.pencils_by_type[0] + r.pencils_by_type[1] + r.pencils_by_type[2]);
    rep.count("adjacent_pairs_checked", r.adjacent_pairs_checked);
    rep.count("pencils_type0", r.pencils_by_type[0]);
    rep.count("pencils_type1", r.pencils_by_type[1]);
    rep.count("pencils_type2", r.pencils_by_type[2]);
    rep.violations(r.log);
    return rep.emit(os, opt.text);
}

inline int run_verify_net(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 3, "verify-net");
    ReportBuilder rep("verify-net", f.tag());
    const Space<GFp> s(f);
    const FlagSpaceModel<GFp> model(s);
    std::int64_t lines_checked = 0;
    std::int64_t flags_covered = 0;
    ViolationLog all;
    for (int g = 0; g < static_cast<int>(s.lines().size()); ++g) {
        const TwoNetReport r = verify_two_net(model, g);
        ++lines_checked;
        flags_covered += r.flags_on_line;
        for (const Violation& v : r.log.recorded) all.add(v.what, v.flags);
        all.total += r.log.total - static_cast<std::int64_t>(r.log.recorded.size());
    }
    const std::int64_t q = f.characteristic;
    rep.claim("lines_checked", static_cast<std::int64_t>(s.lines().size()), lines_checked);
    rep.claim("flags_per_line", (q + 1) * (q + 1) * static_cast<std::int64_t>(s.lines().size()),
              flags_covered);
    rep.count("lines_checked", lines_checked);
    rep.violations(all);
    return rep.emit(os, opt.text);
}

inline int run_verify_4path(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 3, "verify-4path");
    ReportBuilder rep("verify-4path", f.tag());
    const Space<GFp> s(f);
    const FlagSpaceModel<GFp> model(s);
    const FourPathReport r = verify_closed_4path(model);
    rep.claim("type1_edges", static_cast<std::int64_t>(0), r.edge_types_seen[1]);
    rep.claim("edge_total", 4 * r.cycles_checked,
              r.edge_types_seen[0] + r.edge_types_seen[1] + r.edge_types_seen[2]);
    rep.count("cycles_checked", r.cycles_checked);
    rep.count("edges_type0", r.edge_types_seen[0]);
    rep.count("edges_type2", r.edge_types_seen[2]);
    rep.violations(r.log);
    return rep.emit(os, opt.text);
}

inline int run_verify_incidence(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 5, "verify-incidence");
    ReportBuilder rep("verify-incidence", f.tag());
    const Space<GFp> s(f);
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
    IncidenceReadingReport r;
    if (f.characteristic == 2) {
        r = verify_incidence_readings(s, maps);
        rep.claim("triples_checked",
                  static_cast<std::int64_t>(s.points().size()) *
                      static_cast<std::int64_t>(s.lines().size()) *
                      static_cast<std::int64_t>(s.planes().size()),
                  r.triples_checked);
        rep.count("mode", Json("exhaustive"));
    } else {
        r = verify_incidence_readings_sampled(s, maps, opt.seed, opt.trials);
        rep.claim("triples_checked", static_cast<std::int64_t>(opt.trials), r.triples_checked);
        rep.count("mode", Json("sampled"));
        rep.count("seed", static_cast<std::int64_t>(opt.seed));
    }
    rep.count("triples_checked", r.triples_checked);
    rep.violations(r.log);
    return rep.emit(os, opt.text);
}

inline int run_verify_pencil_lines(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 3, "verify-pencil-lines");
    ReportBuilder rep("verify-pencil-lines", f.tag());
    const Space<GFp> s(f);
    const VarietyModel<GFp> variety(s);
    const FlagSpaceModel<GFp> model(s);
    const VarietyLineReport r = verify_variety_lines(variety, model);
    rep.claim("pencil_lines", model.pencil_total(), r.pencil_lines);
    const std::int64_t n = model.flag_total();
    rep.claim("pairs", n * (n - 1) / 2, r.related_pairs + r.unrelated_pairs);
    rep.count("pencil_lines", r.pencil_lines);
    rep.count("related_pairs", r.related_pairs);
    rep.count("unrelated_pairs", r.unrelated_pairs);
    rep.violations(r.log);
    return rep.emit(os, opt.text);
}

inline int run_verify_variety(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 2, "verify-variety");
    ReportBuilder rep("verify-variety", f.tag());
    const Space<GFp> s(f);
    const VarietyModel<GFp> variety(s);
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
    const VarietyCensusReport r = verify_variety_census(variety, maps);
    rep.claim("segre_points", 15 * 63 * 15, r.segre_points);
    rep.claim("inside_both", r.flag_images, r.inside_both);
    rep.count("flag_images", r.flag_images);
    rep.count("inside_both", r.inside_both);
    rep.count("segre_points", r.segre_points);
    rep.violations(r.log);
    return rep.emit(os, opt.text);
}

template <class K>
int run_dims(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    ReportBuilder rep("dims", f.tag());
    const IncidenceMaps<K> maps = build_incidence_maps<K>(f);
    rep.claim("ker_i01", static_cast<std::int64_t>(80),
              static_cast<std::int64_t>(maps.ker01.size()));
    rep.claim("ker_i12", static_cast<std::int64_t>(80),
              static_cast<std::int64_t>(maps.ker12.size()));
    rep.claim("intersection", static_cast<std::int64_t>(64),
              static_cast<std::int64_t>(maps.intersection.size()));
    rep.count("intersection", static_cast<std::int64_t>(maps.intersection.size()));
    rep.count("ker_i01", static_cast<std::int64_t>(maps.ker01.size()));
    rep.count("ker_i12", static_cast<std::int64_t>(maps.ker12.size()));
    return rep.emit(os, opt.text);
}

template <class K>
int run_span_report(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    if (f.finite() && f.characteristic > 5)
        throw UsageError("span-report is limited to characteristic at most 5");
    ReportBuilder rep("span-report", f.tag());
    const SpanReport r = span_report<K>(f);
    const bool char3 = f.finite() && f.characteristic == 3;
    rep.claim("point_flag_span", static_cast<std::int64_t>(8),
              static_cast<std::int64_t>(r.dim_point_flags));
    rep.claim("wp", static_cast<std::int64_t>(32), static_cast<std::int64_t>(r.dim_vertex_span));
    rep.claim("wu", static_cast<std::int64_t>(32), static_cast<std::int64_t>(r.dim_unit_span));
    rep.claim("wp_plus_wu", static_cast<std::int64_t>(char3 ? 63 : 64),
              static_cast<std::int64_t>(r.dim_joint_span));
    rep.claim("variety_span", static_cast<std::int64_t>(64),
              static_cast<std::int64_t>(r.dim_variety_span));
    rep.claim("special_flag_outside", char3, r.special_flag_outside);
    rep.count("point_flag_span", r.dim_point_flags);
    rep.count("special_flag_outside", Json(r.special_flag_outside));
    rep.count("variety_span", r.dim_variety_span);
    rep.count("wp", r.dim_vertex_span);
    rep.count("wp_plus_wu", r.dim_joint_span);
    rep.count("wu", r.dim_unit_span);
    return rep.emit(os, opt.text);
}

inline int run_decompose(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 5, "decompose");
    const Space<GFp> s(f);
    std::optional<FlagMap<GFp>> map;
    if (!opt.in_path.empty()) {
        std::ifstream in(opt.in_path);
        if (!in) throw UsageError("cannot open flag map file '" + opt.in_path + "'");
        Json j = Json::parse(in, nullptr, true);
        map.emplace(flagmap_from_json<GFp>(j, s));
    } else if (opt.random_kind == "collineation" || opt.random_kind == "duality") {
        std::mt19937_64 rng(opt.seed);
        const Matrix<GFp> m = random_invertible_over<GFp>(f, rng);
        if (opt.random_kind == "collineation")
            map.emplace(FlagMap<GFp>::from_collineation(s, Collineation<GFp>::from(m)));
        else
            map.emplace(FlagMap<GFp>::from_duality(s, Duality<GFp>::from(m)));
    } else {
        throw UsageError("decompose needs --in FILE or --random collineation|duality");
    }
    const Decomposition<GFp> dec = decompose(*map);
    Json out;
    out["field"] = f.tag();
    out["kind"] = dec.kind == TransformKind::collineation ? "collineation" : "duality";
    out["matrix"] = matrix_to_json(dec.matrix);
    os << out.dump(2) << "\n";
    return kExitPass;
}

inline int run_extend(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 3, "extend");
    ReportBuilder rep("extend", f.tag());
    const Space<GFp> s(f);
    const VarietyModel<GFp> variety(s);
    const IncidenceMaps<GFp> maps = build_incidence_maps<GFp>(f);
    std::mt19937_64 rng(opt.seed);
    std::int64_t collineations = 0, dualities = 0, kernel_sorted = 0;
    for (int t = 0; t < opt.trials; ++t) {
        const Matrix<GFp> m = random_invertible_over<GFp>(f, rng);
        const bool dual = (t % 2) == 1;
        FlagMap<GFp> map = dual ? FlagMap<GFp>::from_duality(s, Duality<GFp>::from(m))
                                : FlagMap<GFp>::from_collineation(s, Collineation<GFp>::from(m));
        const Matrix<GFp> big = extend_to_collineation(variety, map);
        const KernelAction act = kernel_action(maps, big);
        const bool ok = dual ? (act.i01_into_i12 && act.i12_into_i01 && !act.i01_into_i01 &&
                                !act.i12_into_i12)
                             : (act.i01_into_i01 && act.i12_into_i12 && !act.i01_into_i12 &&
                                !act.i12_into_i01);
        if (ok) ++kernel_sorted;
        (dual ? dualities : collineations) += 1;
    }
    const FlagSpaceModel<GFp> model(s);
    const UniquenessReport uniq = verify_uniqueness_on_span(variety, model);
    rep.claim("kernel_sorted", static_cast<std::int64_t>(opt.trials), kernel_sorted);
    rep.claim("span_dim", static_cast<std::int64_t>(64),
              static_cast<std::int64_t>(uniq.span_dim));
    rep.claim("unique_on_span", true, uniq.pass());
    rep.count("collineations", collineations);
    rep.count("dualities", dualities);
    rep.count("seed", static_cast<std::int64_t>(opt.seed));
    return rep.emit(os, opt.text);
}

inline int run_autcount(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 2, "autcount");
    ReportBuilder rep("autcount", f.tag());
    const Space<GFp> s(f);
    const FlagSpaceModel<GFp> model(s);
    const AutomorphismCount r = count_graph_automorphisms(model);
    rep.claim("count", static_cast<std::int64_t>(40320), r.count);
    rep.count("count", r.count);
    rep.count("sampled", static_cast<std::int64_t>(r.sampled.size()));
    return rep.emit(os, opt.text);
}

inline int run_path(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    guard_characteristic(f, 5, "path");
    ReportBuilder rep("path", f.tag());
    const Space<GFp> s(f);
    const int total = static_cast<int>(s.flags().size());
    int from = opt.from, to = opt.to;
    if (from < 0 || to < 0) {
        std::mt19937_64 rng(opt.seed);
        from = static_cast<int>(rng() % static_cast<std::uint64_t>(total));
        to = static_cast<int>(rng() % static_cast<std::uint64_t>(total));
    }
    if (from >= total || to >= total)
        throw UsageError("flag index out of range, the space has " + std::to_string(total) +
                         " flags");
    const Flag<GFp> a = s.flag_at(from);
    const Flag<GFp> b = s.flag_at(to);
    const std::vector<Flag<GFp>> walk = connecting_path(a, b);
    bool steps_ok = true;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        if (!related(walk[i], walk[i + 1]) || walk[i] == walk[i + 1]) steps_ok = false;
    rep.claim("endpoints_match", true, walk.front() == a && walk.back() == b);
    rep.claim("steps_valid", true, steps_ok);
    rep.claim("steps_at_most_12", true, walk.size() <= 13);
    rep.count("from", from);
    rep.count("steps", static_cast<std::int64_t>(walk.size()) - 1);
    rep.count("to", to);
    Json flags = Json::array();
    for (const Flag<GFp>& fl : walk) flags.push_back(flag_to_json(fl));
    rep.extra("flags", flags);
    return rep.emit(os, opt.text);
}

template <class K>
int run_export(const RunOptions& opt, const FieldSpec& f, std::ostream& os) {
    std::ostringstream artifact;
    if (opt.what == "i01" || opt.what == "i12") {
        const IncidenceMaps<K> maps = build_incidence_maps<K>(f);
        write_matrix_text(artifact, opt.what == "i01" ? maps.i01 : maps.i12);
    } else if (opt.what == "ker01" || opt.what == "ker12" || opt.what == "intersection") {
        const IncidenceMaps<K> maps = build_incidence_maps<K>(f);
        const auto& rows = opt.what == "ker01"   ? maps.ker01
                           : opt.what == "ker12" ? maps.ker12
                                                 : maps.intersection;
        write_matrix_text(artifact, rows, f, kDim96);
    } else if (opt.what == "images") {
        guard_characteristic(f, 3, "export images");
        if constexpr (std::is_same_v<K, GFp>) {
            const Space<GFp> s(f);
            const VarietyModel<GFp> variety(s);
            Matrix<GFp> stacked(kDim96, static_cast<int>(variety.images().size()), f);
            for (int c = 0; c < stacked.cols(); ++c)
                for (int r = 0; r < kDim96; ++r)
                    stacked.at(r, c) = variety.image_of(c)[static_cast<std::size_t>(r)];
            write_matrix_text(artifact, stacked);
        }
    } else if (opt.what == "char3") {
        if (f.finite() && f.characteristic > 5)
            throw UsageError("export char3 is limited to characteristic at most 5");
        const SpanReport r = span_report<K>(f);
        Json j;
        j["field"] = r.field;
        j["point_flag_span"] = r.dim_point_flags;
        j["special_flag_outside"] = r.special_flag_outside;
        j["variety_span"] = r.dim_variety_span;
        j["wp"] = r.dim_vertex_span;
        j["wp_plus_wu"] = r.dim_joint_span;
        j["wu"] = r.dim_unit_span;
        artifact << j.dump(2) << "\n";
    } else {
        throw UsageError(
            "export selects --what i01|i12|ker01|ker12|intersection|images|char3");
    }
    if (opt.out_path.empty()) {
        os << artifact.str();
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw UsageError("cannot open output file '" + opt.out_path + "'");
        out << artifact.str();
        ReportBuilder rep("export", f.tag());
        rep.count("bytes", static_cast<std::int64_t>(artifact.str().size()));
        rep.count("what", Json(opt.what));
        return rep.emit(os, opt.text);
    }
    return kExitPass;
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "stats",        "verify-pencils", "verify-net",          "verify-4path",
        "verify-incidence", "verify-pencil-lines", "verify-variety", "dims",
        "span-report",  "decompose",      "extend",              "autcount",
        "path",         "export"};
    return names;
}

/// Runs one command against the chosen field and writes the report to the
/// stream; returns the process exit status.
inline int run_command(const RunOptions& opt, std::ostream& os) {
    try {
        const FieldSpec f = cli_detail::parse_field(opt.field);
        const bool rational = !f.finite();
        using namespace cli_detail;
        if (opt.command == "stats") return run_stats(opt, f, os);
        if (opt.command == "verify-pencils") return run_verify_pencils(opt, f, os);
        if (opt.command == "verify-net") return run_verify_net(opt, f, os);
        if (opt.command == "verify-4path") return run_verify_4path(opt, f, os);
        if (opt.command == "verify-incidence") return run_verify_incidence(opt, f, os);
        if (opt.command == "verify-pencil-lines") return run_verify_pencil_lines(opt, f, os);
        if (opt.command == "verify-variety") return run_verify_variety(opt, f, os);
        if (opt.command == "dims")
            return rational ? run_dims<Rat>(opt, f, os) : run_dims<GFp>(opt, f, os);
        if (opt.command == "span-report")
            return rational ? run_span_report<Rat>(opt, f, os) : run_span_report<GFp>(opt, f, os);
        if (opt.command == "decompose") return run_decompose(opt, f, os);
        if (opt.command == "extend") return run_extend(opt, f, os);
        if (opt.command == "autcount") return run_autcount(opt, f, os);
        if (opt.command == "path") return run_path(opt, f, os);
        if (opt.command == "export")
            return rational ? run_export<Rat>(opt, f, os) : run_export<GFp>(opt, f, os);
        throw UsageError("unknown command '" + opt.command + "'");
    } catch (const UsageError& e) {
        Json err;
        err["error"] = e.what();
        err["usage"] = true;
        os << err.dump(2) << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        Json err;
        err["error"] = e.what();
        os << err.dump(2) << "\n";
        return kExitFail;
    }
}

}  // namespace flagvar
