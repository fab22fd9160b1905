#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagvariety.hpp"

namespace flagvar {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// scalars: finite-field elements as integers, rationals as strings
// ---------------------------------------------------------------------------

inline Json scalar_to_json(const GFp& x) { return x.residue(); }
inline Json scalar_to_json(const Rat& x) { return x.str(); }

inline GFp scalar_from_json(const Json& j, const FieldSpec& f, const GFp*) {
    if (j.is_number_integer()) return GFp::from_int(f, j.get<std::int64_t>());
    if (j.is_string()) return parse_scalar_text(j.get<std::string>(), f,
                                                static_cast<const GFp*>(nullptr));
    throw Error("expected an integer scalar");
}

inline Rat scalar_from_json(const Json& j, const FieldSpec& f, const Rat*) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) return parse_scalar_text(j.get<std::string>(), f,
                                                static_cast<const Rat*>(nullptr));
    throw Error("expected a rational scalar");
}

template <class K>
Json vec_to_json(const Vec<K>& v) {
    Json out = Json::array();
    for (const K& x : v) out.push_back(scalar_to_json(x));
    return out;
}

template <class K>
Vec<K> vec_from_json(const Json& j, const FieldSpec& f) {
    if (!j.is_array()) throw Error("expected a coordinate array");
    Vec<K> v;
    for (const Json& x : j) v.push_back(scalar_from_json(x, f, static_cast<const K*>(nullptr)));
    return v;
}

template <class K>
Json matrix_to_json(const Matrix<K>& m) {
    Json out = Json::array();
    for (const Vec<K>& r : m.to_rows()) out.push_back(vec_to_json(r));
    return out;
}

// ---------------------------------------------------------------------------
// flags and flag maps
// ---------------------------------------------------------------------------

/// A flag serializes with its three components in canonical projective
/// form: the line by its six Pluecker coordinates.
template <class K>
Json flag_to_json(const Flag<K>& fl) {
    Json out;
    out["field"] = fl.point.spec().tag();
    out["line"] = vec_to_json(fl.line.pluecker);
    out["plane"] = vec_to_json(fl.plane.coeffs);
    out["point"] = vec_to_json(fl.point.coords);
    return out;
}

template <class K>
Flag<K> flag_from_json(const Json& j, const FieldSpec& f) {
    if (!j.is_object() || !j.contains("point") || !j.contains("line") || !j.contains("plane"))
        throw Error("flag object needs point, line and plane entries");
    if (j.contains("field") && FieldSpec::parse(j["field"].get<std::string>()) != f)
        throw FieldMismatchError("flag carries a different field tag");
    return make_flag(Point<K>::from(vec_from_json<K>(j["point"], f)),
                     Line<K>::from_pluecker(vec_from_json<K>(j["line"], f)),
                     Plane<K>::from(vec_from_json<K>(j["plane"], f)));
}

/// A flag map serializes as the list of its (source, image) flag pairs,
/// one pair per flag of the space.
template <class K>
Json flagmap_to_json(const FlagMap<K>& map) {
    Json out = Json::array();
    const Space<K>& s = map.space();
    for (int i = 0; i < static_cast<int>(s.flags().size()); ++i) {
        Json pair = Json::array();
        pair.push_back(flag_to_json(s.flag_at(i)));
        pair.push_back(flag_to_json(s.flag_at(map.apply(i))));
        out.push_back(std::move(pair));
    }
    return out;
}

template <class K>
int flag_index_in(const Space<K>& s, const Flag<K>& fl) {
    return s.flag_index(s.point_index(fl.point), s.line_index(fl.line),
                        s.plane_index(fl.plane));
}

template <class K>
FlagMap<K> flagmap_from_json(const Json& j, const Space<K>& s) {
    if (!j.is_array()) throw Error("flag map must be a list of flag pairs");
    const int total = static_cast<int>(s.flags().size());
    if (static_cast<int>(j.size()) != total)
        throw Error("flag map must list every flag exactly once");
    std::vector<int> images(static_cast<std::size_t>(total), -1);
    for (const Json& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error("each flag map entry must be a pair of flags");
        const int src = flag_index_in(s, flag_from_json<K>(pair[0], s.spec()));
        const int dst = flag_index_in(s, flag_from_json<K>(pair[1], s.spec()));
        if (images[static_cast<std::size_t>(src)] != -1)
            throw Error("flag map lists a source flag twice");
        images[static_cast<std::size_t>(src)] = dst;
    }
    return FlagMap<K>(s, images);
}

}  // namespace flagvar
