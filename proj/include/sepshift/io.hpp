#pragma once

// JSON forms of every domain object. Readers validate shape and reject
// unknown fields. Schema failures are Usage errors; an element that does not
// fit its group descriptor is a Shape error.

#include "sepshift/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace sepshift::io {

using json = nlohmann::ordered_json;

inline constexpr const char * format_version = "sepshift/1";

json to_json(const GroupDescriptor & G);
GroupDescriptor group_from_json(const json & j);

/// Z^d: integer array; free groups: "aB"-style string; products: [left, right].
json to_json(const GroupElement & g);
GroupElement element_from_json(const GroupDescriptor & G, const json & j);

json to_json(const FiniteSet & s);
FiniteSet set_from_json(const GroupDescriptor & G, const json & j);

json to_json(const Window & w);
Window window_from_json(const json & j, std::size_t cap = default_ball_cap);

json to_json(const Labeling & l);
Labeling labeling_from_json(const json & j, std::size_t cap = default_ball_cap);
/// Same, reusing an already parsed window when the embedded window matches it.
Labeling labeling_from_json(const json & j, const WindowPtr & window);

json to_json(const PatternSystem & p);
PatternSystem pattern_system_from_json(const GroupDescriptor & G, const json & j);

json to_json(const Rational & q);
Rational rational_from_json(const json & j);

json to_json(const CertifiedComparison & c);
json to_json(const CertificateReport & r, const Window & w);
json to_json(const SeparatorResult & r, const Window & w);

json to_json(const PartitionWitness & p);
PartitionWitness partition_from_json(const json & j, std::size_t cap = default_ball_cap);

json to_json(const SpacingReport & r, const Window & w);
json to_json(const SyndeticReport & r, const Window & w);
json to_json(const SpacedFamily & f);
/// Window, k and the sets A_1..A_k of a family document.
struct FamilySets {
    WindowPtr window;
    std::vector<std::vector<std::size_t>> sets;
};
FamilySets family_sets_from_json(const json & j, std::size_t cap = default_ball_cap);

json to_json(const CylinderConstraint & c);
CylinderConstraint cylinder_from_json(const GroupDescriptor & G, const json & j);

/// Carrier indices from an array of points.
std::vector<std::size_t> points_from_json(const Window & w, const json & j);
json points_to_json(const Window & w, std::span<const std::size_t> points);

/// {"version": ..., "kind": kind, ...body}: body members are merged in.
json document(const std::string & kind, json body);
/// Parses text, checks version and kind, returns the remaining members.
json read_document(const std::string & text, const std::string & kind);

std::string dump(const json & j);

} // namespace sepshift::io
