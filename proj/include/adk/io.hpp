#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "adk/diffusion.hpp"

namespace adk {

using Instance = std::variant<GTInstance, TriggeringInstance>;

/// Text format, line oriented, '#' comments:
///   model gt|triggering
///   nodes <n> <label ...>
///   edge <from> <to>
///   table <node>
///     {a,b} 3/5
/// Threshold instances must list every subset of each in-neighborhood
/// (in-degree-0 nodes may omit their trivial table).  Triggering instances
/// may omit zero-weight subsets, and a missing table means the empty set has
/// weight 1.  Structural model invariants are enforced; violations raise
/// parse_error.
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);

/// Canonical text: nodes in id order, edges sorted by (to, from), threshold
/// tables complete and in mask order, triggering tables restricted to their
/// support.  parse . serialize is the identity on parsed instances, and
/// serialize . parse is the identity on canonical text.
std::string serialize_instance(const GTInstance& inst);
std::string serialize_instance(const TriggeringInstance& inst);
std::string serialize_instance(const Instance& inst);

const DirectedGraph& instance_graph(const Instance& inst);
const std::vector<std::string>& instance_labels(const Instance& inst);

/// Comma-separated labels ("a,b,c" or "{a,b,c}"; empty string = empty set)
/// to a node mask.  Unknown labels raise parse_error.
std::uint32_t parse_node_set(const std::vector<std::string>& labels,
                             const std::string& text);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t value);

}  // namespace adk
