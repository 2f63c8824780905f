#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontokms/rdf/triple_store.hpp"

namespace ontokms::nav {

struct GraphNode {
  std::string id;
  std::string label;  // preferred-language label, falling back to en, any, local name
  bool is_root = false;
  std::size_t depth = 0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::string child;
  std::string parent;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

/// Nodes sorted by (depth, id); edges by (child, parent).
struct GraphView {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

/// Breadth-first over subClassOf edges between concepts, followed in both
/// directions, up to `depth` hops from `center`. Reports every edge whose
/// endpoints were both reached. Throws Error(NotFound) for an unknown center.
GraphView neighborhood(const rdf::TripleStore& store, std::string_view center,
                       std::size_t depth, std::string_view lang);

/// Every simple parent chain from `id` to a parentless concept, each starting
/// with `id`, ordered lexicographically. Throws Error(NotFound).
std::vector<std::vector<std::string>> path_to_root(const rdf::TripleStore& store,
                                                   std::string_view id);

nlohmann::json to_json(const GraphView& view);

}  // namespace ontokms::nav
