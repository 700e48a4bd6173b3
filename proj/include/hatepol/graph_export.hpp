#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hatepol/hashtag_graph.hpp"
#include "hatepol/layout.hpp"

namespace hatepol {

enum class GraphFormat { svg, graphml, dot };

GraphFormat parse_graph_format(std::string_view s);
std::string_view to_string(GraphFormat f);

// Fill colour per node class: blue normal-only, red hate-only, purple both,
// black hubs.
std::string_view class_color(std::string_view node_class);

std::string to_svg(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition);
std::string to_graphml(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition);
std::string to_dot(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition);

void export_graph(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition, GraphFormat format,
                  const std::filesystem::path& path);

struct GraphmlNode {
  std::string id;
  std::string label;
  double x = 0.0;
  double y = 0.0;
  std::string node_class;
};

struct GraphmlEdge {
  std::string source;
  std::string target;
  double weight = 1.0;
};

struct GraphmlDocument {
  std::vector<GraphmlNode> nodes;
  std::vector<GraphmlEdge> edges;
};

GraphmlDocument parse_graphml(std::string_view xml);
GraphmlDocument read_graphml(const std::filesystem::path& path);

}  // namespace hatepol
