#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hatepol/corpus.hpp"

namespace hatepol {

enum class NodeKind { hate_hub, normal_hub, hashtag };

struct GraphNode {
  std::string name;
  NodeKind kind = NodeKind::hashtag;
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Class-anchored hashtag graph. Nodes 0 and 1 are the "hate" and "normal"
// hubs; hashtag nodes follow in name order. Hub edges come first, then
// optional hashtag co-occurrence edges.
struct HashtagGraph {
  static constexpr std::size_t kHateHub = 0;
  static constexpr std::size_t kNormalHub = 1;

  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  std::size_t size() const noexcept { return nodes.size(); }
  std::vector<std::size_t> degrees() const;
  // Throws on self-loops, weights below 1, or hashtags without a hub edge.
  void validate() const;
};

// Hub edge weight = tweets of that class carrying the hashtag. Hashtags seen
// in fewer than `min_count` labeled tweets are dropped. Co-occurrence edges
// are weighted by the number of labeled tweets carrying both hashtags.
HashtagGraph build_hashtag_graph(const Corpus& corpus, std::size_t min_count = 1, bool with_cooccurrence = false);

struct HashtagPartition {
  std::set<std::string> hate_only;
  std::set<std::string> normal_only;
  std::set<std::string> both;
};

HashtagPartition partition_hashtags(const HashtagGraph& graph);

// "hub", "hate_only", "normal_only" or "both".
std::string_view node_class(const HashtagGraph& graph, const HashtagPartition& partition, std::size_t node);

}  // namespace hatepol
