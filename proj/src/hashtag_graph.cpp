#include "hatepol/hashtag_graph.hpp"

#include <cmath>
#include <map>

#include "hatepol/error.hpp"

namespace hatepol {

std::vector<std::size_t> HashtagGraph::degrees() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  for (const auto& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

void HashtagGraph::validate() const {
  std::vector<bool> has_hub(nodes.size(), false);
  for (const auto& e : edges) {
    if (e.u >= nodes.size() || e.v >= nodes.size()) throw Error("edge endpoint out of range");
    if (e.u == e.v) throw Error("self-loop on node '" + nodes[e.u].name + "'");
    if (!(e.weight >= 1.0) || !std::isfinite(e.weight)) throw Error("edge weight below 1 or non-finite");
    if (nodes[e.u].kind != NodeKind::hashtag) has_hub[e.v] = true;
    if (nodes[e.v].kind != NodeKind::hashtag) has_hub[e.u] = true;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::hashtag && !has_hub[i])
      throw Error("hashtag '" + nodes[i].name + "' has no hub edge");
  }
}

HashtagGraph build_hashtag_graph(const Corpus& corpus, std::size_t min_count, bool with_cooccurrence) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  std::size_t labeled = 0;
  for (const auto& t : corpus.tweets) {
    if (t.label == Label::unlabeled) continue;
    ++labeled;
    for (const auto& tag : t.hashtags) {
      auto& c = counts[tag];
      (t.label == Label::hate ? c.first : c.second) += 1;
    }
  }
  if (labeled == 0) throw Error("hashtag graph needs labeled tweets");

  HashtagGraph g;
  g.nodes.push_back({"hate", NodeKind::hate_hub});
  g.nodes.push_back({"normal", NodeKind::normal_hub});
  std::map<std::string, std::size_t> index;
  for (const auto& [tag, c] : counts) {
    if (c.first + c.second < min_count) continue;
    index[tag] = g.nodes.size();
    g.nodes.push_back({tag, NodeKind::hashtag});
  }
  for (const auto& [tag, i] : index) {
    const auto& c = counts[tag];
    if (c.first > 0) g.edges.push_back({HashtagGraph::kHateHub, i, static_cast<double>(c.first)});
    if (c.second > 0) g.edges.push_back({HashtagGraph::kNormalHub, i, static_cast<double>(c.second)});
  }
  if (with_cooccurrence) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> co;
    for (const auto& t : corpus.tweets) {
      if (t.label == Label::unlabeled) continue;
      std::vector<std::size_t> ids;
      for (const auto& tag : t.hashtags) {
        if (auto it = index.find(tag); it != index.end()) ids.push_back(it->second);
      }
      for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          ++co[{std::min(ids[a], ids[b]), std::max(ids[a], ids[b])}];
        }
      }
    }
    for (const auto& [pair, w] : co) g.edges.push_back({pair.first, pair.second, static_cast<double>(w)});
  }
  return g;
}

HashtagPartition partition_hashtags(const HashtagGraph& graph) {
  std::vector<bool> hate(graph.size(), false), normal(graph.size(), false);
  for (const auto& e : graph.edges) {
    for (auto [hub, other] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (graph.nodes[hub].kind == NodeKind::hate_hub) hate[other] = true;
      if (graph.nodes[hub].kind == NodeKind::normal_hub) normal[other] = true;
    }
  }
  HashtagPartition p;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (graph.nodes[i].kind != NodeKind::hashtag) continue;
    const auto& name = graph.nodes[i].name;
    if (hate[i] && normal[i]) {
      p.both.insert(name);
    } else if (hate[i]) {
      p.hate_only.insert(name);
    } else if (normal[i]) {
      p.normal_only.insert(name);
    }
  }
  return p;
}

std::string_view node_class(const HashtagGraph& graph, const HashtagPartition& partition, std::size_t node) {
  const auto& n = graph.nodes[node];
  if (n.kind != NodeKind::hashtag) return "hub";
  if (partition.both.contains(n.name)) return "both";
  if (partition.hate_only.contains(n.name)) return "hate_only";
  return "normal_only";
}

}  // namespace hatepol
