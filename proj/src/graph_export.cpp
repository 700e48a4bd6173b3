#include "hatepol/graph_export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "hatepol/csv.hpp"
#include "hatepol/error.hpp"

namespace hatepol {

GraphFormat parse_graph_format(std::string_view s) {
  if (s == "svg") return GraphFormat::svg;
  if (s == "graphml") return GraphFormat::graphml;
  if (s == "dot") return GraphFormat::dot;
  throw ArgumentError("unknown graph format '" + std::string(s) + "' (expected svg, graphml or dot)");
}

std::string_view to_string(GraphFormat f) {
  switch (f) {
    case GraphFormat::svg: return "svg";
    case GraphFormat::graphml: return "graphml";
    case GraphFormat::dot: return "dot";
  }
  return "svg";
}

std::string_view class_color(std::string_view node_class) {
  if (node_class == "normal_only") return "blue";
  if (node_class == "hate_only") return "red";
  if (node_class == "both") return "purple";
  return "black";
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void check_coverage(const HashtagGraph& g, const Layout& layout) {
  if (layout.positions.size() != g.size())
    throw ArgumentError("layout has " + std::to_string(layout.positions.size()) + " positions for " +
                        std::to_string(g.size()) + " nodes");
}

std::string num(double v) { return csv::format_real(v); }

}  // namespace

std::string to_svg(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition) {
  check_coverage(g, layout);
  const auto deg = g.degrees();
  constexpr double kScale = 100.0;  // pixels per layout unit
  constexpr double kMargin = 20.0;
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  if (!layout.positions.empty()) {
    lo_x = hi_x = layout.positions[0].x;
    lo_y = hi_y = layout.positions[0].y;
  }
  for (const auto& p : layout.positions) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  auto radius = [&](std::size_t i) { return 2.0 + 3.0 * std::log1p(static_cast<double>(deg[i])); };
  double rmax = 2.0;
  for (std::size_t i = 0; i < g.size(); ++i) rmax = std::max(rmax, radius(i));
  const double pad = kMargin + rmax;
  const double width = (hi_x - lo_x) * kScale + 2 * pad;
  const double height = (hi_y - lo_y) * kScale + 2 * pad;
  // SVG y grows downward; flip so the layout's +y is up.
  auto sx = [&](double x) { return (x - lo_x) * kScale + pad; };
  auto sy = [&](double y) { return (hi_y - y) * kScale + pad; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
     << "<g stroke=\"#999999\" stroke-opacity=\"0.4\" stroke-width=\"0.5\">\n";
  for (const auto& e : g.edges) {
    const auto& a = layout.positions[e.u];
    const auto& b = layout.positions[e.v];
    os << "<line x1=\"" << num(sx(a.x)) << "\" y1=\"" << num(sy(a.y)) << "\" x2=\"" << num(sx(b.x)) << "\" y2=\""
       << num(sy(b.y)) << "\"/>\n";
  }
  os << "</g>\n<g stroke=\"none\">\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = layout.positions[i];
    const auto cls = node_class(g, partition, i);
    os << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"" << num(radius(i)) << "\" fill=\""
       << class_color(cls) << "\"><title>" << xml_escape(g.nodes[i].name) << "</title></circle>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string to_graphml(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition) {
  check_coverage(g, layout);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
     << "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
     << "  <key id=\"class\" for=\"node\" attr.name=\"class\" attr.type=\"string\"/>\n"
     << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
     << "  <graph id=\"hashtags\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = layout.positions[i];
    os << "    <node id=\"n" << i << "\">\n"
       << "      <data key=\"label\">" << xml_escape(g.nodes[i].name) << "</data>\n"
       << "      <data key=\"x\">" << num(p.x) << "</data>\n"
       << "      <data key=\"y\">" << num(p.y) << "</data>\n"
       << "      <data key=\"class\">" << node_class(g, partition, i) << "</data>\n"
       << "    </node>\n";
  }
  for (const auto& e : g.edges) {
    os << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\">\n"
       << "      <data key=\"weight\">" << num(e.weight) << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string to_dot(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition) {
  check_coverage(g, layout);
  std::ostringstream os;
  os << "graph hashtags {\n  node [shape=circle, style=filled];\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = layout.positions[i];
    const auto cls = node_class(g, partition, i);
    os << "  n" << i << " [label=\"" << dot_escape(g.nodes[i].name) << "\", pos=\"" << num(p.x) << ',' << num(p.y)
       << "!\", class=\"" << cls << "\", fillcolor=\"" << class_color(cls) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.u << " -- n" << e.v << " [weight=" << num(e.weight) << "];\n";
  }
  os << "}\n";
  return os.str();
}

void export_graph(const HashtagGraph& g, const Layout& layout, const HashtagPartition& partition, GraphFormat format,
                  const std::filesystem::path& path) {
  std::string body;
  switch (format) {
    case GraphFormat::svg: body = to_svg(g, layout, partition); break;
    case GraphFormat::graphml: body = to_graphml(g, layout, partition); break;
    case GraphFormat::dot: body = to_dot(g, layout, partition); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << body;
  if (!out.flush()) throw Error("cannot write " + path.string());
}

GraphmlDocument parse_graphml(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream is{std::string(xml)};
    pt::read_xml(is, tree);
  } catch (const pt::ptree_error& e) {
    throw CorruptFileError(std::string("invalid GraphML: ") + e.what());
  }
  const auto root = tree.get_child_optional("graphml");
  if (!root) throw CorruptFileError("invalid GraphML: missing <graphml> root");
  const auto graph = root->get_child_optional("graph");
  if (!graph) throw CorruptFileError("invalid GraphML: missing <graph>");

  auto real = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw CorruptFileError("invalid GraphML number '" + s + "'");
    }
  };
  GraphmlDocument doc;
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      GraphmlNode n;
      n.id = child.get<std::string>("<xmlattr>.id", "");
      for (const auto& [dtag, data] : child) {
        if (dtag != "data") continue;
        const auto key = data.get<std::string>("<xmlattr>.key", "");
        const auto value = data.get_value<std::string>();
        if (key == "label") n.label = value;
        else if (key == "x") n.x = real(value);
        else if (key == "y") n.y = real(value);
        else if (key == "class") n.node_class = value;
      }
      doc.nodes.push_back(std::move(n));
    } else if (tag == "edge") {
      GraphmlEdge e;
      e.source = child.get<std::string>("<xmlattr>.source", "");
      e.target = child.get<std::string>("<xmlattr>.target", "");
      for (const auto& [dtag, data] : child) {
        if (dtag == "data" && data.get<std::string>("<xmlattr>.key", "") == "weight")
          e.weight = real(data.get_value<std::string>());
      }
      doc.edges.push_back(std::move(e));
    }
  }
  return doc;
}

GraphmlDocument read_graphml(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graphml(ss.str());
}

}  // namespace hatepol
