#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <variant>

#include <rfm/descriptor.hpp>
#include <rfm/graph.hpp>

namespace rfm {

inline std::string graph_to_dot(const DecompositionGraph& input) {
  const auto g = canonicalize(input);
  std::ostringstream os;
  os << "graph decomposition {\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  for (const auto& [id, kind] : g.pieces) {
    const char* shape = kind.type == PieceType::pants ? "ellipse" : kind.type == PieceType::solid_torus ? "circle" : "box";
    os << "  p" << id << " [label=\"" << id << ": " << to_string(kind) << "\", shape=" << shape << "];\n";
  }
  for (const auto& e : g.gluings) {
    os << "  p" << e.from.piece << " -- p" << e.to.piece << " [label=\"" << e.from.port << "->" << e.to.port << " "
       << to_string(e.matrix) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string descriptor_to_dot(const RoundFoldDescriptor& d) {
  std::ostringstream os;
  auto node = [](const BlockRef& r) { return "b" + std::to_string(r.level) + "_" + std::to_string(r.index); };
  os << "graph blocks {\n";
  os << "  rankdir=LR;\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < d.binding.size(); ++i) {
    os << "  " << node({0, static_cast<int>(i), 0}) << " [label=\"binding " << i << "\", shape=circle];\n";
  }
  for (int k = 1; k <= d.levels && k <= static_cast<int>(d.blocks.size()); ++k) {
    os << "  subgraph cluster_" << k << " {\n    label=\"level " << k << "\";\n";
    for (std::size_t i = 0; i < d.level(k).size(); ++i) {
      const auto& b = d.level(k)[i];
      os << "    " << node({k, static_cast<int>(i), 0}) << " [label=\"" << to_string(b) << "\", shape="
         << (is_singular(b) ? "box" : "ellipse") << "];\n";
    }
    os << "  }\n";
  }
  auto tori = d.tori;
  std::sort(tori.begin(), tori.end());
  for (const auto& t : tori) {
    os << "  " << node(t.inner) << " -- " << node(t.outer) << " [label=\"" << t.region << ".5 mu " << t.multiplicity
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

/// Critical value circles C_1..C_t as concentric circles, each with an arrow
/// pointing to the side where the fiber gains a component, and the fiber
/// count of every region written between them.
inline std::string descriptor_to_svg(const RoundFoldDescriptor& d) {
  const auto dirs = compute_directions(d);
  const int t = d.levels;
  const double step = 40.0;
  const double margin = 30.0;
  const double size = 2 * (step * (t + 1) + margin);
  const double c = size / 2;
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
        "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n";
  os << "  <circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"3.0\" fill=\"black\"/>\n";
  for (int k = 1; k <= t; ++k) {
    const double r = step * k;
    const bool singular_disk = [&] {
      for (const auto& b : d.level(k)) {
        if (std::holds_alternative<DiskBlock>(b)) return true;
      }
      return false;
    }();
    os << "  <circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << r << "\" fill=\"none\" stroke=\"black\""
       << (singular_disk ? "" : " stroke-dasharray=\"6,3\"") << "/>\n";
    // arrow on the positive x axis
    const bool inward = dirs[static_cast<std::size_t>(k - 1)] == Direction::inward;
    const double x0 = c + r;
    const double x1 = inward ? x0 - 14 : x0 + 14;
    os << "  <line x1=\"" << x0 << "\" y1=\"" << c << "\" x2=\"" << x1 << "\" y2=\"" << c
       << "\" stroke=\"black\" marker-end=\"url(#arrow)\"/>\n";
    os << "  <text x=\"" << c << "\" y=\"" << c - r - 4 << "\" font-size=\"10\" text-anchor=\"middle\">C" << k << "</text>\n";
  }
  for (int j = 0; j <= t && j < static_cast<int>(d.counts.size()); ++j) {
    const double r = step * j + step / 2;
    os << "  <text x=\"" << c << "\" y=\"" << c + r + 4 << "\" font-size=\"11\" text-anchor=\"middle\">" << d.counts[j]
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rfm
