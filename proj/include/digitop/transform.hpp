#pragma once

// R-transformation: an edge (u, v) is replaced by a new point x whose rim is
// u + v + edge_rim(u, v). Equivalent to attaching x and then deleting the edge.

#include <string>
#include <string_view>
#include <vector>

#include "digitop/graph.hpp"
#include "digitop/homotopy.hpp"

namespace digitop {

struct RStep {
  std::string u, v, x;
  friend bool operator==(const RStep&, const RStep&) = default;
};

struct RTransformResult {
  Graph graph;
  RStep step;
};

/// The attach-point and delete-edge pair an R-step stands for.
inline HomotopyTrace expand(const Graph& m, const RStep& s) {
  const auto u = m.index_of(s.u), v = m.index_of(s.v);
  AttachPoint attach{s.x, {s.u, s.v}};
  for (VertexId w : common_neighbors(m, u, v)) attach.rim.push_back(m.label(w));
  return HomotopyTrace{{attach, DeleteEdge{s.u, s.v}}};
}

inline RTransformResult r_transform(const Graph& m, std::string_view u, std::string_view v, std::string x) {
  const auto iu = m.index_of(u), iv = m.index_of(v);
  if (!m.adjacent(iu, iv))
    throw std::invalid_argument("r-transform: (" + std::string(u) + ", " + std::string(v) + ") is not an edge");
  if (m.contains(x)) throw std::invalid_argument("r-transform: label '" + x + "' is already a vertex");
  std::vector<VertexId> nbrs{iu, iv};
  for (VertexId w : common_neighbors(m, iu, iv)) nbrs.push_back(w);
  auto grown = add_vertex(m, x, nbrs);
  return {remove_edge(grown, iu, iv), RStep{std::string(u), std::string(v), std::move(x)}};
}

/// First label of the form prefix1, prefix2, ... not used in `g`.
inline std::string fresh_label(const Graph& g, std::string_view prefix = "x") {
  for (std::size_t i = 1;; ++i) {
    auto l = std::string(prefix) + std::to_string(i);
    if (!g.contains(l)) return l;
  }
}

} // namespace digitop
