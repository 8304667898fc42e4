#include "ngrpd/graph.hpp"

#include <algorithm>
#include <queue>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  BasedGraph::BasedGraph(std::vector<std::string> vertices,
                         std::vector<GraphEdge>   edges,
                         int                      base,
                         std::vector<int>         tree)
      : _vertices(std::move(vertices)),
        _edges(std::move(edges)),
        _base(base),
        _tree(std::move(tree)) {
    int nv = static_cast<int>(_vertices.size());
    int ne = static_cast<int>(_edges.size());
    if (nv == 0) {
      throw InvalidInput("graph has no vertices");
    }
    if (_base < 0 || _base >= nv) {
      throw InvalidInput("basepoint out of range");
    }
    {
      auto v = _vertices;
      std::sort(v.begin(), v.end());
      if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
        throw InvalidInput("duplicate vertex label");
      }
      std::vector<std::string> labels;
      for (auto const& e : _edges) {
        labels.push_back(e.label);
      }
      std::sort(labels.begin(), labels.end());
      if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw InvalidInput("duplicate edge label");
      }
    }
    for (auto const& e : _edges) {
      if (e.source < 0 || e.source >= nv || e.target < 0 || e.target >= nv) {
        throw InvalidInput("edge " + e.label + " has an endpoint out of range");
      }
    }
    std::sort(_tree.begin(), _tree.end());
    if (std::adjacent_find(_tree.begin(), _tree.end()) != _tree.end()) {
      throw InvalidInput("spanning tree lists an edge twice");
    }
    _in_tree.assign(ne, false);
    for (int e : _tree) {
      if (e < 0 || e >= ne) {
        throw InvalidInput("spanning tree edge out of range");
      }
      _in_tree[e] = true;
    }
    if (static_cast<int>(_tree.size()) != nv - 1) {
      throw InvalidInput("spanning tree must have |V|-1 edges");
    }
    // Walk the tree from the basepoint; it must reach every vertex.
    _paths.assign(nv, {});
    std::vector<bool> reached(nv, false);
    reached[_base] = true;
    std::queue<int> todo;
    todo.push(_base);
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop();
      for (int e : _tree) {
        auto const& edge = _edges[e];
        int         next = -1;
        bool        fwd  = true;
        if (edge.source == v && !reached[edge.target]) {
          next = edge.target;
        } else if (edge.target == v && !reached[edge.source]) {
          next = edge.source;
          fwd  = false;
        }
        if (next >= 0) {
          reached[next] = true;
          _paths[next]  = _paths[v];
          _paths[next].emplace_back(e, fwd);
          todo.push(next);
        }
      }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
      throw InvalidInput("spanning tree does not reach every vertex "
                         "(graph disconnected or tree not spanning)");
    }
    for (int e = 0; e < ne; ++e) {
      if (!_in_tree[e]) {
        _generators.push_back(e);
      }
    }
  }

  BasedGraph BasedGraph::bouquet(std::vector<std::string> loop_labels) {
    std::vector<GraphEdge> edges;
    for (auto& l : loop_labels) {
      edges.push_back({std::move(l), 0, 0});
    }
    return BasedGraph({"x"}, std::move(edges), 0, {});
  }

  BasedGraph BasedGraph::figure_eight() {
    return bouquet({"a", "b"});
  }

  BasedGraph BasedGraph::theta() {
    return BasedGraph({"u", "v"}, {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 1}}, 0, {0});
  }

  int BasedGraph::vertex_index(std::string const& label) const {
    auto it = std::find(_vertices.begin(), _vertices.end(), label);
    if (it == _vertices.end()) {
      throw InvalidInput("unknown vertex " + label);
    }
    return static_cast<int>(it - _vertices.begin());
  }

  int BasedGraph::edge_index(std::string const& label) const {
    for (std::size_t e = 0; e < _edges.size(); ++e) {
      if (_edges[e].label == label) {
        return static_cast<int>(e);
      }
    }
    throw InvalidInput("unknown edge " + label);
  }

  BasedGraph BasedGraph::with_tree(std::vector<int> tree) const {
    return BasedGraph(_vertices, _edges, _base, std::move(tree));
  }

}  // namespace ngrpd
