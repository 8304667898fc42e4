#ifndef NGRPD_GRAPH_HPP_
#define NGRPD_GRAPH_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace ngrpd {

  struct GraphEdge {
    std::string label;
    int         source = 0;
    int         target = 0;

    bool operator==(GraphEdge const&) const = default;
  };

  //! A connected finite directed multigraph with a basepoint and a chosen
  //! spanning tree.
  //!
  //! The fundamental group at the basepoint is free on the edges outside the
  //! tree; `generators()` lists those edges in edge order. Construction
  //! validates connectivity and that the tree is acyclic and spanning.
  class BasedGraph {
   public:
    BasedGraph(std::vector<std::string> vertices,
               std::vector<GraphEdge>   edges,
               int                      base,
               std::vector<int>         tree);

    // One vertex with one loop per generator label (empty tree).
    static BasedGraph bouquet(std::vector<std::string> loop_labels);
    // The figure-eight: one vertex "x", loops "a" and "b".
    static BasedGraph figure_eight();
    // Two vertices u, v joined by three edges a, b, c from u to v; tree {a}.
    static BasedGraph theta();

    std::vector<std::string> const& vertices() const noexcept {
      return _vertices;
    }
    std::vector<GraphEdge> const& edges() const noexcept {
      return _edges;
    }
    int base() const noexcept {
      return _base;
    }
    std::vector<int> const& tree() const noexcept {
      return _tree;
    }
    bool in_tree(int edge) const {
      return _in_tree[edge];
    }
    std::vector<int> const& generators() const noexcept {
      return _generators;
    }
    std::size_t rank() const noexcept {
      return _generators.size();
    }
    int vertex_index(std::string const& label) const;
    int edge_index(std::string const& label) const;

    // Tree path from the basepoint to v: sequence of (edge, forward?) steps.
    std::vector<std::pair<int, bool>> const& tree_path(int v) const {
      return _paths[v];
    }

    // Same graph, different spanning tree.
    BasedGraph with_tree(std::vector<int> tree) const;

    bool operator==(BasedGraph const& other) const {
      return _vertices == other._vertices && _edges == other._edges
             && _base == other._base && _tree == other._tree;
    }

   private:
    std::vector<std::string>                       _vertices;
    std::vector<GraphEdge>                         _edges;
    int                                            _base;
    std::vector<int>                               _tree;
    std::vector<bool>                              _in_tree;
    std::vector<int>                               _generators;
    std::vector<std::vector<std::pair<int, bool>>> _paths;
  };

}  // namespace ngrpd

#endif  // NGRPD_GRAPH_HPP_
