#ifndef NGRPD_GALOIS_HPP_
#define NGRPD_GALOIS_HPP_

// Finite covers of a based graph and their monodromy.
//
// A cover is stored two ways: as an explicit total graph with a projection
// (GraphCover, the exchange format) and as an object of the GraphCov site
// (what every other module computes with). The fiber functor sends a cover
// to the fibre over the basepoint with one permutation per non-tree edge.
//
// Conventions: a generator's loop is the tree path from the basepoint to the
// edge's source, the edge, then the tree path back. The loop is lifted
// starting at x and the permutation sends x to the endpoint of the lift.
// Words act with the rightmost letter first (see FreeGroupAction::act).

#include <optional>
#include <string>
#include <vector>

#include "grpd.hpp"
#include "gset.hpp"

namespace ngrpd {

  //! A finite directed multigraph without basepoint or tree.
  struct PlainGraph {
    std::vector<std::string> vertices;
    std::vector<GraphEdge>   edges;

    bool operator==(PlainGraph const&) const = default;
  };

  //! A total graph over a based graph: proj_v[v] and proj_e[e] index into
  //! the base.
  struct GraphCover {
    PlainGraph total;
    Map        proj_v;
    Map        proj_e;

    bool operator==(GraphCover const&) const = default;
  };

  // Throws InvalidInput when the projection does not preserve endpoints or
  // the star condition fails: every total vertex v needs exactly one lift at
  // v of each base edge leaving p(v) and of each base edge entering p(v).
  void       validate(BasedGraph const& base, GraphCover const& c);
  SiteObject to_site_object(BasedGraph const& base, GraphCover const& c);
  // Total edge over base edge e starting at x is labelled "e[x]".
  GraphCover to_graph_cover(BasedGraph const& base, SiteObject const& obj);

  // The site of free-group actions matching a base graph: one generator per
  // non-tree edge, carrying that edge's label.
  Site monodromy_site(BasedGraph const& base);

  // Endpoint of the lift of a base edge path starting at element x.
  // Each step is (edge, forward?).
  int lift_path(SiteObject const& obj, std::vector<std::pair<int, bool>> const& path, int x);

  // Carrier = labels of the elements over the basepoint, in index order.
  FreeGroupAction fiber_functor(BasedGraph const& base, SiteObject const& obj);
  FreeGroupAction fiber_functor(BasedGraph const& base, GraphCover const& c);
  // Indices of the elements over the basepoint.
  std::vector<int> fiber_elements(BasedGraph const& base, SiteObject const& obj);
  // A cover morphism restricted to the fibres, in fibre positions.
  Map fiber_map(BasedGraph const& base, Morphism const& f);

  // Tree-spreading: over the basepoint the fibre keeps its labels; the copy
  // of x over another vertex v is "x@v".
  SiteObject cover_from_action(BasedGraph const& base, FreeGroupAction const& a);
  GraphCover cover_graph_from_action(BasedGraph const& base, FreeGroupAction const& a);
  // Lifts an equivariant map of fibres to the spread covers.
  Map cover_map_from_action(BasedGraph const&      base,
                            FreeGroupAction const& a,
                            FreeGroupAction const& b,
                            Map const&             fiber);

  //! c -> cover_from_action(fiber_functor(c)), with the number of fibre
  //! bijections tried.
  struct CoverIsoWitness {
    SiteObject  source;
    SiteObject  target;
    Map         iso;
    std::size_t candidates_tried = 0;
    json        to_json() const;
  };

  // Exhaustive search over bijections of the fibre; each candidate is
  // extended along tree paths and then checked as a cover morphism.
  std::optional<CoverIsoWitness> roundtrip_iso(BasedGraph const& base, SiteObject const& obj);
  // fiber_functor(cover_from_action(a)) == a.
  bool roundtrip_exact(BasedGraph const& base, FreeGroupAction const& a);

  //! The same cover read with another spanning tree. The fibre over the
  //! basepoint does not change, so the two actions are the same action of
  //! the fundamental group in different free generators: words[k] spells the
  //! new k-th generator loop in the old generators.
  struct TreeChange {
    FreeGroupAction   before;
    FreeGroupAction   after;
    std::vector<Word> words;
    bool              consistent = false;  // after.perms[k] == before.act(words[k])
    json              to_json() const;
  };
  TreeChange tree_change(BasedGraph const& base, std::vector<int> const& other_tree, SiteObject const& obj);

  // Level-wise fiber functor; the result lives in monodromy_site(base).
  SimplicialObject  fiber_functor_ngrpd(SimplicialObject const& x);
  std::vector<Map>  fiber_functor_ngrpd(SimplicialMorphism const& f);
  SimplicialFunctor fiber_functor_on(CfoSample const& sample);  // base from the sample's site
  SimplicialFunctor fiber_functor_on(BasedGraph const& base, CfoSample const& sample);

  // The quasi-inverse level-wise: x must live in monodromy_site(base).
  SimplicialObject cover_from_action_ngrpd(BasedGraph const& base, SimplicialObject const& x);

  // verify_exact_functor on the fiber functor, plus
  //   "cover reflection": level maps are covers iff their fibre maps are,
  //                       and the fibration verdict is unchanged;
  //   "hypercover verdicts preserved": is_hypercover(f, n) agrees;
  //   "groupoid verdicts preserved": is_n_groupoid agrees for every object;
  //   "essential surjectivity": each target is isomorphic to the image of a
  //                       sample object, or else to the image of its
  //                       constructed preimage.
  Report verify_correspondence_exactness(BasedGraph const&                    base,
                                         CfoSample const&                     sample,
                                         std::vector<SimplicialObject> const& targets = {},
                                         int                                  n = 1);

  //! An n-groupoid in FinSets with a level-wise action commuting with every
  //! face and degeneracy. action[m][g] is a permutation of level m, one per
  //! shape edge of the G-FinSets site (group element or free generator).
  struct EquivariantSimplicialSet {
    SimplicialObject                           underlying;
    std::vector<std::vector<std::vector<int>>> action;
  };

  EquivariantSimplicialSet pull_out_action(SimplicialObject const& x);
  // Throws InvalidInput with a witness when an action does not commute with a
  // structure map, or is not valid for the site.
  SimplicialObject push_in_action(Site const& site, EquivariantSimplicialSet const& e);

}  // namespace ngrpd

#endif  // NGRPD_GALOIS_HPP_
