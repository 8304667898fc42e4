#ifndef NGRPD_SIMP_HPP_
#define NGRPD_SIMP_HPP_

// Truncated simplicial sets and simplicial objects in a site.
//
// A simplicial set here is finite and truncated at some level N: cells of
// every dimension 0..N with explicit face and degeneracy tables (degenerate
// cells are stored, not implied). Subsets of products of standard simplices
// also remember each cell's coordinates as ordinal maps, which is what lets
// Hom(S, X) be restricted along inclusions and projections.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"

namespace ngrpd {

  //! A nondecreasing map [m] -> [k] stored as its list of values.
  struct OrdinalMap {
    int              k = 0;
    std::vector<int> values;

    int m() const noexcept {
      return static_cast<int>(values.size()) - 1;
    }
    bool is_surjective() const;
    bool is_injective() const;
    bool is_identity() const;

    auto operator<=>(OrdinalMap const&) const = default;
  };

  // Throws InvalidInput unless values are nondecreasing and within [0, k].
  void                    validate(OrdinalMap const& a);
  std::vector<OrdinalMap> monotone_maps(int m, int k);  // lexicographic
  OrdinalMap              coface(int m, int i);         // [m-1] -> [m], skips i
  OrdinalMap              codegeneracy(int m, int j);   // [m+1] -> [m], hits j twice
  OrdinalMap              identity_ordinal(int m);
  OrdinalMap              compose(OrdinalMap const& a, OrdinalMap const& b);  // a after b
  std::string             label(OrdinalMap const& a);

  //! face[m][i]: S_m -> S_{m-1} (m >= 1); degen[m][j]: S_m -> S_{m+1} (m < N).
  struct FiniteSimplicialSet {
    int                                   N = 0;
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<Map>>         face;
    std::vector<std::vector<Map>>         degen;
    // coords[m][c] lists the ordinal maps of cell c when the set lives inside
    // a product of standard simplices; empty otherwise.
    std::vector<std::vector<std::vector<OrdinalMap>>> coords;
    std::vector<int>                                  dims;  // the simplices

    std::size_t size(int m) const {
      return cells[m].size();
    }
    bool empty() const {
      return cells.empty() || cells[0].empty();
    }
    int  cell_index(int m, std::vector<OrdinalMap> const& coordinates) const;
    bool is_degenerate(int m, int c) const;
  };

  // Empty optional when all simplicial identities hold; else a description of
  // the first violation.
  std::optional<std::string> check_simplicial_identities(std::vector<std::size_t> const&      sizes,
                                                         std::vector<std::vector<Map>> const& face,
                                                         std::vector<std::vector<Map>> const& degen);
  void validate(FiniteSimplicialSet const& s);

  // Cells of level m are the tuples (a_1, ..., a_r), a_t : [m] -> [dims_t],
  // accepted by `keep`. `keep` must describe a sub-simplicial set.
  FiniteSimplicialSet simplex_subset(std::vector<int> const& dims,
                                     int                     N,
                                     std::function<bool(std::vector<OrdinalMap> const&)> const& keep);

  FiniteSimplicialSet standard_simplex(int k, int N);
  FiniteSimplicialSet boundary(int k, int N);  // k = 0 gives the empty set
  FiniteSimplicialSet horn(int k, int i, int N);
  FiniteSimplicialSet product_simplex(int m, int n, int N);

  //! X_0..X_N in a site with faces and degeneracies as index maps.
  struct SimplicialObject {
    Site                          site;
    int                           N = 0;
    std::vector<SiteObject>       level;
    std::vector<std::vector<Map>> face;   // face[m][i], m >= 1
    std::vector<std::vector<Map>> degen;  // degen[m][j], m < N

    bool operator==(SimplicialObject const&) const = default;
  };

  struct SimplicialMorphism {
    SimplicialObject source;
    SimplicialObject target;
    std::vector<Map> level;
  };

  void validate(SimplicialObject const& x);
  void validate(SimplicialMorphism const& f);
  bool is_simplicial_morphism(SimplicialObject const& x,
                              SimplicialObject const& y,
                              std::vector<Map> const& level);

  // X(alpha)(x) for alpha : [m] -> [k] and x in X_k, via the canonical
  // factorisation into faces and degeneracies.
  int apply_operator(std::vector<std::vector<Map>> const& face,
                     std::vector<std::vector<Map>> const& degen,
                     OrdinalMap const&                    alpha,
                     int                                  x);
  int apply_operator(SimplicialObject const& x, OrdinalMap const& alpha, int cell);

  SimplicialObject   constant_object(Site const& site, SiteObject const& obj, int N);
  SimplicialObject   from_simplicial_set(FiniteSimplicialSet const& s);  // over FinSets
  SimplicialObject   truncate(SimplicialObject const& x, int N);
  SimplicialMorphism truncate(SimplicialMorphism const& f, int N);
  SimplicialMorphism identity(SimplicialObject const& x);
  SimplicialMorphism compose(SimplicialMorphism const& g, SimplicialMorphism const& f);
  SimplicialMorphism to_constant(SimplicialObject const& x, SiteObject const& target, Map const& map0);

  //! A finite category; compose[{g, f}] = g o f for composable arrows.
  struct SmallCategory {
    struct Arrow {
      std::string label;
      int         source = 0;
      int         target = 0;
    };
    std::vector<std::string>           objects;
    std::vector<Arrow>                 arrows;
    std::vector<int>                   identity;
    std::map<std::pair<int, int>, int> compose;

    bool is_groupoid() const;
  };

  void          validate(SmallCategory const& c);
  SmallCategory group_category(FiniteGroup const& g);
  // Level 0 = object labels, level 1 = arrow labels, level m >= 2 = chains
  // "(f1,...,fm)" with f1 applied first. On a one-vertex site the optional
  // arrow_action gives one arrow permutation per shape edge; it must be a
  // functorial action.
  SimplicialObject nerve(SmallCategory const&    c,
                         int                     N,
                         Site const&             site         = Site::finsets(),
                         std::vector<Map> const& arrow_action = {});

  // The Cech nerve of f : U -> V as an object over the constant object at V.
  // Level 0 is U itself; level m >= 1 has the tuples "(u0,...,um)" with a
  // common image.
  SimplicialMorphism cech_nerve(Site const& site, Morphism const& f, int N);

  //! Hom(S, X) as an object of compatible families.
  //!
  //! family[e] lists the values (indices into X_m) on all cells of S, level
  //! by level starting at offset[m]. Elements are labelled by their values
  //! on the nondegenerate cells that are not faces of other nondegenerate
  //! cells.
  struct HomObject {
    SiteObject                    object;
    std::vector<std::size_t>      offset;
    std::vector<std::vector<int>> family;
    std::map<std::vector<int>, int> index;  // (fibre, family...) -> element

    int find(int fibre, std::vector<int> const& values) const;  // -1 if absent
  };

  HomObject hom_into(FiniteSimplicialSet const& s, SimplicialObject const& x);

  // x in X_k maps to the family c -> X(alpha_c)(x), alpha_c = op(m, c).
  Map hom_from_level(SimplicialObject const&                      x,
                     int                                          k,
                     FiniteSimplicialSet const&                   s,
                     HomObject const&                             h,
                     std::function<OrdinalMap(int, int)> const& op);
  // Restriction along a simplicial map g : S -> T (g[m] : S_m -> T_m).
  Map hom_restrict(HomObject const& from, HomObject const& to, std::vector<Map> const& g);
  // Hom(S, f) : Hom(S, X) -> Hom(S, Y).
  Map hom_postcompose(HomObject const& hx, HomObject const& hy, SimplicialMorphism const& f);
  Map hom_evaluate(HomObject const& h, int m, int cell);

  // lambda^k_i(X) : X_k -> Hom(Lambda^k_i, X).
  Morphism matching_map(int k, int i, SimplicialObject const& x);
  // For S inside Delta^k (with coordinates), the map
  //   X_k -> Hom(S, X) x_{Hom(S, Y)} Y_k
  // induced by restriction and f_k.
  Morphism relative_matching_map(FiniteSimplicialSet const& s, int k, SimplicialMorphism const& f);
  // mu_k(f), using the boundary of Delta^k.
  Morphism boundary_matching_map(int k, SimplicialMorphism const& f);
  Morphism relative_horn_map(int k, int i, SimplicialMorphism const& f);

  //! Level-wise fibre product of two simplicial morphisms with common target.
  struct SimplicialPullback {
    SimplicialObject            apex;
    SimplicialMorphism          proj_a;
    SimplicialMorphism          proj_b;
    std::vector<PullbackResult> levels;

    // The factorisation of a commuting cone of simplicial morphisms.
    std::vector<Map> mediate(std::vector<Map> const& u, std::vector<Map> const& v) const;
  };
  SimplicialPullback pullback(SimplicialMorphism const& f, SimplicialMorphism const& g);

  // Adds levels N+1..M with X_k = Hom(Lambda^k_i, X) and the induced
  // structure maps. Requires every lambda^N_j(X) to be an isomorphism;
  // throws InvalidInput otherwise.
  SimplicialObject extend_by_fillers(SimplicialObject const& x, int M, int horn_index = 0);

  // Every simplicial morphism X -> Y (level maps in lexicographic search
  // order). With `bijective`, only level-wise bijections. A nonzero limit
  // stops the search after that many solutions.
  std::vector<std::vector<Map>> all_simplicial_morphisms(SimplicialObject const& x,
                                                         SimplicialObject const& y,
                                                         bool                    bijective = false,
                                                         std::size_t             limit     = 0);
  bool are_isomorphic(SimplicialObject const& x, SimplicialObject const& y);

}  // namespace ngrpd

#endif  // NGRPD_SIMP_HPP_
