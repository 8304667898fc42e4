#ifndef NGRPD_LOCALIZATION_HPP_
#define NGRPD_LOCALIZATION_HPP_

// Two finite models of simplicial localization and their comparison on
// components: hammocks of zigzags (bounded) and nerves of span categories.
//
// Hammocks are grids whose squares commute. Components of the hammock model
// are computed on all zigzags up to a length bound, glued by height-1
// hammocks and by the reduction moves (drop identities, compose neighbours
// of the same direction); every zigzag is in the component of its reduced
// form. The bound is certified only by stabilization: components unchanged
// from L to L + 1.

#include <optional>
#include <string>
#include <vector>

#include "grpd.hpp"
#include "simp.hpp"

namespace ngrpd {

  //! A finite category with weak equivalences W, trivial fibrations H and
  //! fibrations F marked by arrow index.
  struct MarkedRelCategory {
    SmallCategory     category;
    std::vector<bool> W, H, F;

    int object_index(std::string const& label) const;
    int arrow_index(std::string const& label) const;
    // g o f, or -1 when not composable
    int compose(int g, int f) const;
  };

  // Composition table total and associative, identities neutral, W contains
  // the isomorphisms and satisfies 2-out-of-3, H within W and F.
  Report validate_marked_category(MarkedRelCategory const& c);

  //! A concrete category: finite sets and a generating family of functions.
  struct FunctionGenerator {
    std::string label;
    int         source = 0;
    int         target = 0;
    Map         map;
  };

  // Closes the generators under composition (functions compared by value).
  // Composites are labelled "g.f"; identities "id_<object>". W is the
  // 2-out-of-3 closure of the listed labels plus all isomorphisms, H and F
  // are taken as listed (identities are added to both).
  MarkedRelCategory category_from_functions(std::vector<std::pair<std::string, int>> const& objects,
                                            std::vector<FunctionGenerator> const&           generators,
                                            std::vector<std::string> const&                 W,
                                            std::vector<std::string> const&                 H,
                                            std::vector<std::string> const&                 F);

  // Smallest superset of w containing the isomorphisms of c and closed under
  // 2-out-of-3.
  std::vector<bool> saturate_two_of_three(SmallCategory const& c, std::vector<bool> w);

  //! A zigzag X = C_0 - C_1 - ... - C_n = Y; forward[t] tells whether arrow t
  //! runs C_t -> C_{t+1}.
  struct Zigzag {
    int               source = 0;
    int               target = 0;
    std::vector<int>  arrows;
    std::vector<bool> forward;

    std::size_t length() const {
      return arrows.size();
    }
    std::vector<int> objects(MarkedRelCategory const& c) const;
    std::string      label(MarkedRelCategory const& c) const;
    bool operator==(Zigzag const&) const = default;
    auto operator<=>(Zigzag const&) const = default;
  };

  // Backward arrows in W, no identities, directions alternate.
  bool   is_reduced(MarkedRelCategory const& c, Zigzag const& z);
  // Drops identities and composes neighbours of the same direction.
  Zigzag reduce(MarkedRelCategory const& c, Zigzag const& z);

  // Reduced zigzags of length <= max_length, by length and then
  // lexicographically in (direction, arrow).
  std::vector<Zigzag> enumerate_zigzags(MarkedRelCategory const& c, int x, int y, int max_length);

  //! Height k (rows 0..k) and length n. vertical[i][j - 1] is the W-arrow
  //! C_{i,j} -> C_{i+1,j} for 1 <= j <= n - 1; the end columns are X and Y
  //! with identities.
  struct Hammock {
    std::vector<Zigzag>           rows;
    std::vector<std::vector<int>> vertical;

    int height() const {
      return static_cast<int>(rows.size()) - 1;
    }
  };

  // All commuting hammocks with reduced rows and the given bounds.
  std::vector<Hammock> hammock_simplices(MarkedRelCategory const& c, int x, int y, int n, int k);

  //! X <-h- Z -g-> Y with h in H.
  struct Span {
    int apex  = 0;
    int left  = 0;
    int right = 0;
  };

  //! Spans with morphisms phi : Z -> Z' making both triangles commute.
  struct SpanCategory {
    std::vector<Span> spans;
    SmallCategory     category;
  };

  SpanCategory        span_category(MarkedRelCategory const& c, int x, int y);
  FiniteSimplicialSet span_mapping_space(MarkedRelCategory const& c, int x, int y, int N = 2);

  //! Components of a finite graph, labelled by their first vertex.
  struct Components {
    std::vector<int> component_of;
    std::size_t      count = 0;
  };

  Components pi0_span(MarkedRelCategory const& c, int x, int y);

  struct HammockPi0 {
    std::vector<Zigzag> vertices;  // every zigzag of length <= max_length
    Components          components;
    // component of a zigzag of length <= max_length
    int component(Zigzag const& z) const;
    // number of components containing a reduced zigzag
    std::size_t count() const {
      return components.count;
    }
  };

  HammockPi0 pi0_hammock(MarkedRelCategory const& c, int x, int y, int max_length);

  // Whether components at max_length and max_length + 1 correspond
  // bijectively under inclusion.
  bool hammock_pi0_stable(MarkedRelCategory const& c, int x, int y, int max_length);

  // span |-> X <-h- Z -g-> Y on components. Checks: well defined, injective,
  // surjective, and stabilization of the hammock side (inconclusive when
  // the bound is too small or unstable).
  Report compare_localization_models(MarkedRelCategory const& c, int x, int y, int max_length);
  Report compare_localization_models(MarkedRelCategory const& c, int max_length);  // all pairs

  //! The category of n-groupoids with all morphisms and the CFO marks.
  struct LocalizedCategory {
    CfoSample         sample;
    MarkedRelCategory marked;
  };

  // Marks W = weak equivalences, H = hypercovers (all levels), F =
  // fibrations, computed with the given cover class. Objects are named
  // "x0", "x1", ...; arrows "x0->x1#k".
  MarkedRelCategory marked_category_from_sample(CfoSample const& sample, CoverClass marks);

  // Enumerates n-groupoids with levels of size <= bound at truncation N
  // (default n + 2) under the site's own cover class; marks use `marks`.
  // Throws LimitExceeded beyond max_cells() objects or morphisms.
  LocalizedCategory localize_groupoid_category(Site const& site,
                                               int         n,
                                               std::size_t bound,
                                               CoverClass  marks,
                                               int         N = -1);

  // Same objects and morphisms, H computed under two cover classes. Passes
  // when every H-arrow of `smaller` is an H-arrow of `larger` and at least
  // one arrow is only in the larger class (witness listed).
  Report compare_hypercover_classes(CfoSample const& sample, CoverClass smaller, CoverClass larger);

}  // namespace ngrpd

#endif  // NGRPD_LOCALIZATION_HPP_
