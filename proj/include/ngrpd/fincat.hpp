#ifndef NGRPD_FINCAT_HPP_
#define NGRPD_FINCAT_HPP_

// Finite-data categories with covers and finite limits.
//
// All three built-in sites share one representation: an object is a finite
// set fibred over the vertices of a shape graph, with one transport map per
// shape edge taking the fibre over the edge's source bijectively onto the
// fibre over its target. A morphism is a fibre-preserving map commuting with
// every transport.
//
//   * FinSets:      shape = one vertex, no edges.
//   * G-FinSets:    shape = one vertex, one loop per group element (finite G)
//                   or per free generator (F_r); transports are the action.
//   * GraphCov(X):  shape = the base graph X; objects are finite covers.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "group.hpp"
#include "report.hpp"

namespace ngrpd {

  enum class SiteKind { finsets, gfinsets, graphcov };

  // Which morphisms count as covers.
  //   surjective  the standard class on every built-in site
  //   uniform     surjective with all fibres of the same size (finite
  //               covering maps of constant degree)
  //   injective   deliberately wrong; used as an audit fault fixture
  enum class CoverClass { surjective, uniform, injective };

  std::string to_string(CoverClass c);
  CoverClass  cover_class_from_string(std::string const& s);

  class Site {
   public:
    static Site finsets();
    static Site gfinsets(FiniteGroup group);
    // The free group on the given generator labels (acting on finite sets).
    static Site free_gfinsets(std::vector<std::string> generators);
    static Site graphcov(BasedGraph base);

    SiteKind kind() const noexcept {
      return _kind;
    }
    BasedGraph const& shape() const noexcept {
      return _shape;
    }
    std::optional<FiniteGroup> const& group() const noexcept {
      return _group;
    }
    CoverClass cover_class() const noexcept {
      return _covers;
    }
    Site with_cover_class(CoverClass c) const {
      Site s = *this;
      s._covers = c;
      return s;
    }
    std::string name() const;

    bool operator==(Site const& other) const {
      return _kind == other._kind && _shape == other._shape
             && _group == other._group && _covers == other._covers;
    }

   private:
    Site(SiteKind kind, BasedGraph shape) : _kind(kind), _shape(std::move(shape)) {}

    SiteKind                   _kind;
    BasedGraph                 _shape;
    std::optional<FiniteGroup> _group;
    CoverClass                 _covers = CoverClass::surjective;
  };

  //! An object of a site: a finite set of labelled elements, each lying over
  //! a shape vertex, with one transport per shape edge.
  //!
  //! Labels are kept sorted so that equal objects compare equal member-wise.
  //! `transport[e][x]` is -1 unless x lies over the source of edge e.
  struct SiteObject {
    std::vector<std::string>      labels;
    std::vector<int>              fibre;
    std::vector<std::vector<int>> transport;

    std::size_t size() const noexcept {
      return labels.size();
    }
    bool empty() const noexcept {
      return labels.empty();
    }
    int  index_of(std::string const& label) const;
    bool operator==(SiteObject const&) const = default;
  };

  using Map = std::vector<int>;

  //! A morphism between two site objects, stored as an index map.
  struct Morphism {
    SiteObject source;
    SiteObject target;
    Map        map;

    bool operator==(Morphism const&) const = default;
  };

  //! Accumulates elements under provisional ids, then sorts labels.
  //!
  //! `finish()` returns the object and fills `final_index` so that callers can
  //! translate maps expressed in provisional ids.
  class ObjectBuilder {
   public:
    explicit ObjectBuilder(std::size_t edge_count) : _transport(edge_count) {}

    int  add(std::string label, int fibre);
    void set_transport(int edge, int from, int to);

    SiteObject       finish();
    std::vector<int> final_index;

   private:
    std::vector<std::string>      _labels;
    std::vector<int>              _fibre;
    std::vector<std::vector<int>> _transport;
  };

  // A FinSets object from arbitrary labels (sorted, duplicates rejected).
  SiteObject finset(std::vector<std::string> labels);
  // A FinSets map given as a label assignment.
  Morphism finmap(SiteObject const&                         source,
                  SiteObject const&                         target,
                  std::map<std::string, std::string> const& assignment);

  // Throws InvalidInput when `obj` violates the site's structure: unsorted or
  // duplicate labels, bad fibres, transports that are not bijections between
  // fibres, or (finite G) an action violating the group laws.
  void validate(Site const& site, SiteObject const& obj);
  bool is_morphism(Site const&       site,
                   SiteObject const& source,
                   SiteObject const& target,
                   Map const&        map);
  void validate(Site const& site, Morphism const& f);

  // Compact description of a map for report witnesses:
  // {"source":[...], "target":[...], "map":{label: label}}.
  json describe(Morphism const& f);
  json describe(SiteObject const& obj);

  Map compose(Map const& g, Map const& f);  // g after f
  Map identity_map(std::size_t n);

  SiteObject terminal(Site const& site);
  Morphism   to_terminal(Site const& site, SiteObject const& obj);

  //! Canonical fibre product A x_C B with labels "(a,b)".
  struct PullbackResult {
    SiteObject apex;
    Map        proj_a;
    Map        proj_b;

    // The unique factorisation of a compatible cone (u: T -> A, v: T -> B);
    // throws InvalidInput if the cone does not commute.
    Map mediate(Map const& u, Map const& v) const;

    std::map<std::pair<int, int>, int> index;
  };

  PullbackResult pullback(SiteObject const& a,
                          SiteObject const& b,
                          Map const&        f,
                          Map const&        g);
  PullbackResult pullback(Site const& site, Morphism const& f, Morphism const& g);
  PullbackResult product(Site const& site, SiteObject const& a, SiteObject const& b);

  //! Quotient of A by the smallest transport-stable equivalence relation
  //! identifying p(r) and q(r) for every r in R.
  struct CoequalizerResult {
    SiteObject quotient;
    Map        projection;
  };
  CoequalizerResult coequalizer(SiteObject const& a, Map const& p, Map const& q);

  bool is_surjective(Map const& f, std::size_t target_size);
  bool is_injective(Map const& f, std::size_t target_size);
  bool is_bijective(Map const& f, std::size_t target_size);

  bool is_cover(Site const& site, Map const& f, std::size_t target_size);
  bool is_cover(Site const& site, Morphism const& f);
  // Morphisms in these sites are isomorphisms iff bijective.
  bool is_isomorphism(Morphism const& f);

  // Builds the kernel pair, coequalizes it, and tests whether the comparison
  // map to the target is an isomorphism.
  bool is_effective_epi(Site const& site, Morphism const& f);

  // Every morphism A -> B in the site, in lexicographic order of index maps.
  std::vector<Map> all_morphisms(Site const&       site,
                                 SiteObject const& a,
                                 SiteObject const& b);
  std::optional<Map> find_isomorphism(Site const&       site,
                                      SiteObject const& a,
                                      SiteObject const& b);
  bool are_isomorphic(Site const& site, SiteObject const& a, SiteObject const& b);

  // Builds an object over a based shape from permutations of the fibre over
  // the basepoint, one per generator (non-tree edge), by spreading along the
  // spanning tree. Elements over the basepoint keep their labels; the copy of
  // x over another vertex v is labelled "x@v".
  SiteObject spread_action(BasedGraph const&                    shape,
                           std::vector<std::string> const&      fibre,
                           std::vector<std::vector<int>> const& perms);

  //! A finite family of objects and morphisms to audit axioms against.
  struct Probe {
    std::vector<SiteObject> objects;
    std::vector<Morphism>   morphisms;
    // Cone apices for the universal-property check are the probe objects
    // with at most this many elements.
    std::size_t cone_apex_max_size = 2;
  };

  // All objects of the site with at most `max_size` elements up to
  // isomorphism (labels "0", "1", ... over the basepoint) and every
  // morphism between them. For GraphCov the size is the degree.
  Probe                   enumerate_probe(Site const& site, std::size_t max_size);
  std::vector<SiteObject> enumerate_objects(Site const& site, std::size_t max_size);  // no morphisms

  // Instance-checks C0 (pullbacks and their universal property), C1, C2, C3
  // and C4 over the probe.
  Report audit_site_axioms(Site const& site, Probe const& probe);

}  // namespace ngrpd

#endif  // NGRPD_FINCAT_HPP_
