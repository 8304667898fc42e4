#ifndef NGRPD_GRPD_HPP_
#define NGRPD_GRPD_HPP_

// n-groupoids, fibrations, hypercovers and weak equivalences of truncated
// simplicial objects, with path objects and the CFO audits built on them.
//
// Every verdict is about the levels actually present: a certificate for
// "all k" lists the k it checked.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "simp.hpp"

namespace ngrpd {

  // n = infinity.
  inline constexpr int infinity = std::numeric_limits<int>::max();

  std::string n_to_string(int n);
  int         parse_n(std::string const& s);  // "inf", "infinity" or a number

  //! One matching map: a horn (i >= 0) or boundary (i = -1) instance.
  struct MatchingInstance {
    int  k            = 0;
    int  i            = -1;
    bool cover        = false;
    bool iso          = false;
    bool iso_required = false;
    json witness;

    bool ok() const {
      return cover && (iso || !iso_required);
    }
  };

  struct Certificate {
    std::string                   kind;
    int                           n     = 0;
    int                           N     = 0;
    int                           k_min = 0;
    int                           k_max = 0;
    std::vector<MatchingInstance> instances;
    bool                          holds = true;

    std::optional<MatchingInstance> first_failure() const;
    json                            to_json() const;
    Report                          report(std::string const& command) const;
  };

  // lambda^k_i(X) a cover for 1 <= k <= N, an isomorphism for k > n.
  // Throws Refused when N < n + 1 for finite n.
  Certificate groupoid_certificate(SimplicialObject const& x, int n);
  bool        is_n_groupoid(SimplicialObject const& x, int n);

  // Relative horn matching maps are covers for 1 <= k <= N.
  Certificate fibration_certificate(SimplicialMorphism const& f);
  bool        is_fibration(SimplicialMorphism const& f);

  // mu_k(f) a cover for 0 <= k <= min(N, max_k), an isomorphism for k >= n.
  Certificate hypercover_certificate(SimplicialMorphism const& f, int n, int max_k = infinity);
  bool        is_hypercover(SimplicialMorphism const& f, int n, int max_k = infinity);

  //! (P_n Y)_m = Hom(Delta^m x Delta^n, Y) for m <= N - n.
  //!
  //! For n >= 1, source_eval (d_1^*) evaluates at vertex 0 of Delta^n and
  //! target_eval (d_0^*) at vertex n; section is induced by the projection
  //! Delta^m x Delta^n -> Delta^m. All three are truncated at N - n.
  struct PathObject {
    int                               n = 1;
    SimplicialObject                  object;
    std::optional<SimplicialMorphism> source_eval;
    std::optional<SimplicialMorphism> target_eval;
    std::optional<SimplicialMorphism> section;
  };

  PathObject path_object(SimplicialObject const& y, int n = 1);

  //! f = q o r with P(f) = X x_{f, Y, d_1^*} P_1 Y, truncated at N - 1.
  struct Factorization {
    PathObject         path;
    SimplicialObject   path_space;
    SimplicialMorphism r;
    SimplicialMorphism q;
    bool               commutes = false;  // q o r equals f truncated at N - 1
  };

  Factorization mapping_path_factorization(SimplicialMorphism const& f);

  struct WeakEquivalenceVerdict {
    bool          holds = false;
    Factorization factorization;
    Certificate   hypercover;  // of q(f), over 0..N-1
  };

  WeakEquivalenceVerdict weak_equivalence(SimplicialMorphism const& f);
  bool                   is_weak_equivalence(SimplicialMorphism const& f);
  bool                   is_trivial_fibration(SimplicialMorphism const& f);

  struct MapClassification {
    bool fibration        = false;
    bool hypercover       = false;
    bool weak_equivalence = false;
    bool trivial_fibration = false;
    int  verified_to      = 0;
    json to_json() const;
  };
  MapClassification classify(SimplicialMorphism const& f);

  SimplicialObject   classifying_object(FiniteGroup const& g, int N);  // the nerve BG
  SimplicialObject   terminal_object(Site const& site, int N);
  SimplicialMorphism to_terminal(SimplicialObject const& x);

  //! Objects plus morphisms between them, all at the same truncation.
  struct CfoSample {
    std::vector<SimplicialObject>   objects;
    std::vector<SimplicialMorphism> morphisms;
    std::vector<std::string>        names;  // optional, one per object

    std::string name_of(SimplicialObject const& x) const;
    std::string describe(std::size_t morphism) const;
  };

  // Adds every simplicial morphism between the given objects.
  CfoSample sample_with_all_morphisms(std::vector<SimplicialObject> objects);

  // F1-F4 instance checks; n is the groupoid level the sample lives in.
  Report verify_cfo_axioms(CfoSample const& sample, int n);

  //! A functor on simplicial objects, given on the sample by tables and
  //! optionally everywhere by callables (used for pullback and product
  //! checks, whose apexes are usually outside the sample).
  struct SimplicialFunctor {
    std::string                                                         name;
    std::vector<SimplicialObject>                                       object_image;
    std::vector<std::vector<Map>>                                       morphism_image;
    std::function<SimplicialObject(SimplicialObject const&)>            on_object;
    std::function<std::vector<Map>(SimplicialMorphism const&)>          on_morphism;
  };

  // Applies a functor of sites level by level; the tables are filled from
  // the callables over the sample.
  SimplicialFunctor levelwise_functor(std::string                                  name,
                                      std::function<Site(Site const&)>             on_site,
                                      std::function<SiteObject(SiteObject const&)> on_object,
                                      std::function<Map(Morphism const&)>          on_map,
                                      CfoSample const&                             sample);
  SimplicialFunctor forgetful_functor(CfoSample const& sample);  // G-FinSets -> FinSets

  // Throws InvalidInput when the tables are not functorial on the sample.
  Report verify_exact_functor(SimplicialFunctor const& f, CfoSample const& sample);

}  // namespace ngrpd

#endif  // NGRPD_GRPD_HPP_
