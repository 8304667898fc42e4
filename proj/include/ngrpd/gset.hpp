#ifndef NGRPD_GSET_HPP_
#define NGRPD_GSET_HPP_

// Finite G-sets for finite groups and for free groups of finite rank.
//
// Groups act on the left. A G-set is stored as one permutation of the
// carrier per group element (finite G) or per generator (free G); in either
// case it converts losslessly to a SiteObject of the matching G-FinSets site.

#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "group.hpp"

namespace ngrpd {

  struct GSet {
    std::vector<std::string>      carrier;  // sorted
    std::vector<std::vector<int>> action;   // action[g][x]

    bool operator==(GSet const&) const = default;
  };

  struct EquivariantMap {
    GSet source;
    GSet target;
    Map  underlying;
  };

  // Reduced words in a free group: letter k+1 is generator k, -(k+1) its
  // inverse.
  using Word = std::vector<int>;
  Word reduce(Word w);

  //! An action of the free group F_r on a finite set, determined by the
  //! images of the r generators.
  struct FreeGroupAction {
    std::vector<std::string>      carrier;
    std::vector<std::vector<int>> perms;

    std::size_t rank() const noexcept {
      return perms.size();
    }
    // The action of w on x; the rightmost letter acts first.
    int act(Word const& w, int x) const;

    bool operator==(FreeGroupAction const&) const = default;
  };

  // Validates that every generator image is a bijection of the carrier.
  FreeGroupAction free_group_action(std::size_t                   rank,
                                    std::vector<std::string>      carrier,
                                    std::vector<std::vector<int>> perms);

  // Orbits as index lists, each sorted, ordered by least member.
  std::vector<std::vector<int>> orbits(FreeGroupAction const& a);
  std::vector<std::vector<int>> orbits(FiniteGroup const& g, GSet const& s);
  // Connected components of an object under its transports (both ways).
  std::vector<std::vector<int>> orbits(SiteObject const& obj);

  // Reduced words of length at most max_length fixing x, in shortlex order.
  std::vector<Word> stabilizer_words(FreeGroupAction const& a, int x, std::size_t max_length);

  // Left regular action of g on itself.
  GSet regular_gset(FiniteGroup const& g);
  GSet trivial_gset(FiniteGroup const& g, std::vector<std::string> carrier);
  void validate(FiniteGroup const& g, GSet const& s);

  bool is_equivariant(FiniteGroup const& g,
                      Map const&         f,
                      GSet const&        source,
                      GSet const&        target);
  bool is_equivariant(FiniteGroup const& g, EquivariantMap const& f);

  // Conversions to and from the G-FinSets site objects.
  SiteObject      to_site_object(Site const& site, GSet const& s);
  GSet            to_gset(SiteObject const& obj);
  Site            free_site(std::size_t rank);  // generators "g0", "g1", ...
  SiteObject      to_site_object(Site const& site, FreeGroupAction const& a);
  FreeGroupAction to_free_action(SiteObject const& obj);

  // A carrier bijection conjugating a into b, found by exhaustive search.
  std::optional<Map> find_conjugacy(FreeGroupAction const& a, FreeGroupAction const& b);

}  // namespace ngrpd

#endif  // NGRPD_GSET_HPP_
