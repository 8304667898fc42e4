#include <algorithm>
#include <set>

#include "doctest.h"
#include "ngrpd/errors.hpp"
#include "ngrpd/fincat.hpp"

using namespace ngrpd;

namespace {

  SiteObject regular_z2(Site const& site) {
    // Z/2 acting on {0,1} by swapping; transports indexed by group element.
    return spread_action(site.shape(), {"0", "1"}, {{0, 1}, {1, 0}});
  }

  std::size_t orbit_count(SiteObject const& obj) {
    std::vector<int> comp(obj.size(), -1);
    std::size_t      count = 0;
    for (std::size_t s = 0; s < obj.size(); ++s) {
      if (comp[s] >= 0) {
        continue;
      }
      std::vector<int> stack{static_cast<int>(s)};
      comp[s] = static_cast<int>(count);
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto const& t : obj.transport) {
          if (t[x] >= 0 && comp[t[x]] < 0) {
            comp[t[x]] = static_cast<int>(count);
            stack.push_back(t[x]);
          }
        }
      }
      ++count;
    }
    return count;
  }

}  // namespace

TEST_CASE("terminal objects") {
  SUBCASE("FinSets terminal is {*} with a unique map from every set") {
    auto site = Site::finsets();
    auto t    = terminal(site);
    CHECK(t.labels == std::vector<std::string>{"*"});
    for (std::size_t n = 0; n <= 3; ++n) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("a" + std::to_string(i));
      }
      CHECK(all_morphisms(site, finset(labels), t).size() == 1);
    }
  }
  SUBCASE("GraphCov terminal is the identity cover") {
    auto site = Site::graphcov(BasedGraph::theta());
    auto t    = terminal(site);
    CHECK(t.labels == std::vector<std::string>{"u", "v"});
    CHECK_NOTHROW(validate(site, t));
    for (std::size_t e = 0; e < 3; ++e) {
      CHECK(t.transport[e][t.index_of("u")] == t.index_of("v"));
    }
  }
  SUBCASE("Z/2-FinSets terminal is a fixed point") {
    auto site = Site::gfinsets(FiniteGroup::cyclic(2));
    auto t    = terminal(site);
    CHECK(t.size() == 1);
    CHECK_NOTHROW(validate(site, t));
    CHECK(all_morphisms(site, regular_z2(site), t).size() == 1);
  }
}

TEST_CASE("pullbacks in FinSets") {
  auto site = Site::finsets();
  auto a    = finset({"x", "y"});
  auto b    = finset({"z"});
  auto c    = finset({"c"});
  auto f    = finmap(a, c, {{"x", "c"}, {"y", "c"}});
  auto g    = finmap(b, c, {{"z", "c"}});
  auto pb   = pullback(site, f, g);
  // Oracle: every pair with equal image.
  std::vector<std::string> expected;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (f.map[i] == g.map[j]) {
        expected.push_back("(" + a.labels[i] + "," + b.labels[j] + ")");
      }
    }
  }
  std::sort(expected.begin(), expected.end());
  CHECK(pb.apex.labels == expected);
  CHECK(pb.apex.labels == std::vector<std::string>{"(x,z)", "(y,z)"});
  CHECK(compose(f.map, pb.proj_a) == compose(g.map, pb.proj_b));

  SUBCASE("pullback along the identity recovers the source") {
    Morphism id{c, c, identity_map(c.size())};
    auto     p = pullback(site, f, id);
    CHECK(are_isomorphic(site, p.apex, a));
    CHECK(compose(f.map, p.proj_a) == p.proj_b);
  }
  SUBCASE("mediating morphism of a non-commuting cone is rejected") {
    auto d = finset({"c", "d"});
    auto h = finmap(a, d, {{"x", "c"}, {"y", "d"}});
    auto k = finmap(b, d, {{"z", "d"}});
    auto p = pullback(site, h, k);
    CHECK(p.apex.labels == std::vector<std::string>{"(y,z)"});
    CHECK_THROWS_AS(p.mediate({0}, {0}), InvalidInput);
    CHECK(p.mediate({1}, {0}) == Map{0});
  }
  SUBCASE("empty apex is legal") {
    auto d = finset({"c", "d"});
    auto h = finmap(a, d, {{"x", "c"}, {"y", "c"}});
    auto k = finmap(b, d, {{"z", "d"}});
    CHECK(pullback(site, h, k).apex.empty());
  }
}

TEST_CASE("pullback of Z/2-sets carries the diagonal action") {
  auto site = Site::gfinsets(FiniteGroup::cyclic(2));
  auto reg  = regular_z2(site);
  auto pt   = to_terminal(site, reg);
  auto pb   = pullback(site, pt, pt);
  CHECK(pb.apex.size() == 4);
  CHECK_NOTHROW(validate(site, pb.apex));
  CHECK(orbit_count(pb.apex) == 2);
  // Brute-force orbit count on the pair set with the diagonal action.
  std::set<std::set<std::pair<int, int>>> orbits;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      orbits.insert(std::set<std::pair<int, int>>{{x, y}, {1 - x, 1 - y}});
    }
  }
  CHECK(orbits.size() == 2);
}

TEST_CASE("covers and effective epimorphisms") {
  auto site = Site::finsets();
  auto xy   = finset({"x", "y"});
  auto x    = finset({"x"});
  auto c    = finset({"c"});
  auto cd   = finset({"c", "d"});
  auto surj = finmap(xy, c, {{"x", "c"}, {"y", "c"}});
  auto inj  = finmap(x, cd, {{"x", "c"}});
  CHECK(is_cover(site, surj));
  CHECK_FALSE(is_cover(site, inj));
  CHECK(is_effective_epi(site, surj));
  CHECK_FALSE(is_effective_epi(site, inj));

  SUBCASE("empty source is a cover only onto the empty set") {
    auto e = finset({});
    CHECK(is_cover(site, Morphism{e, e, {}}));
    CHECK_FALSE(is_cover(site, Morphism{e, c, {}}));
  }
  SUBCASE("equivariant collapse of the regular Z/2-set is an effective epi") {
    auto g   = Site::gfinsets(FiniteGroup::cyclic(2));
    auto reg = regular_z2(g);
    auto t   = to_terminal(g, reg);
    CHECK(is_cover(g, t));
    CHECK(is_effective_epi(g, t));
  }
  SUBCASE("connected double cover of the figure-eight covers the base") {
    auto g   = Site::graphcov(BasedGraph::figure_eight());
    auto dbl = spread_action(g.shape(), {"1", "2"}, {{1, 0}, {0, 1}});
    CHECK_NOTHROW(validate(g, dbl));
    auto p = to_terminal(g, dbl);
    CHECK(is_morphism(g, p.source, p.target, p.map));
    CHECK(is_cover(g, p));
    CHECK(is_effective_epi(g, p));
  }
  SUBCASE("uniform covers require equal fibre sizes") {
    auto u   = site.with_cover_class(CoverClass::uniform);
    auto xyz = finset({"x", "y", "z"});
    auto f   = finmap(xyz, cd, {{"x", "c"}, {"y", "c"}, {"z", "d"}});
    CHECK(is_cover(site, f));
    CHECK_FALSE(is_cover(u, f));
    CHECK(is_cover(u, surj));
  }
}

TEST_CASE("coequalizers close under transports") {
  auto site = Site::graphcov(BasedGraph::figure_eight());
  // Two disjoint trivial sheets 0,1 and a swapped pair 2,3.
  auto obj = spread_action(site.shape(), {"0", "1", "2", "3"},
                           {{0, 1, 3, 2}, {0, 1, 2, 3}});
  auto r   = coequalizer(obj, {2}, {3});
  CHECK(r.quotient.size() == 3);
  CHECK_NOTHROW(validate(site, r.quotient));
  CHECK(is_morphism(site, obj, r.quotient, r.projection));
}

TEST_CASE("site validation rejects malformed objects") {
  auto site = Site::graphcov(BasedGraph::figure_eight());
  auto obj  = spread_action(site.shape(), {"1", "2"}, {{1, 0}, {0, 1}});
  obj.transport[0][1] = 1;  // not injective
  CHECK_THROWS_AS(validate(site, obj), InvalidInput);
  CHECK_THROWS_AS(spread_action(site.shape(), {"1", "2"}, {{0, 0}, {0, 1}}), InvalidInput);

  auto z2 = Site::gfinsets(FiniteGroup::cyclic(2));
  auto bad = spread_action(z2.shape(), {"0", "1"}, {{1, 0}, {1, 0}});  // identity acts
  CHECK_THROWS_AS(validate(z2, bad), InvalidInput);
}

TEST_CASE("axiom audits") {
  SUBCASE("FinSets up to size 3 passes every instance") {
    auto site  = Site::finsets();
    auto probe = enumerate_probe(site, 3);
    CHECK(probe.objects.size() == 4);
    auto report = audit_site_axioms(site, probe);
    CHECK(report.passed());
    CHECK(report.passes("C4 covers are effective epimorphisms") > 0);
    CHECK(report.passes("C3 cancellation") > 0);
  }
  SUBCASE("covers := injections fails C4 with a witness") {
    auto site   = Site::finsets().with_cover_class(CoverClass::injective);
    auto report = audit_site_axioms(site, enumerate_probe(Site::finsets(), 2));
    CHECK_FALSE(report.passed());
    CHECK(report.failures("C4 covers are effective epimorphisms") > 0);
    auto w = report.first_witness("C4 covers are effective epimorphisms");
    REQUIRE(w.is_object());
    CHECK(w["source"].size() < w["target"].size());
  }
  SUBCASE("empty probe is a vacuous pass") {
    auto report = audit_site_axioms(Site::finsets(), Probe{});
    CHECK(report.passed());
    CHECK(report.instances() == 0);
  }
}

TEST_CASE("covers are effective epis and pullbacks are symmetric on all sites") {
  std::vector<std::pair<Site, std::size_t>> sites = {
      {Site::finsets(), 4},
      {Site::gfinsets(FiniteGroup::cyclic(2)), 4},
      {Site::graphcov(BasedGraph::figure_eight()), 3}};
  for (auto const& [site, bound] : sites) {
    auto probe = enumerate_probe(site, bound);
    for (auto const& f : probe.morphisms) {
      if (is_cover(site, f)) {
        CHECK(is_effective_epi(site, f));
      }
    }
    // apex(f,g) is isomorphic to apex(g,f) by swapping coordinates.
    std::size_t checked = 0;
    for (std::size_t i = 0; i < probe.morphisms.size() && checked < 200; i += 3) {
      for (std::size_t j = 0; j < probe.morphisms.size() && checked < 200; j += 5) {
        auto const& f = probe.morphisms[i];
        auto const& g = probe.morphisms[j];
        if (f.target == g.target) {
          auto p = pullback(f.source, g.source, f.map, g.map);
          auto q = pullback(g.source, f.source, g.map, f.map);
          CHECK(are_isomorphic(site, p.apex, q.apex));
          ++checked;
        }
      }
    }
  }
}
