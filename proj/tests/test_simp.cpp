#include <algorithm>
#include <set>

#include "doctest.h"
#include "ngrpd/errors.hpp"
#include "ngrpd/simp.hpp"

using namespace ngrpd;

namespace {

  long binomial(int n, int r) {
    long b = 1;
    for (int t = 1; t <= r; ++t) {
      b = b * (n - r + t) / t;
    }
    return b;
  }

  // All functions [m] -> [k], kept when nondecreasing: independent of
  // the incremental enumeration in the library.
  std::vector<std::vector<int>> brute_monotone(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int>              v(m + 1, 0);
    while (true) {
      if (std::is_sorted(v.begin(), v.end())) {
        out.push_back(v);
      }
      int q = m;
      while (q >= 0 && ++v[q] > k) {
        v[q] = 0;
        --q;
      }
      if (q < 0) {
        return out;
      }
    }
  }

  SimplicialObject z_nerve(int n, int N) {
    return nerve(group_category(FiniteGroup::cyclic(n)), N);
  }

  // Counts simplicial maps S -> X by depth-first assignment in order of
  // increasing level, checking each cell against the faces and degeneracy
  // relations of the cells assigned before it.
  struct BruteHom {
    FiniteSimplicialSet const&    s;
    SimplicialObject const&       x;
    int                           N;
    std::vector<std::vector<int>> value;
    std::size_t                   count = 0;

    bool consistent(int m, int c) const {
      int v = value[m][c];
      for (int i = 0; m >= 1 && i <= m; ++i) {
        if (x.face[m][i][v] != value[m - 1][s.face[m][i][c]]) {
          return false;
        }
      }
      for (int j = 0; m >= 1 && j < m; ++j) {
        for (std::size_t b = 0; b < s.size(m - 1); ++b) {
          if (s.degen[m - 1][j][b] == c && x.degen[m - 1][j][value[m - 1][b]] != v) {
            return false;
          }
        }
      }
      return true;
    }

    void run(int m, std::size_t c) {
      if (c == s.size(m)) {
        if (m == N) {
          ++count;
        } else {
          run(m + 1, 0);
        }
        return;
      }
      for (std::size_t v = 0; v < x.level[m].size(); ++v) {
        value[m][c] = static_cast<int>(v);
        if (consistent(m, static_cast<int>(c))) {
          run(m, c + 1);
        }
      }
    }
  };

  std::size_t brute_hom_count(FiniteSimplicialSet const& s, SimplicialObject const& x) {
    BruteHom b{s, x, std::min(s.N, x.N), {}};
    for (int m = 0; m <= b.N; ++m) {
      b.value.emplace_back(s.size(m), 0);
    }
    b.run(0, 0);
    return b.count;
  }

}  // namespace

TEST_CASE("ordinal maps") {
  for (int m = 0; m <= 4; ++m) {
    for (int k = 0; k <= 4; ++k) {
      auto maps = monotone_maps(m, k);
      CHECK(static_cast<long>(maps.size()) == binomial(m + k + 1, m + 1));
      auto brute = brute_monotone(m, k);
      REQUIRE(maps.size() == brute.size());
      for (std::size_t t = 0; t < maps.size(); ++t) {
        CHECK(maps[t].values == brute[t]);
      }
    }
  }
  CHECK(coface(2, 1).values == std::vector<int>{0, 2});
  CHECK(codegeneracy(1, 0).values == std::vector<int>{0, 0, 1});
  CHECK(compose(coface(2, 0), codegeneracy(1, 1)).values == std::vector<int>{1, 2, 2});
  CHECK_THROWS_AS(validate(OrdinalMap{2, {1, 0}}), InvalidInput);
}

TEST_CASE("standard simplices, boundaries and horns") {
  auto d0 = standard_simplex(0, 3);
  for (int m = 0; m <= 3; ++m) {
    CHECK(d0.size(m) == 1);
  }
  CHECK(standard_simplex(2, 3).size(1) == 6);
  CHECK(standard_simplex(1, 3).size(2) == 4);
  auto b2 = boundary(2, 3);
  CHECK(b2.size(1) == 6);
  CHECK(b2.size(2) == 9);
  auto b1 = boundary(1, 4);
  for (int m = 0; m <= 4; ++m) {
    CHECK(b1.size(m) == 2);
  }
  CHECK(horn(1, 0, 3).size(0) == 1);
  CHECK(horn(2, 1, 3).size(1) == 5);
  CHECK(boundary(0, 2).empty());
  CHECK_THROWS_AS(horn(2, 3, 2), InvalidInput);

  // Level sizes against the membership predicates evaluated on brute
  // enumeration; sub-set relations and where they are strict.
  for (int k = 1; k <= 4; ++k) {
    int  N  = 4;
    auto dk = standard_simplex(k, N);
    auto bk = boundary(k, N);
    validate(dk);
    validate(bk);
    for (int m = 0; m <= N; ++m) {
      std::size_t non_surj = 0;
      for (auto const& v : brute_monotone(m, k)) {
        non_surj += std::set<int>(v.begin(), v.end()).size() != static_cast<std::size_t>(k + 1);
      }
      CHECK(bk.size(m) == non_surj);
      CHECK((bk.size(m) == dk.size(m)) == (m < k));
    }
    for (int i = 0; i <= k; ++i) {
      auto h = horn(k, i, N);
      validate(h);
      bool strict = false;
      for (int m = 0; m <= N; ++m) {
        std::size_t in_horn = 0;
        bool        covers  = false;
        for (auto const& v : brute_monotone(m, k)) {
          std::set<int> im(v.begin(), v.end());
          bool surj = im.size() == static_cast<std::size_t>(k + 1);
          im.insert(i);
          bool member = im.size() != static_cast<std::size_t>(k + 1);
          in_horn += member;
          // An omitted face [k] \ {i} is covered by a non-surjective map.
          covers |= !surj && !member;
        }
        CHECK(h.size(m) == in_horn);
        CHECK((h.size(m) == bk.size(m)) == !covers);
        for (auto const& c : h.coords[m]) {
          CHECK(bk.cell_index(m, c) >= 0);
        }
        strict |= h.size(m) < bk.size(m);
      }
      CHECK(strict);
    }
  }
}

TEST_CASE("products of simplices") {
  auto p = product_simplex(1, 1, 3);
  validate(p);
  CHECK(p.size(1) == 9);
  int nondeg2 = 0;
  for (std::size_t c = 0; c < p.size(2); ++c) {
    nondeg2 += !p.is_degenerate(2, static_cast<int>(c));
  }
  CHECK(nondeg2 == 2);
  auto q = product_simplex(2, 0, 3);
  auto d = standard_simplex(2, 3);
  for (int m = 0; m <= 3; ++m) {
    CHECK(q.size(m) == d.size(m));
  }
  CHECK(are_isomorphic(from_simplicial_set(q), from_simplicial_set(d)));
}

TEST_CASE("nerves of groups") {
  auto x = z_nerve(2, 3);
  validate(x);
  CHECK(x.level[0].size() == 1);
  CHECK(x.level[1].size() == 2);
  CHECK(x.level[2].size() == 4);
  CHECK(x.level[3].size() == 8);
  auto l21 = matching_map(2, 1, truncate(x, 2));
  CHECK(l21.target.size() == 4);
  CHECK(is_bijective(l21.map, 4));
  auto l10 = matching_map(1, 0, x);
  CHECK(l10.target.size() == 1);
  CHECK(is_surjective(l10.map, 1));
  CHECK_FALSE(is_injective(l10.map, 1));
  for (int n : {2, 3}) {
    auto y = z_nerve(n, 3);
    for (int k = 1; k <= 3; ++k) {
      for (int i = 0; i <= k; ++i) {
        auto l = matching_map(k, i, y);
        CHECK(is_surjective(l.map, l.target.size()));
        if (k >= 2) {
          CHECK(is_bijective(l.map, l.target.size()));
        }
      }
    }
  }
}

TEST_CASE("Hom(S, X) against direct enumeration") {
  // X ranges over a nerve, a constant object, a standard simplex, the
  // boundary of a 2-simplex and a Cech nerve, all truncated at 3.
  auto u  = finset({"1", "2", "3"});
  auto v  = finset({"1", "2"});
  auto f  = finmap(u, v, {{"1", "1"}, {"2", "1"}, {"3", "2"}});
  std::vector<SimplicialObject> xs{z_nerve(2, 3),
                                   constant_object(Site::finsets(), v, 3),
                                   from_simplicial_set(standard_simplex(1, 3)),
                                   from_simplicial_set(boundary(2, 3)),
                                   cech_nerve(Site::finsets(), f, 3).source};
  std::vector<FiniteSimplicialSet> ss;
  for (int k = 0; k <= 3; ++k) {
    ss.push_back(standard_simplex(k, 3));
    ss.push_back(boundary(k, 3));
    for (int i = 0; k >= 1 && i <= k; ++i) {
      ss.push_back(horn(k, i, 3));
    }
  }
  for (auto const& x : xs) {
    for (auto const& s : ss) {
      auto h = hom_into(s, x);
      CHECK(h.object.size() == brute_hom_count(s, x));
    }
    for (int k = 0; k <= 3; ++k) {
      auto h = hom_into(standard_simplex(k, 3), x);
      CHECK(h.object.size() == x.level[k].size());
    }
  }
  auto hz = hom_into(horn(2, 1, 2), z_nerve(2, 2));
  CHECK(hz.object.size() == 4);
}

TEST_CASE("Hom over group actions and covers") {
  // The Cech nerve of a connected double cover of the figure-eight graph.
  auto site = Site::graphcov(BasedGraph::figure_eight());
  auto up   = spread_action(site.shape(), {"p", "q"}, {{1, 0}, {0, 1}});
  auto down = terminal(site);
  Morphism f{up, down, Map(up.size(), 0)};
  auto     c = cech_nerve(site, f, 2);
  validate(c);
  CHECK(c.source.level[1].size() == 4);
  auto l = matching_map(2, 1, c.source);
  CHECK(is_bijective(l.map, l.target.size()));
  validate(site, l.target);
}

TEST_CASE("boundary matching maps") {
  auto u = finset({"1", "2", "3"});
  auto v = finset({"1", "2"});
  auto f = cech_nerve(Site::finsets(), finmap(u, v, {{"1", "1"}, {"2", "1"}, {"3", "2"}}), 3);
  validate(f);
  for (int k = 0; k <= 3; ++k) {
    CHECK(f.source.level[k].size() == static_cast<std::size_t>((1 << (k + 1)) + 1));
    auto mu = boundary_matching_map(k, f);
    CHECK(is_surjective(mu.map, mu.target.size()));
  }
  CHECK(boundary_matching_map(0, f).map.size() == 3);
  auto id = identity(f.source);
  for (int k = 0; k <= 3; ++k) {
    auto mu = boundary_matching_map(k, id);
    CHECK(is_bijective(mu.map, mu.target.size()));
  }
}

TEST_CASE("extension by fillers") {
  for (int n : {2, 3}) {
    auto full = z_nerve(n, 4);
    auto ext  = extend_by_fillers(truncate(full, 2), 4);
    auto last = extend_by_fillers(truncate(full, 2), 4, 4);
    for (int k = 0; k <= 4; ++k) {
      long p = 1;
      for (int t = 0; t < k; ++t) {
        p *= n;
      }
      CHECK(ext.level[k].size() == static_cast<std::size_t>(p));
    }
    CHECK(are_isomorphic(truncate(ext, 3), truncate(full, 3)));
    CHECK(are_isomorphic(truncate(last, 3), truncate(ext, 3)));
    for (int k = 1; k <= 4; ++k) {
      for (int i = 0; i <= k; ++i) {
        auto l = matching_map(k, i, ext);
        if (k >= 2) {
          CHECK(is_bijective(l.map, l.target.size()));
        }
      }
    }
  }
  auto pt = constant_object(Site::finsets(), finset({"*"}), 2);
  auto e  = extend_by_fillers(pt, 4);
  for (int k = 0; k <= 4; ++k) {
    CHECK(e.level[k].size() == 1);
  }
  auto x = z_nerve(2, 2);
  CHECK(extend_by_fillers(x, 2) == x);
  // The nerve of the poset [1] is not a groupoid: its 2-horns do not
  // determine unique fillers.
  auto d1 = from_simplicial_set(standard_simplex(1, 2));
  CHECK_THROWS_AS(extend_by_fillers(d1, 3), InvalidInput);
}

TEST_CASE("simplicial identities are enforced") {
  auto x = z_nerve(2, 2);
  auto y = x;
  std::swap(y.face[2][0], y.face[2][2]);
  CHECK_THROWS_AS(validate(y), InvalidInput);
  // Standard simplices have no automorphisms besides the identity.
  for (int k = 0; k <= 3; ++k) {
    auto o = from_simplicial_set(standard_simplex(k, 3));
    CHECK(all_simplicial_morphisms(o, o, true).size() == 1);
    CHECK(all_simplicial_morphisms(o, o).size() == monotone_maps(k, k).size());
  }
}
