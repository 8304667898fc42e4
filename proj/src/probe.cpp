// Bounded enumeration of site objects and the axiom audit over probes.

#include <algorithm>
#include <numeric>

#include "ngrpd/errors.hpp"
#include "ngrpd/fincat.hpp"

namespace ngrpd {

  namespace {

    std::vector<std::vector<int>> all_permutations(std::size_t n) {
      std::vector<std::vector<int>> out;
      std::vector<int>              p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        out.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }

    std::vector<int> conjugate(std::vector<int> const& p, std::vector<int> const& sigma) {
      std::vector<int> q(p.size());
      for (std::size_t x = 0; x < p.size(); ++x) {
        q[sigma[x]] = sigma[p[x]];
      }
      return q;
    }

    std::vector<std::string> numbered(std::size_t n) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
      }
      return out;
    }

    // r-tuples of permutations of n points, one per simultaneous-conjugacy
    // class (the lexicographically least member).
    std::vector<std::vector<std::vector<int>>> tuples_up_to_conjugacy(std::size_t rank,
                                                                      std::size_t n) {
      auto                                       perms = all_permutations(n);
      std::vector<std::vector<std::vector<int>>> out;
      std::vector<std::size_t>                   idx(rank, 0);
      while (true) {
        std::vector<std::vector<int>> tuple;
        for (auto i : idx) {
          tuple.push_back(perms[i]);
        }
        bool minimal = true;
        for (auto const& sigma : perms) {
          std::vector<std::vector<int>> conj;
          for (auto const& p : tuple) {
            conj.push_back(conjugate(p, sigma));
          }
          if (conj < tuple) {
            minimal = false;
            break;
          }
        }
        if (minimal) {
          out.push_back(tuple);
        }
        std::size_t k = 0;
        while (k < rank && ++idx[k] == perms.size()) {
          idx[k++] = 0;
        }
        if (k == rank) {
          break;
        }
      }
      return out;
    }

    // Transitive G-sets G/H up to isomorphism, as permutation tables
    // indexed by group element.
    std::vector<std::vector<std::vector<int>>> transitive_gsets(Site const&        site,
                                                                FiniteGroup const& g) {
      int n = static_cast<int>(g.order());
      if (n > 16) {
        throw Refused("subgroup enumeration is limited to groups of order <= 16");
      }
      std::vector<std::vector<std::vector<int>>> types;
      std::vector<SiteObject>                    seen;
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!(mask >> g.identity() & 1u)) {
          continue;
        }
        bool closed = true;
        for (int a = 0; a < n && closed; ++a) {
          for (int b = 0; b < n && closed; ++b) {
            if ((mask >> a & 1u) && (mask >> b & 1u)) {
              closed = mask >> g.multiply(a, b) & 1u;
            }
          }
        }
        if (!closed) {
          continue;
        }
        // Left cosets aH, identified by their sorted member lists.
        std::vector<std::vector<int>> cosets;
        for (int a = 0; a < n; ++a) {
          std::vector<int> c;
          for (int h = 0; h < n; ++h) {
            if (mask >> h & 1u) {
              c.push_back(g.multiply(a, h));
            }
          }
          std::sort(c.begin(), c.end());
          if (std::find(cosets.begin(), cosets.end(), c) == cosets.end()) {
            cosets.push_back(c);
          }
        }
        std::vector<std::vector<int>> action(n, std::vector<int>(cosets.size()));
        for (int a = 0; a < n; ++a) {
          for (std::size_t c = 0; c < cosets.size(); ++c) {
            std::vector<int> moved;
            for (int m : cosets[c]) {
              moved.push_back(g.multiply(a, m));
            }
            std::sort(moved.begin(), moved.end());
            action[a][c] = static_cast<int>(
                std::find(cosets.begin(), cosets.end(), moved) - cosets.begin());
          }
        }
        auto obj = spread_action(site.shape(), numbered(cosets.size()), action);
        bool dup = std::any_of(seen.begin(), seen.end(), [&](SiteObject const& s) {
          return are_isomorphic(site, s, obj);
        });
        if (!dup) {
          seen.push_back(obj);
          types.push_back(std::move(action));
        }
      }
      return types;
    }

    void gset_combinations(std::vector<std::vector<std::vector<int>>> const& types,
                           std::size_t                                       first,
                           std::size_t                                       budget,
                           std::vector<std::size_t>&                         chosen,
                           std::vector<std::vector<std::size_t>>&            out) {
      out.push_back(chosen);
      for (std::size_t t = first; t < types.size(); ++t) {
        std::size_t size = types[t].front().size();
        if (size <= budget) {
          chosen.push_back(t);
          gset_combinations(types, t, budget - size, chosen, out);
          chosen.pop_back();
        }
      }
    }

  }  // namespace

  std::vector<SiteObject> enumerate_objects(Site const& site, std::size_t max_size) {
    Probe probe;
    if (auto const& g = site.group()) {
      auto                                  types = transitive_gsets(site, *g);
      std::vector<std::vector<std::size_t>> combos;
      std::vector<std::size_t>              chosen;
      gset_combinations(types, 0, max_size, chosen, combos);
      for (auto const& combo : combos) {
        std::vector<std::vector<int>> action(g->order());
        std::size_t                   offset = 0;
        for (auto t : combo) {
          for (std::size_t a = 0; a < g->order(); ++a) {
            for (int y : types[t][a]) {
              action[a].push_back(static_cast<int>(offset) + y);
            }
          }
          offset += types[t].front().size();
        }
        probe.objects.push_back(spread_action(site.shape(), numbered(offset), action));
      }
    } else {
      std::size_t rank = site.shape().generators().size();
      for (std::size_t n = 0; n <= max_size; ++n) {
        for (auto const& tuple : tuples_up_to_conjugacy(rank, n)) {
          probe.objects.push_back(spread_action(site.shape(), numbered(n), tuple));
        }
      }
    }
    return probe.objects;
  }

  Probe enumerate_probe(Site const& site, std::size_t max_size) {
    Probe probe;
    probe.objects = enumerate_objects(site, max_size);
    for (auto const& a : probe.objects) {
      for (auto const& b : probe.objects) {
        for (auto& m : all_morphisms(site, a, b)) {
          probe.morphisms.push_back({a, b, std::move(m)});
        }
      }
    }
    return probe;
  }

  Report audit_site_axioms(Site const& site, Probe const& probe) {
    Report report("audit-site " + site.name());
    report.set_range("objects", probe.objects.size());
    report.set_range("morphisms", probe.morphisms.size());
    report.set_range("cone_apex_max_size", probe.cone_apex_max_size);
    report.note("axiom instances are checked over the supplied probe only");
    if (probe.objects.empty() && probe.morphisms.empty()) {
      return report;
    }
    for (char const* check : {"C0 pullback exists and is universal", "C1 terminal map is a cover",
                              "C1 terminal map is unique", "C2 pullback of a cover is a cover",
                              "C3 cancellation", "C4 covers are effective epimorphisms"}) {
      report.declare(check);
    }

    auto        term      = terminal(site);
    std::size_t c1_exempt = 0;
    for (auto const& x : probe.objects) {
      auto maps = all_morphisms(site, x, term);
      report.record("C1 terminal map is unique", maps.size() == 1, describe(x));
      auto t = to_terminal(site, x);
      // An object with an empty fibre admits no surjection onto the
      // terminal object; C1 is audited on the remaining objects.
      if (!is_surjective(t.map, t.target.size())) {
        ++c1_exempt;
        continue;
      }
      report.record("C1 terminal map is a cover", is_cover(site, t), describe(t));
    }

    report.set_range("C1 exempt objects with an empty fibre", c1_exempt);

    std::vector<SiteObject const*> apices;
    for (auto const& x : probe.objects) {
      if (x.size() <= probe.cone_apex_max_size) {
        apices.push_back(&x);
      }
    }

    auto const& ms = probe.morphisms;
    // Object indices of morphism ends, so that equality tests are cheap.
    auto object_index = [&](SiteObject const& x) -> int {
      for (std::size_t k = 0; k < probe.objects.size(); ++k) {
        if (probe.objects[k] == x) {
          return static_cast<int>(k);
        }
      }
      return -1;
    };
    std::vector<int>  src(ms.size()), tgt(ms.size());
    std::vector<char> cover(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      src[i]   = object_index(ms[i].source);
      tgt[i]   = object_index(ms[i].target);
      cover[i] = is_cover(site, ms[i]);
    }
    // Maps from each cone apex into each probe object, computed once.
    std::map<std::pair<std::size_t, int>, std::vector<Map>> apex_maps;
    auto maps_into = [&](std::size_t t, int k, SiteObject const& x) -> std::vector<Map> const& {
      auto key = std::make_pair(t, k);
      auto it  = apex_maps.find(key);
      if (it == apex_maps.end() || k < 0) {
        it = apex_maps.insert_or_assign(key, all_morphisms(site, *apices[t], x)).first;
      }
      return it->second;
    };

    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = 0; j < ms.size(); ++j) {
        auto const& f = ms[i];
        auto const& g = ms[j];
        bool same_target = tgt[i] >= 0 ? tgt[i] == tgt[j] : f.target == g.target;
        if (same_target) {
          auto pb = pullback(f.source, g.source, f.map, g.map);
          bool ok = compose(f.map, pb.proj_a) == compose(g.map, pb.proj_b)
                    && is_morphism(site, pb.apex, f.source, pb.proj_a)
                    && is_morphism(site, pb.apex, g.source, pb.proj_b);
          json witness;
          for (std::size_t t = 0; t < apices.size() && ok; ++t) {
            auto const& to_a = maps_into(t, src[i], f.source);
            auto const& to_b = maps_into(t, src[j], g.source);
            auto        to_p = all_morphisms(site, *apices[t], pb.apex);
            std::map<std::pair<Map, Map>, int> factorisations;
            for (auto const& m : to_p) {
              ++factorisations[{compose(pb.proj_a, m), compose(pb.proj_b, m)}];
            }
            std::map<Map, std::vector<Map const*>> by_composite;
            for (auto const& v : to_b) {
              by_composite[compose(g.map, v)].push_back(&v);
            }
            for (auto const& u : to_a) {
              auto hit = by_composite.find(compose(f.map, u));
              if (hit == by_composite.end()) {
                continue;
              }
              for (auto const* v : hit->second) {
                auto it = factorisations.find({u, *v});
                if (it == factorisations.end() || it->second != 1) {
                  ok      = false;
                  witness = {{"apex", apices[t]->labels}, {"u", u}, {"v", *v}};
                  break;
                }
              }
              if (!ok) {
                break;
              }
            }
          }
          report.record("C0 pullback exists and is universal", ok,
                        ok ? json() : json{{"f", describe(f)}, {"g", describe(g)}, {"cone", witness}});
          if (cover[i]) {
            bool c2 = is_cover(site, pb.proj_b, g.source.size());
            report.record("C2 pullback of a cover is a cover", c2,
                          c2 ? json() : json{{"cover", describe(f)}, {"along", describe(g)}});
          }
        }
        // C3 for the composable pair f: A -> B, g: B -> C.
        bool composable = src[j] >= 0 ? tgt[i] == src[j] : f.target == g.source;
        if (composable && cover[i]) {
          Map gf = compose(g.map, f.map);
          if (is_cover(site, gf, g.target.size())) {
            bool c3 = cover[j];
            report.record("C3 cancellation", c3,
                          c3 ? json() : json{{"f", describe(f)}, {"g", describe(g)}});
          }
        }
      }
      if (cover[i]) {
        bool c4 = is_effective_epi(site, ms[i]);
        report.record("C4 covers are effective epimorphisms", c4, c4 ? json() : describe(ms[i]));
      }
    }
    return report;
  }

}  // namespace ngrpd
