#include "ngrpd/gset.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  Word reduce(Word w) {
    Word out;
    for (int letter : w) {
      if (!out.empty() && out.back() == -letter) {
        out.pop_back();
      } else {
        out.push_back(letter);
      }
    }
    return out;
  }

  int FreeGroupAction::act(Word const& w, int x) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int letter = *it;
      if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > perms.size()) {
        throw InvalidInput("word letter out of range");
      }
      auto const& p = perms[std::abs(letter) - 1];
      if (letter > 0) {
        x = p[x];
      } else {
        x = static_cast<int>(std::find(p.begin(), p.end(), x) - p.begin());
      }
    }
    return x;
  }

  FreeGroupAction free_group_action(std::size_t                   rank,
                                    std::vector<std::string>      carrier,
                                    std::vector<std::vector<int>> perms) {
    if (perms.size() != rank) {
      throw InvalidInput("expected " + std::to_string(rank) + " generator images");
    }
    for (std::size_t k = 0; k < rank; ++k) {
      std::vector<char> hit(carrier.size(), 0);
      if (perms[k].size() != carrier.size()) {
        throw InvalidInput("generator " + std::to_string(k) + " image has the wrong length");
      }
      for (int y : perms[k]) {
        if (y < 0 || static_cast<std::size_t>(y) >= carrier.size() || hit[y]++) {
          throw InvalidInput("generator " + std::to_string(k) + " is not a bijection");
        }
      }
    }
    return {std::move(carrier), std::move(perms)};
  }

  namespace {
    std::vector<std::vector<int>> components(std::size_t                          n,
                                             std::vector<std::vector<int>> const& maps,
                                             std::vector<std::string> const&      labels) {
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      };
      for (auto const& m : maps) {
        for (std::size_t x = 0; x < n; ++x) {
          if (m[x] >= 0) {
            parent[find(static_cast<int>(x))] = find(m[x]);
          }
        }
      }
      std::map<int, std::vector<int>> groups;
      for (std::size_t x = 0; x < n; ++x) {
        groups[find(static_cast<int>(x))].push_back(static_cast<int>(x));
      }
      std::vector<std::vector<int>> out;
      for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(),
                  [&](int a, int b) { return labels[a] < labels[b]; });
        out.push_back(std::move(members));
      }
      std::sort(out.begin(), out.end(), [&](auto const& a, auto const& b) {
        return labels[a.front()] < labels[b.front()];
      });
      return out;
    }
  }  // namespace

  std::vector<std::vector<int>> orbits(FreeGroupAction const& a) {
    return components(a.carrier.size(), a.perms, a.carrier);
  }

  std::vector<std::vector<int>> orbits(FiniteGroup const&, GSet const& s) {
    return components(s.carrier.size(), s.action, s.carrier);
  }

  std::vector<std::vector<int>> orbits(SiteObject const& obj) {
    return components(obj.size(), obj.transport, obj.labels);
  }

  std::vector<Word> stabilizer_words(FreeGroupAction const& a, int x, std::size_t max_length) {
    std::vector<Word> out;
    std::vector<Word> frontier{{}};
    int               r = static_cast<int>(a.rank());
    for (std::size_t len = 0; len <= max_length; ++len) {
      std::vector<Word> next;
      for (auto const& w : frontier) {
        if (a.act(w, x) == x) {
          out.push_back(w);
        }
        if (len == max_length) {
          continue;
        }
        for (int letter = -r; letter <= r; ++letter) {
          if (letter == 0 || (!w.empty() && w.back() == -letter)) {
            continue;
          }
          Word v = w;
          v.push_back(letter);
          next.push_back(std::move(v));
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  GSet regular_gset(FiniteGroup const& g) {
    // Carrier labels are element labels; build in label order.
    std::vector<int> order(g.order());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.label(a) < g.label(b); });
    std::vector<int> pos(g.order());
    for (std::size_t i = 0; i < order.size(); ++i) {
      pos[order[i]] = static_cast<int>(i);
    }
    GSet s;
    for (int e : order) {
      s.carrier.push_back(g.label(e));
    }
    s.action.assign(g.order(), std::vector<int>(g.order()));
    for (std::size_t a = 0; a < g.order(); ++a) {
      for (std::size_t i = 0; i < order.size(); ++i) {
        s.action[a][i] = pos[g.multiply(static_cast<int>(a), order[i])];
      }
    }
    return s;
  }

  GSet trivial_gset(FiniteGroup const& g, std::vector<std::string> carrier) {
    std::sort(carrier.begin(), carrier.end());
    GSet s{std::move(carrier), {}};
    s.action.assign(g.order(), identity_map(s.carrier.size()));
    return s;
  }

  void validate(FiniteGroup const& g, GSet const& s) {
    validate(Site::gfinsets(g), to_site_object(Site::gfinsets(g), s));
  }

  bool is_equivariant(FiniteGroup const& g,
                      Map const&         f,
                      GSet const&        source,
                      GSet const&        target) {
    if (f.size() != source.carrier.size()) {
      return false;
    }
    for (std::size_t a = 0; a < g.order(); ++a) {
      for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[source.action[a][x]] != target.action[a][f[x]]) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_equivariant(FiniteGroup const& g, EquivariantMap const& f) {
    return is_equivariant(g, f.underlying, f.source, f.target);
  }

  SiteObject to_site_object(Site const& site, GSet const& s) {
    if (s.action.size() != site.shape().edges().size()) {
      throw InvalidInput("G-set action does not match the group of the site");
    }
    ObjectBuilder b(s.action.size());
    for (auto const& l : s.carrier) {
      b.add(l, 0);
    }
    for (std::size_t a = 0; a < s.action.size(); ++a) {
      if (s.action[a].size() != s.carrier.size()) {
        throw InvalidInput("G-set action row has the wrong length");
      }
      for (std::size_t x = 0; x < s.carrier.size(); ++x) {
        b.set_transport(static_cast<int>(a), static_cast<int>(x), s.action[a][x]);
      }
    }
    auto obj = b.finish();
    validate(site, obj);
    return obj;
  }

  GSet to_gset(SiteObject const& obj) {
    return {obj.labels, obj.transport};
  }

  Site free_site(std::size_t rank) {
    std::vector<std::string> gens;
    for (std::size_t k = 0; k < rank; ++k) {
      gens.push_back("g" + std::to_string(k));
    }
    return Site::free_gfinsets(gens);
  }

  SiteObject to_site_object(Site const& site, FreeGroupAction const& a) {
    return spread_action(site.shape(), a.carrier, a.perms);
  }

  FreeGroupAction to_free_action(SiteObject const& obj) {
    return {obj.labels, obj.transport};
  }

  std::optional<Map> find_conjugacy(FreeGroupAction const& a, FreeGroupAction const& b) {
    if (a.rank() != b.rank() || a.carrier.size() != b.carrier.size()) {
      return std::nullopt;
    }
    std::size_t      n = a.carrier.size();
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      bool ok = true;
      for (std::size_t k = 0; k < a.rank() && ok; ++k) {
        for (std::size_t x = 0; x < n && ok; ++x) {
          ok = sigma[a.perms[k][x]] == b.perms[k][sigma[x]];
        }
      }
      if (ok) {
        return sigma;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
  }

}  // namespace ngrpd
