#include "ngrpd/enumerate.hpp"

#include <deque>
#include <optional>

#include "ngrpd/errors.hpp"
#include "ngrpd/grpd.hpp"

namespace ngrpd {

  namespace {

    using Slot = std::optional<Map>;

    // Level-m search state: the lower levels are complete, the new maps are
    // filled in one at a time.
    struct Search {
      Site const&               site;
      int                       N;
      std::size_t               max_size;
      EnumerationOptions const& opt;
      std::vector<SiteObject>   candidates;
      std::vector<SimplicialObject> found;
      bool                      stop = false;

      struct Cached {
        SiteObject       from, to;
        std::vector<Map> maps;
      };
      std::deque<Cached> cache;  // references stay valid while recursing

      std::vector<Map> const& morphisms(SiteObject const& from, SiteObject const& to) {
        for (auto const& c : cache) {
          if (c.from == from && c.to == to) {
            return c.maps;
          }
        }
        cache.push_back({from, to, all_morphisms(site, from, to)});
        return cache.back().maps;
      }

      static bool same(Map const& a, Map const& b) {
        return a == b;
      }

      // Checks the identities at level m that only involve assigned maps.
      // face_m[i]: X_m -> X_{m-1}; degen_m[j]: X_{m-1} -> X_m.
      bool consistent(SimplicialObject const& x, int m, std::vector<Slot> const& face_m,
                      std::vector<Slot> const& degen_m) const {
        auto const& lower_face  = x.face;   // levels < m
        auto const& lower_degen = x.degen;  // maps into levels < m
        // d_i d_j = d_{j-1} d_i for i < j
        if (m >= 2) {
          for (int j = 0; j <= m; ++j) {
            for (int i = 0; i < j; ++i) {
              if (face_m[j] && face_m[i]
                  && !same(compose(lower_face[m - 1][i], *face_m[j]),
                           compose(lower_face[m - 1][j - 1], *face_m[i]))) {
                return false;
              }
            }
          }
        }
        // d_i s_j
        std::size_t below = x.level[m - 1].size();
        for (int j = 0; j < m; ++j) {
          if (!degen_m[j]) {
            continue;
          }
          for (int i = 0; i <= m; ++i) {
            if (!face_m[i]) {
              continue;
            }
            Map lhs = compose(*face_m[i], *degen_m[j]);
            Map rhs;
            if (i == j || i == j + 1) {
              rhs = identity_map(below);
            } else if (i < j) {
              rhs = compose(lower_degen[m - 2][j - 1], lower_face[m - 1][i]);
            } else {
              rhs = compose(lower_degen[m - 2][j], lower_face[m - 1][i - 1]);
            }
            if (!same(lhs, rhs)) {
              return false;
            }
          }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        if (m >= 2) {
          for (int j = 0; j < m - 1; ++j) {
            for (int i = 0; i <= j; ++i) {
              if (degen_m[i] && degen_m[j + 1]
                  && !same(compose(*degen_m[i], lower_degen[m - 2][j]),
                           compose(*degen_m[j + 1], lower_degen[m - 2][i]))) {
                return false;
              }
            }
          }
        }
        return true;
      }

      void emit(SimplicialObject const& x) {
        if (opt.groupoid_n >= 0 && !is_n_groupoid(x, opt.groupoid_n)) {
          return;
        }
        if (opt.up_to_iso) {
          for (auto const& y : found) {
            bool same_sizes = true;
            for (int m = 0; m <= N && same_sizes; ++m) {
              same_sizes = y.level[m].size() == x.level[m].size();
            }
            if (same_sizes && are_isomorphic(x, y)) {
              return;
            }
          }
        }
        found.push_back(x);
        if (opt.limit && found.size() >= opt.limit) {
          stop = true;
        }
      }

      // Assigns the maps of level m in the order s_0..s_{m-1}, d_0..d_m.
      void assign(SimplicialObject& x, int m, std::vector<Slot>& face_m, std::vector<Slot>& degen_m,
                  std::size_t slot) {
        if (stop) {
          return;
        }
        std::size_t nd = static_cast<std::size_t>(m);
        if (slot == nd + static_cast<std::size_t>(m) + 1) {
          for (auto const& f : face_m) {
            x.face[m].push_back(*f);
          }
          for (auto const& d : degen_m) {
            x.degen[m - 1].push_back(*d);
          }
          level(x, m + 1);
          x.face[m].clear();
          x.degen[m - 1].clear();
          return;
        }
        bool        is_degen = slot < nd;
        Slot&       s        = is_degen ? degen_m[slot] : face_m[slot - nd];
        if (s) {  // fixed in advance
          if (consistent(x, m, face_m, degen_m)) {
            assign(x, m, face_m, degen_m, slot + 1);
          }
          return;
        }
        auto const& from = is_degen ? x.level[m - 1] : x.level[m];
        auto const& to   = is_degen ? x.level[m] : x.level[m - 1];
        for (auto const& candidate : morphisms(from, to)) {
          s = candidate;
          if (consistent(x, m, face_m, degen_m)) {
            assign(x, m, face_m, degen_m, slot + 1);
          }
          if (stop) {
            break;
          }
        }
        s.reset();
      }

      void level(SimplicialObject& x, int m) {
        if (stop) {
          return;
        }
        if (m > N) {
          emit(x);
          return;
        }
        if (m == 0) {
          for (auto const& c : candidates) {
            x.level.push_back(c);
            level(x, 1);
            x.level.pop_back();
          }
          return;
        }
        std::vector<Slot> face_m(m + 1), degen_m(m);
        if (opt.groupoid_n >= 0 && m > opt.groupoid_n) {
          SimplicialObject lower = x;
          lower.N                = m - 1;
          lower.face.resize(m);
          lower.degen.resize(m);
          auto s = horn(m, 0, m - 1);
          auto h = hom_into(s, lower);
          if (h.object.size() > max_size) {
            return;
          }
          for (int i = 1; i <= m; ++i) {
            face_m[i] = hom_evaluate(h, m - 1, s.cell_index(m - 1, {coface(m, i)}));
          }
          x.level.push_back(h.object);
          assign(x, m, face_m, degen_m, 0);
          x.level.pop_back();
          return;
        }
        for (auto const& c : candidates) {
          if (c.size() < x.level[m - 1].size()) {
            continue;  // s_0 is injective
          }
          x.level.push_back(c);
          assign(x, m, face_m, degen_m, 0);
          x.level.pop_back();
          if (stop) {
            return;
          }
        }
      }
    };

  }  // namespace

  std::vector<SimplicialObject> enumerate_simplicial_objects(Site const&               site,
                                                             int                       N,
                                                             std::size_t               max_size,
                                                             EnumerationOptions const& options) {
    if (N < 0) {
      throw InvalidInput("truncation level must be non-negative");
    }
    if (options.groupoid_n >= 0 && N < options.groupoid_n + 1) {
      throw Refused("n-groupoid enumeration needs N >= n + 1");
    }
    Search search{site, N, max_size, options, enumerate_objects(site, max_size), {}, false, {}};
    SimplicialObject x{site, N, {}, {}, {}};
    x.face.resize(N + 1);
    x.degen.resize(N + 1);
    search.level(x, 0);
    return search.found;
  }

}  // namespace ngrpd
