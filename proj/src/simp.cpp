#include "ngrpd/simp.hpp"

#include <algorithm>
#include <stdexcept>

#include "ngrpd/csp.hpp"
#include "ngrpd/errors.hpp"

namespace ngrpd {

  // ---------------------------------------------------------------- ordinals

  bool OrdinalMap::is_surjective() const {
    std::vector<char> hit(k + 1, 0);
    for (int v : values) {
      hit[v] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  bool OrdinalMap::is_injective() const {
    return std::adjacent_find(values.begin(), values.end()) == values.end();
  }

  bool OrdinalMap::is_identity() const {
    if (m() != k) {
      return false;
    }
    for (int q = 0; q <= k; ++q) {
      if (values[q] != q) {
        return false;
      }
    }
    return true;
  }

  void validate(OrdinalMap const& a) {
    if (a.k < 0 || a.values.empty()) {
      throw InvalidInput("ordinal map needs a nonempty domain and k >= 0");
    }
    for (std::size_t q = 0; q < a.values.size(); ++q) {
      if (a.values[q] < 0 || a.values[q] > a.k || (q > 0 && a.values[q] < a.values[q - 1])) {
        throw InvalidInput("ordinal map values must be nondecreasing within [0, k]");
      }
    }
  }

  std::vector<OrdinalMap> monotone_maps(int m, int k) {
    std::vector<OrdinalMap> out;
    if (m < 0 || k < 0) {
      return out;
    }
    OrdinalMap a{k, std::vector<int>(m + 1, 0)};
    while (true) {
      out.push_back(a);
      int q = m;
      while (q >= 0 && a.values[q] == k) {
        --q;
      }
      if (q < 0) {
        break;
      }
      int v = a.values[q] + 1;
      for (int r = q; r <= m; ++r) {
        a.values[r] = v;
      }
    }
    return out;
  }

  OrdinalMap coface(int m, int i) {
    OrdinalMap a{m, {}};
    for (int q = 0; q < m; ++q) {
      a.values.push_back(q < i ? q : q + 1);
    }
    return a;
  }

  OrdinalMap codegeneracy(int m, int j) {
    OrdinalMap a{m, {}};
    for (int q = 0; q <= m + 1; ++q) {
      a.values.push_back(q <= j ? q : q - 1);
    }
    return a;
  }

  OrdinalMap identity_ordinal(int m) {
    OrdinalMap a{m, {}};
    for (int q = 0; q <= m; ++q) {
      a.values.push_back(q);
    }
    return a;
  }

  OrdinalMap compose(OrdinalMap const& a, OrdinalMap const& b) {
    if (b.k != a.m()) {
      throw InvalidInput("ordinal maps are not composable");
    }
    OrdinalMap c{a.k, {}};
    for (int v : b.values) {
      c.values.push_back(a.values[v]);
    }
    return c;
  }

  std::string label(OrdinalMap const& a) {
    std::string s;
    for (std::size_t q = 0; q < a.values.size(); ++q) {
      if (a.k >= 10 && q > 0) {
        s += ',';
      }
      s += std::to_string(a.values[q]);
    }
    return s;
  }

  // ------------------------------------------------------- simplicial sets

  int FiniteSimplicialSet::cell_index(int m, std::vector<OrdinalMap> const& coordinates) const {
    auto const& level = coords.at(m);
    auto        it    = std::lower_bound(level.begin(), level.end(), coordinates);
    if (it == level.end() || *it != coordinates) {
      return -1;
    }
    return static_cast<int>(it - level.begin());
  }

  bool FiniteSimplicialSet::is_degenerate(int m, int c) const {
    for (int j = 0; j < m; ++j) {
      if (degen[m - 1][j][face[m][j][c]] == c) {
        return true;
      }
    }
    return false;
  }

  std::optional<std::string> check_simplicial_identities(std::vector<std::size_t> const&      sizes,
                                                         std::vector<std::vector<Map>> const& face,
                                                         std::vector<std::vector<Map>> const& degen) {
    int N = static_cast<int>(sizes.size()) - 1;
    if (static_cast<int>(face.size()) != N + 1 || static_cast<int>(degen.size()) != N + 1) {
      return "structure tables do not cover levels 0..N";
    }
    auto where = [](char const* rel, int m, int a, int b, std::size_t x) {
      return std::string(rel) + " fails at level " + std::to_string(m) + " (" + std::to_string(a)
             + "," + std::to_string(b) + ") on cell " + std::to_string(x);
    };
    for (int m = 0; m <= N; ++m) {
      std::size_t nf = m == 0 ? 0 : static_cast<std::size_t>(m + 1);
      std::size_t nd = m == N ? 0 : static_cast<std::size_t>(m + 1);
      if (face[m].size() != nf || degen[m].size() != nd) {
        return "level " + std::to_string(m) + " has the wrong number of structure maps";
      }
      for (auto const& d : face[m]) {
        if (d.size() != sizes[m]
            || std::any_of(d.begin(), d.end(),
                           [&](int y) { return y < 0 || static_cast<std::size_t>(y) >= sizes[m - 1]; })) {
          return "a face map at level " + std::to_string(m) + " is not a total map";
        }
      }
      for (auto const& s : degen[m]) {
        if (s.size() != sizes[m]
            || std::any_of(s.begin(), s.end(),
                           [&](int y) { return y < 0 || static_cast<std::size_t>(y) >= sizes[m + 1]; })) {
          return "a degeneracy map at level " + std::to_string(m) + " is not a total map";
        }
      }
    }
    for (int m = 2; m <= N; ++m) {
      for (int j = 1; j <= m; ++j) {
        for (int i = 0; i < j; ++i) {
          for (std::size_t x = 0; x < sizes[m]; ++x) {
            if (face[m - 1][i][face[m][j][x]] != face[m - 1][j - 1][face[m][i][x]]) {
              return where("d_i d_j = d_{j-1} d_i", m, i, j, x);
            }
          }
        }
      }
    }
    for (int m = 0; m < N; ++m) {
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= m + 1; ++i) {
          for (std::size_t x = 0; x < sizes[m]; ++x) {
            int lhs = face[m + 1][i][degen[m][j][x]];
            int rhs;
            if (i == j || i == j + 1) {
              rhs = static_cast<int>(x);
            } else if (i < j) {
              rhs = degen[m - 1][j - 1][face[m][i][x]];
            } else {
              rhs = degen[m - 1][j][face[m][i - 1][x]];
            }
            if (lhs != rhs) {
              return where("d_i s_j", m, i, j, x);
            }
          }
        }
      }
    }
    for (int m = 0; m + 2 <= N; ++m) {
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= j; ++i) {
          for (std::size_t x = 0; x < sizes[m]; ++x) {
            if (degen[m + 1][i][degen[m][j][x]] != degen[m + 1][j + 1][degen[m][i][x]]) {
              return where("s_i s_j = s_{j+1} s_i", m, i, j, x);
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  namespace {
    std::vector<std::size_t> level_sizes(FiniteSimplicialSet const& s) {
      std::vector<std::size_t> out;
      for (auto const& c : s.cells) {
        out.push_back(c.size());
      }
      return out;
    }

    std::vector<std::size_t> level_sizes(SimplicialObject const& x) {
      std::vector<std::size_t> out;
      for (auto const& c : x.level) {
        out.push_back(c.size());
      }
      return out;
    }

    std::string tuple_label(std::vector<std::string> const& parts) {
      std::string s = "(";
      for (std::size_t t = 0; t < parts.size(); ++t) {
        if (t > 0) {
          s += ',';
        }
        s += parts[t];
      }
      return s + ")";
    }

    void check_size(std::size_t n, char const* what) {
      if (n > max_cells()) {
        throw LimitExceeded(std::string(what) + " exceeds NGRPD_MAX_CELLS");
      }
    }
  }  // namespace

  void validate(FiniteSimplicialSet const& s) {
    if (s.N < 0 || static_cast<int>(s.cells.size()) != s.N + 1) {
      throw InvalidInput("simplicial set must list cells for levels 0..N");
    }
    if (auto err = check_simplicial_identities(level_sizes(s), s.face, s.degen)) {
      throw InvalidInput("simplicial identities: " + *err);
    }
  }

  FiniteSimplicialSet simplex_subset(std::vector<int> const& dims,
                                     int                     N,
                                     std::function<bool(std::vector<OrdinalMap> const&)> const& keep) {
    if (N < 0) {
      throw InvalidInput("truncation level must be >= 0");
    }
    FiniteSimplicialSet s;
    s.N    = N;
    s.dims = dims;
    s.cells.resize(N + 1);
    s.coords.resize(N + 1);
    s.face.resize(N + 1);
    s.degen.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
      std::vector<std::vector<OrdinalMap>> factors;
      for (int k : dims) {
        factors.push_back(monotone_maps(m, k));
      }
      std::vector<std::size_t> pick(dims.size(), 0);
      bool                     done = std::any_of(factors.begin(), factors.end(),
                                                  [](auto const& f) { return f.empty(); });
      while (!done) {
        std::vector<OrdinalMap> tuple;
        for (std::size_t t = 0; t < dims.size(); ++t) {
          tuple.push_back(factors[t][pick[t]]);
        }
        if (keep(tuple)) {
          std::vector<std::string> parts;
          for (auto const& a : tuple) {
            parts.push_back(label(a));
          }
          s.cells[m].push_back(parts.size() == 1 ? parts.front() : tuple_label(parts));
          s.coords[m].push_back(std::move(tuple));
          check_size(s.coords[m].size(), "simplicial set level");
        }
        std::size_t t = dims.size();
        while (t > 0 && ++pick[t - 1] == factors[t - 1].size()) {
          pick[t - 1] = 0;
          --t;
        }
        done = t == 0;
      }
    }
    auto lookup = [&](int m, std::vector<OrdinalMap> const& tuple) {
      int c = s.cell_index(m, tuple);
      if (c < 0) {
        throw std::logic_error("predicate does not define a sub-simplicial set");
      }
      return c;
    };
    for (int m = 0; m <= N; ++m) {
      if (m >= 1) {
        for (int i = 0; i <= m; ++i) {
          auto delta = coface(m, i);
          Map  d;
          for (auto const& tuple : s.coords[m]) {
            std::vector<OrdinalMap> f;
            for (auto const& a : tuple) {
              f.push_back(compose(a, delta));
            }
            d.push_back(lookup(m - 1, f));
          }
          s.face[m].push_back(std::move(d));
        }
      }
      if (m < N) {
        for (int j = 0; j <= m; ++j) {
          auto sigma = codegeneracy(m, j);
          Map  dg;
          for (auto const& tuple : s.coords[m]) {
            std::vector<OrdinalMap> f;
            for (auto const& a : tuple) {
              f.push_back(compose(a, sigma));
            }
            dg.push_back(lookup(m + 1, f));
          }
          s.degen[m].push_back(std::move(dg));
        }
      }
    }
    return s;
  }

  FiniteSimplicialSet standard_simplex(int k, int N) {
    if (k < 0) {
      throw InvalidInput("standard simplex needs k >= 0");
    }
    return simplex_subset({k}, N, [](auto const&) { return true; });
  }

  FiniteSimplicialSet boundary(int k, int N) {
    if (k < 0) {
      throw InvalidInput("boundary needs k >= 0");
    }
    return simplex_subset({k}, N, [](auto const& t) { return !t[0].is_surjective(); });
  }

  FiniteSimplicialSet horn(int k, int i, int N) {
    if (k < 1 || i < 0 || i > k) {
      throw InvalidInput("horn needs k >= 1 and 0 <= i <= k");
    }
    return simplex_subset({k}, N, [k, i](auto const& t) {
      std::vector<char> hit(k + 1, 0);
      for (int v : t[0].values) {
        hit[v] = 1;
      }
      hit[i] = 1;
      return std::any_of(hit.begin(), hit.end(), [](char c) { return c == 0; });
    });
  }

  FiniteSimplicialSet product_simplex(int m, int n, int N) {
    if (m < 0 || n < 0) {
      throw InvalidInput("product of simplices needs m, n >= 0");
    }
    return simplex_subset({m, n}, N, [](auto const&) { return true; });
  }

  // ----------------------------------------------------- simplicial objects

  void validate(SimplicialObject const& x) {
    if (x.N < 0 || static_cast<int>(x.level.size()) != x.N + 1) {
      throw InvalidInput("simplicial object must have levels 0..N");
    }
    for (auto const& l : x.level) {
      validate(x.site, l);
    }
    if (auto err = check_simplicial_identities(level_sizes(x), x.face, x.degen)) {
      throw InvalidInput("simplicial identities: " + *err);
    }
    for (int m = 0; m <= x.N; ++m) {
      if (m >= 1) {
        for (auto const& d : x.face[m]) {
          if (!is_morphism(x.site, x.level[m], x.level[m - 1], d)) {
            throw InvalidInput("face map at level " + std::to_string(m) + " is not a morphism of the site");
          }
        }
      }
      if (m < x.N) {
        for (auto const& s : x.degen[m]) {
          if (!is_morphism(x.site, x.level[m], x.level[m + 1], s)) {
            throw InvalidInput("degeneracy at level " + std::to_string(m)
                               + " is not a morphism of the site");
          }
        }
      }
    }
  }

  bool is_simplicial_morphism(SimplicialObject const& x,
                              SimplicialObject const& y,
                              std::vector<Map> const& level) {
    if (x.N != y.N || !(x.site.shape() == y.site.shape())
        || static_cast<int>(level.size()) != x.N + 1) {
      return false;
    }
    for (int m = 0; m <= x.N; ++m) {
      if (!is_morphism(x.site, x.level[m], y.level[m], level[m])) {
        return false;
      }
      for (int i = 0; m >= 1 && i <= m; ++i) {
        if (compose(y.face[m][i], level[m]) != compose(level[m - 1], x.face[m][i])) {
          return false;
        }
      }
      for (int j = 0; m < x.N && j <= m; ++j) {
        if (compose(y.degen[m][j], level[m]) != compose(level[m + 1], x.degen[m][j])) {
          return false;
        }
      }
    }
    return true;
  }

  void validate(SimplicialMorphism const& f) {
    validate(f.source);
    validate(f.target);
    if (!is_simplicial_morphism(f.source, f.target, f.level)) {
      throw InvalidInput("level maps do not form a simplicial morphism");
    }
  }

  int apply_operator(std::vector<std::vector<Map>> const& face,
                     std::vector<std::vector<Map>> const& degen,
                     OrdinalMap const&                    alpha,
                     int                                  x) {
    if (alpha.is_identity()) {
      return x;
    }
    int         m = alpha.m();
    auto const& v = alpha.values;
    for (int p = 0; p < m; ++p) {
      if (v[p] == v[p + 1]) {
        OrdinalMap rest{alpha.k, v};
        rest.values.erase(rest.values.begin() + p + 1);
        return degen[m - 1][p][apply_operator(face, degen, rest, x)];
      }
    }
    int j = alpha.k;
    while (std::find(v.begin(), v.end(), j) != v.end()) {
      --j;
    }
    OrdinalMap rest{alpha.k - 1, {}};
    for (int q : v) {
      rest.values.push_back(q > j ? q - 1 : q);
    }
    return apply_operator(face, degen, rest, face[alpha.k][j][x]);
  }

  int apply_operator(SimplicialObject const& x, OrdinalMap const& alpha, int cell) {
    return apply_operator(x.face, x.degen, alpha, cell);
  }

  SimplicialObject constant_object(Site const& site, SiteObject const& obj, int N) {
    SimplicialObject x{site, N, std::vector<SiteObject>(N + 1, obj), {}, {}};
    x.face.resize(N + 1);
    x.degen.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
      if (m >= 1) {
        x.face[m].assign(m + 1, identity_map(obj.size()));
      }
      if (m < N) {
        x.degen[m].assign(m + 1, identity_map(obj.size()));
      }
    }
    return x;
  }

  namespace {
    // Relabels provisional structure maps after each level was sorted.
    void remap_structure(std::vector<std::vector<int>> const& final_index,
                         std::vector<std::vector<Map>>&       face,
                         std::vector<std::vector<Map>>&       degen) {
      int N = static_cast<int>(final_index.size()) - 1;
      for (int m = 0; m <= N; ++m) {
        for (auto* table : {&face, &degen}) {
          int  dst   = table == &face ? m - 1 : m + 1;
          auto& maps = (*table)[m];
          for (auto& f : maps) {
            Map g(f.size());
            for (std::size_t x = 0; x < f.size(); ++x) {
              g[final_index[m][x]] = final_index[dst][f[x]];
            }
            f = std::move(g);
          }
        }
      }
    }
  }  // namespace

  SimplicialObject from_simplicial_set(FiniteSimplicialSet const& s) {
    validate(s);
    SimplicialObject x{Site::finsets(), s.N, {}, s.face, s.degen};
    std::vector<std::vector<int>> final_index;
    for (int m = 0; m <= s.N; ++m) {
      ObjectBuilder b(0);
      for (auto const& c : s.cells[m]) {
        b.add(c, 0);
      }
      x.level.push_back(b.finish());
      final_index.push_back(b.final_index);
    }
    remap_structure(final_index, x.face, x.degen);
    return x;
  }

  SimplicialObject truncate(SimplicialObject const& x, int N) {
    if (N < 0 || N > x.N) {
      throw InvalidInput("cannot truncate to a level above the current one");
    }
    SimplicialObject y = x;
    y.N                = N;
    y.level.resize(N + 1);
    y.face.resize(N + 1);
    y.degen.resize(N + 1);
    y.degen[N].clear();
    return y;
  }

  SimplicialMorphism truncate(SimplicialMorphism const& f, int N) {
    auto level = f.level;
    level.resize(N + 1);
    return {truncate(f.source, N), truncate(f.target, N), level};
  }

  SimplicialMorphism identity(SimplicialObject const& x) {
    std::vector<Map> level;
    for (auto const& l : x.level) {
      level.push_back(identity_map(l.size()));
    }
    return {x, x, level};
  }

  SimplicialMorphism compose(SimplicialMorphism const& g, SimplicialMorphism const& f) {
    if (!(f.target == g.source)) {
      throw InvalidInput("simplicial morphisms are not composable");
    }
    std::vector<Map> level;
    for (std::size_t m = 0; m < f.level.size(); ++m) {
      level.push_back(compose(g.level[m], f.level[m]));
    }
    return {f.source, g.target, level};
  }

  SimplicialMorphism to_constant(SimplicialObject const& x, SiteObject const& target, Map const& map0) {
    auto             c = constant_object(x.site, target, x.N);
    std::vector<Map> level;
    for (int m = 0; m <= x.N; ++m) {
      OrdinalMap first{m, {0}};
      Map        f(x.level[m].size());
      for (std::size_t e = 0; e < f.size(); ++e) {
        f[e] = map0[apply_operator(x, first, static_cast<int>(e))];
      }
      level.push_back(std::move(f));
    }
    SimplicialMorphism out{x, c, level};
    if (!is_simplicial_morphism(x, c, level)) {
      throw InvalidInput("map to the constant object is not simplicial");
    }
    return out;
  }

  // --------------------------------------------------------------- nerves

  bool SmallCategory::is_groupoid() const {
    for (std::size_t f = 0; f < arrows.size(); ++f) {
      bool found = false;
      for (std::size_t g = 0; g < arrows.size() && !found; ++g) {
        auto gf = compose.find({static_cast<int>(g), static_cast<int>(f)});
        auto fg = compose.find({static_cast<int>(f), static_cast<int>(g)});
        found   = gf != compose.end() && fg != compose.end()
                && gf->second == identity[arrows[f].source]
                && fg->second == identity[arrows[f].target];
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  void validate(SmallCategory const& c) {
    int no = static_cast<int>(c.objects.size());
    int na = static_cast<int>(c.arrows.size());
    if (static_cast<int>(c.identity.size()) != no) {
      throw InvalidInput("every object needs an identity arrow");
    }
    for (auto const& a : c.arrows) {
      if (a.source < 0 || a.source >= no || a.target < 0 || a.target >= no) {
        throw InvalidInput("arrow '" + a.label + "' has an unknown endpoint");
      }
    }
    for (int o = 0; o < no; ++o) {
      int id = c.identity[o];
      if (id < 0 || id >= na || c.arrows[id].source != o || c.arrows[id].target != o) {
        throw InvalidInput("identity of object '" + c.objects[o] + "' is not an endomorphism of it");
      }
    }
    for (int g = 0; g < na; ++g) {
      for (int f = 0; f < na; ++f) {
        auto it         = c.compose.find({g, f});
        bool composable = c.arrows[f].target == c.arrows[g].source;
        if (composable != (it != c.compose.end())) {
          throw InvalidInput("composition of '" + c.arrows[g].label + "' after '" + c.arrows[f].label
                             + "' must be defined exactly when they are composable");
        }
        if (!composable) {
          continue;
        }
        int h = it->second;
        if (h < 0 || h >= na || c.arrows[h].source != c.arrows[f].source
            || c.arrows[h].target != c.arrows[g].target) {
          throw InvalidInput("composite of '" + c.arrows[g].label + "' after '" + c.arrows[f].label
                             + "' has the wrong endpoints");
        }
      }
    }
    for (int f = 0; f < na; ++f) {
      if (c.compose.at({f, c.identity[c.arrows[f].source]}) != f
          || c.compose.at({c.identity[c.arrows[f].target], f}) != f) {
        throw InvalidInput("identity law fails for '" + c.arrows[f].label + "'");
      }
    }
    for (auto const& [gf, h1] : c.compose) {
      auto [g, f] = gf;
      for (int k = 0; k < na; ++k) {
        if (c.arrows[k].source != c.arrows[g].target) {
          continue;
        }
        if (c.compose.at({k, h1}) != c.compose.at({c.compose.at({k, g}), f})) {
          throw InvalidInput("composition is not associative");
        }
      }
    }
  }

  SmallCategory group_category(FiniteGroup const& g) {
    SmallCategory c;
    c.objects = {"*"};
    for (std::size_t a = 0; a < g.order(); ++a) {
      c.arrows.push_back({g.label(static_cast<int>(a)), 0, 0});
    }
    c.identity = {g.identity()};
    for (std::size_t a = 0; a < g.order(); ++a) {
      for (std::size_t b = 0; b < g.order(); ++b) {
        c.compose[{static_cast<int>(a), static_cast<int>(b)}] =
            g.multiply(static_cast<int>(a), static_cast<int>(b));
      }
    }
    return c;
  }

  SimplicialObject nerve(SmallCategory const&    c,
                         int                     N,
                         Site const&             site,
                         std::vector<Map> const& arrow_action) {
    validate(c);
    if (N < 0) {
      throw InvalidInput("truncation level must be >= 0");
    }
    std::size_t edges = site.shape().edges().size();
    if (site.shape().vertices().size() != 1) {
      throw InvalidInput("nerves are built over one-vertex sites only");
    }
    if (arrow_action.size() != edges) {
      throw InvalidInput("need one arrow permutation per generator of the site");
    }
    // chains[m]: level 0 holds object indices as singletons, level m >= 1
    // holds arrow sequences of length m.
    std::vector<std::vector<std::vector<int>>> chains(N + 1);
    std::vector<std::map<std::vector<int>, int>> index(N + 1);
    for (int o = 0; o < static_cast<int>(c.objects.size()); ++o) {
      chains[0].push_back({o});
    }
    for (int m = 1; m <= N; ++m) {
      for (auto const& prev : chains[m - 1]) {
        for (int f = 0; f < static_cast<int>(c.arrows.size()); ++f) {
          if (m == 1) {
            if (c.arrows[f].source == prev[0]) {
              chains[1].push_back({f});
            }
          } else if (c.arrows[prev.back()].target == c.arrows[f].source) {
            auto next = prev;
            next.push_back(f);
            chains[m].push_back(std::move(next));
          }
        }
        check_size(chains[m].size(), "nerve level");
      }
    }
    for (int m = 0; m <= N; ++m) {
      for (std::size_t x = 0; x < chains[m].size(); ++x) {
        index[m][chains[m][x]] = static_cast<int>(x);
      }
    }
    auto vertex = [&](std::vector<int> const& ch, int m, int j) {
      if (m == 0) {
        return ch[0];
      }
      return j == 0 ? c.arrows[ch[0]].source : c.arrows[ch[j - 1]].target;
    };
    SimplicialObject x{site, N, {}, {}, {}};
    x.face.resize(N + 1);
    x.degen.resize(N + 1);
    for (int m = 1; m <= N; ++m) {
      for (int i = 0; i <= m; ++i) {
        Map d;
        for (auto const& ch : chains[m]) {
          std::vector<int> out;
          if (m == 1) {
            out = {i == 0 ? c.arrows[ch[0]].target : c.arrows[ch[0]].source};
          } else if (i == 0) {
            out.assign(ch.begin() + 1, ch.end());
          } else if (i == m) {
            out.assign(ch.begin(), ch.end() - 1);
          } else {
            out.assign(ch.begin(), ch.begin() + i - 1);
            out.push_back(c.compose.at({ch[i], ch[i - 1]}));
            out.insert(out.end(), ch.begin() + i + 1, ch.end());
          }
          d.push_back(index[m - 1].at(out));
        }
        x.face[m].push_back(std::move(d));
      }
    }
    for (int m = 0; m < N; ++m) {
      for (int j = 0; j <= m; ++j) {
        Map s;
        for (auto const& ch : chains[m]) {
          int              id = c.identity[vertex(ch, m, j)];
          std::vector<int> out;
          if (m == 0) {
            out = {id};
          } else {
            out.assign(ch.begin(), ch.begin() + j);
            out.push_back(id);
            out.insert(out.end(), ch.begin() + j, ch.end());
          }
          s.push_back(index[m + 1].at(out));
        }
        x.degen[m].push_back(std::move(s));
      }
    }
    std::vector<std::vector<int>> final_index;
    for (int m = 0; m <= N; ++m) {
      ObjectBuilder b(edges);
      for (auto const& ch : chains[m]) {
        std::string l;
        if (m == 0) {
          l = c.objects[ch[0]];
        } else if (m == 1) {
          l = c.arrows[ch[0]].label;
        } else {
          std::vector<std::string> parts;
          for (int f : ch) {
            parts.push_back(c.arrows[f].label);
          }
          l = tuple_label(parts);
        }
        b.add(l, 0);
      }
      for (std::size_t e = 0; e < edges; ++e) {
        auto const& p = arrow_action[e];
        if (p.size() != c.arrows.size()) {
          throw InvalidInput("arrow permutation has the wrong length");
        }
        for (std::size_t y = 0; y < chains[m].size(); ++y) {
          std::vector<int> out;
          if (m == 0) {
            out = {c.arrows[p[c.identity[chains[m][y][0]]]].source};
          } else {
            for (int f : chains[m][y]) {
              out.push_back(p[f]);
            }
          }
          auto it = index[m].find(out);
          if (it == index[m].end()) {
            throw InvalidInput("arrow action does not preserve composable chains");
          }
          b.set_transport(static_cast<int>(e), static_cast<int>(y), it->second);
        }
      }
      x.level.push_back(b.finish());
      final_index.push_back(b.final_index);
    }
    remap_structure(final_index, x.face, x.degen);
    validate(x);
    return x;
  }

  SimplicialMorphism cech_nerve(Site const& site, Morphism const& f, int N) {
    validate(site, f);
    if (N < 0) {
      throw InvalidInput("truncation level must be >= 0");
    }
    auto const& u     = f.source;
    std::size_t edges = u.transport.size();
    std::vector<std::vector<int>> by_image(f.target.size());
    for (std::size_t x = 0; x < u.size(); ++x) {
      by_image[f.map[x]].push_back(static_cast<int>(x));
    }
    std::vector<std::vector<std::vector<int>>>   tuples(N + 1);
    std::vector<std::map<std::vector<int>, int>> index(N + 1);
    for (int m = 0; m <= N; ++m) {
      for (auto const& cls : by_image) {
        std::vector<std::size_t> pick(m + 1, 0);
        if (cls.empty()) {
          continue;
        }
        while (true) {
          std::vector<int> t;
          for (auto p : pick) {
            t.push_back(cls[p]);
          }
          index[m][t] = static_cast<int>(tuples[m].size());
          tuples[m].push_back(std::move(t));
          check_size(tuples[m].size(), "Cech nerve level");
          std::size_t q = pick.size();
          while (q > 0 && ++pick[q - 1] == cls.size()) {
            pick[q - 1] = 0;
            --q;
          }
          if (q == 0) {
            break;
          }
        }
      }
    }
    SimplicialObject x{site, N, {}, {}, {}};
    x.face.resize(N + 1);
    x.degen.resize(N + 1);
    for (int m = 1; m <= N; ++m) {
      for (int i = 0; i <= m; ++i) {
        Map d;
        for (auto const& t : tuples[m]) {
          auto s = t;
          s.erase(s.begin() + i);
          d.push_back(index[m - 1].at(s));
        }
        x.face[m].push_back(std::move(d));
      }
    }
    for (int m = 0; m < N; ++m) {
      for (int j = 0; j <= m; ++j) {
        Map dg;
        for (auto const& t : tuples[m]) {
          auto s = t;
          s.insert(s.begin() + j, t[j]);
          dg.push_back(index[m + 1].at(s));
        }
        x.degen[m].push_back(std::move(dg));
      }
    }
    std::vector<std::vector<int>> final_index;
    for (int m = 0; m <= N; ++m) {
      ObjectBuilder b(edges);
      for (auto const& t : tuples[m]) {
        std::vector<std::string> parts;
        for (int e : t) {
          parts.push_back(u.labels[e]);
        }
        b.add(m == 0 ? parts.front() : tuple_label(parts), u.fibre[t[0]]);
      }
      for (std::size_t e = 0; e < edges; ++e) {
        for (std::size_t y = 0; y < tuples[m].size(); ++y) {
          auto const& t = tuples[m][y];
          if (u.transport[e][t[0]] < 0) {
            continue;
          }
          std::vector<int> s;
          for (int v : t) {
            s.push_back(u.transport[e][v]);
          }
          b.set_transport(static_cast<int>(e), static_cast<int>(y), index[m].at(s));
        }
      }
      x.level.push_back(b.finish());
      final_index.push_back(b.final_index);
    }
    remap_structure(final_index, x.face, x.degen);
    validate(x);
    // Level 0 is relabelled identically to U, so f itself is the level-0 map.
    return to_constant(x, f.target, f.map);
  }

  // ------------------------------------------------------------- Hom(S, X)

  int HomObject::find(int fibre, std::vector<int> const& values) const {
    std::vector<int> key{fibre};
    key.insert(key.end(), values.begin(), values.end());
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  }

  HomObject hom_into(FiniteSimplicialSet const& s, SimplicialObject const& x) {
    HomObject h;
    int       top = std::min(s.N, x.N);
    std::size_t total = 0;
    for (int m = 0; m <= top; ++m) {
      h.offset.push_back(total);
      total += s.size(m);
    }
    auto const& shape = x.site.shape();
    if (s.empty()) {
      h.object = terminal(x.site);
      for (std::size_t e = 0; e < h.object.size(); ++e) {
        h.family.emplace_back();
        h.index[{h.object.fibre[e]}] = static_cast<int>(e);
      }
      return h;
    }
    // Label basis: nondegenerate cells that are not faces of nondegenerate
    // cells one level up.
    std::vector<std::pair<int, int>> basis;
    std::vector<std::vector<char>>   nondeg(top + 1);
    for (int m = 0; m <= top; ++m) {
      for (std::size_t c = 0; c < s.size(m); ++c) {
        nondeg[m].push_back(!s.is_degenerate(m, static_cast<int>(c)));
      }
    }
    for (int m = 0; m <= top; ++m) {
      std::vector<char> is_face(s.size(m), 0);
      if (m < top) {
        for (std::size_t c = 0; c < s.size(m + 1); ++c) {
          if (nondeg[m + 1][c]) {
            for (auto const& d : s.face[m + 1]) {
              is_face[d[c]] = 1;
            }
          }
        }
      }
      for (std::size_t c = 0; c < s.size(m); ++c) {
        if (nondeg[m][c] && !is_face[c]) {
          basis.emplace_back(m, static_cast<int>(c));
        }
      }
    }

    std::vector<std::vector<int>> raw;
    std::vector<int>              raw_fibre;
    for (std::size_t v = 0; v < shape.vertices().size(); ++v) {
      FunctionalCsp csp;
      for (int m = 0; m <= top; ++m) {
        std::vector<int> allowed;
        for (std::size_t e = 0; e < x.level[m].size(); ++e) {
          if (x.level[m].fibre[e] == static_cast<int>(v)) {
            allowed.push_back(static_cast<int>(e));
          }
        }
        for (std::size_t c = 0; c < s.size(m); ++c) {
          csp.add_variable(x.level[m].size(), allowed);
        }
      }
      std::vector<int> order;
      for (int m = top; m >= 0; --m) {
        for (std::size_t c = 0; c < s.size(m); ++c) {
          int var = static_cast<int>(h.offset[m] + c);
          if (nondeg[m][c]) {
            order.push_back(var);
          }
          for (int i = 0; m >= 1 && i <= m; ++i) {
            csp.add_link(var, static_cast<int>(h.offset[m - 1] + s.face[m][i][c]), &x.face[m][i]);
          }
          for (int j = 0; m < top && j <= m; ++j) {
            csp.add_link(var, static_cast<int>(h.offset[m + 1] + s.degen[m][j][c]), &x.degen[m][j]);
          }
        }
      }
      csp.set_order(order);
      csp.solve([&](std::vector<int> const& values) {
        raw.push_back(values);
        raw_fibre.push_back(static_cast<int>(v));
        check_size(raw.size(), "Hom object");
        return true;
      });
    }

    std::map<std::vector<int>, int> provisional;
    ObjectBuilder                   b(shape.edges().size());
    for (std::size_t e = 0; e < raw.size(); ++e) {
      std::vector<std::string> parts;
      for (auto [m, c] : basis) {
        parts.push_back(x.level[m].labels[raw[e][h.offset[m] + c]]);
      }
      b.add(tuple_label(parts), raw_fibre[e]);
      std::vector<int> key{raw_fibre[e]};
      key.insert(key.end(), raw[e].begin(), raw[e].end());
      provisional[key] = static_cast<int>(e);
    }
    for (std::size_t edge = 0; edge < shape.edges().size(); ++edge) {
      int to = shape.edges()[edge].target;
      for (std::size_t e = 0; e < raw.size(); ++e) {
        if (raw_fibre[e] != shape.edges()[edge].source) {
          continue;
        }
        std::vector<int> key{to};
        for (int m = 0; m <= top; ++m) {
          for (std::size_t c = 0; c < s.size(m); ++c) {
            key.push_back(x.level[m].transport[edge][raw[e][h.offset[m] + c]]);
          }
        }
        b.set_transport(static_cast<int>(edge), static_cast<int>(e), provisional.at(key));
      }
    }
    h.object = b.finish();
    h.family.resize(raw.size());
    for (std::size_t e = 0; e < raw.size(); ++e) {
      int id        = b.final_index[e];
      h.family[id]  = raw[e];
      std::vector<int> key{raw_fibre[e]};
      key.insert(key.end(), raw[e].begin(), raw[e].end());
      h.index[key] = id;
    }
    return h;
  }

  Map hom_from_level(SimplicialObject const&                    x,
                     int                                        k,
                     FiniteSimplicialSet const&                 s,
                     HomObject const&                           h,
                     std::function<OrdinalMap(int, int)> const& op) {
    int top = static_cast<int>(h.offset.size()) - 1;
    Map out;
    for (std::size_t e = 0; e < x.level[k].size(); ++e) {
      std::vector<int> values;
      for (int m = 0; m <= top; ++m) {
        for (std::size_t c = 0; c < s.size(m); ++c) {
          values.push_back(apply_operator(x, op(m, static_cast<int>(c)), static_cast<int>(e)));
        }
      }
      int id = h.find(x.level[k].fibre[e], values);
      if (id < 0) {
        throw std::logic_error("restricted family is missing from the Hom object");
      }
      out.push_back(id);
    }
    return out;
  }

  Map hom_restrict(HomObject const& from, HomObject const& to, std::vector<Map> const& g) {
    int top = static_cast<int>(to.offset.size()) - 1;
    Map out;
    for (std::size_t e = 0; e < from.family.size(); ++e) {
      std::vector<int> values;
      for (int m = 0; m <= top; ++m) {
        for (int c : g[m]) {
          values.push_back(from.family[e][from.offset[m] + c]);
        }
      }
      int id = to.find(from.object.fibre[e], values);
      if (id < 0) {
        throw std::logic_error("restricted family is missing from the Hom object");
      }
      out.push_back(id);
    }
    return out;
  }

  Map hom_postcompose(HomObject const& hx, HomObject const& hy, SimplicialMorphism const& f) {
    int top = static_cast<int>(hx.offset.size()) - 1;
    Map out;
    for (std::size_t e = 0; e < hx.family.size(); ++e) {
      std::vector<int> values;
      for (int m = 0; m <= top; ++m) {
        std::size_t end = m == top ? hx.family[e].size() : hx.offset[m + 1];
        for (std::size_t c = hx.offset[m]; c < end; ++c) {
          values.push_back(f.level[m][hx.family[e][c]]);
        }
      }
      int id = hy.find(hx.object.fibre[e], values);
      if (id < 0) {
        throw std::logic_error("image family is missing from the Hom object");
      }
      out.push_back(id);
    }
    return out;
  }

  Map hom_evaluate(HomObject const& h, int m, int cell) {
    Map out;
    for (auto const& fam : h.family) {
      out.push_back(fam.at(h.offset.at(m) + cell));
    }
    return out;
  }

  Morphism matching_map(int k, int i, SimplicialObject const& x) {
    if (k < 1 || k > x.N) {
      throw InvalidInput("matching map needs 1 <= k <= N");
    }
    auto s = horn(k, i, x.N);
    auto h = hom_into(s, x);
    auto m = hom_from_level(x, k, s, h, [&](int l, int c) { return s.coords[l][c][0]; });
    return {x.level[k], h.object, m};
  }

  Morphism relative_matching_map(FiniteSimplicialSet const& s, int k, SimplicialMorphism const& f) {
    auto const& x = f.source;
    auto const& y = f.target;
    if (k < 0 || k > x.N) {
      throw InvalidInput("matching map needs 0 <= k <= N");
    }
    auto op = [&](int l, int c) { return s.coords[l][c][0]; };
    auto hx = hom_into(s, x);
    auto hy = hom_into(s, y);
    auto rx = hom_from_level(x, k, s, hx, op);
    auto ry = hom_from_level(y, k, s, hy, op);
    auto hf = hom_postcompose(hx, hy, f);
    auto pb = pullback(hx.object, y.level[k], hf, ry);
    return {x.level[k], pb.apex, pb.mediate(rx, f.level[k])};
  }

  Morphism boundary_matching_map(int k, SimplicialMorphism const& f) {
    return relative_matching_map(boundary(k, f.source.N), k, f);
  }

  Morphism relative_horn_map(int k, int i, SimplicialMorphism const& f) {
    return relative_matching_map(horn(k, i, f.source.N), k, f);
  }

  SimplicialPullback pullback(SimplicialMorphism const& f, SimplicialMorphism const& g) {
    if (!(f.target == g.target)) {
      throw InvalidInput("pullback needs a common target");
    }
    auto const&                 a = f.source;
    auto const&                 b = g.source;
    int                         N = a.N;
    std::vector<PullbackResult> pr;
    for (int m = 0; m <= N; ++m) {
      pr.push_back(pullback(a.level[m], b.level[m], f.level[m], g.level[m]));
    }
    SimplicialObject p{a.site, N, {}, {}, {}};
    p.face.resize(N + 1);
    p.degen.resize(N + 1);
    std::vector<Map> pa, pb;
    for (int m = 0; m <= N; ++m) {
      p.level.push_back(pr[m].apex);
      pa.push_back(pr[m].proj_a);
      pb.push_back(pr[m].proj_b);
      for (int i = 0; m >= 1 && i <= m; ++i) {
        p.face[m].push_back(pr[m - 1].mediate(compose(a.face[m][i], pr[m].proj_a),
                                              compose(b.face[m][i], pr[m].proj_b)));
      }
      for (int j = 0; m < N && j <= m; ++j) {
        p.degen[m].push_back(pr[m + 1].mediate(compose(a.degen[m][j], pr[m].proj_a),
                                               compose(b.degen[m][j], pr[m].proj_b)));
      }
    }
    return {p, {p, a, pa}, {p, b, pb}, pr};
  }

  std::vector<Map> SimplicialPullback::mediate(std::vector<Map> const& u,
                                               std::vector<Map> const& v) const {
    std::vector<Map> out;
    for (std::size_t m = 0; m < levels.size(); ++m) {
      out.push_back(levels[m].mediate(u[m], v[m]));
    }
    return out;
  }

  SimplicialObject extend_by_fillers(SimplicialObject const& x, int M, int horn_index) {
    if (M < x.N) {
      throw InvalidInput("target level is below the current truncation");
    }
    if (M == x.N) {
      return x;
    }
    if (x.N < 1) {
      throw InvalidInput("extension by fillers needs truncation N >= 1");
    }
    for (int j = 0; j <= x.N; ++j) {
      auto l = matching_map(x.N, j, x);
      if (!is_bijective(l.map, l.target.size())) {
        throw InvalidInput("precondition: horn matching maps at the top level must be isomorphisms "
                           "(object is not a certified groupoid at this truncation)");
      }
    }
    SimplicialObject y = x;
    for (int k = x.N + 1; k <= M; ++k) {
      int  i = horn_index < 0 || horn_index > k ? k : horn_index;
      auto s = horn(k, i, k - 1);
      auto h = hom_into(s, y);
      std::vector<Map> faces(k + 1);
      for (int j = 0; j <= k; ++j) {
        if (j != i) {
          faces[j] = hom_evaluate(h, k - 1, s.cell_index(k - 1, {coface(k, j)}));
        }
      }
      // The missing face is the unique cell with the boundary forced by the
      // simplicial identities.
      std::map<std::vector<int>, std::vector<int>> by_boundary;
      for (std::size_t c = 0; c < y.level[k - 1].size(); ++c) {
        std::vector<int> bd;
        for (int l = 0; l <= k - 1; ++l) {
          bd.push_back(y.face[k - 1][l][c]);
        }
        by_boundary[bd].push_back(static_cast<int>(c));
      }
      for (std::size_t e = 0; e < h.object.size(); ++e) {
        std::vector<int> bd;
        for (int l = 0; l <= k - 1; ++l) {
          bd.push_back(l < i ? y.face[k - 1][i - 1][faces[l][e]] : y.face[k - 1][i][faces[l + 1][e]]);
        }
        auto it = by_boundary.find(bd);
        if (it == by_boundary.end() || it->second.size() != 1) {
          throw InvalidInput("precondition: horn fillers are not unique at level "
                             + std::to_string(k - 1));
        }
        faces[i].push_back(it->second.front());
      }
      std::vector<Map> degens;
      for (int j = 0; j <= k - 1; ++j) {
        auto sigma = codegeneracy(k - 1, j);
        degens.push_back(hom_from_level(y, k - 1, s, h, [&](int l, int c) {
          return compose(sigma, s.coords[l][c][0]);
        }));
      }
      y.N = k;
      y.level.push_back(h.object);
      y.face.push_back(std::move(faces));
      y.degen[k - 1] = std::move(degens);
      y.degen.emplace_back();
    }
    validate(y);
    return y;
  }

  // ----------------------------------------------------- morphism search

  std::vector<std::vector<Map>> all_simplicial_morphisms(SimplicialObject const& x,
                                                         SimplicialObject const& y,
                                                         bool                    bijective,
                                                         std::size_t             limit) {
    std::vector<std::vector<Map>> out;
    if (x.N != y.N || !(x.site.shape() == y.site.shape())) {
      return out;
    }
    int N = x.N;
    if (bijective) {
      for (int m = 0; m <= N; ++m) {
        if (x.level[m].size() != y.level[m].size()) {
          return out;
        }
      }
    }
    std::vector<std::size_t> offset;
    std::size_t              total = 0;
    for (int m = 0; m <= N; ++m) {
      offset.push_back(total);
      total += x.level[m].size();
    }
    FunctionalCsp csp;
    for (int m = 0; m <= N; ++m) {
      for (std::size_t e = 0; e < x.level[m].size(); ++e) {
        std::vector<int> allowed;
        for (std::size_t t = 0; t < y.level[m].size(); ++t) {
          if (y.level[m].fibre[t] == x.level[m].fibre[e]) {
            allowed.push_back(static_cast<int>(t));
          }
        }
        csp.add_variable(y.level[m].size(), allowed);
      }
    }
    std::vector<int> order;
    for (int m = N; m >= 0; --m) {
      std::vector<int> group;
      for (std::size_t e = 0; e < x.level[m].size(); ++e) {
        int var = static_cast<int>(offset[m] + e);
        order.push_back(var);
        group.push_back(var);
        for (int i = 0; m >= 1 && i <= m; ++i) {
          csp.add_link(var, static_cast<int>(offset[m - 1] + x.face[m][i][e]), &y.face[m][i]);
        }
        for (int j = 0; m < N && j <= m; ++j) {
          csp.add_link(var, static_cast<int>(offset[m + 1] + x.degen[m][j][e]), &y.degen[m][j]);
        }
        for (std::size_t edge = 0; edge < x.level[m].transport.size(); ++edge) {
          int to = x.level[m].transport[edge][e];
          if (to >= 0) {
            csp.add_link(var, static_cast<int>(offset[m] + to), &y.level[m].transport[edge]);
          }
        }
      }
      if (bijective) {
        csp.require_distinct(group);
      }
    }
    csp.set_order(order);
    csp.solve([&](std::vector<int> const& values) {
      std::vector<Map> level;
      for (int m = 0; m <= N; ++m) {
        level.emplace_back(values.begin() + offset[m], values.begin() + offset[m] + x.level[m].size());
      }
      out.push_back(std::move(level));
      return limit == 0 || out.size() < limit;
    });
    return out;
  }

  bool are_isomorphic(SimplicialObject const& x, SimplicialObject const& y) {
    if (x.N != y.N) {
      return false;
    }
    for (int m = 0; m <= x.N; ++m) {
      if (x.level[m].size() != y.level[m].size()) {
        return false;
      }
    }
    return !all_simplicial_morphisms(x, y, true, 1).empty();
  }

}  // namespace ngrpd
