#include "ngrpd/fincat.hpp"

#include <algorithm>
#include <numeric>

#include "ngrpd/csp.hpp"
#include "ngrpd/errors.hpp"

namespace ngrpd {

  std::string to_string(CoverClass c) {
    switch (c) {
      case CoverClass::surjective:
        return "surjective";
      case CoverClass::uniform:
        return "uniform";
      case CoverClass::injective:
        return "injective";
    }
    return "surjective";
  }

  CoverClass cover_class_from_string(std::string const& s) {
    if (s == "surjective") {
      return CoverClass::surjective;
    } else if (s == "uniform") {
      return CoverClass::uniform;
    } else if (s == "injective") {
      return CoverClass::injective;
    }
    throw InvalidInput("unknown cover class " + s);
  }

  ////////////////////////////////////////////////////////////////////////
  // Site
  ////////////////////////////////////////////////////////////////////////

  namespace {
    BasedGraph point_with_loops(std::vector<std::string> const& loops) {
      std::vector<GraphEdge> edges;
      for (auto const& l : loops) {
        edges.push_back({l, 0, 0});
      }
      return BasedGraph({"*"}, std::move(edges), 0, {});
    }
  }  // namespace

  Site Site::finsets() {
    return Site(SiteKind::finsets, point_with_loops({}));
  }

  Site Site::gfinsets(FiniteGroup group) {
    Site s(SiteKind::gfinsets, point_with_loops(group.elements()));
    s._group = std::move(group);
    return s;
  }

  Site Site::free_gfinsets(std::vector<std::string> generators) {
    return Site(SiteKind::gfinsets, point_with_loops(generators));
  }

  Site Site::graphcov(BasedGraph base) {
    return Site(SiteKind::graphcov, std::move(base));
  }

  std::string Site::name() const {
    std::string cov = _covers == CoverClass::surjective ? "" : "[" + to_string(_covers) + "]";
    switch (_kind) {
      case SiteKind::finsets:
        return "finsets" + cov;
      case SiteKind::gfinsets:
        if (_group) {
          return "gfinsets(order " + std::to_string(_group->order()) + ")" + cov;
        }
        return "gfinsets(free rank " + std::to_string(_shape.edges().size()) + ")" + cov;
      case SiteKind::graphcov:
        return "graphcov(V=" + std::to_string(_shape.vertices().size())
               + ",E=" + std::to_string(_shape.edges().size()) + ")" + cov;
    }
    return "site";
  }

  ////////////////////////////////////////////////////////////////////////
  // Objects
  ////////////////////////////////////////////////////////////////////////

  int SiteObject::index_of(std::string const& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
      throw InvalidInput("unknown element " + label);
    }
    return static_cast<int>(it - labels.begin());
  }

  int ObjectBuilder::add(std::string label, int fibre) {
    _labels.push_back(std::move(label));
    _fibre.push_back(fibre);
    for (auto& t : _transport) {
      t.push_back(-1);
    }
    return static_cast<int>(_labels.size()) - 1;
  }

  void ObjectBuilder::set_transport(int edge, int from, int to) {
    _transport[edge][from] = to;
  }

  SiteObject ObjectBuilder::finish() {
    std::size_t      n = _labels.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [this](int a, int b) { return _labels[a] < _labels[b]; });
    final_index.assign(n, -1);
    SiteObject obj;
    obj.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && _labels[order[i]] == _labels[order[i - 1]]) {
        throw InvalidInput("duplicate element label " + _labels[order[i]]);
      }
      final_index[order[i]] = static_cast<int>(i);
      obj.labels.push_back(std::move(_labels[order[i]]));
      obj.fibre.push_back(_fibre[order[i]]);
    }
    obj.transport.assign(_transport.size(), std::vector<int>(n, -1));
    for (std::size_t e = 0; e < _transport.size(); ++e) {
      for (std::size_t p = 0; p < n; ++p) {
        int to = _transport[e][p];
        if (to >= 0) {
          obj.transport[e][final_index[p]] = final_index[to];
        }
      }
    }
    return obj;
  }

  SiteObject finset(std::vector<std::string> labels) {
    ObjectBuilder b(0);
    for (auto& l : labels) {
      b.add(std::move(l), 0);
    }
    return b.finish();
  }

  Morphism finmap(SiteObject const&                         source,
                  SiteObject const&                         target,
                  std::map<std::string, std::string> const& assignment) {
    Morphism f{source, target, Map(source.size(), -1)};
    for (auto const& [from, to] : assignment) {
      f.map[source.index_of(from)] = target.index_of(to);
    }
    if (std::find(f.map.begin(), f.map.end(), -1) != f.map.end()) {
      throw InvalidInput("map is not total on its source");
    }
    return f;
  }

  void validate(Site const& site, SiteObject const& obj) {
    auto const& shape = site.shape();
    std::size_t n     = obj.size();
    if (obj.fibre.size() != n) {
      throw InvalidInput("fibre list has the wrong length");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(obj.labels[i - 1] < obj.labels[i])) {
        throw InvalidInput("labels must be sorted and distinct near " + obj.labels[i]);
      }
    }
    int nv = static_cast<int>(shape.vertices().size());
    for (int v : obj.fibre) {
      if (v < 0 || v >= nv) {
        throw InvalidInput("element lies over an unknown vertex");
      }
    }
    if (obj.transport.size() != shape.edges().size()) {
      throw InvalidInput("object has " + std::to_string(obj.transport.size())
                         + " transports but the site needs "
                         + std::to_string(shape.edges().size()));
    }
    for (std::size_t e = 0; e < shape.edges().size(); ++e) {
      auto const&       edge = shape.edges()[e];
      auto const&       t    = obj.transport[e];
      std::vector<char> hit(n, 0);
      std::size_t       src_count = 0, tgt_count = 0;
      if (t.size() != n) {
        throw InvalidInput("transport " + edge.label + " has the wrong length");
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (obj.fibre[x] == edge.target) {
          ++tgt_count;
        }
        if (obj.fibre[x] != edge.source) {
          if (t[x] != -1) {
            throw InvalidInput("transport " + edge.label + " defined off its source fibre");
          }
          continue;
        }
        ++src_count;
        if (t[x] < 0 || static_cast<std::size_t>(t[x]) >= n
            || obj.fibre[t[x]] != edge.target) {
          throw InvalidInput("transport " + edge.label + " of " + obj.labels[x]
                             + " does not land in the target fibre");
        }
        if (hit[t[x]]++) {
          throw InvalidInput("transport " + edge.label + " is not injective at "
                             + obj.labels[t[x]]);
        }
      }
      if (src_count != tgt_count) {
        throw InvalidInput("transport " + edge.label
                           + " is not a bijection between fibres (star condition)");
      }
    }
    if (auto const& g = site.group()) {
      int order = static_cast<int>(g->order());
      for (std::size_t x = 0; x < n; ++x) {
        if (obj.transport[g->identity()][x] != static_cast<int>(x)) {
          throw InvalidInput("identity does not act trivially on " + obj.labels[x]);
        }
        for (int a = 0; a < order; ++a) {
          for (int b = 0; b < order; ++b) {
            if (obj.transport[a][obj.transport[b][x]]
                != obj.transport[g->multiply(a, b)][x]) {
              throw InvalidInput("action is not compatible with multiplication at "
                                 + obj.labels[x]);
            }
          }
        }
      }
    }
  }

  bool is_morphism(Site const&       site,
                   SiteObject const& source,
                   SiteObject const& target,
                   Map const&        map) {
    if (map.size() != source.size()) {
      return false;
    }
    for (std::size_t x = 0; x < map.size(); ++x) {
      if (map[x] < 0 || static_cast<std::size_t>(map[x]) >= target.size()
          || target.fibre[map[x]] != source.fibre[x]) {
        return false;
      }
    }
    for (std::size_t e = 0; e < site.shape().edges().size(); ++e) {
      for (std::size_t x = 0; x < map.size(); ++x) {
        int t = source.transport[e][x];
        if (t >= 0 && map[t] != target.transport[e][map[x]]) {
          return false;
        }
      }
    }
    return true;
  }

  void validate(Site const& site, Morphism const& f) {
    validate(site, f.source);
    validate(site, f.target);
    if (!is_morphism(site, f.source, f.target, f.map)) {
      throw InvalidInput("map does not preserve the site structure");
    }
  }

  Map compose(Map const& g, Map const& f) {
    Map out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      out[i] = g[f[i]];
    }
    return out;
  }

  Map identity_map(std::size_t n) {
    Map m(n);
    std::iota(m.begin(), m.end(), 0);
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Limits
  ////////////////////////////////////////////////////////////////////////

  SiteObject terminal(Site const& site) {
    auto const&   shape = site.shape();
    ObjectBuilder b(shape.edges().size());
    for (std::size_t v = 0; v < shape.vertices().size(); ++v) {
      b.add(shape.vertices()[v], static_cast<int>(v));
    }
    for (std::size_t e = 0; e < shape.edges().size(); ++e) {
      b.set_transport(static_cast<int>(e), shape.edges()[e].source, shape.edges()[e].target);
    }
    return b.finish();
  }

  Morphism to_terminal(Site const& site, SiteObject const& obj) {
    SiteObject t = terminal(site);
    Map        m(obj.size());
    for (std::size_t x = 0; x < obj.size(); ++x) {
      m[x] = t.index_of(site.shape().vertices()[obj.fibre[x]]);
    }
    return {obj, std::move(t), std::move(m)};
  }

  PullbackResult pullback(SiteObject const& a,
                          SiteObject const& b,
                          Map const&        f,
                          Map const&        g) {
    std::size_t                      edges = a.transport.size();
    ObjectBuilder                    builder(edges);
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> provisional;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (f[i] == g[j]) {
          int id = builder.add("(" + a.labels[i] + "," + b.labels[j] + ")", a.fibre[i]);
          provisional[{static_cast<int>(i), static_cast<int>(j)}] = id;
          pairs.emplace_back(i, j);
        }
      }
    }
    for (std::size_t e = 0; e < edges; ++e) {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        int ti      = a.transport[e][i];
        if (ti >= 0) {
          builder.set_transport(static_cast<int>(e), static_cast<int>(p),
                                provisional.at({ti, b.transport[e][j]}));
        }
      }
    }
    PullbackResult r;
    r.apex = builder.finish();
    r.proj_a.assign(pairs.size(), -1);
    r.proj_b.assign(pairs.size(), -1);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      int idx                 = builder.final_index[p];
      r.proj_a[idx]           = pairs[p].first;
      r.proj_b[idx]           = pairs[p].second;
      r.index[pairs[p]]       = idx;
    }
    return r;
  }

  PullbackResult pullback(Site const& site, Morphism const& f, Morphism const& g) {
    if (!(f.target == g.target)) {
      throw InvalidInput("pullback: morphisms do not share a target");
    }
    validate(site, f);
    validate(site, g);
    return pullback(f.source, g.source, f.map, g.map);
  }

  PullbackResult product(Site const& site, SiteObject const& a, SiteObject const& b) {
    auto fa = to_terminal(site, a);
    auto fb = to_terminal(site, b);
    return pullback(a, b, fa.map, fb.map);
  }

  Map PullbackResult::mediate(Map const& u, Map const& v) const {
    if (u.size() != v.size()) {
      throw InvalidInput("cone legs have different sources");
    }
    Map m(u.size());
    for (std::size_t t = 0; t < u.size(); ++t) {
      auto it = index.find({u[t], v[t]});
      if (it == index.end()) {
        throw InvalidInput("cone does not commute; no mediating morphism");
      }
      m[t] = it->second;
    }
    return m;
  }

  namespace {
    struct UnionFind {
      std::vector<int> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      int find(int x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        parent[b] = a;
        return true;
      }
    };
  }  // namespace

  CoequalizerResult coequalizer(SiteObject const& a, Map const& p, Map const& q) {
    UnionFind uf(a.size());
    for (std::size_t r = 0; r < p.size(); ++r) {
      uf.unite(p[r], q[r]);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& t : a.transport) {
        std::vector<int> first(a.size(), -1);
        for (std::size_t x = 0; x < a.size(); ++x) {
          if (t[x] < 0) {
            continue;
          }
          int root = uf.find(static_cast<int>(x));
          if (first[root] < 0) {
            first[root] = t[x];
          } else if (uf.unite(first[root], t[x])) {
            changed = true;
          }
        }
      }
    }
    std::map<int, std::vector<int>> classes;
    for (std::size_t x = 0; x < a.size(); ++x) {
      classes[uf.find(static_cast<int>(x))].push_back(static_cast<int>(x));
    }
    ObjectBuilder        builder(a.transport.size());
    std::map<int, int>   class_id;
    for (auto const& [root, members] : classes) {
      std::string label = "[";
      for (std::size_t i = 0; i < members.size(); ++i) {
        label += (i ? "," : "") + a.labels[members[i]];
      }
      class_id[root] = builder.add(label + "]", a.fibre[root]);
    }
    for (std::size_t e = 0; e < a.transport.size(); ++e) {
      for (auto const& [root, members] : classes) {
        int t = a.transport[e][root];
        if (t >= 0) {
          builder.set_transport(static_cast<int>(e), class_id[root], class_id[uf.find(t)]);
        }
      }
    }
    CoequalizerResult r;
    r.quotient = builder.finish();
    r.projection.resize(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
      r.projection[x] = builder.final_index[class_id[uf.find(static_cast<int>(x))]];
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Covers
  ////////////////////////////////////////////////////////////////////////

  bool is_surjective(Map const& f, std::size_t target_size) {
    std::vector<char> hit(target_size, 0);
    for (int y : f) {
      hit[y] = 1;
    }
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
  }

  bool is_injective(Map const& f, std::size_t target_size) {
    std::vector<char> hit(target_size, 0);
    for (int y : f) {
      if (hit[y]++) {
        return false;
      }
    }
    return true;
  }

  bool is_bijective(Map const& f, std::size_t target_size) {
    return f.size() == target_size && is_injective(f, target_size);
  }

  bool is_cover(Site const& site, Map const& f, std::size_t target_size) {
    switch (site.cover_class()) {
      case CoverClass::surjective:
        return is_surjective(f, target_size);
      case CoverClass::uniform: {
        std::vector<std::size_t> count(target_size, 0);
        for (int y : f) {
          ++count[y];
        }
        return std::all_of(count.begin(), count.end(), [&](std::size_t c) {
          return c > 0 && c == count.front();
        });
      }
      case CoverClass::injective:
        return is_injective(f, target_size);
    }
    return false;
  }

  bool is_cover(Site const& site, Morphism const& f) {
    return is_cover(site, f.map, f.target.size());
  }

  bool is_isomorphism(Morphism const& f) {
    return is_bijective(f.map, f.target.size());
  }

  bool is_effective_epi(Site const&, Morphism const& f) {
    auto kernel = pullback(f.source, f.source, f.map, f.map);
    auto coeq   = coequalizer(f.source, kernel.proj_a, kernel.proj_b);
    Map  comparison(coeq.quotient.size(), -1);
    for (std::size_t x = 0; x < f.source.size(); ++x) {
      int& slot = comparison[coeq.projection[x]];
      if (slot >= 0 && slot != f.map[x]) {
        return false;
      }
      slot = f.map[x];
    }
    return is_bijective(comparison, f.target.size());
  }

  ////////////////////////////////////////////////////////////////////////
  // Hom-sets and isomorphism search
  ////////////////////////////////////////////////////////////////////////

  namespace {
    FunctionalCsp morphism_csp(SiteObject const& a, SiteObject const& b) {
      FunctionalCsp csp;
      for (std::size_t x = 0; x < a.size(); ++x) {
        std::vector<int> allowed;
        for (std::size_t y = 0; y < b.size(); ++y) {
          if (b.fibre[y] == a.fibre[x]) {
            allowed.push_back(static_cast<int>(y));
          }
        }
        csp.add_variable(b.size(), allowed);
      }
      for (std::size_t e = 0; e < a.transport.size(); ++e) {
        for (std::size_t x = 0; x < a.size(); ++x) {
          int t = a.transport[e][x];
          if (t >= 0) {
            csp.add_link(static_cast<int>(x), t, &b.transport[e]);
          }
        }
      }
      return csp;
    }
  }  // namespace

  std::vector<Map> all_morphisms(Site const&, SiteObject const& a, SiteObject const& b) {
    auto             csp = morphism_csp(a, b);
    std::vector<Map> out;
    csp.solve([&](std::vector<int> const& v) {
      out.push_back(v);
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Map> find_isomorphism(Site const&, SiteObject const& a, SiteObject const& b) {
    if (a.size() != b.size()) {
      return std::nullopt;
    }
    auto fa = a.fibre, fb = b.fibre;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa != fb) {
      return std::nullopt;
    }
    auto             csp = morphism_csp(a, b);
    std::vector<int> all(a.size());
    std::iota(all.begin(), all.end(), 0);
    csp.require_distinct(all);
    std::optional<Map> found;
    csp.solve([&](std::vector<int> const& v) {
      found = v;
      return false;
    });
    return found;
  }

  bool are_isomorphic(Site const& site, SiteObject const& a, SiteObject const& b) {
    return find_isomorphism(site, a, b).has_value();
  }

  SiteObject spread_action(BasedGraph const&                    shape,
                           std::vector<std::string> const&      fibre,
                           std::vector<std::vector<int>> const& perms) {
    if (perms.size() != shape.generators().size()) {
      throw InvalidInput("expected " + std::to_string(shape.generators().size())
                         + " generator permutations, got " + std::to_string(perms.size()));
    }
    std::size_t n  = fibre.size();
    std::size_t nv = shape.vertices().size();
    for (auto const& p : perms) {
      std::vector<char> hit(n, 0);
      if (p.size() != n) {
        throw InvalidInput("generator permutation has the wrong length");
      }
      for (int y : p) {
        if (y < 0 || static_cast<std::size_t>(y) >= n || hit[y]++) {
          throw InvalidInput("generator image is not a bijection of the fibre");
        }
      }
    }
    ObjectBuilder                 builder(shape.edges().size());
    std::vector<std::vector<int>> id(nv, std::vector<int>(n));
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t x = 0; x < n; ++x) {
        std::string label = static_cast<int>(v) == shape.base()
                                ? fibre[x]
                                : fibre[x] + "@" + shape.vertices()[v];
        id[v][x] = builder.add(std::move(label), static_cast<int>(v));
      }
    }
    std::vector<int> generator_slot(shape.edges().size(), -1);
    for (std::size_t k = 0; k < shape.generators().size(); ++k) {
      generator_slot[shape.generators()[k]] = static_cast<int>(k);
    }
    for (std::size_t e = 0; e < shape.edges().size(); ++e) {
      auto const& edge = shape.edges()[e];
      for (std::size_t x = 0; x < n; ++x) {
        int k  = generator_slot[e];
        int to = k < 0 ? static_cast<int>(x) : perms[k][x];
        builder.set_transport(static_cast<int>(e), id[edge.source][x], id[edge.target][to]);
      }
    }
    return builder.finish();
  }

}  // namespace ngrpd

namespace ngrpd {

  json describe(SiteObject const& obj) {
    return obj.labels;
  }

  json describe(Morphism const& f) {
    json m = json::object();
    for (std::size_t x = 0; x < f.map.size(); ++x) {
      m[f.source.labels[x]] = f.target.labels[f.map[x]];
    }
    return {{"source", f.source.labels}, {"target", f.target.labels}, {"map", m}};
  }

}  // namespace ngrpd
