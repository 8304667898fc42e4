#include "ngrpd/galois.hpp"

#include <algorithm>
#include <numeric>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  namespace {
    std::vector<std::pair<int, bool>> reversed(std::vector<std::pair<int, bool>> path) {
      std::reverse(path.begin(), path.end());
      for (auto& step : path) {
        step.second = !step.second;
      }
      return path;
    }

    void require_base(BasedGraph const& base, SiteObject const& obj) {
      validate(Site::graphcov(base), obj);
    }

    std::vector<std::string> generator_labels(BasedGraph const& base) {
      std::vector<std::string> out;
      for (int e : base.generators()) {
        out.push_back(base.edges()[e].label);
      }
      return out;
    }
  }  // namespace

  void validate(BasedGraph const& base, GraphCover const& c) {
    auto const& tv = c.total.vertices;
    auto const& te = c.total.edges;
    if (c.proj_v.size() != tv.size() || c.proj_e.size() != te.size()) {
      throw InvalidInput("cover projection must be total on vertices and edges");
    }
    for (int p : c.proj_v) {
      if (p < 0 || static_cast<std::size_t>(p) >= base.vertices().size()) {
        throw InvalidInput("cover vertex projects outside the base");
      }
    }
    std::size_t nbe = base.edges().size();
    // out[v][e], in[v][e]: number of lifts of base edge e leaving / entering v
    std::vector<std::vector<int>> out(tv.size(), std::vector<int>(nbe, 0));
    std::vector<std::vector<int>> in(tv.size(), std::vector<int>(nbe, 0));
    for (std::size_t e = 0; e < te.size(); ++e) {
      int b = c.proj_e[e];
      if (b < 0 || static_cast<std::size_t>(b) >= nbe) {
        throw InvalidInput("cover edge " + te[e].label + " projects outside the base");
      }
      auto const& be = base.edges()[b];
      if (te[e].source < 0 || te[e].target < 0 || static_cast<std::size_t>(te[e].source) >= tv.size()
          || static_cast<std::size_t>(te[e].target) >= tv.size()) {
        throw InvalidInput("cover edge " + te[e].label + " has an endpoint outside the total graph");
      }
      if (c.proj_v[te[e].source] != be.source || c.proj_v[te[e].target] != be.target) {
        throw InvalidInput("cover edge " + te[e].label + " does not preserve endpoints over "
                           + be.label);
      }
      ++out[te[e].source][b];
      ++in[te[e].target][b];
    }
    for (std::size_t v = 0; v < tv.size(); ++v) {
      for (std::size_t b = 0; b < nbe; ++b) {
        auto const& be = base.edges()[b];
        if (be.source == c.proj_v[v] && out[v][b] != 1) {
          throw InvalidInput("star condition fails at " + tv[v] + ": " + std::to_string(out[v][b])
                             + " lifts of " + be.label + " leave it");
        }
        if (be.target == c.proj_v[v] && in[v][b] != 1) {
          throw InvalidInput("star condition fails at " + tv[v] + ": " + std::to_string(in[v][b])
                             + " lifts of " + be.label + " enter it");
        }
      }
    }
  }

  SiteObject to_site_object(BasedGraph const& base, GraphCover const& c) {
    validate(base, c);
    ObjectBuilder b(base.edges().size());
    for (std::size_t v = 0; v < c.total.vertices.size(); ++v) {
      b.add(c.total.vertices[v], c.proj_v[v]);
    }
    for (std::size_t e = 0; e < c.total.edges.size(); ++e) {
      b.set_transport(c.proj_e[e], c.total.edges[e].source, c.total.edges[e].target);
    }
    auto obj = b.finish();
    validate(Site::graphcov(base), obj);
    return obj;
  }

  GraphCover to_graph_cover(BasedGraph const& base, SiteObject const& obj) {
    require_base(base, obj);
    GraphCover c;
    c.total.vertices = obj.labels;
    c.proj_v         = obj.fibre;
    for (std::size_t e = 0; e < base.edges().size(); ++e) {
      for (std::size_t x = 0; x < obj.size(); ++x) {
        int y = obj.transport[e][x];
        if (y < 0) {
          continue;
        }
        c.total.edges.push_back({base.edges()[e].label + "[" + obj.labels[x] + "]",
                                 static_cast<int>(x), y});
        c.proj_e.push_back(static_cast<int>(e));
      }
    }
    return c;
  }

  Site monodromy_site(BasedGraph const& base) {
    return Site::free_gfinsets(generator_labels(base));
  }

  int lift_path(SiteObject const& obj, std::vector<std::pair<int, bool>> const& path, int x) {
    for (auto [e, forward] : path) {
      auto const& t = obj.transport.at(e);
      if (forward) {
        x = t[x];
      } else {
        auto it = std::find(t.begin(), t.end(), x);
        x       = it == t.end() ? -1 : static_cast<int>(it - t.begin());
      }
      if (x < 0) {
        throw InvalidInput("path does not lift: element is not over the edge's endpoint");
      }
    }
    return x;
  }

  std::vector<int> fiber_elements(BasedGraph const& base, SiteObject const& obj) {
    std::vector<int> out;
    for (std::size_t x = 0; x < obj.size(); ++x) {
      if (obj.fibre[x] == base.base()) {
        out.push_back(static_cast<int>(x));
      }
    }
    return out;
  }

  FreeGroupAction fiber_functor(BasedGraph const& base, SiteObject const& obj) {
    require_base(base, obj);
    auto                     fiber = fiber_elements(base, obj);
    std::vector<int>         position(obj.size(), -1);
    std::vector<std::string> carrier;
    for (std::size_t p = 0; p < fiber.size(); ++p) {
      position[fiber[p]] = static_cast<int>(p);
      carrier.push_back(obj.labels[fiber[p]]);
    }
    std::vector<std::vector<int>> perms;
    for (int e : base.generators()) {
      auto const& edge = base.edges()[e];
      auto        loop = base.tree_path(edge.source);
      loop.emplace_back(e, true);
      auto back = reversed(base.tree_path(edge.target));
      loop.insert(loop.end(), back.begin(), back.end());
      std::vector<int> perm;
      for (int x : fiber) {
        perm.push_back(position[lift_path(obj, loop, x)]);
      }
      perms.push_back(std::move(perm));
    }
    return free_group_action(base.generators().size(), std::move(carrier), std::move(perms));
  }

  FreeGroupAction fiber_functor(BasedGraph const& base, GraphCover const& c) {
    return fiber_functor(base, to_site_object(base, c));
  }

  Map fiber_map(BasedGraph const& base, Morphism const& f) {
    auto             src = fiber_elements(base, f.source);
    auto             tgt = fiber_elements(base, f.target);
    std::vector<int> position(f.target.size(), -1);
    for (std::size_t p = 0; p < tgt.size(); ++p) {
      position[tgt[p]] = static_cast<int>(p);
    }
    Map out;
    for (int x : src) {
      int y = position.at(f.map.at(x));
      if (y < 0) {
        throw InvalidInput("map does not preserve the fibre over the basepoint");
      }
      out.push_back(y);
    }
    return out;
  }

  namespace {
    // id[v][x]: index of the copy of carrier element x over vertex v.
    std::vector<std::vector<int>> spread_index(BasedGraph const&               base,
                                               SiteObject const&               obj,
                                               std::vector<std::string> const& carrier) {
      std::vector<std::vector<int>> id(base.vertices().size());
      for (std::size_t v = 0; v < base.vertices().size(); ++v) {
        for (auto const& l : carrier) {
          id[v].push_back(obj.index_of(static_cast<int>(v) == base.base()
                                           ? l
                                           : l + "@" + base.vertices()[v]));
        }
      }
      return id;
    }

    void require_sorted(FreeGroupAction const& a) {
      if (!std::is_sorted(a.carrier.begin(), a.carrier.end())
          || std::adjacent_find(a.carrier.begin(), a.carrier.end()) != a.carrier.end()) {
        throw InvalidInput("action carrier labels must be sorted and distinct");
      }
    }
  }  // namespace

  SiteObject cover_from_action(BasedGraph const& base, FreeGroupAction const& a) {
    require_sorted(a);
    return spread_action(base, a.carrier, a.perms);
  }

  GraphCover cover_graph_from_action(BasedGraph const& base, FreeGroupAction const& a) {
    return to_graph_cover(base, cover_from_action(base, a));
  }

  Map cover_map_from_action(BasedGraph const&      base,
                            FreeGroupAction const& a,
                            FreeGroupAction const& b,
                            Map const&             fiber) {
    auto src = cover_from_action(base, a);
    auto tgt = cover_from_action(base, b);
    if (fiber.size() != a.carrier.size()) {
      throw InvalidInput("fibre map has the wrong length");
    }
    auto ia = spread_index(base, src, a.carrier);
    auto ib = spread_index(base, tgt, b.carrier);
    Map  out(src.size(), -1);
    for (std::size_t v = 0; v < ia.size(); ++v) {
      for (std::size_t x = 0; x < fiber.size(); ++x) {
        out[ia[v][x]] = ib[v].at(fiber[x]);
      }
    }
    if (!is_morphism(Site::graphcov(base), src, tgt, out)) {
      throw InvalidInput("fibre map is not equivariant");
    }
    return out;
  }

  json CoverIsoWitness::to_json() const {
    return {{"source", ngrpd::describe(source)},
            {"target", ngrpd::describe(target)},
            {"iso", ngrpd::describe(Morphism{source, target, iso})["map"]},
            {"candidates_tried", candidates_tried}};
  }

  std::optional<CoverIsoWitness> roundtrip_iso(BasedGraph const& base, SiteObject const& obj) {
    auto        a      = fiber_functor(base, obj);
    auto        target = cover_from_action(base, a);
    auto        fa     = fiber_elements(base, obj);
    auto        ft     = fiber_elements(base, target);
    Site const  site   = Site::graphcov(base);
    std::vector<int> pos(obj.size(), -1);
    for (std::size_t p = 0; p < fa.size(); ++p) {
      pos[fa[p]] = static_cast<int>(p);
    }
    // Each element y over v is reached from exactly one fibre element along
    // the tree path to v.
    std::vector<int> root(obj.size());
    for (std::size_t y = 0; y < obj.size(); ++y) {
      root[y] = pos[lift_path(obj, reversed(base.tree_path(obj.fibre[y])), static_cast<int>(y))];
    }
    std::vector<int> sigma(fa.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    std::size_t tried = 0;
    do {
      ++tried;
      Map map(obj.size());
      for (std::size_t y = 0; y < obj.size(); ++y) {
        map[y] = lift_path(target, base.tree_path(obj.fibre[y]), ft[sigma[root[y]]]);
      }
      if (is_bijective(map, target.size()) && is_morphism(site, obj, target, map)) {
        return CoverIsoWitness{obj, target, map, tried};
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
  }

  bool roundtrip_exact(BasedGraph const& base, FreeGroupAction const& a) {
    return fiber_functor(base, cover_from_action(base, a)) == a;
  }

  json TreeChange::to_json() const {
    json w = json::array();
    for (auto const& word : words) {
      w.push_back(word);
    }
    return {{"before", before.perms}, {"after", after.perms}, {"words", w}, {"consistent", consistent}};
  }

  TreeChange tree_change(BasedGraph const& base, std::vector<int> const& other_tree, SiteObject const& obj) {
    auto       other = base.with_tree(other_tree);
    TreeChange out;
    out.before = fiber_functor(base, obj);
    out.after  = fiber_functor(other, obj);
    std::vector<int> slot(base.edges().size(), -1);
    for (std::size_t k = 0; k < base.generators().size(); ++k) {
      slot[base.generators()[k]] = static_cast<int>(k);
    }
    for (int e : other.generators()) {
      auto const& edge = other.edges()[e];
      auto        loop = other.tree_path(edge.source);
      loop.emplace_back(e, true);
      auto back = reversed(other.tree_path(edge.target));
      loop.insert(loop.end(), back.begin(), back.end());
      // The first step of the loop acts first, so it is the rightmost letter.
      Word w;
      for (auto it = loop.rbegin(); it != loop.rend(); ++it) {
        int k = slot[it->first];
        if (k >= 0) {
          w.push_back(it->second ? k + 1 : -(k + 1));
        }
      }
      out.words.push_back(reduce(w));
    }
    out.consistent = true;
    for (std::size_t k = 0; k < out.words.size(); ++k) {
      for (std::size_t x = 0; x < out.before.carrier.size(); ++x) {
        if (out.after.perms[k][x] != out.before.act(out.words[k], static_cast<int>(x))) {
          out.consistent = false;
        }
      }
    }
    return out;
  }

  namespace {
    BasedGraph const& graphcov_base(Site const& site) {
      if (site.kind() != SiteKind::graphcov) {
        throw InvalidInput("the fiber functor needs an object over a GraphCov site");
      }
      return site.shape();
    }
  }  // namespace

  SimplicialObject fiber_functor_ngrpd(SimplicialObject const& x) {
    auto const& base = graphcov_base(x.site);
    auto        site = monodromy_site(base);
    auto        on_object = [&](SiteObject const& obj) {
      return to_site_object(site, fiber_functor(base, obj));
    };
    SimplicialObject y{site, x.N, {}, {}, {}};
    y.face.resize(x.N + 1);
    y.degen.resize(x.N + 1);
    for (int m = 0; m <= x.N; ++m) {
      y.level.push_back(on_object(x.level[m]));
    }
    for (int m = 0; m <= x.N; ++m) {
      for (int i = 0; m >= 1 && i <= m; ++i) {
        y.face[m].push_back(fiber_map(base, {x.level[m], x.level[m - 1], x.face[m][i]}));
      }
      for (int j = 0; m < x.N && j <= m; ++j) {
        y.degen[m].push_back(fiber_map(base, {x.level[m], x.level[m + 1], x.degen[m][j]}));
      }
    }
    return y;
  }

  std::vector<Map> fiber_functor_ngrpd(SimplicialMorphism const& f) {
    auto const&      base = graphcov_base(f.source.site);
    std::vector<Map> out;
    for (int m = 0; m <= f.source.N; ++m) {
      out.push_back(fiber_map(base, {f.source.level[m], f.target.level[m], f.level[m]}));
    }
    return out;
  }

  SimplicialFunctor fiber_functor_on(BasedGraph const& base, CfoSample const& sample) {
    auto site = monodromy_site(base);
    return levelwise_functor(
        "fiber functor", [site](Site const&) { return site; },
        [base, site](SiteObject const& obj) { return to_site_object(site, fiber_functor(base, obj)); },
        [base](Morphism const& f) { return fiber_map(base, f); }, sample);
  }

  SimplicialFunctor fiber_functor_on(CfoSample const& sample) {
    if (sample.objects.empty()) {
      throw InvalidInput("cannot read the base graph from an empty sample");
    }
    return fiber_functor_on(graphcov_base(sample.objects.front().site), sample);
  }

  SimplicialObject cover_from_action_ngrpd(BasedGraph const& base, SimplicialObject const& x) {
    if (!(x.site == monodromy_site(base))) {
      throw InvalidInput("object does not live in the action site of this base graph");
    }
    std::vector<FreeGroupAction> actions;
    for (auto const& l : x.level) {
      actions.push_back(to_free_action(l));
    }
    SimplicialObject y{Site::graphcov(base), x.N, {}, {}, {}};
    y.face.resize(x.N + 1);
    y.degen.resize(x.N + 1);
    for (auto const& a : actions) {
      y.level.push_back(cover_from_action(base, a));
    }
    for (int m = 0; m <= x.N; ++m) {
      for (int i = 0; m >= 1 && i <= m; ++i) {
        y.face[m].push_back(cover_map_from_action(base, actions[m], actions[m - 1], x.face[m][i]));
      }
      for (int j = 0; m < x.N && j <= m; ++j) {
        y.degen[m].push_back(cover_map_from_action(base, actions[m], actions[m + 1], x.degen[m][j]));
      }
    }
    validate(y);
    return y;
  }

  Report verify_correspondence_exactness(BasedGraph const&                    base,
                                         CfoSample const&                     sample,
                                         std::vector<SimplicialObject> const& targets,
                                         int                                  n) {
    Report r("galois-audit");
    auto   F = fiber_functor_on(base, sample);
    r.merge(verify_exact_functor(F, sample));
    auto const cov  = Site::graphcov(base);
    auto const act  = monodromy_site(base);

    r.declare("cover reflection");
    r.declare("fibration verdicts preserved");
    r.declare("hypercover verdicts preserved");
    r.declare("groupoid verdicts preserved");
    r.declare("essential surjectivity");

    auto image_of = [&](SimplicialObject const& x) {
      for (std::size_t i = 0; i < sample.objects.size(); ++i) {
        if (sample.objects[i] == x) {
          return F.object_image[i];
        }
      }
      return fiber_functor_ngrpd(x);
    };

    for (std::size_t k = 0; k < sample.morphisms.size(); ++k) {
      auto const& f = sample.morphisms[k];
      SimplicialMorphism Ff{image_of(f.source), image_of(f.target), F.morphism_image[k]};
      for (int m = 0; m <= f.source.N; ++m) {
        bool a = is_cover(cov, f.level[m], f.target.level[m].size());
        bool b = is_cover(act, Ff.level[m], Ff.target.level[m].size());
        r.record("cover reflection", a == b,
                 {{"morphism", sample.describe(k)}, {"level", m}, {"cover", a}, {"image_cover", b}});
      }
      bool fa = is_fibration(f), fb = is_fibration(Ff);
      r.record("fibration verdicts preserved", fa == fb,
               {{"morphism", sample.describe(k)}, {"fibration", fa}, {"image_fibration", fb}});
      bool ha = is_hypercover(f, n), hb = is_hypercover(Ff, n);
      r.record("hypercover verdicts preserved", ha == hb,
               {{"morphism", sample.describe(k)}, {"hypercover", ha}, {"image_hypercover", hb}});
    }

    for (std::size_t i = 0; i < sample.objects.size(); ++i) {
      auto const& x = sample.objects[i];
      try {
        bool a = is_n_groupoid(x, n), b = is_n_groupoid(F.object_image[i], n);
        r.record("groupoid verdicts preserved", a == b,
                 {{"object", sample.name_of(x)}, {"groupoid", a}, {"image_groupoid", b}});
      } catch (Refused const&) {
        r.note("object " + sample.name_of(x) + " is too shallow for the " + n_to_string(n)
               + "-groupoid test; skipped");
      }
    }

    for (std::size_t t = 0; t < targets.size(); ++t) {
      auto const& y = targets[t];
      if (!(y.site == act)) {
        throw InvalidInput("essential surjectivity target does not live in the action site");
      }
      json w = {{"target", t}};
      bool hit = false;
      for (std::size_t i = 0; i < sample.objects.size() && !hit; ++i) {
        if (F.object_image[i].N == y.N && are_isomorphic(F.object_image[i], y)) {
          hit       = true;
          w["via"]  = "sample object " + sample.name_of(sample.objects[i]);
        }
      }
      if (!hit) {
        auto pre = cover_from_action_ngrpd(base, y);
        hit      = are_isomorphic(fiber_functor_ngrpd(pre), y);
        w["via"] = "constructed preimage";
      }
      r.record("essential surjectivity", hit, w);
    }
    r.set_range("targets", targets.size());
    r.set_range("n", n_to_string(n));
    return r;
  }

  EquivariantSimplicialSet pull_out_action(SimplicialObject const& x) {
    if (x.site.kind() != SiteKind::gfinsets) {
      throw InvalidInput("pull_out_action needs an object over a G-FinSets site");
    }
    EquivariantSimplicialSet e{{Site::finsets(), x.N, {}, x.face, x.degen}, {}};
    for (auto const& l : x.level) {
      e.underlying.level.push_back({l.labels, l.fibre, {}});
      e.action.push_back(l.transport);
    }
    return e;
  }

  SimplicialObject push_in_action(Site const& site, EquivariantSimplicialSet const& e) {
    if (site.kind() != SiteKind::gfinsets) {
      throw InvalidInput("push_in_action needs a G-FinSets site");
    }
    auto const& u     = e.underlying;
    auto const& edges = site.shape().edges();
    if (e.action.size() != u.level.size()) {
      throw InvalidInput("one action per level is required");
    }
    SimplicialObject x{site, u.N, {}, u.face, u.degen};
    for (std::size_t m = 0; m < u.level.size(); ++m) {
      if (e.action[m].size() != edges.size()) {
        throw InvalidInput("level " + std::to_string(m) + " needs one permutation per group label");
      }
      x.level.push_back({u.level[m].labels, u.level[m].fibre, e.action[m]});
      validate(site, x.level[m]);
    }
    auto check = [&](int m, int m2, Map const& d, std::string const& name) {
      for (std::size_t g = 0; g < edges.size(); ++g) {
        for (std::size_t c = 0; c < d.size(); ++c) {
          if (d[e.action[m][g][c]] != e.action[m2][g][d[c]]) {
            json w = {{"level", m}, {"map", name}, {"group_label", edges[g].label},
                      {"element", u.level[m].labels[c]}};
            throw InvalidInput("action does not commute with a structure map: " + w.dump());
          }
        }
      }
    };
    for (int m = 0; m <= u.N; ++m) {
      for (int i = 0; m >= 1 && i <= m; ++i) {
        check(m, m - 1, u.face[m][i], "d" + std::to_string(i));
      }
      for (int j = 0; m < u.N && j <= m; ++j) {
        check(m, m + 1, u.degen[m][j], "s" + std::to_string(j));
      }
    }
    validate(x);
    return x;
  }

}  // namespace ngrpd
