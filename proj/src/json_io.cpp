#include "ngrpd/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  namespace {

    [[noreturn]] void bad(std::string const& where, std::string const& what) {
      throw InvalidInput(where + ": " + what);
    }

    json const& field(json const& j, std::string const& key, std::string const& where) {
      if (!j.is_object()) {
        bad(where, "expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        bad(where, "missing key \"" + key + "\"");
      }
      return *it;
    }

    std::string str(json const& j, std::string const& where) {
      if (!j.is_string()) {
        bad(where, "expected a string");
      }
      return j.get<std::string>();
    }

    int integer(json const& j, std::string const& where) {
      if (!j.is_number_integer()) {
        bad(where, "expected an integer");
      }
      return j.get<int>();
    }

    std::vector<std::string> strings(json const& j, std::string const& where) {
      if (!j.is_array()) {
        bad(where, "expected an array of strings");
      }
      std::vector<std::string> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(str(j[i], where + "[" + std::to_string(i) + "]"));
      }
      return out;
    }

    int lookup(std::vector<std::string> const& labels, std::string const& l, std::string const& where) {
      auto it = std::find(labels.begin(), labels.end(), l);
      if (it == labels.end()) {
        bad(where, "unknown label \"" + l + "\"");
      }
      return static_cast<int>(it - labels.begin());
    }

    // {label: label} or an index array
    Map read_map(json const& j, std::vector<std::string> const& from, std::vector<std::string> const& to,
                 std::string const& where) {
      Map m(from.size(), -1);
      if (j.is_array()) {
        if (j.size() != from.size()) {
          bad(where, "index map has the wrong length");
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
          int v = integer(j[i], where + "[" + std::to_string(i) + "]");
          if (v < 0 || static_cast<std::size_t>(v) >= to.size()) {
            bad(where, "index out of range");
          }
          m[i] = v;
        }
        return m;
      }
      if (!j.is_object()) {
        bad(where, "expected a map {label: label}");
      }
      for (auto const& [k, v] : j.items()) {
        m[lookup(from, k, where)] = lookup(to, str(v, where + "." + k), where + "." + k);
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) {
          bad(where, "no image for \"" + from[i] + "\"");
        }
      }
      return m;
    }

    json write_map(Map const& m, std::vector<std::string> const& from, std::vector<std::string> const& to) {
      json j = json::object();
      for (std::size_t i = 0; i < m.size(); ++i) {
        j[from[i]] = to.at(m[i]);
      }
      return j;
    }

    template <class F>
    auto guard(std::string const& where, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (json::exception const& e) {
        bad(where, e.what());
      }
    }

    bool one_vertex(Site const& s) {
      return s.shape().vertices().size() == 1;
    }

  }  // namespace

  json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput(path + ": cannot open");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
  }

  json parse_json(std::string const& text, std::string const& origin) {
    try {
      return json::parse(text);
    } catch (json::parse_error const& e) {
      // e.byte is 1-based; translate to line:column
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw InvalidInput(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON ("
                         + e.what() + ")");
    }
  }

  std::string dump(json const& j) {
    return j.dump(2) + "\n";
  }

  // ----------------------------------------------------------------- groups

  json to_json(FiniteGroup const& g) {
    return {{"elements", g.elements()}, {"table", g.table()}};
  }

  FiniteGroup group_from_json(json const& j) {
    auto elements = strings(field(j, "elements", "group"), "group.elements");
    auto const& t = field(j, "table", "group");
    std::vector<std::vector<int>> table;
    if (!t.is_array()) {
      bad("group.table", "expected an array of rows");
    }
    for (std::size_t r = 0; r < t.size(); ++r) {
      std::vector<int> row;
      if (!t[r].is_array()) {
        bad("group.table[" + std::to_string(r) + "]", "expected a row");
      }
      for (std::size_t c = 0; c < t[r].size(); ++c) {
        auto const& cell = t[r][c];
        std::string where = "group.table[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        row.push_back(cell.is_string() ? lookup(elements, cell.get<std::string>(), where) : integer(cell, where));
      }
      table.push_back(std::move(row));
    }
    return FiniteGroup(std::move(elements), std::move(table));
  }

  // ------------------------------------------------------------------ graphs

  json to_json(BasedGraph const& g) {
    json edges = json::array();
    for (auto const& e : g.edges()) {
      edges.push_back({{"s", g.vertices()[e.source]}, {"t", g.vertices()[e.target]}, {"label", e.label}});
    }
    json tree = json::array();
    for (int e : g.tree()) {
      tree.push_back(g.edges()[e].label);
    }
    return {{"vertices", g.vertices()}, {"edges", edges}, {"base", g.vertices()[g.base()]}, {"tree", tree}};
  }

  namespace {
    PlainGraph plain_from_json(json const& j, std::string const& where) {
      PlainGraph g;
      g.vertices  = strings(field(j, "vertices", where), where + ".vertices");
      auto const& e = field(j, "edges", where);
      if (!e.is_array()) {
        bad(where + ".edges", "expected an array");
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        std::string w = where + ".edges[" + std::to_string(i) + "]";
        g.edges.push_back({str(field(e[i], "label", w), w + ".label"),
                           lookup(g.vertices, str(field(e[i], "s", w), w + ".s"), w + ".s"),
                           lookup(g.vertices, str(field(e[i], "t", w), w + ".t"), w + ".t")});
      }
      return g;
    }
  }  // namespace

  BasedGraph graph_from_json(json const& j) {
    auto g    = plain_from_json(j, "graph");
    int  base = lookup(g.vertices, str(field(j, "base", "graph"), "graph.base"), "graph.base");
    std::vector<std::string> edge_labels;
    for (auto const& e : g.edges) {
      edge_labels.push_back(e.label);
    }
    std::vector<int> tree;
    if (j.contains("tree")) {
      for (auto const& l : strings(j["tree"], "graph.tree")) {
        tree.push_back(lookup(edge_labels, l, "graph.tree"));
      }
    }
    return BasedGraph(g.vertices, g.edges, base, tree);
  }

  // ------------------------------------------------------------------- sites

  json to_json(Site const& s) {
    json j;
    switch (s.kind()) {
      case SiteKind::finsets:
        j["kind"] = "finsets";
        break;
      case SiteKind::gfinsets:
        j["kind"] = "gfinsets";
        if (s.group()) {
          j["group"] = to_json(*s.group());
        } else {
          json gens = json::array();
          for (auto const& e : s.shape().edges()) {
            gens.push_back(e.label);
          }
          j["generators"] = gens;
        }
        break;
      case SiteKind::graphcov:
        j["kind"] = "graphcov";
        j["base"] = to_json(s.shape());
        break;
    }
    if (s.cover_class() != CoverClass::surjective) {
      j["covers"] = to_string(s.cover_class());
    }
    return j;
  }

  Site site_from_json(json const& j) {
    if (j.is_string()) {
      return site_from_json(json{{"kind", j}});
    }
    auto kind = str(field(j, "kind", "site"), "site.kind");
    Site s    = Site::finsets();
    if (kind == "finsets") {
      s = Site::finsets();
    } else if (kind == "gfinsets") {
      if (j.contains("group")) {
        s = Site::gfinsets(group_from_json(j["group"]));
      } else if (j.contains("cyclic")) {
        s = Site::gfinsets(FiniteGroup::cyclic(integer(j["cyclic"], "site.cyclic")));
      } else {
        s = Site::free_gfinsets(strings(field(j, "generators", "site"), "site.generators"));
      }
    } else if (kind == "graphcov") {
      s = Site::graphcov(graph_from_json(field(j, "base", "site")));
    } else {
      bad("site.kind", "unknown site kind \"" + kind + "\"");
    }
    if (j.contains("covers")) {
      try {
        s = s.with_cover_class(cover_class_from_string(str(j["covers"], "site.covers")));
      } catch (InvalidInput const& e) {
        bad("site.covers", e.what());
      }
    }
    return s;
  }

  // ---------------------------------------------------------------- objects

  json to_json(Site const& site, SiteObject const& obj) {
    auto const& shape = site.shape();
    if (site.kind() == SiteKind::finsets) {
      return obj.labels;
    }
    if (site.kind() == SiteKind::gfinsets) {
      json action = json::object();
      for (std::size_t e = 0; e < shape.edges().size(); ++e) {
        action[shape.edges()[e].label] = write_map(obj.transport[e], obj.labels, obj.labels);
      }
      return {{"carrier", obj.labels}, {"action", action}};
    }
    json over = json::object(), transport = json::object();
    for (std::size_t x = 0; x < obj.size(); ++x) {
      over[obj.labels[x]] = shape.vertices()[obj.fibre[x]];
    }
    for (std::size_t e = 0; e < shape.edges().size(); ++e) {
      json m = json::object();
      for (std::size_t x = 0; x < obj.size(); ++x) {
        if (obj.transport[e][x] >= 0) {
          m[obj.labels[x]] = obj.labels[obj.transport[e][x]];
        }
      }
      transport[shape.edges()[e].label] = m;
    }
    return {{"elements", obj.labels}, {"over", over}, {"transport", transport}};
  }

  SiteObject object_from_json(Site const& site, json const& j) {
    return guard("object", [&] {
      auto const&              shape = site.shape();
      std::vector<std::string> labels;
      json                     over = json::object(), transport = json::object();
      if (j.is_array()) {
        labels = strings(j, "object");
      } else {
        labels = strings(j.contains("carrier") ? j["carrier"] : field(j, "elements", "object"), "object.elements");
        if (j.contains("over")) {
          over = j["over"];
        }
        if (j.contains("action")) {
          transport = j["action"];
        } else if (j.contains("transport")) {
          transport = j["transport"];
        }
      }
      std::sort(labels.begin(), labels.end());
      if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        bad("object", "duplicate element label");
      }
      SiteObject obj;
      obj.labels = labels;
      obj.fibre.assign(labels.size(), shape.base());
      for (auto const& [x, v] : over.items()) {
        obj.fibre[lookup(labels, x, "object.over")] =
            lookup(shape.vertices(), str(v, "object.over." + x), "object.over." + x);
      }
      obj.transport.assign(shape.edges().size(), std::vector<int>(labels.size(), -1));
      std::vector<std::string> edge_labels;
      for (auto const& e : shape.edges()) {
        edge_labels.push_back(e.label);
      }
      for (auto const& [e, m] : transport.items()) {
        int ei = lookup(edge_labels, e, "object.transport");
        if (!m.is_object()) {
          bad("object.transport." + e, "expected a map {label: label}");
        }
        for (auto const& [x, y] : m.items()) {
          obj.transport[ei][lookup(labels, x, "object.transport." + e)] =
              lookup(labels, str(y, "object.transport." + e + "." + x), "object.transport." + e + "." + x);
        }
      }
      // one-vertex shapes: unspecified transports are identities
      if (one_vertex(site)) {
        for (std::size_t e = 0; e < shape.edges().size(); ++e) {
          if (!transport.contains(shape.edges()[e].label)) {
            for (std::size_t x = 0; x < labels.size(); ++x) {
              obj.transport[e][x] = static_cast<int>(x);
            }
          }
        }
      }
      try {
        validate(site, obj);
      } catch (InvalidInput const& e) {
        bad("object", e.what());
      }
      return obj;
    });
  }

  json to_json(Site const& site, Morphism const& f) {
    return {{"source", to_json(site, f.source)},
            {"target", to_json(site, f.target)},
            {"map", write_map(f.map, f.source.labels, f.target.labels)}};
  }

  Morphism morphism_from_json(Site const& site, json const& j) {
    Morphism f;
    f.source = object_from_json(site, field(j, "source", "map"));
    f.target = object_from_json(site, field(j, "target", "map"));
    f.map    = read_map(field(j, "map", "map"), f.source.labels, f.target.labels, "map.map");
    if (!is_morphism(site, f.source, f.target, f.map)) {
      bad("map", "not a morphism of the site (transports not preserved)");
    }
    return f;
  }

  // ----------------------------------------------------------------- actions

  json to_json(FreeGroupAction const& a) {
    return {{"rank", a.rank()}, {"carrier", a.carrier}, {"perms", a.perms}};
  }

  FreeGroupAction action_from_json(json const& j) {
    return guard("action", [&] {
      int  rank  = integer(field(j, "rank", "action"), "action.rank");
      auto const& p = field(j, "perms", "action");
      if (!p.is_array()) {
        bad("action.perms", "expected an array of permutations");
      }
      std::vector<std::vector<int>> perms;
      for (std::size_t k = 0; k < p.size(); ++k) {
        std::vector<int> perm;
        if (!p[k].is_array()) {
          bad("action.perms[" + std::to_string(k) + "]", "expected an index array");
        }
        for (std::size_t x = 0; x < p[k].size(); ++x) {
          perm.push_back(integer(p[k][x], "action.perms[" + std::to_string(k) + "][" + std::to_string(x) + "]"));
        }
        perms.push_back(std::move(perm));
      }
      std::vector<std::string> carrier;
      if (j.contains("carrier")) {
        carrier = strings(j["carrier"], "action.carrier");
      } else {
        std::size_t n = perms.empty() ? 0 : perms[0].size();
        for (std::size_t x = 0; x < n; ++x) {
          carrier.push_back(std::to_string(x));
        }
      }
      if (rank < 0) {
        bad("action.rank", "must be non-negative");
      }
      try {
        return free_group_action(static_cast<std::size_t>(rank), std::move(carrier), std::move(perms));
      } catch (InvalidInput const& e) {
        bad("action", e.what());
      }
    });
  }

  json to_json(FiniteGroup const& g, GSet const& s) {
    json action = json::object();
    for (std::size_t e = 0; e < g.order(); ++e) {
      action[g.label(static_cast<int>(e))] = write_map(s.action[e], s.carrier, s.carrier);
    }
    return {{"carrier", s.carrier}, {"action", action}};
  }

  GSet gset_from_json(FiniteGroup const& g, json const& j) {
    auto obj = object_from_json(Site::gfinsets(g), j);
    return {obj.labels, obj.transport};
  }

  // -------------------------------------------------------- simplicial data

  json to_json(FiniteSimplicialSet const& s) {
    json d = json::array(), sd = json::array();
    for (int m = 1; m <= s.N; ++m) {
      json faces = json::array();
      for (auto const& f : s.face[m]) {
        faces.push_back(write_map(f, s.cells[m], s.cells[m - 1]));
      }
      d.push_back(faces);
    }
    for (int m = 0; m < s.N; ++m) {
      json degs = json::array();
      for (auto const& f : s.degen[m]) {
        degs.push_back(write_map(f, s.cells[m], s.cells[m + 1]));
      }
      sd.push_back(degs);
    }
    return {{"N", s.N}, {"levels", s.cells}, {"d", d}, {"s", sd}};
  }

  namespace {
    // levels given as label lists; d[m-1][i] and s[m][j] as maps
    void read_structure(json const& j, std::vector<std::vector<std::string>> const& labels, int N,
                        std::vector<std::vector<Map>>& face, std::vector<std::vector<Map>>& degen) {
      auto const& d = field(j, "d", "simplicial");
      auto const& s = field(j, "s", "simplicial");
      if (!d.is_array() || static_cast<int>(d.size()) != N) {
        bad("simplicial.d", "expected N arrays of face maps");
      }
      if (!s.is_array() || static_cast<int>(s.size()) != N) {
        bad("simplicial.s", "expected N arrays of degeneracy maps");
      }
      face.assign(N + 1, {});
      degen.assign(N + 1, {});
      for (int m = 1; m <= N; ++m) {
        auto const& dm = d[m - 1];
        if (!dm.is_array() || static_cast<int>(dm.size()) != m + 1) {
          bad("simplicial.d[" + std::to_string(m - 1) + "]", "level " + std::to_string(m) + " needs m + 1 faces");
        }
        for (int i = 0; i <= m; ++i) {
          face[m].push_back(read_map(dm[i], labels[m], labels[m - 1],
                                     "simplicial.d[" + std::to_string(m - 1) + "][" + std::to_string(i) + "]"));
        }
      }
      for (int m = 0; m < N; ++m) {
        auto const& sm = s[m];
        if (!sm.is_array() || static_cast<int>(sm.size()) != m + 1) {
          bad("simplicial.s[" + std::to_string(m) + "]", "level " + std::to_string(m) + " needs m + 1 degeneracies");
        }
        for (int k = 0; k <= m; ++k) {
          degen[m].push_back(read_map(sm[k], labels[m], labels[m + 1],
                                      "simplicial.s[" + std::to_string(m) + "][" + std::to_string(k) + "]"));
        }
      }
    }

    int read_N(json const& j, std::size_t levels) {
      int N = j.contains("N") ? integer(j["N"], "simplicial.N") : static_cast<int>(levels) - 1;
      if (N < 0 || static_cast<std::size_t>(N) + 1 != levels) {
        bad("simplicial.N", "N must equal the number of levels minus one");
      }
      return N;
    }
  }  // namespace

  FiniteSimplicialSet simplicial_set_from_json(json const& j) {
    return guard("simplicial", [&] {
      auto const& lv = field(j, "levels", "simplicial");
      if (!lv.is_array()) {
        bad("simplicial.levels", "expected an array of cell lists");
      }
      FiniteSimplicialSet s;
      for (std::size_t m = 0; m < lv.size(); ++m) {
        s.cells.push_back(strings(lv[m], "simplicial.levels[" + std::to_string(m) + "]"));
      }
      s.N = read_N(j, s.cells.size());
      read_structure(j, s.cells, s.N, s.face, s.degen);
      try {
        validate(s);
      } catch (InvalidInput const& e) {
        bad("simplicial", e.what());
      }
      return s;
    });
  }

  json to_json(SimplicialObject const& x) {
    json levels = json::array(), d = json::array(), s = json::array();
    for (auto const& l : x.level) {
      levels.push_back(to_json(x.site, l));
    }
    for (int m = 1; m <= x.N; ++m) {
      json faces = json::array();
      for (auto const& f : x.face[m]) {
        faces.push_back(write_map(f, x.level[m].labels, x.level[m - 1].labels));
      }
      d.push_back(faces);
    }
    for (int m = 0; m < x.N; ++m) {
      json degs = json::array();
      for (auto const& f : x.degen[m]) {
        degs.push_back(write_map(f, x.level[m].labels, x.level[m + 1].labels));
      }
      s.push_back(degs);
    }
    return {{"site", to_json(x.site)}, {"N", x.N}, {"levels", levels}, {"d", d}, {"s", s}};
  }

  SimplicialObject simplicial_object_from_json(json const& j) {
    return guard("simplicial", [&] {
      Site site = j.contains("site") ? site_from_json(j["site"]) : Site::finsets();
      auto const& lv = field(j, "levels", "simplicial");
      if (!lv.is_array()) {
        bad("simplicial.levels", "expected an array of objects");
      }
      SimplicialObject x{site, 0, {}, {}, {}};
      std::vector<std::vector<std::string>> labels;
      for (std::size_t m = 0; m < lv.size(); ++m) {
        try {
          x.level.push_back(object_from_json(site, lv[m]));
        } catch (InvalidInput const& e) {
          bad("simplicial.levels[" + std::to_string(m) + "]", e.what());
        }
        labels.push_back(x.level.back().labels);
      }
      x.N = read_N(j, x.level.size());
      read_structure(j, labels, x.N, x.face, x.degen);
      try {
        validate(x);
      } catch (InvalidInput const& e) {
        bad("simplicial", e.what());
      }
      return x;
    });
  }

  json to_json(SimplicialMorphism const& f) {
    json levels = json::array();
    for (std::size_t m = 0; m < f.level.size(); ++m) {
      levels.push_back(write_map(f.level[m], f.source.level[m].labels, f.target.level[m].labels));
    }
    return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"levels", levels}};
  }

  SimplicialMorphism simplicial_morphism_from_json(json const& j) {
    return guard("morphism", [&] {
      SimplicialMorphism f{simplicial_object_from_json(field(j, "source", "morphism")),
                           simplicial_object_from_json(field(j, "target", "morphism")),
                           {}};
      if (!(f.source.site == f.target.site)) {
        bad("morphism", "source and target live over different sites");
      }
      if (f.source.N != f.target.N) {
        bad("morphism", "source and target have different truncation levels");
      }
      auto const& lv = field(j, "levels", "morphism");
      if (!lv.is_array() || static_cast<int>(lv.size()) != f.source.N + 1) {
        bad("morphism.levels", "expected one map per level");
      }
      for (int m = 0; m <= f.source.N; ++m) {
        f.level.push_back(read_map(lv[m], f.source.level[m].labels, f.target.level[m].labels,
                                   "morphism.levels[" + std::to_string(m) + "]"));
      }
      if (!is_simplicial_morphism(f.source, f.target, f.level)) {
        bad("morphism", "level maps do not commute with the structure maps or the transports");
      }
      return f;
    });
  }

  // ------------------------------------------------------------------ covers

  json to_json(BasedGraph const& base, GraphCover const& c) {
    json edges = json::array();
    for (auto const& e : c.total.edges) {
      edges.push_back({{"s", c.total.vertices[e.source]}, {"t", c.total.vertices[e.target]}, {"label", e.label}});
    }
    json pv = json::object(), pe = json::object();
    for (std::size_t v = 0; v < c.total.vertices.size(); ++v) {
      pv[c.total.vertices[v]] = base.vertices()[c.proj_v[v]];
    }
    for (std::size_t e = 0; e < c.total.edges.size(); ++e) {
      pe[c.total.edges[e].label] = base.edges()[c.proj_e[e]].label;
    }
    return {{"total", {{"vertices", c.total.vertices}, {"edges", edges}}}, {"proj_v", pv}, {"proj_e", pe}};
  }

  GraphCover cover_from_json(BasedGraph const& base, json const& j) {
    return guard("cover", [&] {
      GraphCover c;
      c.total = plain_from_json(field(j, "total", "cover"), "cover.total");
      std::vector<std::string> total_edges, base_edges;
      for (auto const& e : c.total.edges) {
        total_edges.push_back(e.label);
      }
      for (auto const& e : base.edges()) {
        base_edges.push_back(e.label);
      }
      if (std::set<std::string>(total_edges.begin(), total_edges.end()).size() != total_edges.size()) {
        bad("cover.total.edges", "duplicate edge label");
      }
      c.proj_v = read_map(field(j, "proj_v", "cover"), c.total.vertices, base.vertices(), "cover.proj_v");
      c.proj_e = read_map(field(j, "proj_e", "cover"), total_edges, base_edges, "cover.proj_e");
      try {
        validate(base, c);
      } catch (InvalidInput const& e) {
        bad("cover", e.what());
      }
      return c;
    });
  }

  // -------------------------------------------------------------- categories

  json to_json(MarkedRelCategory const& c) {
    auto const& cat = c.category;
    json        morphisms = json::array(), compose = json::array(), W = json::array(), H = json::array(),
         F = json::array(), identities = json::object();
    for (auto const& a : cat.arrows) {
      morphisms.push_back({{"label", a.label}, {"source", cat.objects[a.source]}, {"target", cat.objects[a.target]}});
    }
    for (auto const& [k, gf] : cat.compose) {
      compose.push_back({cat.arrows[k.first].label, cat.arrows[k.second].label, cat.arrows[gf].label});
    }
    for (std::size_t a = 0; a < cat.arrows.size(); ++a) {
      if (c.W[a]) {
        W.push_back(cat.arrows[a].label);
      }
      if (c.H[a]) {
        H.push_back(cat.arrows[a].label);
      }
      if (c.F[a]) {
        F.push_back(cat.arrows[a].label);
      }
    }
    for (std::size_t o = 0; o < cat.objects.size(); ++o) {
      identities[cat.objects[o]] = cat.arrows[cat.identity[o]].label;
    }
    return {{"objects", cat.objects}, {"morphisms", morphisms}, {"identities", identities},
            {"compose", compose},     {"W", W},                 {"H", H},
            {"F", F}};
  }

  MarkedRelCategory category_from_json(json const& j) {
    return guard("category", [&] {
      auto marks = [&](char const* key) {
        return j.contains(key) ? strings(j[key], std::string("category.") + key) : std::vector<std::string>{};
      };
      if (j.contains("generators")) {
        auto const& objs = field(j, "objects", "category");
        std::vector<std::pair<std::string, int>> objects;
        std::vector<std::string>                 names;
        if (!objs.is_object()) {
          bad("category.objects", "expected {object: set size} for a concrete category");
        }
        for (auto const& [name, size] : objs.items()) {
          objects.push_back({name, integer(size, "category.objects." + name)});
          names.push_back(name);
        }
        std::vector<FunctionGenerator> gens;
        auto const&                    g = j["generators"];
        for (std::size_t i = 0; i < g.size(); ++i) {
          std::string w = "category.generators[" + std::to_string(i) + "]";
          FunctionGenerator fg;
          fg.label  = str(field(g[i], "label", w), w + ".label");
          fg.source = lookup(names, str(field(g[i], "source", w), w + ".source"), w + ".source");
          fg.target = lookup(names, str(field(g[i], "target", w), w + ".target"), w + ".target");
          for (auto const& v : field(g[i], "map", w)) {
            fg.map.push_back(integer(v, w + ".map"));
          }
          gens.push_back(std::move(fg));
        }
        try {
          return category_from_functions(objects, gens, marks("W"), marks("H"), marks("F"));
        } catch (InvalidInput const& e) {
          bad("category", e.what());
        }
      }
      MarkedRelCategory c;
      auto&             cat = c.category;
      cat.objects           = strings(field(j, "objects", "category"), "category.objects");
      auto const& ms        = field(j, "morphisms", "category");
      std::vector<std::string> arrow_labels;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        std::string w = "category.morphisms[" + std::to_string(i) + "]";
        SmallCategory::Arrow a;
        a.label  = str(field(ms[i], "label", w), w + ".label");
        a.source = lookup(cat.objects, str(field(ms[i], "source", w), w + ".source"), w + ".source");
        a.target = lookup(cat.objects, str(field(ms[i], "target", w), w + ".target"), w + ".target");
        if (std::find(arrow_labels.begin(), arrow_labels.end(), a.label) != arrow_labels.end()) {
          bad(w, "duplicate morphism label");
        }
        arrow_labels.push_back(a.label);
        cat.arrows.push_back(a);
      }
      cat.identity.assign(cat.objects.size(), -1);
      if (j.contains("identities")) {
        for (auto const& [o, a] : j["identities"].items()) {
          cat.identity[lookup(cat.objects, o, "category.identities")] =
              lookup(arrow_labels, str(a, "category.identities." + o), "category.identities." + o);
        }
      }
      for (std::size_t o = 0; o < cat.objects.size(); ++o) {
        if (cat.identity[o] < 0) {
          auto it = std::find(arrow_labels.begin(), arrow_labels.end(), "id_" + cat.objects[o]);
          if (it == arrow_labels.end()) {
            bad("category.identities", "no identity for \"" + cat.objects[o] + "\"");
          }
          cat.identity[o] = static_cast<int>(it - arrow_labels.begin());
        }
      }
      auto const& comp = field(j, "compose", "category");
      for (std::size_t i = 0; i < comp.size(); ++i) {
        std::string w = "category.compose[" + std::to_string(i) + "]";
        if (!comp[i].is_array() || comp[i].size() != 3) {
          bad(w, "expected [g, f, g.f]");
        }
        int g  = lookup(arrow_labels, str(comp[i][0], w), w);
        int f  = lookup(arrow_labels, str(comp[i][1], w), w);
        int gf = lookup(arrow_labels, str(comp[i][2], w), w);
        cat.compose[{g, f}] = gf;
      }
      c.W.assign(cat.arrows.size(), false);
      c.H.assign(cat.arrows.size(), false);
      c.F.assign(cat.arrows.size(), false);
      for (auto const& l : marks("W")) {
        c.W[lookup(arrow_labels, l, "category.W")] = true;
      }
      for (auto const& l : marks("H")) {
        c.H[lookup(arrow_labels, l, "category.H")] = true;
      }
      for (auto const& l : marks("F")) {
        c.F[lookup(arrow_labels, l, "category.F")] = true;
      }
      return c;
    });
  }

  json to_json(MarkedRelCategory const& c, Zigzag const& z) {
    json arrows = json::array();
    for (std::size_t t = 0; t < z.length(); ++t) {
      arrows.push_back({{"arrow", c.category.arrows[z.arrows[t]].label}, {"forward", bool(z.forward[t])}});
    }
    json objs = json::array();
    for (int o : z.objects(c)) {
      objs.push_back(c.category.objects[o]);
    }
    return {{"label", z.label(c)}, {"objects", objs}, {"arrows", arrows}};
  }

  json to_json(MarkedRelCategory const& c, Hammock const& h) {
    json rows = json::array(), vert = json::array();
    for (auto const& r : h.rows) {
      rows.push_back(r.label(c));
    }
    for (auto const& v : h.vertical) {
      json col = json::array();
      for (int a : v) {
        col.push_back(c.category.arrows[a].label);
      }
      vert.push_back(col);
    }
    return {{"height", h.height()}, {"rows", rows}, {"vertical", vert}};
  }

  // ----------------------------------------------------------------- samples

  json to_json(CfoSample const& s) {
    json objects = json::object(), morphisms = json::array();
    std::vector<std::string> names;
    for (std::size_t o = 0; o < s.objects.size(); ++o) {
      names.push_back(s.name_of(s.objects[o]));
      objects[names.back()] = to_json(s.objects[o]);
    }
    for (auto const& f : s.morphisms) {
      json levels = json::array();
      for (std::size_t m = 0; m < f.level.size(); ++m) {
        levels.push_back(write_map(f.level[m], f.source.level[m].labels, f.target.level[m].labels));
      }
      morphisms.push_back({{"source", s.name_of(f.source)}, {"target", s.name_of(f.target)}, {"levels", levels}});
    }
    return {{"objects", objects}, {"morphisms", morphisms}};
  }

  CfoSample sample_from_json(json const& j) {
    return guard("sample", [&] {
      auto const& objs = field(j, "objects", "sample");
      if (!objs.is_object()) {
        bad("sample.objects", "expected {name: simplicial object}");
      }
      std::vector<SimplicialObject> objects;
      std::vector<std::string>      names;
      for (auto const& [name, x] : objs.items()) {
        try {
          objects.push_back(simplicial_object_from_json(x));
        } catch (InvalidInput const& e) {
          bad("sample.objects." + name, e.what());
        }
        names.push_back(name);
      }
      CfoSample s;
      if (j.value("all_morphisms", false)) {
        s = sample_with_all_morphisms(objects);
      } else {
        s.objects = objects;
      }
      s.names = names;
      if (j.contains("morphisms")) {
        auto const& ms = j["morphisms"];
        for (std::size_t i = 0; i < ms.size(); ++i) {
          std::string w = "sample.morphisms[" + std::to_string(i) + "]";
          int         a = lookup(names, str(field(ms[i], "source", w), w + ".source"), w + ".source");
          int         b = lookup(names, str(field(ms[i], "target", w), w + ".target"), w + ".target");
          auto const& lv = field(ms[i], "levels", w);
          SimplicialMorphism f{objects[a], objects[b], {}};
          if (!lv.is_array() || static_cast<int>(lv.size()) != f.source.N + 1) {
            bad(w + ".levels", "expected one map per level");
          }
          for (int m = 0; m <= f.source.N; ++m) {
            f.level.push_back(read_map(lv[m], f.source.level[m].labels, f.target.level[m].labels,
                                       w + ".levels[" + std::to_string(m) + "]"));
          }
          if (!is_simplicial_morphism(f.source, f.target, f.level)) {
            bad(w, "not a simplicial morphism");
          }
          bool dup = false;
          for (auto const& g : s.morphisms) {
            dup = dup || (g.source == f.source && g.target == f.target && g.level == f.level);
          }
          if (!dup) {
            s.morphisms.push_back(std::move(f));
          }
        }
      }
      return s;
    });
  }

}  // namespace ngrpd
