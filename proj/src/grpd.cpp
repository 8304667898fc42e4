#include "ngrpd/grpd.hpp"

#include <algorithm>
#include <stdexcept>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  std::string n_to_string(int n) {
    return n == infinity ? "inf" : std::to_string(n);
  }

  int parse_n(std::string const& s) {
    if (s == "inf" || s == "infinity" || s == "oo") {
      return infinity;
    }
    try {
      std::size_t used = 0;
      int         n    = std::stoi(s, &used);
      if (used != s.size() || n < 0) {
        throw InvalidInput("n must be a nonnegative integer or 'inf'");
      }
      return n;
    } catch (std::logic_error const&) {
      throw InvalidInput("n must be a nonnegative integer or 'inf', got '" + s + "'");
    }
  }

  // ------------------------------------------------------------ certificates

  std::optional<MatchingInstance> Certificate::first_failure() const {
    for (auto const& m : instances) {
      if (!m.ok()) {
        return m;
      }
    }
    return std::nullopt;
  }

  json Certificate::to_json() const {
    json inst = json::array();
    for (auto const& m : instances) {
      json j{{"k", m.k}, {"cover", m.cover}, {"iso", m.iso}, {"iso_required", m.iso_required}};
      if (m.i >= 0) {
        j["i"] = m.i;
      }
      if (!m.ok()) {
        j["witness"] = m.witness;
      }
      inst.push_back(std::move(j));
    }
    return {{"kind", kind},
            {"n", n_to_string(n)},
            {"N", N},
            {"verified_k", {k_min, k_max}},
            {"instances", inst},
            {"holds", holds}};
  }

  Report Certificate::report(std::string const& command) const {
    Report r(command);
    std::string check = kind + " matching maps";
    r.declare(check);
    for (auto const& m : instances) {
      json w{{"k", m.k}, {"cover", m.cover}, {"iso", m.iso}, {"detail", m.witness}};
      if (m.i >= 0) {
        w["i"] = m.i;
      }
      r.record(check, m.ok(), w);
    }
    r.set_range("N", N);
    r.set_range("k", json::array({k_min, k_max}));
    r.set_range("n", n_to_string(n));
    r.note("verdicts cover only the levels listed under verified_range.k");
    return r;
  }

  namespace {
    // Where a matching map fails to be surjective or injective.
    json map_witness(Morphism const& m) {
      std::vector<int> hits(m.target.size(), 0);
      for (int y : m.map) {
        ++hits[y];
      }
      json w = json::object();
      for (std::size_t y = 0; y < hits.size(); ++y) {
        if (hits[y] == 0 && !w.contains("not_hit")) {
          w["not_hit"] = m.target.labels[y];
        }
        if (hits[y] > 1 && !w.contains("collision")) {
          json pre = json::array();
          for (std::size_t x = 0; x < m.map.size(); ++x) {
            if (m.map[x] == static_cast<int>(y)) {
              pre.push_back(m.source.labels[x]);
            }
          }
          w["collision"] = {{"image", m.target.labels[y]}, {"preimages", pre}};
        }
      }
      w["source_size"] = m.source.size();
      w["target_size"] = m.target.size();
      return w;
    }

    MatchingInstance instance(Site const& site, Morphism const& m, int k, int i, bool iso_required) {
      MatchingInstance inst;
      inst.k            = k;
      inst.i            = i;
      inst.cover        = is_cover(site, m.map, m.target.size());
      inst.iso          = is_bijective(m.map, m.target.size());
      inst.iso_required = iso_required;
      if (!inst.ok()) {
        inst.witness = map_witness(m);
      }
      return inst;
    }
  }  // namespace

  Certificate groupoid_certificate(SimplicialObject const& x, int n) {
    if (n != infinity && x.N < n + 1) {
      throw Refused("truncation N=" + std::to_string(x.N) + " is too shallow to certify an "
                    + std::to_string(n) + "-groupoid; need N >= " + std::to_string(n + 1));
    }
    Certificate c{"groupoid", n, x.N, 1, x.N, {}, true};
    for (int k = 1; k <= x.N; ++k) {
      for (int i = 0; i <= k; ++i) {
        auto inst = instance(x.site, matching_map(k, i, x), k, i, k > n);
        c.holds   = c.holds && inst.ok();
        c.instances.push_back(std::move(inst));
      }
    }
    return c;
  }

  bool is_n_groupoid(SimplicialObject const& x, int n) {
    return groupoid_certificate(x, n).holds;
  }

  Certificate fibration_certificate(SimplicialMorphism const& f) {
    Certificate c{"fibration", infinity, f.source.N, 1, f.source.N, {}, true};
    for (int k = 1; k <= f.source.N; ++k) {
      for (int i = 0; i <= k; ++i) {
        auto inst = instance(f.source.site, relative_horn_map(k, i, f), k, i, false);
        c.holds   = c.holds && inst.ok();
        c.instances.push_back(std::move(inst));
      }
    }
    return c;
  }

  bool is_fibration(SimplicialMorphism const& f) {
    return fibration_certificate(f).holds;
  }

  Certificate hypercover_certificate(SimplicialMorphism const& f, int n, int max_k) {
    int         top = std::min(f.source.N, max_k);
    Certificate c{"hypercover", n, f.source.N, 0, top, {}, true};
    for (int k = 0; k <= top; ++k) {
      auto inst = instance(f.source.site, boundary_matching_map(k, f), k, -1, k >= n);
      c.holds   = c.holds && inst.ok();
      c.instances.push_back(std::move(inst));
    }
    return c;
  }

  bool is_hypercover(SimplicialMorphism const& f, int n, int max_k) {
    return hypercover_certificate(f, n, max_k).holds;
  }

  // ------------------------------------------------------------ path objects

  PathObject path_object(SimplicialObject const& y, int n) {
    if (n < 0) {
      throw InvalidInput("path direction must be >= 0");
    }
    if (y.N < n || (n >= 1 && y.N < 1)) {
      throw Refused("truncation exhausted: P_" + std::to_string(n) + " needs N >= "
                    + std::to_string(std::max(n, 1)));
    }
    int                              M = y.N - n;
    std::vector<FiniteSimplicialSet> shapes;
    std::vector<HomObject>           homs;
    for (int m = 0; m <= M; ++m) {
      shapes.push_back(product_simplex(m, n, y.N));
      homs.push_back(hom_into(shapes.back(), y));
    }
    SimplicialObject p{y.site, M, {}, {}, {}};
    p.face.resize(M + 1);
    p.degen.resize(M + 1);
    // Restriction along alpha x id : Delta^a x Delta^n -> Delta^b x Delta^n.
    auto along = [&](int a, int b, OrdinalMap const& alpha) {
      std::vector<Map> g;
      auto const&      from = shapes[a];
      auto const&      to   = shapes[b];
      for (int l = 0; l <= from.N; ++l) {
        Map gl;
        for (auto const& c : from.coords[l]) {
          int idx = to.cell_index(l, {compose(alpha, c[0]), c[1]});
          gl.push_back(idx);
        }
        g.push_back(std::move(gl));
      }
      return hom_restrict(homs[b], homs[a], g);
    };
    for (int m = 0; m <= M; ++m) {
      p.level.push_back(homs[m].object);
      for (int i = 0; m >= 1 && i <= m; ++i) {
        p.face[m].push_back(along(m - 1, m, coface(m, i)));
      }
      for (int j = 0; m < M && j <= m; ++j) {
        p.degen[m].push_back(along(m + 1, m, codegeneracy(m, j)));
      }
    }
    validate(p);
    PathObject out{n, p, std::nullopt, std::nullopt, std::nullopt};
    auto       base = truncate(y, M);
    if (n >= 1) {
      auto eval_at = [&](int vertex) {
        std::vector<Map> level;
        for (int m = 0; m <= M; ++m) {
          OrdinalMap constant{n, std::vector<int>(m + 1, vertex)};
          int        cell = shapes[m].cell_index(m, {identity_ordinal(m), constant});
          level.push_back(hom_evaluate(homs[m], m, cell));
        }
        return SimplicialMorphism{p, base, level};
      };
      out.source_eval = eval_at(0);
      out.target_eval = eval_at(n);
    }
    std::vector<Map> sec;
    for (int m = 0; m <= M; ++m) {
      auto const& s = shapes[m];
      sec.push_back(hom_from_level(y, m, s, homs[m], [&](int l, int c) { return s.coords[l][c][0]; }));
    }
    out.section = SimplicialMorphism{base, p, sec};
    for (auto const* f : {&out.source_eval, &out.target_eval, &out.section}) {
      if (*f && !is_simplicial_morphism((*f)->source, (*f)->target, (*f)->level)) {
        throw std::logic_error("path object structure map is not simplicial");
      }
    }
    return out;
  }

  Factorization mapping_path_factorization(SimplicialMorphism const& f) {
    int N = f.target.N;
    if (N < 1) {
      throw Refused("truncation exhausted: the mapping path factorization needs N >= 1");
    }
    auto path = path_object(f.target, 1);
    auto ft   = truncate(f, N - 1);
    auto pb   = pullback(ft, *path.source_eval);
    auto sf   = compose(*path.section, ft);
    std::vector<Map> ids;
    for (auto const& l : ft.source.level) {
      ids.push_back(identity_map(l.size()));
    }
    SimplicialMorphism r{ft.source, pb.apex, pb.mediate(ids, sf.level)};
    SimplicialMorphism q = compose(*path.target_eval, pb.proj_b);
    bool               ok = compose(q, r).level == ft.level;
    return {path, pb.apex, r, q, ok};
  }

  WeakEquivalenceVerdict weak_equivalence(SimplicialMorphism const& f) {
    auto fac  = mapping_path_factorization(f);
    auto cert = hypercover_certificate(fac.q, infinity);
    bool ok   = cert.holds;
    return {ok, std::move(fac), std::move(cert)};
  }

  bool is_weak_equivalence(SimplicialMorphism const& f) {
    return weak_equivalence(f).holds;
  }

  bool is_trivial_fibration(SimplicialMorphism const& f) {
    return is_fibration(f) && is_weak_equivalence(f);
  }

  json MapClassification::to_json() const {
    return {{"fibration", fibration},
            {"hypercover", hypercover},
            {"weak_equivalence", weak_equivalence},
            {"trivial_fibration", trivial_fibration},
            {"weak_equivalence_verified_to", verified_to}};
  }

  MapClassification classify(SimplicialMorphism const& f) {
    MapClassification c;
    c.fibration         = is_fibration(f);
    c.hypercover        = is_hypercover(f, infinity);
    c.weak_equivalence  = is_weak_equivalence(f);
    c.trivial_fibration = c.fibration && c.weak_equivalence;
    c.verified_to       = f.source.N - 1;
    return c;
  }

  SimplicialObject classifying_object(FiniteGroup const& g, int N) {
    return nerve(group_category(g), N);
  }

  SimplicialObject terminal_object(Site const& site, int N) {
    return constant_object(site, terminal(site), N);
  }

  SimplicialMorphism to_terminal(SimplicialObject const& x) {
    auto t = to_terminal(x.site, x.level[0]);
    return to_constant(x, t.target, t.map);
  }

  // ------------------------------------------------------------------- CFO

  std::string CfoSample::name_of(SimplicialObject const& x) const {
    for (std::size_t o = 0; o < objects.size(); ++o) {
      if (objects[o] == x) {
        return o < names.size() ? names[o] : "X" + std::to_string(o);
      }
    }
    return "(outside sample)";
  }

  std::string CfoSample::describe(std::size_t m) const {
    auto const& f = morphisms[m];
    return "#" + std::to_string(m) + ": " + name_of(f.source) + " -> " + name_of(f.target);
  }

  CfoSample sample_with_all_morphisms(std::vector<SimplicialObject> objects) {
    CfoSample s;
    s.objects = std::move(objects);
    for (auto const& a : s.objects) {
      for (auto const& b : s.objects) {
        for (auto& level : all_simplicial_morphisms(a, b)) {
          s.morphisms.push_back({a, b, std::move(level)});
        }
      }
    }
    return s;
  }

  namespace {
    struct Classified {
      bool fibration = false;
      bool trivial   = false;
      json fibration_failure;
    };

    Classified classify_for_audit(SimplicialMorphism const& f) {
      Classified c;
      auto       fc = fibration_certificate(f);
      c.fibration   = fc.holds;
      if (!fc.holds) {
        auto bad            = *fc.first_failure();
        c.fibration_failure = {{"k", bad.k}, {"i", bad.i}, {"detail", bad.witness}};
      }
      c.trivial = c.fibration && is_weak_equivalence(f);
      return c;
    }
  }  // namespace

  Report verify_cfo_axioms(CfoSample const& sample, int n) {
    Report r("audit-cfo");
    for (char const* check :
         {"F0 sample objects are n-groupoids", "F1 terminal object is an n-groupoid",
          "F1 maps to the terminal object are fibrations", "F2 pullbacks of fibrations are fibrations",
          "F3 pullbacks of trivial fibrations are trivial fibrations", "F4 factorization commutes",
          "F4 r is a weak equivalence", "F4 q is a fibration"}) {
      r.declare(check);
    }
    r.set_range("objects", sample.objects.size());
    r.set_range("morphisms", sample.morphisms.size());
    r.set_range("n", n_to_string(n));
    if (sample.objects.empty()) {
      r.note("empty sample: every axiom holds vacuously");
      return r;
    }
    int N = sample.objects.front().N;
    r.set_range("N", N);
    r.set_range("weak equivalences verified to level", N - 1);
    r.note("axioms are instance-checked over the sample and its pullbacks only");

    for (std::size_t o = 0; o < sample.objects.size(); ++o) {
      auto const& x    = sample.objects[o];
      std::string name = o < sample.names.size() ? sample.names[o] : "X" + std::to_string(o);
      try {
        auto c = groupoid_certificate(x, n);
        r.record("F0 sample objects are n-groupoids", c.holds, {{"object", name}, {"certificate", c.to_json()}});
      } catch (Refused const& e) {
        r.record("F0 sample objects are n-groupoids", Status::refused, {{"object", name}, {"reason", e.what()}});
      }
      auto t  = to_terminal(x);
      auto fc = fibration_certificate(t);
      json w{{"object", name}};
      if (!fc.holds) {
        w["failure"] = fc.to_json();
      }
      r.record("F1 maps to the terminal object are fibrations", fc.holds, w);
    }
    auto term = terminal_object(sample.objects.front().site, N);
    try {
      r.record("F1 terminal object is an n-groupoid", is_n_groupoid(term, n));
    } catch (Refused const& e) {
      r.record("F1 terminal object is an n-groupoid", Status::refused, {{"reason", e.what()}});
    }

    std::vector<Classified> cls;
    for (auto const& f : sample.morphisms) {
      cls.push_back(classify_for_audit(f));
    }
    for (std::size_t p = 0; p < sample.morphisms.size(); ++p) {
      if (!cls[p].fibration) {
        continue;
      }
      for (std::size_t g = 0; g < sample.morphisms.size(); ++g) {
        auto const& fp = sample.morphisms[p];
        auto const& fg = sample.morphisms[g];
        if (!(fp.target == fg.target)) {
          continue;
        }
        auto pb   = pullback(fp, fg);
        auto pull = pb.proj_b;  // the pullback of p along g
        auto fc   = fibration_certificate(pull);
        json w{{"fibration", sample.describe(p)}, {"along", sample.describe(g)}};
        if (!fc.holds) {
          w["failure"] = fc.to_json();
        }
        r.record("F2 pullbacks of fibrations are fibrations", fc.holds, w);
        if (cls[p].trivial) {
          bool ok = fc.holds && is_weak_equivalence(pull);
          r.record("F3 pullbacks of trivial fibrations are trivial fibrations", ok, w);
        }
      }
    }
    for (std::size_t m = 0; m < sample.morphisms.size(); ++m) {
      auto const& f = sample.morphisms[m];
      try {
        auto fac = mapping_path_factorization(f);
        json w{{"morphism", sample.describe(m)}};
        r.record("F4 factorization commutes", fac.commutes, w);
        r.record("F4 r is a weak equivalence", is_weak_equivalence(fac.r), w);
        auto qc = fibration_certificate(fac.q);
        if (!qc.holds) {
          w["failure"] = qc.to_json();
        }
        r.record("F4 q is a fibration", qc.holds, w);
      } catch (Refused const& e) {
        r.record("F4 factorization commutes", Status::refused,
                 {{"morphism", sample.describe(m)}, {"reason", e.what()}});
      }
    }
    return r;
  }

  // ------------------------------------------------------- exact functors

  SimplicialFunctor levelwise_functor(std::string                                  name,
                                      std::function<Site(Site const&)>             on_site,
                                      std::function<SiteObject(SiteObject const&)> on_object,
                                      std::function<Map(Morphism const&)>          on_map,
                                      CfoSample const&                             sample) {
    SimplicialFunctor F;
    F.name      = std::move(name);
    F.on_object = [=](SimplicialObject const& x) {
      SimplicialObject y{on_site(x.site), x.N, {}, {}, {}};
      y.face.resize(x.N + 1);
      y.degen.resize(x.N + 1);
      for (int m = 0; m <= x.N; ++m) {
        y.level.push_back(on_object(x.level[m]));
      }
      for (int m = 0; m <= x.N; ++m) {
        for (int i = 0; m >= 1 && i <= m; ++i) {
          y.face[m].push_back(on_map({x.level[m], x.level[m - 1], x.face[m][i]}));
        }
        for (int j = 0; m < x.N && j <= m; ++j) {
          y.degen[m].push_back(on_map({x.level[m], x.level[m + 1], x.degen[m][j]}));
        }
      }
      return y;
    };
    F.on_morphism = [=](SimplicialMorphism const& f) {
      std::vector<Map> level;
      for (int m = 0; m <= f.source.N; ++m) {
        level.push_back(on_map({f.source.level[m], f.target.level[m], f.level[m]}));
      }
      return level;
    };
    for (auto const& x : sample.objects) {
      F.object_image.push_back(F.on_object(x));
    }
    for (auto const& f : sample.morphisms) {
      F.morphism_image.push_back(F.on_morphism(f));
    }
    return F;
  }

  SimplicialFunctor forgetful_functor(CfoSample const& sample) {
    return levelwise_functor(
        "forget the group action", [](Site const&) { return Site::finsets(); },
        [](SiteObject const& x) { return finset(x.labels); }, [](Morphism const& f) { return f.map; },
        sample);
  }

  namespace {
    bool is_terminal(SimplicialObject const& x) {
      auto t = terminal(x.site);
      for (auto const& l : x.level) {
        if (l.size() != t.size()) {
          return false;
        }
        std::vector<int> fibres = l.fibre;
        std::sort(fibres.begin(), fibres.end());
        for (std::size_t v = 0; v < fibres.size(); ++v) {
          if (fibres[v] != static_cast<int>(v)) {
            return false;
          }
        }
      }
      return true;
    }

    bool levelwise_bijective(std::vector<Map> const& level, SimplicialObject const& target) {
      for (std::size_t m = 0; m < level.size(); ++m) {
        if (!is_bijective(level[m], target.level[m].size())) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  Report verify_exact_functor(SimplicialFunctor const& F, CfoSample const& sample) {
    Report r("exact-functor " + F.name);
    if (F.object_image.size() != sample.objects.size()
        || F.morphism_image.size() != sample.morphisms.size()) {
      throw InvalidInput("functor tables must list one image per sample object and morphism");
    }
    auto obj_index = [&](SimplicialObject const& x) -> int {
      for (std::size_t o = 0; o < sample.objects.size(); ++o) {
        if (sample.objects[o] == x) {
          return static_cast<int>(o);
        }
      }
      return -1;
    };
    std::vector<int> src(sample.morphisms.size()), tgt(sample.morphisms.size());
    for (std::size_t m = 0; m < sample.morphisms.size(); ++m) {
      auto const& f = sample.morphisms[m];
      src[m]        = obj_index(f.source);
      tgt[m]        = obj_index(f.target);
      if (src[m] < 0 || tgt[m] < 0) {
        throw InvalidInput("sample morphism " + std::to_string(m) + " leaves the sample");
      }
      if (!is_simplicial_morphism(F.object_image[src[m]], F.object_image[tgt[m]], F.morphism_image[m])) {
        throw InvalidInput("image of " + sample.describe(m) + " is not a simplicial morphism");
      }
    }
    // Functoriality on identities and on composites present in the sample.
    for (std::size_t m = 0; m < sample.morphisms.size(); ++m) {
      auto const& f = sample.morphisms[m];
      if (src[m] == tgt[m] && f.level == identity(f.source).level
          && F.morphism_image[m] != identity(F.object_image[src[m]]).level) {
        throw InvalidInput("functor does not preserve the identity " + sample.describe(m));
      }
    }
    for (std::size_t a = 0; a < sample.morphisms.size(); ++a) {
      for (std::size_t b = 0; b < sample.morphisms.size(); ++b) {
        if (tgt[a] != src[b]) {
          continue;
        }
        auto gf = compose(sample.morphisms[b], sample.morphisms[a]);
        for (std::size_t h = 0; h < sample.morphisms.size(); ++h) {
          if (src[h] == src[a] && tgt[h] == tgt[b] && sample.morphisms[h].level == gf.level) {
            std::vector<Map> image;
            for (std::size_t m = 0; m < gf.level.size(); ++m) {
              image.push_back(compose(F.morphism_image[b][m], F.morphism_image[a][m]));
            }
            if (image != F.morphism_image[h]) {
              throw InvalidInput("functor does not preserve the composite of " + sample.describe(b)
                                 + " after " + sample.describe(a));
            }
          }
        }
      }
    }

    for (char const* check :
         {"E1 terminal object preserved", "E1 fibrations preserved", "E1 trivial fibrations preserved",
          "E2 pullbacks along fibrations preserved", "derived finite products preserved",
          "derived weak equivalences preserved"}) {
      r.declare(check);
    }
    r.set_range("objects", sample.objects.size());
    r.set_range("morphisms", sample.morphisms.size());
    auto image_of = [&](std::size_t m) {
      return SimplicialMorphism{F.object_image[src[m]], F.object_image[tgt[m]], F.morphism_image[m]};
    };

    bool saw_terminal = false;
    for (std::size_t o = 0; o < sample.objects.size(); ++o) {
      if (is_terminal(sample.objects[o])) {
        saw_terminal = true;
        r.record("E1 terminal object preserved", is_terminal(F.object_image[o]),
                 {{"object", sample.name_of(sample.objects[o])}});
      }
    }
    if (!saw_terminal && F.on_object && !sample.objects.empty()) {
      auto const& x = sample.objects.front();
      r.record("E1 terminal object preserved", is_terminal(F.on_object(terminal_object(x.site, x.N))),
               {{"object", "terminal"}});
    }

    std::vector<char> fib(sample.morphisms.size()), weq(sample.morphisms.size());
    for (std::size_t m = 0; m < sample.morphisms.size(); ++m) {
      auto const& f = sample.morphisms[m];
      fib[m]        = is_fibration(f);
      weq[m]        = is_weak_equivalence(f);
      auto img      = image_of(m);
      if (fib[m]) {
        auto fc = fibration_certificate(img);
        json w{{"morphism", sample.describe(m)}};
        if (auto bad = fc.first_failure()) {
          w["k"]      = bad->k;
          w["i"]      = bad->i;
          w["detail"] = bad->witness;
        }
        r.record("E1 fibrations preserved", fc.holds, w);
        if (weq[m]) {
          bool ok = fc.holds && is_weak_equivalence(img);
          r.record("E1 trivial fibrations preserved", ok, {{"morphism", sample.describe(m)}});
        }
      }
      if (weq[m]) {
        r.record("derived weak equivalences preserved", is_weak_equivalence(img),
                 {{"morphism", sample.describe(m)}});
      }
    }

    if (!F.on_object || !F.on_morphism) {
      r.record("E2 pullbacks along fibrations preserved", Status::inconclusive,
               {{"reason", "functor given by tables only; pullback apexes lie outside the sample"}});
      r.record("derived finite products preserved", Status::inconclusive,
               {{"reason", "functor given by tables only; products lie outside the sample"}});
      return r;
    }
    // Comparison F(A x_C B) -> F(A) x_{F(C)} F(B) must be an isomorphism.
    auto compare = [&](SimplicialPullback const& pb, SimplicialMorphism const& fa, SimplicialMorphism const& fb) {
      auto fp   = F.on_object(pb.apex);
      auto fpa  = F.on_morphism(pb.proj_a);
      auto fpb  = F.on_morphism(pb.proj_b);
      auto ipb  = pullback(fa, fb);
      auto comp = ipb.mediate(fpa, fpb);
      return is_simplicial_morphism(fp, ipb.apex, comp) && levelwise_bijective(comp, ipb.apex);
    };
    for (std::size_t p = 0; p < sample.morphisms.size(); ++p) {
      if (!fib[p]) {
        continue;
      }
      for (std::size_t h = 0; h < sample.morphisms.size(); ++h) {
        if (tgt[h] != tgt[p]) {
          continue;
        }
        auto pb = pullback(sample.morphisms[p], sample.morphisms[h]);
        bool ok = compare(pb, image_of(p), image_of(h));
        r.record("E2 pullbacks along fibrations preserved", ok,
                 {{"fibration", sample.describe(p)}, {"along", sample.describe(h)}});
      }
    }
    for (std::size_t a = 0; a < sample.objects.size(); ++a) {
      for (std::size_t b = 0; b < sample.objects.size(); ++b) {
        auto ta = to_terminal(sample.objects[a]);
        auto tb = to_terminal(sample.objects[b]);
        auto pb = pullback(ta, tb);
        SimplicialMorphism fta{F.object_image[a], F.on_object(ta.target), F.on_morphism(ta)};
        SimplicialMorphism ftb{F.object_image[b], F.on_object(tb.target), F.on_morphism(tb)};
        bool               ok = compare(pb, fta, ftb);
        r.record("derived finite products preserved", ok,
                 {{"left", sample.name_of(sample.objects[a])}, {"right", sample.name_of(sample.objects[b])}});
      }
    }
    return r;
  }

}  // namespace ngrpd
