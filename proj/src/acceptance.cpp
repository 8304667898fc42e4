#include "ngrpd/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <set>

#include "ngrpd/enumerate.hpp"
#include "ngrpd/errors.hpp"
#include "ngrpd/json_io.hpp"

#ifndef NGRPD_FIXTURE_DIR
#define NGRPD_FIXTURE_DIR "data/fixtures"
#endif

namespace ngrpd {

  namespace {

    namespace fs = std::filesystem;

    // Loads and parses one fixture; on failure records a "fixtures" failure
    // naming the file and returns nothing.
    template <class T, class Parse>
    std::optional<T> fixture(Report& r, std::string const& dir, std::string const& name, Parse parse) {
      try {
        auto value = parse(read_json_file((fs::path(dir) / name).string()));
        r.record("fixtures load", true);
        return value;
      } catch (std::exception const& e) {
        r.record("fixtures load", false, {{"fixture", name}, {"error", e.what()}});
        return std::nullopt;
      }
    }

    // ------------------------------------------------------------ builders

    MarkedRelCategory desk_category() {
      return category_from_functions({{"X", 1}, {"Z", 2}, {"Y", 2}, {"R", 2}, {"Q", 1}},
                                     {{"h", 1, 0, {0, 0}},
                                      {"g1", 1, 2, {0, 0}},
                                      {"g2", 1, 2, {1, 1}},
                                      {"r", 3, 1, {1, 1}},
                                      {"k", 2, 4, {0, 0}}},
                                     {"h"}, {"h"}, {"h", "k"});
    }

    // arrows by label with endpoints and marks; independent of object order
    std::set<std::vector<std::string>> canonical(MarkedRelCategory const& c) {
      std::set<std::vector<std::string>> out;
      auto const&                        cat = c.category;
      for (std::size_t a = 0; a < cat.arrows.size(); ++a) {
        auto const& ar = cat.arrows[a];
        out.insert({ar.label, cat.objects[ar.source], cat.objects[ar.target], c.W[a] ? "W" : "", c.H[a] ? "H" : "",
                    c.F[a] ? "F" : ""});
      }
      return out;
    }

    json desk_json() {
      return {{"objects", {{"X", 1}, {"Z", 2}, {"Y", 2}, {"R", 2}, {"Q", 1}}},
              {"generators",
               {{{"label", "h"}, {"source", "Z"}, {"target", "X"}, {"map", {0, 0}}},
                {{"label", "g1"}, {"source", "Z"}, {"target", "Y"}, {"map", {0, 0}}},
                {{"label", "g2"}, {"source", "Z"}, {"target", "Y"}, {"map", {1, 1}}},
                {{"label", "r"}, {"source", "R"}, {"target", "Z"}, {"map", {1, 1}}},
                {{"label", "k"}, {"source", "Y"}, {"target", "Q"}, {"map", {0, 0}}}}},
              {"W", {"h"}},
              {"H", {"h"}},
              {"F", {"h", "k"}}};
    }

    SimplicialMorphism cech_3_to_2(int N) {
      auto u = finset({"1", "2", "3"});
      auto v = finset({"1", "2"});
      return cech_nerve(Site::finsets(), finmap(u, v, {{"1", "1"}, {"2", "1"}, {"3", "2"}}), N);
    }

    // Cech nerve of the non-uniform map from the 3-sheet to the 2-sheet
    // trivial cover of the figure-eight, with its augmentation.
    SimplicialMorphism two_class_augmentation() {
      auto fig8 = BasedGraph::figure_eight();
      auto site = Site::graphcov(fig8);
      auto t3   = spread_action(fig8, {"0", "1", "2"}, {{0, 1, 2}, {0, 1, 2}});
      auto t2   = spread_action(fig8, {"0", "1"}, {{0, 1}, {0, 1}});
      return cech_nerve(site, Morphism{t3, t2, {0, 0, 1}}, 2);
    }

    // ---------------------------------------------------------- criterion 1

    // nondecreasing [m] -> [k] by counting through all functions
    std::set<std::vector<int>> brute_monotone(int m, int k, std::function<bool(std::vector<int> const&)> const& keep) {
      std::set<std::vector<int>> out;
      std::vector<int>           v(m + 1, 0);
      while (true) {
        if (std::is_sorted(v.begin(), v.end()) && keep(v)) {
          out.insert(v);
        }
        int pos = 0;
        while (pos <= m && ++v[pos] > k) {
          v[pos++] = 0;
        }
        if (pos > m) {
          break;
        }
      }
      return out;
    }

    Report delta_combinatorics(std::string const&) {
      Report r("criterion 1");
      int const N = 4;
      auto compare = [&](std::string const& name, FiniteSimplicialSet const& s, int k,
                         std::function<bool(std::vector<int> const&)> const& keep) {
        for (int m = 0; m <= N; ++m) {
          std::set<std::vector<int>> got;
          for (auto const& c : s.coords[m]) {
            got.insert(c.at(0).values);
          }
          auto want = brute_monotone(m, k, keep);
          bool ok   = got == want && got.size() == s.size(m);
          r.record(name, ok, {{"k", k}, {"m", m}, {"cells", s.size(m)}, {"expected", want.size()}});
        }
      };
      auto image = [](std::vector<int> const& v, int k) {
        std::vector<bool> hit(k + 1, false);
        for (int x : v) {
          hit[x] = true;
        }
        return hit;
      };
      for (int k = 0; k <= 4; ++k) {
        compare("standard simplex cells", standard_simplex(k, N), k, [](auto const&) { return true; });
        compare("boundary cells", boundary(k, N), k, [&](auto const& v) {
          auto hit = image(v, k);
          return std::find(hit.begin(), hit.end(), false) != hit.end();
        });
        for (int i = 0; i <= k && k >= 1; ++i) {
          compare("horn cells", horn(k, i, N), k, [&](auto const& v) {
            auto hit = image(v, k);
            for (int j = 0; j <= k; ++j) {
              if (j != i && !hit[j]) {
                return true;
              }
            }
            return false;
          });
        }
      }
      r.set_range("k", "0..4");
      r.set_range("m", "0..4");
      return r;
    }

    // ---------------------------------------------------------- criterion 2

    // For every compatible family of faces (x_j)_{j != i} of a k-horn, count
    // the k-cells with exactly those faces.
    void horn_fillers_cellwise(Report& r, SimplicialObject const& x, int k, int i, std::string const& group) {
      std::vector<int> others;
      for (int j = 0; j <= k; ++j) {
        if (j != i) {
          others.push_back(j);
        }
      }
      std::size_t      below = x.level[k - 1].size();
      std::vector<int> pick(others.size(), 0);
      std::size_t      families = 0, bad = 0;
      json             first_bad;
      while (true) {
        bool compatible = true;
        for (std::size_t p = 0; p < others.size() && compatible; ++p) {
          for (std::size_t q = p + 1; q < others.size() && compatible; ++q) {
            int a = others[p], b = others[q];  // a < b: d_a x_b = d_{b-1} x_a
            if (k >= 2) {
              compatible = x.face[k - 1][a][pick[q]] == x.face[k - 1][b - 1][pick[p]];
            }
          }
        }
        if (compatible) {
          ++families;
          std::size_t fillers = 0;
          for (std::size_t c = 0; c < x.level[k].size(); ++c) {
            bool match = true;
            for (std::size_t p = 0; p < others.size() && match; ++p) {
              match = x.face[k][others[p]][c] == pick[p];
            }
            fillers += match;
          }
          if (fillers != 1) {
            ++bad;
            if (first_bad.is_null()) {
              first_bad = {{"group", group}, {"k", k}, {"i", i}, {"faces", pick}, {"fillers", fillers}};
            }
          }
        }
        std::size_t pos = 0;
        while (pos < pick.size() && static_cast<std::size_t>(++pick[pos]) == below) {
          pick[pos++] = 0;
        }
        if (pos == pick.size()) {
          break;
        }
      }
      r.record("horn fillers unique, cell by cell", bad == 0,
               bad == 0 ? json() : json{{"first", first_bad}, {"bad_families", bad}});
      (void) families;
    }

    Report nerve_groupoid(std::string const& fixtures) {
      Report r("criterion 2");
      for (auto const& g : FiniteGroup::all_of_order_at_most_6()) {
        auto        x    = classifying_object(g, 3);
        std::string name = "order " + std::to_string(g.order()) + " (" + g.label(g.order() - 1) + ")";
        r.record("nerve is a 1-groupoid", is_n_groupoid(x, 1), {{"group", name}});
        bool zero = is_n_groupoid(x, 0);
        r.record("nerve is a 0-groupoid iff the group is trivial", zero == (g.order() == 1), {{"group", name}});
        auto cert = groupoid_certificate(x, 1);
        for (auto const& inst : cert.instances) {
          if (inst.k == 2 || inst.k == 3) {
            r.record("matching maps bijective at k = 2, 3", inst.cover && inst.iso,
                     {{"group", name}, {"k", inst.k}, {"i", inst.i}});
          }
        }
        for (int k = 2; k <= 3; ++k) {
          for (int i = 0; i <= k; ++i) {
            horn_fillers_cellwise(r, x, k, i, name);
          }
        }
      }
      if (auto z2 = fixture<SimplicialObject>(r, fixtures, "nerve_z2.json", simplicial_object_from_json)) {
        r.record("fixture nerve_z2.json is the nerve of Z/2",
                 z2->N == 3 && are_isomorphic(*z2, classifying_object(FiniteGroup::cyclic(2), 3)),
                 {{"fixture", "nerve_z2.json"}});
      }
      r.set_range("groups", "all of order <= 6 (" + std::to_string(FiniteGroup::all_of_order_at_most_6().size())
                                + " up to isomorphism)");
      r.set_range("N", 3);
      return r;
    }

    // ---------------------------------------------------------- criterion 3

    Report fibration_hypercover(std::string const&) {
      Report             r("criterion 3");
      EnumerationOptions opt;
      opt.up_to_iso = false;
      auto        xs = enumerate_simplicial_objects(Site::finsets(), 2, 2, opt);
      auto        s  = sample_with_all_morphisms(xs);
      std::size_t fibrations = 0;
      for (std::size_t k = 0; k < s.morphisms.size(); ++k) {
        auto const& f = s.morphisms[k];
        if (!is_fibration(f)) {
          continue;
        }
        ++fibrations;
        bool w = is_weak_equivalence(f);
        bool h = is_hypercover(f, infinity, f.source.N - 1);
        r.record("weak equivalence iff hypercover (fibrations)", w == h,
                 {{"morphism", s.describe(k)}, {"weak_equivalence", w}, {"hypercover", h}});
      }
      r.set_range("objects", xs.size());
      r.set_range("morphisms", s.morphisms.size());
      r.set_range("fibrations", fibrations);
      r.set_range("levels", "FinSets, N = 2, level sizes <= 2; hypercover checked on levels 0..1");
      return r;
    }

    // ---------------------------------------------------------- criterion 4

    Report cfo_axioms(std::string const& fixtures) {
      Report r("criterion 4");
      auto   sample = fixture<CfoSample>(r, fixtures, "cfo_sample.json", sample_from_json);
      if (!sample) {
        return r;
      }
      r.merge(verify_cfo_axioms(*sample, 1));
      for (std::size_t k = 0; k < sample->morphisms.size(); ++k) {
        auto const& f  = sample->morphisms[k];
        auto        fc = mapping_path_factorization(f);
        auto        qr = compose(fc.q, fc.r);
        auto        ft = truncate(f, f.source.N - 1);
        r.record("factorization q.r = f", fc.commutes && qr.level == ft.level, {{"morphism", sample->describe(k)}});
        r.record("factorization r is a weak equivalence", is_weak_equivalence(fc.r), {{"morphism", sample->describe(k)}});
        r.record("factorization q is a fibration", is_fibration(fc.q), {{"morphism", sample->describe(k)}});
      }
      r.set_range("sample", "point, B(Z/2), B(Z/3), Cech nerve of 3 -> 2; all morphisms; N = 3");
      r.set_range("morphisms", sample->morphisms.size());
      return r;
    }

    // ---------------------------------------------------------- criterion 5

    Report site_axioms(std::string const&) {
      Report r("criterion 5");
      std::vector<std::pair<Site, std::size_t>> sites = {{Site::finsets(), 3},
                                                         {Site::gfinsets(FiniteGroup::cyclic(2)), 4},
                                                         {Site::gfinsets(FiniteGroup::symmetric3()), 4},
                                                         {Site::graphcov(BasedGraph::figure_eight()), 3}};
      for (auto const& [site, bound] : sites) {
        auto audit = audit_site_axioms(site, enumerate_probe(site, bound));
        r.record("site axioms C0-C4", audit.passed(),
                 {{"site", site.name()}, {"bound", bound}, {"summary", audit.summary()}});
        r.set_range(site.name(), "objects of size <= " + std::to_string(bound));
      }
      auto broken = Site::finsets().with_cover_class(CoverClass::injective);
      auto audit  = audit_site_axioms(broken, enumerate_probe(Site::finsets(), 2));
      auto w      = audit.first_witness("C4 covers are effective epimorphisms");
      r.record("corrupted cover predicate fails C4 with a witness",
               audit.failures("C4 covers are effective epimorphisms") > 0 && w.is_object(),
               {{"site", broken.name()}});
      return r;
    }

    // ---------------------------------------------------------- criterion 6

    std::vector<FreeGroupAction> all_actions(int n, int rank) {
      std::vector<int> id(n);
      std::iota(id.begin(), id.end(), 0);
      std::vector<std::vector<int>> perms;
      do {
        perms.push_back(id);
      } while (std::next_permutation(id.begin(), id.end()));
      std::vector<std::string> carrier;
      for (int x = 0; x < n; ++x) {
        carrier.push_back(std::to_string(x));
      }
      std::vector<FreeGroupAction> out;
      std::vector<std::size_t>     pick(rank, 0);
      while (true) {
        std::vector<std::vector<int>> ps;
        for (int k = 0; k < rank; ++k) {
          ps.push_back(perms[pick[k]]);
        }
        out.push_back(free_group_action(rank, carrier, ps));
        int k = 0;
        while (k < rank && ++pick[k] == perms.size()) {
          pick[k++] = 0;
        }
        if (k == rank) {
          break;
        }
      }
      return out;
    }

    Report galois_roundtrip(std::string const& fixtures) {
      Report r("criterion 6");
      auto   base = fixture<BasedGraph>(r, fixtures, "fig8.json", graph_from_json);
      if (!base) {
        return r;
      }
      r.record("fixture fig8.json is the figure-eight", *base == BasedGraph::figure_eight(),
               {{"fixture", "fig8.json"}});
      std::size_t actions = 0;
      for (int n = 0; n <= 4; ++n) {
        for (auto const& a : all_actions(n, static_cast<int>(base->rank()))) {
          ++actions;
          r.record("fiber_functor(cover_from_action(a)) = a", roundtrip_exact(*base, a), to_json(a));
        }
      }
      std::size_t covers = 0;
      for (auto const& obj : enumerate_objects(Site::graphcov(*base), 3)) {
        ++covers;
        auto w = roundtrip_iso(*base, obj);
        r.record("cover_from_action(fiber_functor(c)) isomorphic to c", w.has_value(),
                 to_json(Site::graphcov(*base), obj));
      }
      r.set_range("actions", "every F2-action on <= 4 points (" + std::to_string(actions) + ")");
      r.set_range("covers", "every figure-eight cover of degree <= 3 up to isomorphism (" + std::to_string(covers)
                                + ")");
      return r;
    }

    // ---------------------------------------------------------- criterion 7

    Report correspondence_exactness(std::string const& fixtures) {
      Report r("criterion 7");
      auto   base = fixture<BasedGraph>(r, fixtures, "fig8.json", graph_from_json);
      if (!base) {
        return r;
      }
      auto                          site = Site::graphcov(*base);
      auto                          act  = monodromy_site(*base);
      std::vector<SimplicialObject> objs;
      std::vector<std::string>      names;
      for (auto const& c : enumerate_objects(site, 2)) {
        auto cech = cech_nerve(site, to_terminal(site, c), 2);
        objs.push_back(cech.source);
        names.push_back("cech(degree " + std::to_string(c.size()) + ", #" + std::to_string(objs.size() - 1) + ")");
      }
      auto sample  = sample_with_all_morphisms(objs);
      sample.names = names;
      std::vector<SimplicialObject> targets;
      for (int n = 0; n <= 2; ++n) {
        for (auto const& a : all_actions(n, static_cast<int>(base->rank()))) {
          targets.push_back(constant_object(act, to_site_object(act, a), 2));
        }
      }
      r.merge(verify_correspondence_exactness(*base, sample, targets, 1));
      r.set_range("sample", "Cech nerves (N = 2) of every figure-eight cover of degree <= 2, all morphisms");
      r.set_range("objects", objs.size());
      r.set_range("morphisms", sample.morphisms.size());
      r.set_range("targets", "every F2-action on <= 2 points (" + std::to_string(targets.size()) + ")");
      return r;
    }

    // ---------------------------------------------------------- criterion 8

    Report pull_out(std::string const&) {
      Report r("criterion 8");
      for (int order : {2, 3}) {
        auto               site = Site::gfinsets(FiniteGroup::cyclic(order));
        EnumerationOptions opt;
        opt.groupoid_n = 1;
        auto xs        = enumerate_simplicial_objects(site, 2, 4, opt);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          auto back = push_in_action(site, pull_out_action(xs[i]));
          r.record("push_in(pull_out(x)) = x", back == xs[i] && dump(to_json(back)) == dump(to_json(xs[i])),
                   {{"group", "Z/" + std::to_string(order)}, {"object", i}});
        }
        r.set_range("Z/" + std::to_string(order),
                    std::to_string(xs.size()) + " 1-groupoids, N = 2, levels <= 4, up to isomorphism");
      }
      return r;
    }

    // ---------------------------------------------------------- criterion 9

    Report localization(std::string const& fixtures) {
      Report r("criterion 9");
      if (auto desk = fixture<MarkedRelCategory>(r, fixtures, "desk_cfo.json", category_from_json)) {
        auto v = validate_marked_category(*desk);
        r.record("desk category valid", v.passed(), {{"fixture", "desk_cfo.json"}, {"summary", v.summary()}});
        r.record("desk fixture matches the built-in desk", canonical(*desk) == canonical(desk_category()),
                 {{"fixture", "desk_cfo.json"}});
        if (v.passed()) {
          auto c = compare_localization_models(*desk, 4);
          r.merge(c, "desk: ");
        }
      }
      auto loc = localize_groupoid_category(Site::finsets(), 0, 2, CoverClass::surjective);
      r.record("localized category valid", validate_marked_category(loc.marked).passed());
      for (std::size_t a = 0; a < loc.marked.H.size(); ++a) {
        r.record("H within W and F", !loc.marked.H[a] || (loc.marked.W[a] && loc.marked.F[a]),
                 {{"arrow", loc.marked.category.arrows[a].label}});
      }
      r.merge(compare_localization_models(loc.marked, 4), "finsets n=0: ");
      if (auto two = fixture<CfoSample>(r, fixtures, "two_class.json", sample_from_json)) {
        r.merge(compare_hypercover_classes(*two, CoverClass::uniform, CoverClass::surjective), "two classes: ");
      }
      r.set_range("max_length", 4);
      r.set_range("localized", "0-groupoids of FinSets, levels <= 2, N = 2: "
                                   + std::to_string(loc.marked.category.objects.size()) + " objects, "
                                   + std::to_string(loc.marked.category.arrows.size()) + " arrows");
      return r;
    }

  }  // namespace

  std::string default_fixture_dir() {
    return NGRPD_FIXTURE_DIR;
  }

  void write_fixtures(std::string const& dir) {
    fs::create_directories(dir);
    auto put = [&](std::string const& name, json const& j) {
      std::ofstream out(fs::path(dir) / name);
      out << dump(j);
    };
    auto fig8 = BasedGraph::figure_eight();
    put("fig8.json", to_json(fig8));
    put("theta.json", to_json(BasedGraph::theta()));
    put("nerve_z2.json", to_json(classifying_object(FiniteGroup::cyclic(2), 3)));
    auto swap_a = free_group_action(2, {"1", "2"}, {{1, 0}, {0, 1}});
    put("action_double_a.json", to_json(swap_a));
    put("double_a.json", to_json(fig8, cover_graph_from_action(fig8, swap_a)));
    put("desk_cfo.json", desk_json());
    auto bz2  = classifying_object(FiniteGroup::cyclic(2), 3);
    auto bz3  = classifying_object(FiniteGroup::cyclic(3), 3);
    auto pt   = terminal_object(Site::finsets(), 3);
    auto cech = cech_3_to_2(3).source;
    put("cfo_sample.json",
        {{"objects", {{"point", to_json(pt)}, {"bz2", to_json(bz2)}, {"bz3", to_json(bz3)}, {"cech_3_to_2", to_json(cech)}}},
         {"all_morphisms", true}});
    auto aug = two_class_augmentation();
    put("two_class.json",
        {{"objects", {{"cech", to_json(aug.source)}, {"base", to_json(aug.target)}}}, {"all_morphisms", true}});
  }

  std::vector<Criterion> acceptance_criteria() {
    return {
        {1, "delta-combinatorics", {"simp"}, delta_combinatorics},
        {2, "nerve-groupoid", {"simp", "grpd"}, nerve_groupoid},
        {3, "fibration-hypercover", {"grpd"}, fibration_hypercover},
        {4, "cfo-axioms", {"grpd"}, cfo_axioms},
        {5, "site-axioms", {"fincat"}, site_axioms},
        {6, "galois-roundtrip", {"galois", "gset"}, galois_roundtrip},
        {7, "galois-exactness", {"galois", "grpd"}, correspondence_exactness},
        {8, "pull-out-action", {"galois", "gset"}, pull_out},
        {9, "localization", {"localization"}, localization},
        {10, "determinism", {"cli"}, {}},
    };
  }

  namespace {
    bool selected(Criterion const& c, std::string const& filter) {
      if (filter.empty() || c.name.find(filter) != std::string::npos || std::to_string(c.id) == filter) {
        return true;
      }
      return std::find(c.tags.begin(), c.tags.end(), filter) != c.tags.end();
    }

    CriterionOutcome run_one(Criterion const& c, std::string const& fixtures) {
      auto             start = std::chrono::steady_clock::now();
      CriterionOutcome out{c.id, c.name, Report("criterion " + std::to_string(c.id)), 0};
      try {
        out.report = c.run(fixtures);
      } catch (Refused const& e) {
        out.report.record("run", Status::refused, {{"error", e.what()}});
      } catch (std::exception const& e) {
        out.report.record("run", false, {{"error", e.what()}});
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return out;
    }

    std::vector<CriterionOutcome> run_batch(std::vector<Criterion> const& todo, std::string const& fixtures, int jobs,
                                            std::function<void(CriterionOutcome const&)> const& progress) {
      std::vector<CriterionOutcome> out(todo.size());
      std::mutex                    lock;
      std::size_t                   next = 0;
      auto                          worker = [&] {
        while (true) {
          std::size_t mine;
          {
            std::lock_guard<std::mutex> g(lock);
            if (next == todo.size()) {
              return;
            }
            mine = next++;
          }
          auto result = run_one(todo[mine], fixtures);
          std::lock_guard<std::mutex> g(lock);
          out[mine] = std::move(result);
          if (progress) {
            progress(out[mine]);
          }
        }
      };
      std::vector<std::future<void>> pool;
      for (int j = 0; j < std::max(1, jobs); ++j) {
        pool.push_back(std::async(std::launch::async, worker));
      }
      for (auto& f : pool) {
        f.get();
      }
      return out;
    }
  }  // namespace

  std::vector<CriterionOutcome> run_acceptance(AcceptanceOptions const&                            options,
                                               std::function<void(CriterionOutcome const&)> const& progress) {
    std::string fixtures = options.fixtures.empty() ? default_fixture_dir() : options.fixtures;
    std::vector<Criterion> todo;
    bool                   determinism = false;
    for (auto const& c : acceptance_criteria()) {
      if (!selected(c, options.filter)) {
        continue;
      }
      if (c.id == 10) {
        determinism = true;
      } else {
        todo.push_back(c);
      }
    }
    auto out = run_batch(todo, fixtures, options.jobs, progress);
    if (determinism) {
      // run everything else a second time and compare the report text
      auto             start = std::chrono::steady_clock::now();
      auto             first = todo.empty() ? run_batch({acceptance_criteria()[0]}, fixtures, 1, {}) : out;
      auto             batch = todo.empty() ? std::vector<Criterion>{acceptance_criteria()[0]} : todo;
      auto             again = run_batch(batch, fixtures, options.jobs, {});
      CriterionOutcome det{10, "determinism", Report("criterion 10"), 0};
      std::string      a = dump(selftest_report(first).to_json());
      std::string      b = dump(selftest_report(again).to_json());
      det.report.record("selftest report byte-identical across runs", a == b, {{"bytes", {a.size(), b.size()}}});
      for (std::size_t i = 0; i < first.size(); ++i) {
        det.report.record("criterion report byte-identical across runs",
                          dump(first[i].report.to_json()) == dump(again[i].report.to_json()),
                          {{"criterion", first[i].id}});
      }
      det.report.set_range("criteria rerun", batch.size());
      det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (progress) {
        progress(det);
      }
      out.push_back(std::move(det));
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.id < b.id; });
    return out;
  }

  Report selftest_report(std::vector<CriterionOutcome> const& outcomes) {
    Report r("selftest");
    for (auto const& o : outcomes) {
      std::string check = "criterion " + std::to_string(o.id) + ": " + o.name;
      json        w     = json::object();
      auto        j     = o.report.to_json();
      for (auto const& [name, c] : j["checks"].items()) {
        if (!c["witnesses"].empty()) {
          w = {{"check", name}, {"witness", c["witnesses"][0]}};
          break;
        }
      }
      r.record(check, o.report.overall(), w);
      json range           = j["verified_range"];
      range["instances"]   = o.report.instances();
      r.set_range(check, range);
    }
    return r;
  }

}  // namespace ngrpd
