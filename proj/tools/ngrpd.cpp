// ngrpd: command-line front end. Every subcommand prints either a report
// (exit code from its status) or a built value (exit 0) on stdout.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

#include "ngrpd/acceptance.hpp"
#include "ngrpd/errors.hpp"
#include "ngrpd/json_io.hpp"

using namespace ngrpd;
namespace fs = std::filesystem;

namespace {

  struct Output {
    std::optional<Report> report;
    json                  value;  // used when there is no report
  };

  struct Globals {
    std::string out;
    std::string format = "json";
    int         jobs   = 1;
    std::string command;  // argv echo
  };

  // ------------------------------------------------------------- loading

  json load(std::string const& path) {
    if (path.empty()) {
      throw InvalidInput("missing input file");
    }
    return read_json_file(path);
  }

  // A file holding the sample JSON, or a directory whose *.json files are
  // the objects (named by file stem, all morphisms between them).
  CfoSample load_sample(std::string const& path) {
    if (!fs::is_directory(path)) {
      return sample_from_json(load(path));
    }
    std::vector<fs::path> files;
    for (auto const& e : fs::directory_iterator(path)) {
      if (e.path().extension() == ".json") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw InvalidInput(path + ": no .json files in sample directory");
    }
    std::vector<SimplicialObject> objs;
    std::vector<std::string>      names;
    for (auto const& f : files) {
      try {
        objs.push_back(simplicial_object_from_json(read_json_file(f.string())));
      } catch (InvalidInput const& e) {
        throw InvalidInput(f.string() + ": " + e.what());
      }
      names.push_back(f.stem().string());
    }
    auto s  = sample_with_all_morphisms(std::move(objs));
    s.names = names;
    return s;
  }

  FiniteGroup parse_group(std::string const& g) {
    if (g == "s3" || g == "S3") {
      return FiniteGroup::symmetric3();
    }
    std::string digits = g;
    for (std::string p : {"cyclic:", "Z", "z", "C"}) {
      if (digits.rfind(p, 0) == 0) {
        digits = digits.substr(p.size());
        break;
      }
    }
    try {
      std::size_t used = 0;
      int         n    = std::stoi(digits, &used);
      if (used == digits.size() && n >= 1) {
        return FiniteGroup::cyclic(n);
      }
    } catch (std::exception const&) {
    }
    throw InvalidInput("--group: expected Z<n>, cyclic:<n> or S3, got \"" + g + "\"");
  }

  struct SiteArgs {
    std::string site = "finsets";
    std::string group;
    std::string base;
    std::string covers;

    Site build() const {
      Site s = Site::finsets();
      if (site == "finsets") {
        s = Site::finsets();
      } else if (site == "gfinsets") {
        if (group.empty()) {
          throw InvalidInput("--site gfinsets needs --group");
        }
        s = Site::gfinsets(parse_group(group));
      } else if (site == "graphcov") {
        s = Site::graphcov(graph_from_json(load(base)));
      } else if (fs::exists(site)) {
        s = site_from_json(load(site));
      } else {
        throw InvalidInput("--site: unknown site \"" + site + "\"");
      }
      if (!covers.empty()) {
        s = s.with_cover_class(cover_class_from_string(covers));
      }
      return s;
    }

    void add(CLI::App* cmd) {
      cmd->add_option("--site", site, "finsets, gfinsets, graphcov or a site JSON file")->capture_default_str();
      cmd->add_option("--group", group, "group for gfinsets: Z<n>, cyclic:<n> or S3");
      cmd->add_option("--base", base, "based graph JSON for graphcov");
      cmd->add_option("--covers", covers, "cover class: surjective, uniform or injective");
    }
  };

  std::vector<FreeGroupAction> actions_up_to(int bound, int rank) {
    std::vector<FreeGroupAction> out;
    for (int n = 0; n <= bound; ++n) {
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
      std::vector<std::size_t> pick(rank, 0);
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
    }
    return out;
  }

  // "(1 2)(3 4 5)" with carrier labels; "id" when trivial
  std::string cycles(FreeGroupAction const& a, std::vector<int> const& p) {
    std::string       out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (seen[x] || p[x] == static_cast<int>(x)) {
        continue;
      }
      out += "(";
      for (int y = static_cast<int>(x); !seen[y]; y = p[y]) {
        seen[y] = true;
        out += (out.back() == '(' ? "" : " ") + a.carrier[y];
      }
      out += ")";
    }
    return out.empty() ? "id" : out;
  }

  int object_arg(MarkedRelCategory const& c, std::string const& label, char const* flag) {
    int i = c.object_index(label);
    if (i < 0) {
      throw InvalidInput(std::string(flag) + ": no object \"" + label + "\"");
    }
    return i;
  }

  // ------------------------------------------------------------- emitting

  int emit(Globals const& g, Output const& o) {
    json j = o.report ? o.report->to_json() : o.value;
    if (!g.out.empty()) {
      std::ofstream f(g.out);
      if (!f) {
        std::cerr << "error: cannot write " << g.out << "\n";
        return 2;
      }
      f << dump(j);
    }
    if (g.format == "text" && o.report) {
      std::cout << o.report->summary();
    } else {
      std::cout << dump(j);
    }
    return o.report ? exit_code(o.report->overall()) : 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ngrpd: finite n-groupoids, hypercovers, Galois correspondence and localization checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  for (int i = 1; i < argc; ++i) {
    g.command += (i > 1 ? " " : "") + std::string(argv[i]);
  }
  app.add_option("--out", g.out, "also write the JSON output to FILE");
  app.add_option("--jobs", g.jobs, "worker threads (selftest)")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::function<Output()> action;

  // delta
  int  dk = 0, dN = -1, dhorn = -1;
  bool dboundary = false;
  auto delta     = app.add_subcommand("delta", "standard simplex, boundary or horn as a truncated simplicial set");
  delta->add_option("--k", dk, "dimension")->required()->check(CLI::NonNegativeNumber);
  delta->add_option("--N", dN, "truncation level (default k)");
  delta->add_flag("--boundary", dboundary, "the boundary of the simplex");
  delta->add_option("--horn", dhorn, "the horn missing face i");
  delta->callback([&] {
    action = [&] {
      int N = dN < 0 ? dk : dN;
      if (dboundary && dhorn >= 0) {
        throw InvalidInput("--boundary and --horn are exclusive");
      }
      auto s = dboundary ? boundary(dk, N) : dhorn >= 0 ? horn(dk, dhorn, N) : standard_simplex(dk, N);
      return Output{std::nullopt, to_json(s)};
    };
  });

  // check
  std::string ckind, cn = "1", cinput, cmap;
  auto        check = app.add_subcommand(
      "check", "groupoid, fibration, hypercover, weak-equivalence or trivial-fibration verdict with witnesses.\n"
                      "Weak equivalences use the path object, which costs one level: a map truncated at N is "
                      "decided on levels 0..N-1, so certify at level n with N >= n + 2.");
  check->add_option("--kind", ckind, "what to check")
      ->required()
      ->check(CLI::IsMember({"groupoid", "fibration", "hypercover", "weak-equivalence", "trivial-fibration"}));
  check->add_option("--n", cn, "groupoid or hypercover level, a number or inf")->capture_default_str();
  check->add_option("--input", cinput, "simplicial object JSON (groupoid)");
  check->add_option("--map", cmap, "simplicial morphism JSON (other kinds)");
  check->callback([&] {
    action = [&] {
      std::string cmd = "check --kind " + ckind;
      if (ckind == "groupoid") {
        auto x = simplicial_object_from_json(load(cinput));
        return Output{groupoid_certificate(x, parse_n(cn)).report(cmd), {}};
      }
      auto f = simplicial_morphism_from_json(load(cmap));
      if (ckind == "fibration") {
        return Output{fibration_certificate(f).report(cmd), {}};
      }
      if (ckind == "hypercover") {
        return Output{hypercover_certificate(f, parse_n(cn)).report(cmd), {}};
      }
      Report r(cmd);
      if (ckind == "weak-equivalence") {
        auto v = weak_equivalence(f);
        r.merge(v.hypercover.report(cmd), "q(f): ");
        r.record("weak equivalence", v.holds, {{"factorization_commutes", v.factorization.commutes}});
        r.set_range("levels decided", json::array({0, f.source.N - 1}));
      } else {
        bool fib = is_fibration(f);
        bool triv = is_trivial_fibration(f);
        r.record("trivial fibration", triv, {{"fibration", fib}});
        r.set_range("N", f.source.N);
      }
      return Output{r, {}};
    };
  });

  // factorize
  std::string fmap, fprefix = "pf_";
  auto        factorize = app.add_subcommand("factorize", "mapping-path factorization f = q r; writes PREFIX{path_space,r,q}.json");
  factorize->add_option("--map", fmap, "simplicial morphism JSON")->required();
  factorize->add_option("--out-prefix", fprefix, "prefix for the three output files")->capture_default_str();
  factorize->callback([&] {
    action = [&] {
      auto   f  = simplicial_morphism_from_json(load(fmap));
      auto   fc = mapping_path_factorization(f);
      Report r("factorize");
      auto   put = [&](std::string const& name, json const& j) {
        std::ofstream out(fprefix + name + ".json");
        if (!out) {
          throw InvalidInput("cannot write " + fprefix + name + ".json");
        }
        out << dump(j);
      };
      put("path_space", to_json(fc.path_space));
      put("r", to_json(fc.r));
      put("q", to_json(fc.q));
      r.record("q r = f (truncated)", fc.commutes);
      r.record("r is a weak equivalence", is_weak_equivalence(fc.r));
      r.record("q is a fibration", is_fibration(fc.q));
      r.set_range("N", f.source.N);
      return Output{r, {}};
    };
  });

  // audit-cfo
  std::string asample;
  int         an = 1;
  auto        audit_cfo = app.add_subcommand("audit-cfo", "instance-check the fibrant-object axioms over a sample");
  audit_cfo->add_option("--sample", asample, "sample JSON or directory of simplicial objects")->required();
  audit_cfo->add_option("--n", an, "groupoid level")->capture_default_str();
  audit_cfo->callback([&] {
    action = [&] { return Output{verify_cfo_axioms(load_sample(asample), an), {}}; };
  });

  // audit-site
  SiteArgs    ss;
  std::size_t sbound    = 3;
  auto        audit_site = app.add_subcommand("audit-site", "instance-check the site axioms on all objects up to a size");
  ss.add(audit_site);
  audit_site->add_option("--bound", sbound, "largest object size (degree for graphcov)")->capture_default_str();
  audit_site->callback([&] {
    action = [&] {
      auto site = ss.build();
      auto r    = audit_site_axioms(site, enumerate_probe(site, sbound));
      r.set_range("site", site.name());
      r.set_range("object size", sbound);
      return Output{r, {}};
    };
  });

  // fiber
  std::string fbase, fcover;
  auto        fiber = app.add_subcommand("fiber", "fibre over the basepoint of a graph cover, with its monodromy");
  fiber->add_option("--base", fbase, "based graph JSON")->required();
  fiber->add_option("--cover", fcover, "graph cover JSON")->required();
  fiber->callback([&] {
    action = [&] {
      auto base = graph_from_json(load(fbase));
      auto a    = fiber_functor(base, cover_from_json(base, load(fcover)));
      json j    = to_json(a);
      json cyc  = json::object();
      for (std::size_t k = 0; k < base.rank(); ++k) {
        cyc[base.edges()[base.generators()[k]].label] = cycles(a, a.perms[k]);
      }
      j["cycles"] = cyc;
      return Output{std::nullopt, j};
    };
  });

  // build-cover
  std::string bbase, baction;
  auto        build_cover = app.add_subcommand("build-cover", "graph cover with a given monodromy action");
  build_cover->add_option("--base", bbase, "based graph JSON")->required();
  build_cover->add_option("--action", baction, "free group action JSON")->required();
  build_cover->callback([&] {
    action = [&] {
      auto base = graph_from_json(load(bbase));
      auto a    = action_from_json(load(baction));
      if (a.rank() != base.rank()) {
        throw InvalidInput("action rank " + std::to_string(a.rank()) + " does not match graph rank "
                           + std::to_string(base.rank()));
      }
      return Output{std::nullopt, to_json(base, cover_graph_from_action(base, a))};
    };
  });

  // galois-audit
  std::string gsample;
  int         gn = 1, gtargets = 2;
  auto        galois_audit = app.add_subcommand("galois-audit", "exactness of the fiber functor over a sample of graph-cover objects");
  galois_audit->add_option("--sample", gsample, "sample JSON or directory (site graphcov)")->required();
  galois_audit->add_option("--n", gn, "groupoid level")->capture_default_str();
  galois_audit->add_option("--targets-bound", gtargets, "constant targets from every action on at most this many points")
      ->capture_default_str();
  galois_audit->callback([&] {
    action = [&] {
      auto sample = load_sample(gsample);
      if (sample.objects.empty() || sample.objects[0].site.kind() != SiteKind::graphcov) {
        throw InvalidInput("--sample: objects must live over a graphcov site");
      }
      auto const& base = sample.objects[0].site.shape();
      auto        act  = monodromy_site(base);
      std::vector<SimplicialObject> targets;
      for (auto const& a : actions_up_to(gtargets, static_cast<int>(base.rank()))) {
        targets.push_back(constant_object(act, to_site_object(act, a), sample.objects[0].N));
      }
      auto r = verify_correspondence_exactness(base, sample, targets, gn);
      r.set_range("targets", targets.size());
      return Output{r, {}};
    };
  });

  // localize
  SiteArgs    ls;
  int         ln = 0, lN = -1;
  std::size_t lbound = 2;
  std::string lmarks;
  auto        localize = app.add_subcommand("localize", "category of small n-groupoids with W, H and F marked");
  ls.add(localize);
  localize->add_option("--n", ln, "groupoid level")->capture_default_str();
  localize->add_option("--bound", lbound, "largest level size")->capture_default_str();
  localize->add_option("--N", lN, "truncation (default n + 2)");
  localize->add_option("--marks", lmarks, "cover class used for the marks (default: the site's)");
  localize->callback([&] {
    action = [&] {
      auto site  = ls.build();
      auto marks = lmarks.empty() ? site.cover_class() : cover_class_from_string(lmarks);
      auto loc   = localize_groupoid_category(site, ln, lbound, marks, lN);
      return Output{std::nullopt, {{"category", to_json(loc.marked)}, {"sample", to_json(loc.sample)}}};
    };
  });

  // hammocks
  std::string hcat, hfrom, hto;
  int         hn = 2, hk = 1;
  auto        hammocks = app.add_subcommand("hammocks", "commuting hammocks of length n and height k between two objects");
  hammocks->add_option("--cat", hcat, "marked category JSON")->required();
  hammocks->add_option("--from", hfrom, "source object")->required();
  hammocks->add_option("--to", hto, "target object")->required();
  hammocks->add_option("-n,--length", hn, "zigzag length")->capture_default_str();
  hammocks->add_option("-k,--height", hk, "height")->capture_default_str();
  hammocks->callback([&] {
    action = [&] {
      auto c  = category_from_json(load(hcat));
      auto v  = validate_marked_category(c);
      if (!v.passed()) {
        return Output{v, {}};
      }
      auto hs = hammock_simplices(c, object_arg(c, hfrom, "--from"), object_arg(c, hto, "--to"), hn, hk);
      json list = json::array();
      for (auto const& h : hs) {
        list.push_back(to_json(c, h));
      }
      return Output{std::nullopt, {{"length", hn}, {"height", hk}, {"count", hs.size()}, {"hammocks", list}}};
    };
  });

  // compare-models
  std::string mcat, mfrom, mto;
  int         mlength = 4, mheight = 1;
  auto        compare = app.add_subcommand(
      "compare-models", "span model against hammock model on components (assumes right fractions)");
  compare->add_option("--cat", mcat, "marked category JSON")->required();
  compare->add_option("--from", mfrom, "source object (default: all pairs)");
  compare->add_option("--to", mto, "target object");
  compare->add_option("--max-length", mlength, "zigzag length bound")->capture_default_str();
  compare->add_option("--max-height", mheight, "also check that hammocks up to this height stay in one component")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->callback([&] {
    action = [&] {
      auto c = category_from_json(load(mcat));
      auto v = validate_marked_category(c);
      if (!v.passed()) {
        return Output{v, {}};
      }
      if (mfrom.empty() != mto.empty()) {
        throw InvalidInput("--from and --to go together");
      }
      std::vector<std::pair<int, int>> pairs;
      Report                           r("compare-models");
      if (mfrom.empty()) {
        r = compare_localization_models(c, mlength);
        for (int x = 0; x < static_cast<int>(c.category.objects.size()); ++x) {
          for (int y = 0; y < static_cast<int>(c.category.objects.size()); ++y) {
            pairs.emplace_back(x, y);
          }
        }
      } else {
        int x = object_arg(c, mfrom, "--from"), y = object_arg(c, mto, "--to");
        r     = compare_localization_models(c, x, y, mlength);
        pairs.emplace_back(x, y);
      }
      // higher hammocks are simplices of the mapping space: their rows must
      // already be identified on components
      for (auto [x, y] : pairs) {
        if (mheight < 2) {
          break;
        }
        auto pi0 = pi0_hammock(c, x, y, mlength);
        for (int k = 2; k <= mheight; ++k) {
          for (int n = 0; n <= mlength; ++n) {
            for (auto const& h : hammock_simplices(c, x, y, n, k)) {
              bool same = true;
              for (auto const& row : h.rows) {
                same = same && pi0.component(row) == pi0.component(h.rows[0]);
              }
              r.record("higher hammocks lie in one component", same, to_json(c, h));
            }
          }
        }
      }
      r.set_range("max_height", mheight);
      return Output{r, {}};
    };
  });

  // selftest
  AcceptanceOptions opt;
  auto              selftest = app.add_subcommand("selftest", "run the bundled acceptance suite");
  selftest->add_option("--filter", opt.filter, "criterion id, name substring or module tag");
  selftest->add_option("--fixtures", opt.fixtures, "fixture directory")->capture_default_str();
  opt.fixtures = default_fixture_dir();
  selftest->callback([&] {
    action = [&] {
      opt.jobs      = g.jobs;
      auto outcomes = run_acceptance(opt);
      if (outcomes.empty()) {
        throw InvalidInput("--filter \"" + opt.filter + "\" matches no criterion");
      }
      if (g.format == "text") {
        for (auto const& o : outcomes) {
          std::cout << (o.report.passed() ? "PASS" : "FAIL") << " criterion " << o.id << " " << o.name << " ("
                    << o.report.instances() << " instances)\n";
        }
      }
      return Output{selftest_report(outcomes), {}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  try {
    Output o = action();
    if (o.report) {
      o.report->set_command(g.command);
    }
    if (g.format == "text" && app.got_subcommand("selftest")) {
      // status lines already printed; still honour --out
      if (!g.out.empty()) {
        std::ofstream(g.out) << dump(o.report->to_json());
      }
      return exit_code(o.report->overall());
    }
    return emit(g, o);
  } catch (InvalidInput const& e) {
    std::cerr << "error: " << e.what() << "\n";
    Report r(g.command);
    r.record("input", Status::refused, {{"error", e.what()}});
    emit(g, Output{r, {}});
    return 2;
  } catch (Refused const& e) {
    std::cerr << "refused: " << e.what() << "\n";
    Report r(g.command);
    r.record("refused", Status::refused, {{"error", e.what()}});
    emit(g, Output{r, {}});
    return 2;
  }
}
