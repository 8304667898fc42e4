// Python bindings: values cross the boundary as JSON text; the package
// wrapper turns them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ngrpd/acceptance.hpp"
#include "ngrpd/errors.hpp"
#include "ngrpd/json_io.hpp"

namespace py = pybind11;
using namespace ngrpd;

namespace {
  json in(std::string const& text, char const* what) {
    return parse_json(text, what);
  }
  std::string out(json const& j) {
    return j.dump();
  }

  Site site_of(std::string const& text) {
    return site_from_json(in(text, "site"));
  }
}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite n-groupoids, hypercovers, Galois correspondence and localization checks";

  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<Refused>      refused(m, "Refused", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (InvalidInput const& e) {
      invalid(e.what());
    } catch (Refused const& e) {
      refused(e.what());
    }
  });

  m.def("max_cells", [] { return max_cells(); });

  m.def(
      "delta",
      [](int k, int N, bool bnd, int horn_i) {
        N = N < 0 ? k : N;
        auto s = bnd ? boundary(k, N) : horn_i >= 0 ? horn(k, horn_i, N) : standard_simplex(k, N);
        return out(to_json(s));
      },
      py::arg("k"), py::arg("N") = -1, py::arg("boundary") = false, py::arg("horn") = -1);

  m.def("check_groupoid", [](std::string const& x, std::string const& n) {
    return out(groupoid_certificate(simplicial_object_from_json(in(x, "object")), parse_n(n)).report("check_groupoid").to_json());
  });
  m.def("check_fibration", [](std::string const& f) {
    return out(fibration_certificate(simplicial_morphism_from_json(in(f, "map"))).report("check_fibration").to_json());
  });
  m.def("check_hypercover", [](std::string const& f, std::string const& n) {
    return out(hypercover_certificate(simplicial_morphism_from_json(in(f, "map")), parse_n(n))
                   .report("check_hypercover")
                   .to_json());
  });
  m.def("is_weak_equivalence",
        [](std::string const& f) { return is_weak_equivalence(simplicial_morphism_from_json(in(f, "map"))); });

  m.def("fiber", [](std::string const& base, std::string const& cover) {
    auto b = graph_from_json(in(base, "base"));
    return out(to_json(fiber_functor(b, cover_from_json(b, in(cover, "cover")))));
  });
  m.def("build_cover", [](std::string const& base, std::string const& action) {
    auto b = graph_from_json(in(base, "base"));
    return out(to_json(b, cover_graph_from_action(b, action_from_json(in(action, "action")))));
  });

  m.def("audit_site", [](std::string const& site, std::size_t bound) {
    auto s = site_of(site);
    return out(audit_site_axioms(s, enumerate_probe(s, bound)).to_json());
  });
  m.def("audit_cfo", [](std::string const& sample, int n) {
    return out(verify_cfo_axioms(sample_from_json(in(sample, "sample")), n).to_json());
  });

  m.def(
      "compare_models",
      [](std::string const& cat, int max_length, std::string const& from, std::string const& to) {
        auto c = category_from_json(in(cat, "category"));
        if (from.empty()) {
          return out(compare_localization_models(c, max_length).to_json());
        }
        return out(compare_localization_models(c, c.object_index(from), c.object_index(to), max_length).to_json());
      },
      py::arg("cat"), py::arg("max_length") = 4, py::arg("source") = "", py::arg("target") = "");
  m.def("localize", [](std::string const& site, int n, std::size_t bound, std::string const& marks) {
    auto s   = site_of(site);
    auto loc = localize_groupoid_category(s, n, bound, marks.empty() ? s.cover_class() : cover_class_from_string(marks));
    return out({{"category", to_json(loc.marked)}, {"sample", to_json(loc.sample)}});
  });

  m.def(
      "selftest",
      [](std::string const& filter, int jobs, std::string const& fixtures) {
        AcceptanceOptions opt{fixtures.empty() ? default_fixture_dir() : fixtures, filter, jobs};
        std::vector<CriterionOutcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = run_acceptance(opt);
        }
        return out(selftest_report(outcomes).to_json());
      },
      py::arg("filter") = "", py::arg("jobs") = 1, py::arg("fixtures") = "");
}
