#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nbl/formula.hpp"
#include "nbl/model.hpp"
#include "nbl/proofs.hpp"
#include "nbl/replication.hpp"
#include "nbl/search.hpp"
#include "nbl/semantics.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> set_labels(nbl::StateSet x, const nbl::NeighborhoodFrame& fr) {
  std::vector<std::string> out;
  for (int i = 0; i < fr.size(); ++i)
    if (x.contains(i)) out.push_back(fr.label(i));
  return out;
}

py::dict verdict_dict(const nbl::Verdict& v) {
  py::dict d;
  d["valid"] = v.valid();
  d["bound"] = v.bound;
  d["sampled"] = v.sampled;
  if (v.witness) {
    d["witness_model"] = nbl::model_to_json(v.witness->first);
    d["witness_state"] = v.witness->second;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(nbl, m) {
  m.doc() = "neighborhood-semantics toolkit for the bimodal logic of ignorance";

  py::register_exception<nbl::SyntaxError>(m, "NblSyntaxError");
  py::register_exception<nbl::ModelError>(m, "ModelError");
  py::register_exception<nbl::BudgetError>(m, "BudgetError");

  py::class_<nbl::Formula>(m, "Formula")
      .def("__str__", &nbl::Formula::render)
      .def("__repr__",
           [](const nbl::Formula& f) { return "Formula(" + f.render() + ")"; })
      .def("__eq__", [](const nbl::Formula& a, const nbl::Formula& b) { return a == b; })
      .def("render", &nbl::Formula::render);

  m.def("parse", &nbl::parse, py::arg("text"), "parse a formula");
  m.def("atoms", &nbl::atoms);
  m.def("modal_depth", &nbl::modal_depth);
  m.def("expand_defined", &nbl::expand_defined);

  py::class_<nbl::NeighborhoodModel>(m, "Model")
      .def_static("from_json", &nbl::model_from_json, py::arg("text"))
      .def_static("load", &nbl::model_from_file, py::arg("path"))
      .def("to_json", [](const nbl::NeighborhoodModel& m_) { return nbl::model_to_json(m_); })
      .def("states",
           [](const nbl::NeighborhoodModel& m_) { return m_.frame().states(); })
      .def("__eq__", [](const nbl::NeighborhoodModel& a, const nbl::NeighborhoodModel& b) {
        return a == b;
      });

  m.def(
      "truth_set",
      [](const nbl::NeighborhoodModel& m_, const nbl::Formula& f) {
        return set_labels(nbl::truth_set(m_, f), m_.frame());
      },
      py::arg("model"), py::arg("formula"));
  m.def(
      "satisfies",
      [](const nbl::NeighborhoodModel& m_, const std::string& s, const nbl::Formula& f) {
        return nbl::satisfies(m_, s, f);
      },
      py::arg("model"), py::arg("state"), py::arg("formula"));
  m.def(
      "model_valid",
      [](const nbl::NeighborhoodModel& m_, const nbl::Formula& f) {
        return nbl::model_valid(m_, f);
      },
      py::arg("model"), py::arg("formula"));
  m.def(
      "frame_valid",
      [](const nbl::NeighborhoodModel& m_, const nbl::Formula& f) {
        return nbl::frame_valid(m_.frame(), f);
      },
      py::arg("model"), py::arg("formula"));
  m.def(
      "has_property",
      [](const nbl::NeighborhoodModel& m_, const std::string& p) {
        return nbl::has_property(m_.frame(), nbl::property_from_name(p));
      },
      py::arg("model"), py::arg("property"));
  m.def("supplementation",
        [](const nbl::NeighborhoodModel& m_) { return nbl::supplementation(m_); });

  m.def(
      "class_valid",
      [](const nbl::Formula& f, const std::string& props, int max_states, int jobs) {
        nbl::SearchOptions opts;
        opts.jobs = jobs;
        return verdict_dict(
            nbl::class_valid(f, nbl::parse_property_set(props), max_states, opts));
      },
      py::arg("formula"), py::arg("frame_class") = "all", py::arg("max_states") = 2,
      py::arg("jobs") = 1);

  m.def(
      "distinguishable",
      [](const nbl::NeighborhoodModel& a, const std::string& sa,
         const nbl::NeighborhoodModel& b, const std::string& sb,
         const std::string& fragment,
         const std::vector<std::string>& vocab) -> std::optional<std::string> {
        auto w = vocab.empty()
                     ? nbl::distinguishable(a, sa, b, sb, nbl::Fragment::from_name(fragment))
                     : nbl::distinguishable(a, sa, b, sb,
                                            nbl::Fragment::from_name(fragment), vocab);
        if (!w) return std::nullopt;
        return w->formula.render();
      },
      py::arg("model"), py::arg("state"), py::arg("model2"), py::arg("state2"),
      py::arg("fragment") = "nabla-bullet",
      py::arg("vocab") = std::vector<std::string>{});

  m.def(
      "check_bullet_morphism",
      [](const nbl::NeighborhoodModel& a, const nbl::NeighborhoodModel& b,
         const std::map<std::string, std::string>& f) {
        return nbl::check_bullet_morphism(a, b, f);
      },
      py::arg("model"), py::arg("model2"), py::arg("map"));

  m.def(
      "check_derivation",
      [](const std::string& system, const std::string& script) {
        nbl::CheckResult res = nbl::check_derivation(
            nbl::axiom_system(nbl::system_from_name(system)),
            nbl::parse_derivation(script));
        py::dict d;
        d["accepted"] = res.accepted;
        if (!res.accepted) {
          d["failed_line"] = res.failed_line;
          d["reason"] = res.reason;
        }
        return d;
      },
      py::arg("system"), py::arg("script"));

  m.def("export_fixture", &nbl::export_fixture, py::arg("fixture_id"));
  m.def("fixture_ids", [] {
    std::vector<std::string> out;
    for (const auto& f : nbl::fixture_catalog()) out.push_back(f.id);
    return out;
  });

  m.def(
      "run_fixture_suite",
      [](int jobs, const std::string& filter) {
        nbl::SuiteOptions opts;
        opts.jobs = jobs;
        nbl::SuiteReport rep = nbl::run_fixture_suite(opts, filter);
        py::list claims;
        for (const auto& c : rep.claims) {
          py::dict d;
          d["id"] = c.id;
          d["pass"] = c.pass;
          d["detail"] = c.detail;
          claims.append(d);
        }
        py::dict out;
        out["claims"] = claims;
        out["all_pass"] = rep.all_pass();
        return out;
      },
      py::arg("jobs") = 1, py::arg("filter") = "");
}
