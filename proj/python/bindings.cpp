// Python bridge. Values cross the boundary as JSON text so rationals stay
// exact strings; the reflecto package decodes them.

#include <pybind11/pybind11.h>

#include "reflecto/cli.hpp"
#include "reflecto/errors.hpp"
#include "reflecto/io.hpp"

namespace py = pybind11;
using namespace reflecto;

namespace {

RatMatrix matrix_arg(const std::string& text) {
  return matrix_from_json(Json::parse(text), "matrix");
}

RatVector b_arg(const std::string& text, std::size_t d) {
  const RatVector b = vector_from_json(Json::parse(text), "b");
  if (b.size() != d) throw InvalidInput("b needs " + std::to_string(d) + " entries");
  for (const auto& x : b) {
    if (!x.is_positive()) throw InvalidInput("b entries must be positive");
  }
  return b;
}

NetworkSpec spec_arg(const std::string& text) {
  NetworkSpec spec = spec_from_json(Json::parse(text));
  require_valid(spec);
  return spec;
}

std::string py_det(const std::string& m) { return to_json(mat_det(matrix_arg(m))).dump(); }

std::string py_inv(const std::string& m) { return to_json(mat_inv(matrix_arg(m))).dump(); }

std::string py_classify(const std::string& m) {
  return cli::class_report_json(matrix_arg(m), class_options_from_env()).dump();
}

std::string py_check_tight(const std::string& m, const std::string& b, bool aux_bounded) {
  const RatMatrix r = matrix_arg(m);
  const RatVector bv = b_arg(b, r.rows());
  const ClassOptions opts = class_options_from_env();
  return cli::verdict_json(check_tight_system(r, bv, aux_bounded, opts), bv, aux_bounded).dump();
}

std::string py_decide_tight(const std::string& m, std::size_t samples, std::uint64_t seed,
                            bool aux_bounded) {
  DecideOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.aux_bounded = aux_bounded;
  opts.classes = class_options_from_env();
  return cli::decision_json(decide_tight_matrix(matrix_arg(m), opts)).dump();
}

std::string py_verify_witness(const std::string& m, const std::string& b, const std::string& w,
                              bool aux_bounded) {
  const RatMatrix r = matrix_arg(m);
  const TightnessSystem system = build_system(r, b_arg(b, r.rows()), aux_bounded);
  return cli::verification_json(verify_assignment(system, witness_from_json(Json::parse(w))))
      .dump();
}

std::string py_analyze(const std::string& spec_text) {
  const NetworkSpec spec = spec_arg(spec_text);
  const DerivedMatrices dm = derive(spec);
  const TrafficReport tr = traffic(spec);
  Json out;
  Json relabel = Json::array();
  for (std::size_t s : dm.original_station) relabel.push_back(s + 1);
  out["relabel"] = relabel;
  Json lowest = Json::array();
  for (std::size_t k : dm.sets.lowest) lowest.push_back(k + 1);
  out["lowest_priority_class"] = lowest;
  out["W"] = to_json(dm.w);
  out["B"] = to_json(dm.b);
  out["F"] = to_json(dm.f);
  out["A"] = to_json(dm.a);
  out["A_inv"] = to_json(dm.a_inv);
  out["Q"] = to_json(dm.q);
  out["R"] = dm.r ? to_json(*dm.r) : Json(nullptr);
  out["alpha"] = to_json(tr.alpha);
  out["rho"] = to_json(tr.rho);
  out["heavy_traffic"] = tr.heavy_traffic;
  return out.dump();
}

std::string py_reentrant(const std::string& route_text, const std::string& means_text,
                         const std::string& arrival, const std::string& discipline) {
  std::vector<std::size_t> route;
  for (const auto& s : Json::parse(route_text)) route.push_back(s.get<std::size_t>());
  Discipline disc;
  if (discipline == "fbfs") {
    disc = Discipline::kFBFS;
  } else if (discipline == "lbfs") {
    disc = Discipline::kLBFS;
  } else {
    throw InvalidInput("discipline must be fbfs or lbfs, got '" + discipline + "'");
  }
  return spec_to_json(reentrant_spec(route, vector_from_json(Json::parse(means_text), "means"),
                                     rat_parse(arrival), disc))
      .dump();
}

}  // namespace

PYBIND11_MODULE(_reflecto, m) {
  m.doc() = "Exact reflection-matrix and tightness routines";
  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);

  m.def("det", &py_det, py::arg("matrix"));
  m.def("inv", &py_inv, py::arg("matrix"));
  m.def("classify", &py_classify, py::arg("matrix"));
  m.def("check_tight", &py_check_tight, py::arg("matrix"), py::arg("b"), py::arg("aux_bounded"));
  m.def("decide_tight", &py_decide_tight, py::arg("matrix"), py::arg("samples"), py::arg("seed"),
        py::arg("aux_bounded"));
  m.def("verify_witness", &py_verify_witness, py::arg("matrix"), py::arg("b"), py::arg("witness"),
        py::arg("aux_bounded"));
  m.def("analyze", &py_analyze, py::arg("spec"));
  m.def("reentrant", &py_reentrant, py::arg("route"), py::arg("means"), py::arg("arrival"),
        py::arg("discipline"));
}
