// Thin layer over the C++ library. Exact numbers cross the boundary as
// strings ("p/q"); the Python package turns them into Fractions.

#include "spinnet/asymptotics.hpp"
#include "spinnet/cg_eval.hpp"
#include "spinnet/cli.hpp"
#include "spinnet/closed_forms.hpp"
#include "spinnet/error.hpp"
#include "spinnet/network_io.hpp"
#include "spinnet/penrose.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

namespace py = pybind11;
using namespace spinnet;

namespace {

py::tuple radical(const Radical& r) { return py::make_tuple(r.sign(), to_string(r.square())); }

SpinNetwork parse(const std::string& text) { return parse_network(text).net; }

py::list series(const std::string& text, int nmax, bool float_mode, int threads) {
  SeriesOptions opt;
  opt.mode = float_mode ? SeriesMode::float64 : SeriesMode::exact;
  opt.threads = threads;
  py::list rows;
  for (const auto& r : series_coefficients(parse(text), nmax, opt).rows) {
    if (r.exact)
      rows.append(py::make_tuple(r.n, to_string(*r.exact)));
    else
      rows.append(py::make_tuple(r.n, r.zero() ? 0.0 : r.sign * std::exp(r.log_abs)));
  }
  return rows;
}

} // namespace

PYBIND11_MODULE(_spinnet, m) {
  m.doc() = "spin network evaluation";

  auto base = py::register_exception<error>(m, "SpinnetError");
  py::register_exception<structure_error>(m, "StructureError", base.ptr());
  py::register_exception<domain_error>(m, "DomainError", base.ptr());
  py::register_exception<resource_error>(m, "ResourceError", base.ptr());
  py::register_exception<schema_error>(m, "SchemaError", base.ptr());

  m.def("generate", [](const std::string& family, const std::vector<int>& params) {
    return serialize_network({generate(family, params), {}, {}});
  });
  m.def("random_cubic", [](int vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return serialize_network({random_cubic(vertices, rng), {}, {}});
  });
  m.def("orient", [](const std::string& text) {
    auto f = parse_network(text);
    if (!f.orientation) f.orientation = find_smooth_orientation(f.net);
    if (!f.gates) f.gates = canonical_gate_signage(f.net, *f.orientation);
    return serialize_network(f);
  });
  m.def("check", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& v : check_admissible(parse(text)).violations) out.push_back(describe(v));
    return out;
  });

  m.def("penrose", [](const std::string& text, int threads) {
    PenroseOptions opt;
    opt.threads = threads;
    return to_string(penrose_evaluate(parse(text), opt).value);
  }, py::arg("network"), py::arg("threads") = 1);
  m.def("standard", [](const std::string& text) {
    auto v = standard_evaluate(parse(text));
    return py::make_tuple(to_string(v.value), v.sign_known);
  });
  m.def("unitary", [](const std::string& text) {
    auto v = unitary_evaluate(parse(text));
    return py::make_tuple(radical(v.value), v.sign_known);
  });
  m.def("cg", [](const std::string& text) { return to_string(cg_evaluate(to_cg_network(parse_network(text)))); });

  m.def("sixj", [](const SixJInput& x) { return radical(sixj(x)); });
  m.def("theta_cg", [](int a, int b, int c) { return to_string(theta_cg(a, b, c)); });
  m.def("ponzano_regge", &ponzano_regge);

  m.def("series", &series, py::arg("network"), py::arg("nmax"), py::arg("float_mode") = false,
        py::arg("threads") = 1);
  m.def("rho", [](const std::string& text, int nmax, bool float_mode, int stride) {
    SeriesOptions opt;
    opt.mode = float_mode ? SeriesMode::float64 : SeriesMode::exact;
    auto net = parse(text);
    return rho_json(estimate_rho(series_coefficients(net, nmax, opt), net, {stride, 0}));
  }, py::arg("network"), py::arg("nmax"), py::arg("float_mode") = true, py::arg("stride") = 1);
  m.def("rho_upper_bound", [](const std::string& text) {
    auto b = rho_upper_bound(parse(text));
    return py::make_tuple(b.value, b.exact.to_string());
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
