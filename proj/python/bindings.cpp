#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "partialop/cfunc.hpp"
#include "partialop/errors.hpp"
#include "partialop/graph_norm.hpp"
#include "partialop/neumann.hpp"
#include "partialop/scan.hpp"
#include "partialop/shift.hpp"
#include "partialop/suite.hpp"

namespace py = pybind11;
using namespace partialop;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using AtomList = std::vector<std::pair<double, Complex>>;

NormExponent exponent_from(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    const auto s = p.cast<std::string>();
    if (s == "inf") return NormExponent::Infinity;
    if (s == "1") return NormExponent::One;
    if (s == "2") return NormExponent::Two;
  } else {
    const double v = p.cast<double>();
    if (v == 1.0) return NormExponent::One;
    if (v == 2.0) return NormExponent::Two;
    if (std::isinf(v) && v > 0) return NormExponent::Infinity;
  }
  throw UnsupportedNorm("matrix norms support p = 1, 2 or inf");
}

DiracFunctional functional_from(const AtomList& atoms) {
  std::vector<DiracFunctional::Atom> out;
  out.reserve(atoms.size());
  for (const auto& [t, w] : atoms) out.push_back({t, w});
  return DiracFunctional(std::move(out));
}

GridFunction grid_from(const ComplexArray& a) {
  if (a.ndim() != 1) throw InvalidArgument("grid function must be a 1-D array");
  return GridFunction(std::vector<Complex>(a.data(), a.data() + a.size()));
}

ComplexArray to_array(std::span<const Complex> v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ComplexArray to_array(const GridFunction& f) { return to_array(f.samples()); }

py::object optional_seq(const std::optional<SeqVector>& s) {
  if (!s) return py::none();
  return to_array(s->values());
}

}  // namespace

PYBIND11_MODULE(_partialop, m) {
  m.doc() = "Partial operators: certified Neumann inverses, graph norms and resolvent scans";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ContractionViolation>(m, "ContractionViolation", base.ptr());
  py::register_exception<SingularOperator>(m, "SingularOperator", base.ptr());
  py::register_exception<SpectralPoint>(m, "SpectralPoint", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<GridMismatch>(m, "GridMismatch", base.ptr());

  // Neumann series.
  py::class_<NeumannBounds>(m, "NeumannBounds")
      .def_readonly("inverse_norm", &NeumannBounds::inverse_norm)
      .def_readonly("first_order", &NeumannBounds::first_order)
      .def_readonly("second_order", &NeumannBounds::second_order);
  py::class_<NeumannResult>(m, "NeumannResult")
      .def_property_readonly("inverse",
                             [](const NeumannResult& r) { return r.inverse_approx.entries(); })
      .def_readonly("bound_inverse_norm", &NeumannResult::bound_inverse_norm)
      .def_readonly("bound_first_order", &NeumannResult::bound_first_order)
      .def_readonly("bound_second_order", &NeumannResult::bound_second_order)
      .def_readonly("terms_used", &NeumannResult::terms_used)
      .def_readonly("truncation_tail_bound", &NeumannResult::truncation_tail_bound)
      .def_readonly("near_contraction", &NeumannResult::near_contraction);

  m.def(
      "operator_norm",
      [](const DenseMatrix& a, const py::object& p) {
        return operator_norm(MatrixOperator(a, exponent_from(p)));
      },
      py::arg("a"), py::arg("p") = 2);
  m.def("neumann_bounds", &neumann_bounds, py::arg("norm_a_inv"), py::arg("norm_x"));
  m.def(
      "invert_near_identity",
      [](const DenseMatrix& x, const py::object& p, double tol) {
        return invert_near_identity(MatrixOperator(x, exponent_from(p)), tol);
      },
      py::arg("x"), py::arg("p") = 2, py::arg("tol") = 1e-12,
      "Truncated sum of x^k approximating (I - x)^-1.");
  m.def(
      "invert_perturbed",
      [](const DenseMatrix& s, const DenseMatrix& t, const py::object& p, double tol) {
        const NormExponent e = exponent_from(p);
        return invert_perturbed(MatrixOperator(s, e), MatrixOperator(t, e), tol);
      },
      py::arg("s"), py::arg("t"), py::arg("p") = 2, py::arg("tol") = 1e-12,
      "(s - t)^-1 by the Neumann series in s^-1 t.");

  // Graph norm.
  m.def(
      "graph_norm",
      [](double u, double tu, double p) { return graph_norm(u, tu, p).value; },
      py::arg("u_norm"), py::arg("tu_norm"), py::arg("p") = 2.0);
  m.def("norm_sandwich_check", &norm_sandwich_check, py::arg("u_norm"), py::arg("tu_norm"),
        py::arg("p"));

  // Grid operators on C([0,1]).
  py::class_<ResolveRecord>(m, "ResolveRecord")
      .def_readonly("zeta", &ResolveRecord::zeta)
      .def_readonly("A", &ResolveRecord::A)
      .def_readonly("B", &ResolveRecord::B)
      .def_readonly("gamma", &ResolveRecord::gamma)
      .def_property_readonly("solution",
                             [](const ResolveRecord& r) { return to_array(r.solution); });
  py::class_<ClosedFormBounds>(m, "ClosedFormBounds")
      .def_readonly("lower", &ClosedFormBounds::lower)
      .def_readonly("upper", &ClosedFormBounds::upper);

  m.def(
      "h_zeta", [](Complex zeta, std::size_t n) { return to_array(h_zeta(zeta, n)); },
      py::arg("zeta"), py::arg("n") = kDefaultGridSize);
  m.def(
      "k_zeta", [](Complex zeta, const ComplexArray& f) { return to_array(k_zeta(zeta, grid_from(f))); },
      py::arg("zeta"), py::arg("f"));
  m.def("k_zeta_norm_exact", &k_zeta_norm_exact, py::arg("zeta"));
  m.def(
      "apply_functional",
      [](const AtomList& l, const ComplexArray& f) {
        return apply_functional(functional_from(l), grid_from(f));
      },
      py::arg("atoms"), py::arg("f"));
  m.def(
      "spectrum_member",
      [](const AtomList& l, Complex zeta, double tol) {
        return spectrum_member(functional_from(l), zeta, tol);
      },
      py::arg("atoms"), py::arg("zeta"), py::arg("tol") = kSpectralTol);
  m.def(
      "resolve_derivative",
      [](const AtomList& l, Complex zeta, const ComplexArray& f, double tol) {
        return resolve_derivative(functional_from(l), zeta, grid_from(f), tol);
      },
      py::arg("atoms"), py::arg("zeta"), py::arg("f"), py::arg("tol") = kSpectralTol);
  m.def(
      "residual_ode",
      [](Complex zeta, const ComplexArray& u, const ComplexArray& f) {
        return residual_ode(zeta, grid_from(u), grid_from(f));
      },
      py::arg("zeta"), py::arg("u"), py::arg("f"));
  m.def("closed_form_bounds", &closed_form_bounds, py::arg("example_id"), py::arg("zeta"));

  // Shift on l^p.
  py::class_<SpectralClassification>(m, "SpectralClassification")
      .def_property_readonly("status",
                             [](const SpectralClassification& c) { return to_string(c.status); })
      .def_property_readonly("witness",
                             [](const SpectralClassification& c) { return optional_seq(c.witness); })
      .def_readonly("note", &SpectralClassification::note);
  m.def(
      "resolvent_shift",
      [](Complex zeta, const ComplexArray& x, double p) {
        if (x.ndim() != 1) throw InvalidArgument("sequence must be a 1-D array");
        const SeqVector v(std::vector<Complex>(x.data(), x.data() + x.size()), p);
        return to_array(resolvent_shift(zeta, v).values());
      },
      py::arg("zeta"), py::arg("x"), py::arg("p") = 2.0);
  m.def("classify_shift", &classify_shift, py::arg("zeta"), py::arg("p") = 2.0,
        py::arg("witness_length") = kWitnessLength);
  m.def("classify_restricted", &classify_restricted, py::arg("zeta"), py::arg("p") = 2.0);

  // Spectrum scans.
  py::class_<ScanCell>(m, "ScanCell")
      .def_readonly("zeta", &ScanCell::zeta)
      .def_property_readonly("status", [](const ScanCell& c) { return to_string(c.status); })
      .def_readonly("abs_a", &ScanCell::abs_a)
      .def_readonly("norm_lower", &ScanCell::norm_lower)
      .def_readonly("bound_lower", &ScanCell::bound_lower)
      .def_readonly("bound_upper", &ScanCell::bound_upper);
  py::class_<SpectrumScan>(m, "SpectrumScan")
      .def_readonly("width", &SpectrumScan::width)
      .def_readonly("height", &SpectrumScan::height)
      .def_readonly("cells", &SpectrumScan::cells)
      .def("count",
           [](const SpectrumScan& s, const std::string& status) {
             for (auto st : {SpectralStatus::Resolved, SpectralStatus::Spectral,
                             SpectralStatus::Indeterminate})
               if (status == to_string(st)) return s.count(st);
             throw InvalidArgument("unknown status '" + status + "'");
           })
      .def("csv", &scan_to_csv)
      .def("heatmap", [](const SpectrumScan& s, const std::string& channel) {
        return py::bytes(render_heatmap(s, parse_channel(channel)));
      }, py::arg("channel") = "status");
  m.def(
      "run_scan",
      [](const std::string& op, const std::string& re, const std::string& im, std::size_t grid_n,
         double tol, double p, const std::string& csv, const std::string& pgm,
         const std::string& channel) {
        ScanConfig c;
        c.op = parse_operator_spec(op);
        c.re = parse_axis_range(re);
        c.im = parse_axis_range(im);
        c.grid_n = grid_n;
        c.tol = tol;
        c.seq_exponent = p;
        c.csv_path = csv;
        c.pgm_path = pgm;
        c.channel = parse_channel(channel);
        py::gil_scoped_release release;
        return run_scan(c);
      },
      py::arg("operator"), py::arg("re"), py::arg("im"), py::arg("grid_n") = kDefaultGridSize,
      py::arg("tol") = kSpectralTol, py::arg("p") = 2.0, py::arg("csv") = "",
      py::arg("pgm") = "", py::arg("channel") = "status");

  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, double tol_scale) {
        const SuiteReport r = run_suite(name, SuiteOptions{seed, tol_scale});
        return std::make_tuple(r.all_passed(), r.text());
      },
      py::arg("name") = "all", py::arg("seed") = SuiteOptions{}.seed,
      py::arg("tol_scale") = 1.0, "Returns (all_passed, report_text).");
}
