#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fup/baker.hpp"
#include "fup/diophantine.hpp"
#include "fup/error.hpp"
#include "fup/serialize.hpp"
#include "fup/sweep.hpp"
#include "fup/testfn.hpp"

namespace py = pybind11;
using fup::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      throw std::runtime_error("unsupported JSON value");
  }
}

fup::PowerIterationOptions power(double tol, std::uint64_t seed) {
  fup::PowerIterationOptions p;
  p.tol = tol;
  p.seed = seed;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical fractal uncertainty bounds for discrete Cantor sets";
  m.attr("__version__") = FUP_VERSION;

  py::register_exception<fup::ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<fup::CapacityError>(m, "CapacityError", PyExc_OverflowError);

  m.def(
      "dft",
      [](const std::vector<fup::cplx>& u, bool adjoint) {
        return fup::dft_apply(u, adjoint ? fup::Direction::kAdjoint : fup::Direction::kForward);
      },
      py::arg("values"), py::arg("adjoint") = false, "Unitary DFT (or its adjoint) of a complex vector.");

  m.def("interval_alphabet", [](std::int64_t M, double delta) { return fup::build_alphabet_interval(M, delta).letters(); },
        py::arg("M"), py::arg("delta"));
  m.def("initial_alphabet", [](std::int64_t M, std::int64_t mdelta) { return fup::build_alphabet_initial(M, mdelta).letters(); },
        py::arg("M"), py::arg("Mdelta"));

  m.def(
      "cantor_set",
      [](std::int64_t M, std::vector<std::int64_t> letters, int k) {
        return fup::cantor_elements(fup::Alphabet(M, std::move(letters)), k).elements;
      },
      py::arg("M"), py::arg("letters"), py::arg("k"));
  m.def(
      "dilated_cantor_set",
      [](std::int64_t M, std::vector<std::int64_t> letters, int k, const std::string& alpha) {
        const auto c = fup::cantor_elements(fup::Alphabet(M, std::move(letters)), k);
        const auto d = fup::dilate(c, fup::ExactRational::parse(alpha));
        return py::make_tuple(d.modulus, d.elements);
      },
      py::arg("M"), py::arg("letters"), py::arg("k"), py::arg("alpha"),
      "Returns (N, elements) for C_k(N) with N = alpha M^k.");

  m.def(
      "masked_norm",
      [](const std::vector<std::int64_t>& rows, const std::vector<std::int64_t>& cols, std::int64_t N, double tol,
         std::uint64_t seed) {
        py::gil_scoped_release release;
        const auto cert = fup::masked_norm(rows, cols, N, power(tol, seed));
        py::gil_scoped_acquire acquire;
        return to_py(json(cert));
      },
      py::arg("rows"), py::arg("cols"), py::arg("N"), py::arg("tol") = 1e-10, py::arg("seed") = 0);
  m.def(
      "masked_norm_dense",
      [](const std::vector<std::int64_t>& rows, const std::vector<std::int64_t>& cols, std::int64_t N) {
        return to_py(json(fup::masked_norm_dense(rows, cols, N)));
      },
      py::arg("rows"), py::arg("cols"), py::arg("N"));

  m.def(
      "beta",
      [](std::int64_t M, std::vector<std::int64_t> letters, int k, double tol, std::uint64_t seed) {
        const auto c = fup::cantor_elements(fup::Alphabet(M, std::move(letters)), k);
        const auto cert = fup::masked_norm(c.elements, c.elements, c.modulus, power(tol, seed));
        return to_py(json{{"report", fup::beta_k(cert, c)}, {"certificate", cert}});
      },
      py::arg("M"), py::arg("letters"), py::arg("k"), py::arg("tol") = 1e-10, py::arg("seed") = 0);

  m.def(
      "theorem1",
      [](std::int64_t M, double delta, int k, std::int64_t grid) {
        fup::Theorem1Options opts;
        opts.grid_points = grid;
        return to_py(json(fup::theorem1_certificate(M, delta, k, opts)));
      },
      py::arg("M"), py::arg("delta"), py::arg("k"), py::arg("grid") = 100000);

  m.def(
      "theorem2",
      [](std::int64_t M, std::int64_t mdelta, int k, const std::string& alpha, double eps) {
        return to_py(json(fup::theorem2_report(M, mdelta, k, fup::ExactRational::parse(alpha), eps)));
      },
      py::arg("M"), py::arg("Mdelta"), py::arg("k"), py::arg("alpha") = "1", py::arg("eps") = 0.0);

  m.def(
      "best_rational",
      [](const std::string& alpha, std::int64_t M, std::int64_t mdelta) {
        return to_py(json(fup::best_rational(fup::ExactRational::parse(alpha), M, mdelta)));
      },
      py::arg("alpha"), py::arg("M"), py::arg("Mdelta"));

  m.def(
      "baker",
      [](std::int64_t N, std::int64_t M, std::vector<std::int64_t> letters, const std::string& cutoff,
         std::int64_t nmax) {
        if (M < 2 || N % M != 0) throw fup::ParameterError("baker needs M >= 2 dividing N");
        fup::CutoffProfile chi;
        if (cutoff == "bump")
          chi = fup::make_smooth_cutoff(N / M);
        else if (cutoff == "sharp")
          chi = fup::make_sharp_cutoff(N / M);
        else
          throw fup::ParameterError("cutoff must be bump or sharp");
        const auto map = fup::build_baker(N, fup::Alphabet(M, std::move(letters)), chi);
        fup::GelfandOptions opts;
        opts.n_max = nmax;
        return to_py(json(fup::gelfand_bound(map, opts)));
      },
      py::arg("N"), py::arg("M"), py::arg("letters"), py::arg("cutoff") = "bump", py::arg("nmax") = 64);

  m.def(
      "run_sweep_json",
      [](const std::string& config, const std::string& out_dir) {
        fup::SweepSpec spec = fup::sweep_spec_from_json(json::parse(config));
        if (!out_dir.empty()) spec.out_dir = out_dir;
        fup::RunRecord rec;
        {
          py::gil_scoped_release release;
          rec = fup::run_sweep(spec);
          if (!out_dir.empty()) fup::write_run(spec, rec);
        }
        json points = json::array();
        for (const auto& pt : rec.points) points.push_back(fup::point_to_json(pt));
        return to_py(json{{"spec_hash", rec.spec_hash},
                          {"version", rec.version},
                          {"command", fup::to_string(rec.command)},
                          {"invariant_failures", rec.invariant_failures()},
                          {"points", points}});
      },
      py::arg("config"), py::arg("out_dir") = "");
}
