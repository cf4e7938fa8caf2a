#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conerate/channels.hpp"
#include "conerate/classical.hpp"
#include "conerate/commands.hpp"
#include "conerate/dynamics.hpp"
#include "conerate/errors.hpp"
#include "conerate/kraus.hpp"
#include "conerate/subspace.hpp"

namespace py = pybind11;
using namespace conerate;

namespace {

py::dict witness_dict(const RankOneWitness& w) {
  py::dict d;
  d["u"] = w.u;
  d["v"] = w.v;
  d["residual"] = w.residual;
  return d;
}

py::object optional_witness(const std::optional<RankOneWitness>& w) {
  return w ? py::object(witness_dict(*w)) : py::object(py::none());
}

py::dict contraction(const std::vector<CMatrix>& ops, int restarts, std::uint64_t seed, double tol, int power) {
  ContractionOptions o;
  o.restarts = restarts;
  o.seed = seed;
  o.tol = tol;
  const ContractionEstimate e = contraction_norm_power(KrausMap(ops), power, o);
  py::dict d;
  d["lower_bound"] = e.lower_bound;
  d["witness_u"] = e.witness_u;
  d["witness_v"] = e.witness_v;
  d["best_restart"] = e.best_restart;
  d["converged"] = e.converged;
  d["upper_bound"] = e.upper_bound ? py::object(py::float_(*e.upper_bound)) : py::object(py::none());
  d["upper_bound_certified"] = e.upper_bound_certified;
  return d;
}

RankOneSearchOptions search_options(int restarts, std::uint64_t seed, double tol) {
  RankOneSearchOptions o;
  o.restarts = restarts;
  o.seed = seed;
  o.tol = tol;
  return o;
}

std::string run_command(const std::string& command, const std::string& path, std::uint64_t seed, double tol,
                        int restarts, int steps, bool exhaustive) {
  CommandOptions o;
  o.seed = seed;
  o.tol = tol;
  o.restarts = restarts;
  o.steps = steps;
  o.exhaustive = exhaustive;
  CommandResult r;
  if (command == "analyze-stochastic")
    r = cmd_analyze_stochastic(path, o);
  else if (command == "analyze-kraus")
    r = cmd_analyze_kraus(path, o);
  else if (command == "certify")
    r = cmd_certify(path, o);
  else if (command == "simulate")
    r = cmd_simulate(path, o);
  else
    throw ValidationError("unknown command '" + command + "'");
  return dump_report(r.report);
}

}  // namespace

PYBIND11_MODULE(_conerate, m) {
  m.doc() = "Contraction coefficients of Markov operators on cones";

  auto base = py::register_exception<Error>(m, "ConerateError");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NotInterior>(m, "NotInterior", base.ptr());
  py::register_exception<NotTraceless>(m, "NotTraceless", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
  py::register_exception<UnitMismatch>(m, "UnitMismatch", base.ptr());
  py::register_exception<ZeroEntry>(m, "ZeroEntry", base.ptr());
  py::register_exception<NoContraction>(m, "NoContraction", base.ptr());

  m.def("delta_doeblin", [](const Matrix& a) { return delta_doeblin(StochasticMatrix(a)); }, py::arg("a"));
  m.def("delta_dobrushin", [](const Matrix& a) { return delta_dobrushin(StochasticMatrix(a)); }, py::arg("a"));
  m.def("consensus_contraction_bruteforce",
        [](const Matrix& a) { return consensus_contraction_bruteforce(StochasticMatrix(a)); }, py::arg("a"));
  m.def("scaled_contraction",
        [](const Matrix& a, const Vector& x, const Vector& y) {
          return scaled_contraction(a, ConeVector(x), ConeVector(y));
        },
        py::arg("a"), py::arg("x"), py::arg("y"));
  m.def("projective_diameter", [](const Matrix& a) { return projective_diameter(PositiveMatrix(a)); }, py::arg("a"));
  m.def("birkhoff_bound", [](const Matrix& a) { return birkhoff_bound(PositiveMatrix(a)); }, py::arg("a"));
  m.def(
      "doeblin_state",
      [](const Matrix& a) -> py::object {
        const auto d = doeblin_state(StochasticMatrix(a));
        if (!d) return py::none();
        return py::make_tuple(d->column, d->epsilon);
      },
      py::arg("a"), "(column, epsilon) with every entry of that column >= epsilon, or None.");

  m.def("apply_phi", [](const std::vector<CMatrix>& ops, const CMatrix& x) { return KrausMap(ops).phi(x); },
        py::arg("kraus"), py::arg("x"));
  m.def("apply_psi", [](const std::vector<CMatrix>& ops, const CMatrix& x) { return KrausMap(ops).psi(x); },
        py::arg("kraus"), py::arg("x"));
  m.def("pair_objective",
        [](const std::vector<CMatrix>& ops, const CVector& u, const CVector& v) {
          return pair_objective(KrausMap(ops), u, v);
        },
        py::arg("kraus"), py::arg("u"), py::arg("v"));
  m.def("contraction_norm", &contraction, py::arg("kraus"), py::arg("restarts") = 32, py::arg("seed") = 0,
        py::arg("tol") = 1e-10, py::arg("power") = 1);
  m.def(
      "zero_error_check",
      [](const std::vector<CMatrix>& ops, int restarts, std::uint64_t seed, double tol) {
        const ZeroErrorVerdict z = zero_error_check(KrausMap(ops), search_options(restarts, seed, tol));
        py::dict d;
        d["positive"] = z.positive();
        d["witness"] = optional_witness(z.witness);
        d["min_value"] = z.min_value;
        return d;
      },
      py::arg("kraus"), py::arg("restarts") = 32, py::arg("seed") = 0, py::arg("tol") = 1e-10);
  m.def(
      "certify",
      [](const std::vector<CMatrix>& ops, int restarts, std::uint64_t seed, double tol, bool exhaustive) {
        CertifyOptions o;
        o.search = search_options(restarts, seed, tol);
        o.exhaustive = exhaustive;
        const CertificationVerdict v = certify_convergence(KrausMap(ops), o);
        py::dict d;
        d["status"] = to_string(v.status);
        d["k0"] = v.k0;
        d["dims"] = v.dims;
        d["witness"] = optional_witness(v.witness);
        d["min_objective"] = v.min_objective ? py::object(py::float_(*v.min_objective)) : py::object(py::none());
        return d;
      },
      py::arg("kraus"), py::arg("restarts") = 32, py::arg("seed") = 0, py::arg("tol") = 1e-10,
      py::arg("exhaustive") = false);
  m.def("hk_dimensions",
        [](const std::vector<CMatrix>& ops, int steps) { return hk_dimensions(KrausMap(ops), steps); },
        py::arg("kraus"), py::arg("steps"));

  m.def(
      "consensus_oscillations",
      [](const Matrix& a, const Vector& x0, int steps) {
        return simulate_consensus(StochasticMatrix(a), x0, steps).oscillations;
      },
      py::arg("a"), py::arg("x0"), py::arg("steps"));
  m.def(
      "estimate_invariant",
      [](const Matrix& a, double c, double tol) { return estimate_invariant(StochasticMatrix(a), c, tol).pi; },
      py::arg("a"), py::arg("c"), py::arg("tol") = 1e-14);

  m.def("depolarizing", [](double p) { return channels::depolarizing(p).ops(); }, py::arg("p"));
  m.def("random_channel",
        [](Index n, std::size_t count, std::uint64_t seed) { return channels::random_channel(n, count, seed).ops(); },
        py::arg("n"), py::arg("m"), py::arg("seed"));

  m.def("run_command", &run_command, py::arg("command"), py::arg("path"), py::arg("seed") = 0, py::arg("tol") = 1e-10,
        py::arg("restarts") = 32, py::arg("steps") = 50, py::arg("exhaustive") = false,
        "Runs a CLI command in-process and returns the JSON report text.");
}
