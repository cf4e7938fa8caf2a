#include "conerate/commands.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "conerate/classical.hpp"
#include "conerate/dynamics.hpp"
#include "conerate/errors.hpp"
#include "conerate/io.hpp"
#include "conerate/kraus.hpp"
#include "conerate/subspace.hpp"

namespace conerate {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Loaded {
  std::string path;
  std::string bytes;
  MatrixFile file;
};

Loaded load(const std::string& path) {
  Loaded l{path, read_text_file(path), {}};
  l.file = parse_matrix_text(l.bytes, path);
  return l;
}

void expect_kind(const Loaded& l, MatrixKind kind) {
  if (l.file.kind != kind)
    throw ValidationError(l.path + ": kind: expected " + to_string(kind) + ", found " + to_string(l.file.kind));
}

// Domain validation errors get the file name prepended.
template <class F>
auto validated(const std::string& path, F make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json input_entry(const Loaded& l) { return {{"path", l.path}, {"fnv1a64", hex64(fnv1a64(l.bytes))}}; }

json skeleton(const char* command, const Loaded& l, const CommandOptions& o) {
  json r;
  r["command"] = command;
  r["inputs"] = json::array({input_entry(l)});
  r["seed"] = o.seed;
  r["restarts"] = o.restarts;
  r["tolerances"] = {{"tol", o.tol}};
  return r;
}

void finish(json& report, Clock::time_point start) {
  report["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json witness_json(const RankOneWitness& w) {
  return {{"u", vector_to_json(w.u)}, {"v", vector_to_json(w.v)}, {"residual", w.residual}};
}

json complex_matrix_json(const CMatrix& m) { return to_json(make_hermitian_file(m))["data"]; }

ContractionOptions contraction_options(const CommandOptions& o) {
  ContractionOptions c;
  c.restarts = o.restarts;
  c.tol = o.tol;
  c.seed = o.seed;
  return c;
}

RankOneSearchOptions search_options(const CommandOptions& o) {
  RankOneSearchOptions s;
  s.restarts = o.restarts;
  s.tol = o.tol;
  s.seed = o.seed;
  return s;
}

void require_positive_restarts(const CommandOptions& o) {
  if (o.restarts < 1) throw ValidationError("--restarts must be >= 1");
  if (!(o.tol > 0.0)) throw ValidationError("--tol must be positive");
}

json contraction_json(const ContractionEstimate& e) {
  return {{"lower_bound", e.lower_bound},
          {"witness_u", vector_to_json(e.witness_u)},
          {"witness_v", vector_to_json(e.witness_v)},
          {"restarts_used", e.restarts_used},
          {"best_restart", e.best_restart},
          {"iterations", e.iterations},
          {"converged", e.converged},
          {"upper_bound", optional_number(e.upper_bound)},
          {"diameter_estimate", optional_number(e.diameter_estimate)},
          {"upper_bound_certified", e.upper_bound_certified}};
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trajectory_csv(const std::vector<double>& osc, const std::vector<double>& dual) {
  std::ostringstream os;
  os << "step,oscillation,dual_distance\n";
  for (std::size_t k = 0; k < osc.size(); ++k) {
    os << k << ',' << format_number(osc[k]) << ',';
    if (k < dual.size()) os << format_number(dual[k]);
    os << '\n';
  }
  return os.str();
}

json bounds_json(const GeometricBoundReport& g) {
  return {{"steps", g.steps},
          {"contraction", g.contraction},
          {"max_primal_violation", g.max_primal_violation},
          {"max_dual_violation", g.max_dual_violation},
          {"holds", g.max_violation() <= 1e-8}};
}

}  // namespace

CommandResult cmd_analyze_stochastic(const std::string& path, const CommandOptions& options) {
  const auto start = Clock::now();
  const Loaded in = load(path);
  expect_kind(in, MatrixKind::Stochastic);
  const StochasticMatrix a = validated(path, [&] { return StochasticMatrix(in.file.real); });

  json res;
  res["n"] = a.size();
  const double doeblin = delta_doeblin(a);
  const double dobrushin = delta_dobrushin(a);
  res["delta_doeblin"] = doeblin;
  res["delta_dobrushin"] = dobrushin;
  res["formula_difference"] = std::abs(doeblin - dobrushin);
  if (a.size() <= kBruteForceLimit) {
    res["consensus_bruteforce"] = consensus_contraction_bruteforce(a);
  } else {
    res["consensus_bruteforce"] = nullptr;
    res["consensus_bruteforce_skipped"] = "n exceeds " + std::to_string(kBruteForceLimit);
  }

  const bool positive = (a.matrix().array() > 1e-300).all();
  res["strictly_positive"] = positive;
  if (positive) {
    const PositiveMatrix p(a.matrix());
    res["projective_diameter"] = projective_diameter(p);
    res["birkhoff_bound"] = birkhoff_bound(p);
  } else {
    res["projective_diameter"] = nullptr;
    res["birkhoff_bound"] = nullptr;
  }

  if (const auto d = doeblin_state(a))
    res["doeblin_state"] = {{"column", d->column}, {"epsilon", d->epsilon}, {"bound", d->bound()}};
  else
    res["doeblin_state"] = nullptr;

  CommandResult out;
  out.report = skeleton("analyze-stochastic", in, options);
  out.report["results"] = std::move(res);
  finish(out.report, start);
  return out;
}

CommandResult cmd_analyze_kraus(const std::string& path, const CommandOptions& options) {
  const auto start = Clock::now();
  require_positive_restarts(options);
  const Loaded in = load(path);
  expect_kind(in, MatrixKind::Kraus);
  const KrausMap k = validated(path, [&] { return KrausMap(in.file.kraus); });

  json res;
  res["n"] = k.dim();
  res["m"] = k.count();
  res["completeness_residual"] = k.completeness_residual();
  res["contraction"] = contraction_json(contraction_norm(k, contraction_options(options)));

  const ZeroErrorVerdict z = zero_error_check(k, search_options(options));
  res["zero_error"] = {{"status", z.positive() ? "POSITIVE" : "NOT_FOUND"},
                       {"witness", z.witness ? witness_json(*z.witness) : json(nullptr)},
                       {"min_value", z.min_value}};

  CommandResult out;
  out.report = skeleton("analyze-kraus", in, options);
  out.report["results"] = std::move(res);
  finish(out.report, start);
  return out;
}

CommandResult cmd_certify(const std::string& path, const CommandOptions& options) {
  const auto start = Clock::now();
  require_positive_restarts(options);
  const Loaded in = load(path);
  expect_kind(in, MatrixKind::Kraus);
  const KrausMap k = validated(path, [&] { return KrausMap(in.file.kraus); });

  CertifyOptions co;
  co.search = search_options(options);
  co.exhaustive = options.exhaustive;
  const CertificationVerdict v = certify_convergence(k, co);

  json res;
  res["n"] = k.dim();
  res["status"] = to_string(v.status);
  res["certified"] = v.status != CertificationStatus::Inconclusive;
  res["k0"] = v.k0;
  res["dims"] = v.dims;
  res["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
  res["min_objective"] = optional_number(v.min_objective);
  res["exhaustive"] = v.exhaustive;

  CommandResult out;
  out.report = skeleton("certify", in, options);
  out.report["require_decision"] = options.require_decision;
  out.report["results"] = std::move(res);
  if (options.require_decision && v.status == CertificationStatus::Inconclusive) out.exit_code = kExitInconclusive;
  finish(out.report, start);
  return out;
}

CommandResult cmd_simulate(const std::string& path, const CommandOptions& options) {
  const auto start = Clock::now();
  if (options.steps < 0) throw ValidationError("--steps must be >= 0");
  require_positive_restarts(options);
  const Loaded in = load(path);
  if (in.file.kind != MatrixKind::Stochastic && in.file.kind != MatrixKind::Kraus)
    throw ValidationError(path + ": kind: expected stochastic or kraus, found " + to_string(in.file.kind));

  std::optional<Loaded> x0_in;
  if (options.x0_path) x0_in = load(*options.x0_path);

  CommandResult out;
  out.report = skeleton("simulate", in, options);
  if (x0_in) out.report["inputs"].push_back(input_entry(*x0_in));

  json res;
  res["n"] = in.file.n;
  res["operator"] = to_string(in.file.kind);
  res["steps"] = options.steps;
  res["x0"] = x0_in ? "file" : "barycenter (default: no --x0 given)";

  std::vector<double> osc, dual;
  if (in.file.kind == MatrixKind::Stochastic) {
    const StochasticMatrix a = validated(path, [&] { return StochasticMatrix(in.file.real); });
    const Index n = a.size();
    Vector x0 = Vector::Constant(n, 1.0 / double(n));
    if (x0_in) {
      expect_kind(*x0_in, MatrixKind::Vector);
      if (x0_in->file.n != n) throw ValidationError(x0_in->path + ": n: does not match the operator dimension");
      x0 = x0_in->file.vector;
    }
    const double c = delta_doeblin(a);
    res["contraction"] = {{"value", c}, {"source", "delta_doeblin"}, {"certified", true}};
    osc = simulate_consensus(a, x0, options.steps).oscillations;
    if (c < 1.0) {
      const auto inv = estimate_invariant(a, c);
      const DualVector mu0 = DualVector::vertex(n, 0);
      dual = simulate_markov(a, mu0, options.steps, inv.pi).dual_distances;
      res["invariant"] = {{"pi", vector_to_json(inv.pi)},
                          {"residual", inv.residual},
                          {"error_bound", inv.error_bound},
                          {"iterations", inv.steps},
                          {"converged", inv.converged}};
      res["geometric_bounds"] = bounds_json(verify_geometric_bounds(a, c, x0, mu0, options.steps));
    }
  } else {
    const KrausMap k = validated(path, [&] { return KrausMap(in.file.kraus); });
    const Index n = k.dim();
    HermitianMatrix x0 = (1.0 / double(n)) * HermitianMatrix::identity(n);
    if (x0_in) {
      expect_kind(*x0_in, MatrixKind::Hermitian);
      if (x0_in->file.n != n) throw ValidationError(x0_in->path + ": n: does not match the operator dimension");
      x0 = validated(x0_in->path, [&] { return HermitianMatrix(x0_in->file.complex); });
    }
    const ContractionEstimate est = contraction_norm(k, contraction_options(options));
    const double c = est.lower_bound;
    res["contraction"] = {{"value", c}, {"source", "contraction_norm lower bound"}, {"certified", false}};
    osc = simulate_consensus(k, x0, options.steps).oscillations;
    if (c < 1.0 - options.tol) {
      const auto inv = estimate_invariant(k, c);
      CVector e0 = CVector::Zero(n);
      e0(0) = 1.0;
      const DensityMatrix rho0 = DensityMatrix::pure(e0);
      dual = simulate_markov(k, rho0, options.steps, inv.pi).dual_distances;
      res["invariant"] = {{"pi", complex_matrix_json(inv.pi.matrix())},
                          {"residual", inv.residual},
                          {"error_bound", inv.error_bound},
                          {"iterations", inv.steps},
                          {"converged", inv.converged}};
      res["geometric_bounds"] = bounds_json(verify_geometric_bounds(k, c, x0, rho0, options.steps));
    }
  }
  if (!res.contains("invariant")) {
    res["invariant"] = nullptr;
    res["geometric_bounds"] = nullptr;
  }
  res["oscillation"] = osc;
  res["dual_distance"] = dual.empty() ? json(nullptr) : json(dual);

  out.csv = trajectory_csv(osc, dual);
  out.report["results"] = std::move(res);
  finish(out.report, start);
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace conerate
