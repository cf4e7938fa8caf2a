// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conerate/channels.hpp"
#include "conerate/classical.hpp"
#include "conerate/commands.hpp"
#include "conerate/dynamics.hpp"
#include "conerate/io.hpp"
#include "conerate/kraus.hpp"
#include "conerate/subspace.hpp"
#include "oracles.hpp"
#include "scratch.hpp"

using namespace conerate;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Matrix two_by_two() {
  Matrix a(2, 2);
  a << 0.7, 0.3, 0.4, 0.6;
  return a;
}

Outcome formula_equivalence() {
  Outcome o;
  Rng rng(1001);
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const Index n = 2 + Index(i % 19);
    const StochasticMatrix a(oracle::random_stochastic(rng, n, (i % 3) * 0.3));
    worst = std::max(worst, std::abs(delta_doeblin(a) - delta_dobrushin(a)));
  }
  const double t = seconds_since(t0);
  o.require(worst <= 1e-12, "max difference " + fmt("%.3g", worst));
  o.require(t < 5.0, "runtime " + fmt("%.2f s", t));
  o.detail = o.pass ? "max |doeblin - dobrushin| = " + fmt("%.3g", worst) + ", " + fmt("%.3f s", t) : o.detail;
  return o;
}

Outcome duality() {
  Outcome o;
  Rng rng(1002);
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    const Index n = 2 + Index(i % 11);
    const StochasticMatrix a(oracle::random_stochastic(rng, n, (i % 4) * 0.2));
    worst = std::max(worst, std::abs(consensus_contraction_bruteforce(a) - delta_doeblin(a)));
  }
  const double t = seconds_since(t0);
  o.require(worst <= 1e-12, "max difference " + fmt("%.3g", worst));
  o.require(t < 60.0, "runtime " + fmt("%.2f s", t));
  o.detail = o.pass ? "max |bruteforce - delta| = " + fmt("%.3g", worst) + ", " + fmt("%.3f s", t) : o.detail;
  return o;
}

Outcome birkhoff_domination() {
  Outcome o;
  Rng rng(1003);
  double slack = 1.0;
  for (int i = 0; i < 500; ++i) {
    const Index n = 2 + Index(i % 12);
    const Matrix m = oracle::random_positive_stochastic(rng, n);
    const double d = delta_doeblin(StochasticMatrix(m));
    const double b = birkhoff_bound(PositiveMatrix(m));
    slack = std::min(slack, b - d);
    o.require(d <= b + 1e-12, "delta exceeds the Birkhoff bound at sample " + std::to_string(i));
  }
  if (o.pass) o.detail = "min (bound - delta) = " + fmt("%.3g", slack);
  return o;
}

std::vector<std::pair<std::string, KrausMap>> analytic_channels() {
  std::vector<std::pair<std::string, KrausMap>> out;
  for (double p : {0.1, 0.3, 0.5, 0.9}) out.emplace_back("depolarizing " + fmt("%.1f", p), channels::depolarizing(p));
  for (Index n = 2; n <= 4; ++n)
    out.emplace_back("unitary n=" + std::to_string(n), channels::unitary(channels::random_unitary(n, 100 + n)));
  for (Index n = 2; n <= 3; ++n)
    out.emplace_back("completely depolarizing n=" + std::to_string(n), channels::completely_depolarizing(n));
  return out;
}

double expected_norm(const std::string& name) {
  if (name.rfind("depolarizing ", 0) == 0) return 1.0 - std::stod(name.substr(13));
  if (name.rfind("unitary", 0) == 0) return 1.0;
  return 0.0;
}

Outcome analytic_coefficients(std::vector<double>& lower_bounds) {
  Outcome o;
  ContractionOptions opts;
  opts.restarts = 32;
  opts.seed = 0;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& [name, k] : analytic_channels()) {
    const double lb = contraction_norm(k, opts).lower_bound;
    lower_bounds.push_back(lb);
    const double want = expected_norm(name);
    const double err = std::abs(lb - want);
    worst = std::max(worst, err);
    const double tol = name.rfind("depolarizing ", 0) == 0 ? 1e-6 : 1e-9;
    o.require(err <= tol, name + ": lower_bound " + fmt("%.17g", lb));
  }
  const double t = seconds_since(t0);
  o.require(t < 30.0, "runtime " + fmt("%.2f s", t));
  if (o.pass) o.detail = "max deviation " + fmt("%.3g", worst) + ", " + fmt("%.3f s", t);
  return o;
}

Outcome dual_consistency(const std::vector<double>& lower_bounds) {
  Outcome o;
  Rng rng(1005);
  double worst = -1.0;
  const auto channels_list = analytic_channels();
  for (std::size_t c = 0; c < channels_list.size(); ++c) {
    const KrausMap& k = channels_list[c].second;
    const double lb = lower_bounds.at(c);
    for (int i = 0; i < 10000; ++i) {
      const CMatrix d = oracle::random_density(rng, k.dim()) - oracle::random_density(rng, k.dim());
      const double in = oracle::trace_norm(d);
      const double out = oracle::trace_norm(oracle::psi_loops(k.ops(), d));
      worst = std::max(worst, out / in - lb);
      o.require(out <= (lb + 1e-6) * in, channels_list[c].first + ": ratio above the lower bound");
    }
  }
  if (o.pass) o.detail = "max (ratio - lower_bound) = " + fmt("%.3g", worst);
  return o;
}

bool nested(const HkChain& chain) {
  for (std::size_t i = 0; i + 1 < chain.subspaces.size(); ++i) {
    if (chain.dims[i] > chain.dims[i + 1]) return false;
    for (const CMatrix& b : chain.subspaces[i].basis())
      if (chain.subspaces[i + 1].distance(b) > 1e-8) return false;
  }
  return true;
}

Outcome subspace_certificate() {
  Outcome o;
  std::vector<KrausMap> tested;
  for (Index n = 2; n <= 4; ++n) {
    const KrausMap u = channels::unitary(channels::random_unitary(n, 200 + n));
    const CertificationVerdict v = certify_convergence(u);
    o.require(v.status == CertificationStatus::NotConvergent && v.witness && v.witness->residual <= 1e-10,
              "unitary n=" + std::to_string(n) + " not certified NOT_CONVERGENT");
    tested.push_back(u);
  }
  std::vector<KrausMap> dep;
  for (double p : {0.1, 0.3, 0.5, 0.9}) dep.push_back(channels::depolarizing(p));
  dep.push_back(channels::completely_depolarizing(3));
  for (const KrausMap& k : dep) {
    const CertificationVerdict v = certify_convergence(k);
    o.require(v.status == CertificationStatus::Convergent && v.dims.back() == k.dim() * k.dim(),
              "depolarizing channel not CONVERGENT with full dims");
    tested.push_back(k);
  }

  int agree = 0, found = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index n = 2 + Index(s % 3);
    const std::size_t m = 1 + (s / 3) % 4;
    const KrausMap k = channels::random_channel(n, m, 6000 + s);
    tested.push_back(k);
    std::vector<CMatrix> gens;
    for (const CMatrix& vi : k.ops())
      for (const CMatrix& vj : k.ops()) gens.push_back(vi.adjoint() * vj);
    const bool z = zero_error_check(k).positive();
    const bool r = rank_one_search(orthogonal_complement(MatrixSubspace::span(n, gens))).found();
    agree += z == r;
    found += z;
    o.require(z == r, "zero_error_check and rank_one_search disagree on channel " + std::to_string(s));
  }
  for (const KrausMap& k : tested) {
    const HkChain chain = hk_iterate(k);
    o.require(chain.k0 <= k.dim() * k.dim() - 1, "k0 exceeds n^2 - 1");
    o.require(nested(chain), "H_k chain is not nested");
  }
  if (o.pass)
    o.detail = std::to_string(agree) + "/50 agree (" + std::to_string(found) + " FOUND), " +
               std::to_string(tested.size()) + " chains nested";
  return o;
}

Outcome geometric_convergence() {
  Outcome o;
  Rng rng(1007);
  const KrausMap d = channels::depolarizing(0.3);
  const HermitianMatrix x0(oracle::random_hermitian(rng, 2));
  const DensityMatrix rho0 = DensityMatrix::pure(rng.unit_vector(2));
  const double vq = verify_geometric_bounds(d, 0.7, x0, rho0, 100).max_violation();

  const StochasticMatrix a(two_by_two());
  const double va =
      verify_geometric_bounds(a, delta_doeblin(a), Vector{{2.0, -1.0}}, DualVector::vertex(2, 0), 100).max_violation();
  const auto inv = estimate_invariant(a, delta_doeblin(a));
  const double pi_err = std::max(std::abs(inv.pi(0) - 4.0 / 7.0), std::abs(inv.pi(1) - 3.0 / 7.0));

  o.require(vq <= 1e-8, "depolarizing violation " + fmt("%.3g", vq));
  o.require(va <= 1e-8, "2x2 violation " + fmt("%.3g", va));
  o.require(pi_err <= 1e-10, "invariant measure error " + fmt("%.3g", pi_err));
  if (o.pass)
    o.detail = "violations " + fmt("%.3g", vq) + " / " + fmt("%.3g", va) + ", |pi - (4/7, 3/7)| = " + fmt("%.3g", pi_err);
  return o;
}

Outcome negative_control() {
  Outcome o;
  const KrausMap k = channels::block_sum(channels::depolarizing(0.4), channels::random_channel(2, 2, 808));
  const CertificationVerdict v = certify_convergence(k);
  o.require(v.status == CertificationStatus::NotConvergent && v.witness && v.witness->residual <= 1e-10,
            "two-block channel not certified NOT_CONVERGENT");
  // The projector onto the first block is invariant.
  const HermitianMatrix x0 = HermitianMatrix::diagonal(Vector{{1.0, 1.0, 0.0, 0.0}});
  const MatrixTrajectory t = simulate_consensus(k, x0, 200);
  double least = 1.0;
  for (double w : t.oscillations) least = std::min(least, w);
  o.require(least >= 0.5, "oscillation fell to " + fmt("%.3g", least));
  if (o.pass) o.detail = "min oscillation over 200 steps = " + fmt("%.17g", least);
  return o;
}

Outcome determinism() {
  Outcome o;
  const scratch::Dir dir("acceptance");
  const std::string stoch = dir.write("a.json", to_json(make_stochastic_file(two_by_two())).dump());
  const std::string kraus = dir.write("k.json", to_json(make_kraus_file(channels::random_channel(3, 2, 909).ops())).dump());
  const std::string cli = scratch::quote(CONERATE_CLI_PATH);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"analyze-stochastic", stoch}, {"analyze-kraus", kraus}, {"certify", kraus}, {"simulate", kraus}, {"simulate", stoch}};
  int identical = 0;
  for (const auto& [cmd, path] : runs) {
    std::string results[2];
    for (int r = 0; r < 2; ++r) {
      const std::string out = dir.file("run" + std::to_string(r) + ".json");
      const int code = scratch::run(cli + " --seed 7 --restarts 8 " + cmd + " " + scratch::quote(path) +
                                    " --json-out " + scratch::quote(out) + " > /dev/null 2>&1");
      o.require(code == 0, cmd + " exited with " + std::to_string(code));
      if (code != 0) return o;
      results[r] = json::parse(read_text_file(out))["results"].dump(2);
    }
    o.require(results[0] == results[1], cmd + " results differ between runs");
    identical += results[0] == results[1];
  }
  if (o.pass) o.detail = std::to_string(identical) + " commands byte-identical across runs";
  return o;
}

}  // namespace

int main() {
  std::vector<double> lower_bounds;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"formula equivalence", formula_equivalence},
      {"duality by brute force", duality},
      {"Birkhoff domination", birkhoff_domination},
      {"analytic channel coefficients", [&] { return analytic_coefficients(lower_bounds); }},
      {"dual contraction consistency", [&] { return dual_consistency(lower_bounds); }},
      {"subspace certificate", subspace_certificate},
      {"geometric convergence", geometric_convergence},
      {"negative control", negative_control},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
