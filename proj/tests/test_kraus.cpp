#include <doctest.h>

#include <cmath>

#include "conerate/channels.hpp"
#include "conerate/errors.hpp"
#include "conerate/kraus.hpp"
#include "conerate/rank_one.hpp"
#include "oracles.hpp"

using namespace conerate;

namespace {

KrausMap two_block_channel() {
  // Two invariant orthogonal blocks ℂ² ⊕ ℂ², each with a contracting channel.
  return channels::block_sum(channels::depolarizing(0.5), channels::depolarizing(0.2));
}

}  // namespace

TEST_SUITE("kraus") {
  TEST_CASE("completeness validation reports the residual") {
    CMatrix v = CMatrix::Identity(2, 2) * 0.9;
    try {
      KrausMap k({v});
      FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
    CHECK_THROWS_AS(KrausMap({}), ValidationError);
    CHECK_THROWS_AS(KrausMap({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}), ValidationError);
    CHECK(channels::depolarizing(0.3).completeness_residual() <= 1e-15);
  }

  TEST_CASE("phi and psi against entrywise loops") {
    Rng rng(30);
    for (int rep = 0; rep < 10; ++rep) {
      const KrausMap k = channels::random_channel(3, 1 + std::size_t(rep % 4), 500 + rep);
      const CMatrix x = oracle::random_hermitian(rng, 3);
      CHECK((k.phi(x) - oracle::phi_loops(k.ops(), x)).norm() <= 1e-12);
      CHECK((k.psi(x) - oracle::psi_loops(k.ops(), x)).norm() <= 1e-12);
      CHECK((k.phi_power(x, 3) - k.phi(k.phi(k.phi(x)))).norm() <= 1e-12);
    }
  }

  TEST_CASE("apply_phi examples") {
    const KrausMap k = channels::random_channel(4, 3, 77);
    CHECK((apply_phi(k, HermitianMatrix::identity(4)).matrix() - CMatrix::Identity(4, 4)).norm() <= 1e-10);

    const CMatrix u = channels::random_unitary(3, 5);
    const KrausMap w = channels::unitary(u);
    Rng rng(31);
    const CMatrix x = oracle::random_hermitian(rng, 3);
    const HermitianMatrix y = apply_phi(w, HermitianMatrix(x));
    CHECK((y.matrix() - u.adjoint() * x * u).norm() <= 1e-12);
    CHECK((jacobi_eigen(y.matrix()).values - oracle::eigenvalues(x)).cwiseAbs().maxCoeff() <= 1e-10);

    for (double p : {0.1, 0.3, 0.9}) {
      const KrausMap d = channels::depolarizing(p);
      const CMatrix h = oracle::random_hermitian(rng, 2);
      CHECK((apply_phi(d, HermitianMatrix(h)).matrix() - oracle::depolarize(h, p)).norm() <= 1e-12);
      CHECK((apply_psi(d, HermitianMatrix(h)).matrix() - oracle::depolarize(h, p)).norm() <= 1e-12);
    }
  }

  TEST_CASE("apply_psi examples") {
    Rng rng(32);
    const KrausMap k = channels::random_channel(3, 2, 9);
    const CMatrix rho = oracle::random_density(rng, 3);
    CHECK(apply_psi(k, HermitianMatrix::from_hermitian_part(rho)).trace() == doctest::Approx(1.0).epsilon(1e-12));
    const CMatrix u = channels::random_unitary(3, 6);
    const HermitianMatrix out = apply_psi(channels::unitary(u), HermitianMatrix::from_hermitian_part(rho));
    CHECK((out.matrix() - u * rho * u.adjoint()).norm() <= 1e-12);
  }

  TEST_CASE("pair objective") {
    Rng rng(33);
    const KrausMap w = channels::unitary(channels::random_unitary(3, 1));
    const KrausMap full = channels::completely_depolarizing(2);
    for (int rep = 0; rep < 10; ++rep) {
      const auto [u, v] = oracle::orthonormal_pair(rng, 3);
      CHECK(pair_objective(w, u, v) == doctest::Approx(1.0).epsilon(1e-12));
      const auto [a, b] = oracle::orthonormal_pair(rng, 2);
      for (double p : {0.1, 0.5, 1.0})
        CHECK(pair_objective(channels::depolarizing(p), a, b) == doctest::Approx(1.0 - p).epsilon(1e-12));
      CHECK(pair_objective(full, a, b) <= 1e-14);
    }
    CVector e0 = CVector::Zero(2), e1 = CVector::Zero(2);
    e0(0) = 1.0;
    e1(0) = 1.0;
    CHECK_THROWS_AS(pair_objective(full, e0, e1), ValidationError);
    CHECK_THROWS_AS(pair_objective(full, 2.0 * e0, e1), ValidationError);
  }

  TEST_CASE("contraction norm on analytic channels") {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      const ContractionEstimate e = contraction_norm(channels::depolarizing(p));
      CHECK(std::abs(e.lower_bound - (1.0 - p)) <= 1e-6);
    }
    const ContractionEstimate u = contraction_norm(channels::unitary(channels::random_unitary(3, 2)));
    CHECK(std::abs(u.lower_bound - 1.0) <= 1e-9);
    const ContractionEstimate z = contraction_norm(channels::completely_depolarizing(3));
    CHECK(z.lower_bound <= 1e-9);
  }

  TEST_CASE("contraction estimate invariants") {
    for (std::uint64_t s = 0; s < 6; ++s) {
      const KrausMap k = channels::random_channel(3, 2 + s % 2, 900 + s);
      ContractionOptions o;
      o.restarts = 8;
      o.seed = s;
      const ContractionEstimate e = contraction_norm(k, o);
      CHECK(std::abs(e.lower_bound - pair_objective(k, e.witness_u, e.witness_v)) <= 1e-10);
      CHECK(std::abs(e.witness_u.dot(e.witness_v)) <= 1e-10);
      CHECK(std::abs(e.witness_u.norm() - 1.0) <= 1e-12);
      CHECK(std::abs(e.witness_v.norm() - 1.0) <= 1e-12);
      CHECK(e.restarts_used == 8);
      CHECK(e.lower_bound >= 0.0);
      CHECK(e.lower_bound <= 1.0 + 1e-12);
      CHECK_FALSE(e.upper_bound_certified);
      if (e.upper_bound) CHECK(*e.upper_bound >= e.lower_bound - 1e-6);
      const ContractionEstimate again = contraction_norm(k, o);
      CHECK(again.lower_bound == e.lower_bound);
      CHECK(again.witness_u == e.witness_u);
    }
  }

  TEST_CASE("birkhoff estimate only for interior-valued maps") {
    const ContractionEstimate dep = contraction_norm(channels::depolarizing(0.5));
    REQUIRE(dep.upper_bound.has_value());
    REQUIRE(dep.diameter_estimate.has_value());
    // Ψ maps pure states to (1 − p)ρ + p/2·I with spectrum {1 − p/2, p/2}.
    CHECK(*dep.diameter_estimate <= 2.0 * std::log(3.0) + 1e-9);
    CHECK(*dep.upper_bound >= dep.lower_bound - 1e-6);
    const ContractionEstimate uni = contraction_norm(channels::unitary(channels::random_unitary(2, 4)));
    CHECK_FALSE(uni.upper_bound.has_value());
  }

  TEST_CASE("dobrushin form value") {
    Rng rng(34);
    const KrausMap k = channels::random_channel(3, 2, 41);
    for (int rep = 0; rep < 10; ++rep) {
      const auto [u, v] = oracle::orthonormal_pair(rng, 3);
      const CMatrix x = optimal_dobrushin_basis(k, u, v);
      CHECK(std::abs(dobrushin_form_value(k, u, v, x) - pair_objective(k, u, v)) <= 1e-10);
      const CMatrix other = channels::random_unitary(3, 100 + rep);
      CHECK(dobrushin_form_value(k, u, v, other) <= pair_objective(k, u, v) + 1e-10);
    }
    const auto [a, b] = oracle::orthonormal_pair(rng, 2);
    CHECK(dobrushin_form_value(channels::completely_depolarizing(2), a, b, CMatrix::Identity(2, 2)) ==
          doctest::Approx(0.0).epsilon(1e-14));
    const KrausMap w = channels::unitary(channels::random_unitary(2, 8));
    CHECK(dobrushin_form_value(w, a, b, optimal_dobrushin_basis(w, a, b)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(dobrushin_form_value(w, a, b, 2.0 * CMatrix::Identity(2, 2)), ValidationError);
  }

  TEST_CASE("zero-error check") {
    const ZeroErrorVerdict u = zero_error_check(channels::unitary(channels::random_unitary(3, 12)));
    REQUIRE(u.positive());
    CHECK(u.witness->residual <= 1e-10);
    CHECK(std::abs(u.witness->u.dot(u.witness->v)) <= 1e-10);

    const ZeroErrorVerdict z = zero_error_check(channels::completely_depolarizing(2));
    CHECK_FALSE(z.positive());
    CHECK(z.min_value > 0.1);

    const KrausMap b = two_block_channel();
    const ZeroErrorVerdict bz = zero_error_check(b);
    REQUIRE(bz.positive());
    CHECK(bz.witness->residual <= 1e-12);
    for (std::size_t i = 0; i < b.count(); ++i)
      for (std::size_t j = 0; j < b.count(); ++j)
        CHECK(std::abs((b.ops()[i] * bz.witness->u).dot(b.ops()[j] * bz.witness->v)) <= 1e-12);
    // One witness vector lives in each block.
    const CVector& wu = bz.witness->u;
    const CVector& wv = bz.witness->v;
    const double u_top = wu.head(2).norm(), v_top = wv.head(2).norm();
    CHECK(((u_top > 1 - 1e-6 && v_top < 1e-6) || (u_top < 1e-6 && v_top > 1 - 1e-6)));
  }

  TEST_CASE("rank-one annihilator search basics") {
    // Family {E₁₂}: v* E₁₂ u = conj(v₀) u₁ vanishes for u = e₀.
    CMatrix e = CMatrix::Zero(2, 2);
    e(0, 1) = 1.0;
    const std::vector<CMatrix> fam{e};
    const RankOneSearchResult r = search_rank_one_annihilator(fam, 2, {});
    REQUIRE(r.found());
    CHECK(annihilator_residual(fam, r.witness->u, r.witness->v) == r.witness->residual);
    CHECK(r.witness->residual <= 1e-10);

    const std::vector<CMatrix> all{CMatrix::Identity(2, 2), channels::pauli_x(), channels::pauli_y(),
                                   channels::pauli_z()};
    const RankOneSearchResult none = search_rank_one_annihilator(all, 2, {});
    CHECK_FALSE(none.found());
    // Σ over an orthogonal basis of |v* B u|² = 2‖vu*‖² = 2 for unit u, v.
    CHECK(none.min_objective == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_SUITE("kraus-properties") {
  TEST_CASE("unitality, trace preservation and adjointness") {
    Rng rng(300);
    for (int rep = 0; rep < 100; ++rep) {
      const Index n = 2 + Index(rep % 3);
      const KrausMap k = channels::random_channel(n, 1 + std::size_t(rep % 4), 1000 + rep);
      CHECK((k.phi(CMatrix::Identity(n, n)) - CMatrix::Identity(n, n)).norm() <= 1e-10);
      const CMatrix x = oracle::random_hermitian(rng, n);
      const CMatrix y = oracle::random_hermitian(rng, n);
      CHECK(std::abs(k.psi(x).trace() - x.trace()) <= 1e-10 * x.norm());
      CHECK(std::abs(inner(k.psi(y), x) - inner(y, k.phi(x))) <= 1e-10);
      const CMatrix rho = oracle::random_density(rng, n);
      CHECK(oracle::eigenvalues(hermitian_part(k.phi(rho))).minCoeff() >= -1e-10);
    }
  }

  TEST_CASE("sampled trace-distance ratios stay below the estimate") {
    Rng rng(301);
    std::vector<KrausMap> ks{channels::depolarizing(0.3), channels::unitary(channels::random_unitary(2, 50)),
                             channels::random_channel(2, 2, 51), channels::random_channel(3, 3, 52)};
    for (const KrausMap& k : ks) {
      const ContractionEstimate e = contraction_norm(k);
      REQUIRE(e.converged);
      const Index n = k.dim();
      for (int s = 0; s < 500; ++s) {
        const CMatrix mu = oracle::random_density(rng, n) - oracle::random_density(rng, n);
        CHECK(oracle::trace_norm(k.psi(mu)) <= (e.lower_bound + 1e-6) * oracle::trace_norm(mu));
      }
    }
  }

  TEST_CASE("composition is submultiplicative") {
    std::vector<KrausMap> ks{channels::depolarizing(0.4), channels::random_channel(2, 2, 61),
                             channels::random_channel(3, 2, 62)};
    for (const KrausMap& k : ks) {
      const double one = contraction_norm(k).lower_bound;
      const double two = contraction_norm_power(k, 2).lower_bound;
      CHECK(two <= one * one + 1e-6);
    }
  }

  TEST_CASE("pair objective range and zero set") {
    Rng rng(302);
    for (int rep = 0; rep < 200; ++rep) {
      const KrausMap k = channels::random_channel(3, 1 + std::size_t(rep % 3), 2000 + rep);
      const auto [u, v] = oracle::orthonormal_pair(rng, 3);
      const double f = pair_objective(k, u, v);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-12);
      const double diff = (k.psi(outer(u)) - k.psi(outer(v))).norm();
      if (f <= 1e-12) CHECK(diff <= 1e-10);
      if (diff > 1e-8) CHECK(f > 0.0);
    }
  }
}
