#include <doctest.h>

#include "conerate/linalg.hpp"
#include "conerate/rng.hpp"
#include "oracles.hpp"

using namespace conerate;

TEST_SUITE("linalg") {
  TEST_CASE("jacobi matches the tridiagonal QR oracle") {
    Rng rng(11);
    for (Index n = 1; n <= 12; ++n)
      for (int rep = 0; rep < 5; ++rep) {
        const CMatrix h = oracle::random_hermitian(rng, n, 3.0);
        const HermitianEigen e = jacobi_eigen(h);
        CHECK(e.converged);
        const Vector ref = oracle::eigenvalues(h);
        CHECK((e.values - ref).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
        const CMatrix gram = e.vectors.adjoint() * e.vectors;
        CHECK((gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
        const CMatrix rebuilt = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK((rebuilt - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
        for (Index i = 1; i < n; ++i) CHECK(e.values(i - 1) <= e.values(i));
      }
  }

  TEST_CASE("jacobi is deterministic and exits early on diagonal input") {
    Rng rng(3);
    const CMatrix h = oracle::random_hermitian(rng, 6);
    const HermitianEigen a = jacobi_eigen(h);
    const HermitianEigen b = jacobi_eigen(h);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);

    Vector d(3);
    d << 3.0, -1.0, 2.0;
    const HermitianEigen e = jacobi_eigen(d.cast<cplx>().asDiagonal().toDenseMatrix());
    CHECK(e.sweeps == 0);
    CHECK(e.values(0) == -1.0);
    CHECK(e.values(1) == 2.0);
    CHECK(e.values(2) == 3.0);
  }

  TEST_CASE("degenerate spectrum") {
    Rng rng(5);
    const CVector u = rng.unit_vector(4);
    const CMatrix h = CMatrix::Identity(4, 4) + 2.0 * outer(u);
    const HermitianEigen e = jacobi_eigen(h);
    CHECK(e.values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values(2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values(3) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(e.max_vector().dot(u)) - 1.0) <= 1e-10);
  }

  TEST_CASE("spectral_function and trace_norm") {
    Rng rng(8);
    const CMatrix g = oracle::random_hermitian(rng, 5);
    const CMatrix psd = g * g + 0.1 * CMatrix::Identity(5, 5);
    const HermitianEigen e = jacobi_eigen(psd);
    const CMatrix root = spectral_function(e, [](double x) { return std::sqrt(x); });
    CHECK((root * root - psd).norm() <= 1e-10);
    CHECK(trace_norm(g) == doctest::Approx(oracle::trace_norm(g)).epsilon(1e-12));
  }

  TEST_CASE("complement_basis and orthonormalize_against") {
    Rng rng(21);
    for (Index n = 1; n <= 6; ++n) {
      const CVector v = rng.unit_vector(n);
      const CMatrix q = complement_basis(v);
      REQUIRE(q.rows() == n);
      REQUIRE(q.cols() == n - 1);
      if (n > 1) {
        CHECK((q.adjoint() * q - CMatrix::Identity(n - 1, n - 1)).norm() <= 1e-12);
        CHECK((q.adjoint() * v).norm() <= 1e-12);
      }
    }
    const CVector u = rng.unit_vector(3);
    const CVector w = orthonormalize_against(rng.complex_gaussian(3), u);
    CHECK(std::abs(u.dot(w)) <= 1e-14);
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("rng streams are reproducible and split independently of consumption") {
    Rng a(42), b(42);
    CHECK(a.uniform() == b.uniform());
    const Rng parent(7);
    Rng used = parent;
    used.uniform();
    CHECK(parent.split(3).split(1).engine()() == used.split(3).split(1).engine()());
    CHECK(parent.split(1).engine()() != parent.split(2).engine()());
  }
}
