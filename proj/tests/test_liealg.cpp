#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "instsym/liealg.hpp"
#include "support.hpp"

using namespace instsym;
using namespace instsym::qunit;

namespace {

int eps(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

QuatMatrix random_sp2(std::mt19937& rng) {
  QuatMatrix y = testsupport::random_qmat(2, 2, rng);
  return 0.5 * (y - y.adjoint());
}

}  // namespace

TEST_CASE("sp(1) basis brackets") {
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) {
      Quaternion br = upsilon(l) * upsilon(m) - upsilon(m) * upsilon(l);
      Quaternion want(0);
      for (int p = 0; p < 3; ++p) want += eps(l, m, p) * upsilon(p);
      CHECK(dist(br, want) < 1e-15);
    }
  CHECK(dist(upsilon(0), 0.5 * i) == 0.0);
}

TEST_CASE("h311 closes with the sp(1) structure constants") {
  auto g = subalgebra("h311");
  REQUIRE(g.size() == 3);
  auto c = structure_constants(g);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int p = 0; p < 3; ++p) CHECK(std::abs(c[a][b][p] - eps(a, b, p)) < 1e-12);
}

TEST_CASE("catalog is bracket closed and anti-Hermitian") {
  for (const auto& name : subalgebra_names()) {
    auto g = subalgebra(name, 0.37);
    CHECK_MESSAGE(bracket_closure_residual(g) < 1e-12, name);
    for (const auto& x : g) CHECK(anti_hermitian_residual(x) < 1e-15);
  }
  CHECK(subalgebra("sp2").size() == 10);
  CHECK(subalgebra("sp1sp1").size() == 6);
  CHECK(subalgebra("toral").size() == 2);
  CHECK_THROWS(subalgebra("so5"));
}

TEST_CASE("p41 fourth generator is central") {
  auto g = subalgebra("p41");
  REQUIRE(g.size() == 4);
  CHECK((g[3] - QuatMatrix{{0.0, 0.0}, {0.0, i}}).max_abs() == 0.0);
  for (int l = 0; l < 3; ++l) CHECK(commutator(g[3], g[l]).max_abs() < 1e-15);
}

TEST_CASE("circle R_t") {
  auto g = subalgebra("r_t", 0.5);
  REQUIRE(g.size() == 1);
  CHECK((g[0] - QuatMatrix{{i, 0.0}, {0.0, 0.5 * i}}).max_abs() == 0.0);
}

TEST_CASE("exponential in Sp(2)") {
  QuatMatrix x{{i, 0.0}, {0.0, i}};
  CHECK((exp_sp2(x, M_PI) + QuatMatrix::identity(2)).max_abs() < 1e-15);
  for (double th : {0.1, 0.7, 2.0, -1.3}) {
    QuatMatrix want{{std::cos(th), std::sin(th)}, {-std::sin(th), std::cos(th)}};
    CHECK((exp_sp2(ms_generator(), th) - want).max_abs() < 1e-15);
  }
  std::mt19937 rng(21);
  for (int s = 0; s < 20; ++s) {
    QuatMatrix y = random_sp2(rng);
    CHECK((exp_sp2(y, 0.8) * exp_sp2(y, -0.8) - QuatMatrix::identity(2)).max_abs() < 1e-12);
    CHECK(unitarity_residual(exp_sp2(y, 0.8)) < 1e-12);
  }
}

TEST_CASE("conjugation to the torus") {
  TorusForm t = conjugate_to_torus(QuatMatrix{{i, 0.0}, {0.0, 0.5 * i}});
  CHECK((t.A - QuatMatrix::identity(2)).max_abs() < 1e-12);
  CHECK(t.a == doctest::Approx(1.0));
  CHECK(t.b == doctest::Approx(0.5));

  QuatMatrix neg{{-i, 0.0}, {0.0, -i}};
  TorusForm u = conjugate_to_torus(neg);
  CHECK(u.a == doctest::Approx(1.0));
  CHECK(u.b == doctest::Approx(1.0));
  QuatMatrix jI{{j, 0.0}, {0.0, j}};
  QuatMatrix diag = jI * neg * jI.adjoint();
  CHECK((diag - QuatMatrix{{i, 0.0}, {0.0, i}}).max_abs() < 1e-15);
  CHECK((u.A * neg * u.A.adjoint() - QuatMatrix{{i, 0.0}, {0.0, i}}).max_abs() < 1e-12);

  std::mt19937 rng(22);
  for (int s = 0; s < 20; ++s) {
    QuatMatrix y = random_sp2(rng);
    TorusForm f = conjugate_to_torus(y);
    QuatMatrix d = f.A * y * f.A.adjoint();
    CHECK(unitarity_residual(f.A) < 1e-12);
    CHECK((d - QuatMatrix{{f.a * i, 0.0}, {0.0, f.b * i}}).max_abs() < 1e-10);
    // embedding spectrum of y is {+-a i, +-b i}
    Eigen::ComplexEigenSolver<CMat> es(embed_complex(y));
    std::vector<double> got, want{-std::abs(f.a), -std::abs(f.b), std::abs(f.a), std::abs(f.b)};
    for (int r = 0; r < 4; ++r) got.push_back(es.eigenvalues()(r).imag());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(testsupport::max_abs_diff(got, want) < 1e-10);
  }
}

TEST_CASE("structure constants of a direct sum") {
  auto g = subalgebra("sp1sp1");
  auto c = structure_constants(g);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b)
      for (int p = 0; p < 6; ++p) CHECK(std::abs(c[a][b][p]) < 1e-12);
}
