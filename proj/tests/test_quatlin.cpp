#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "instsym/fields.hpp"
#include "instsym/quatmat.hpp"
#include "instsym/registry.hpp"
#include "support.hpp"

using namespace instsym;
using namespace instsym::qunit;
using testsupport::random_qmat;
using testsupport::random_quat;

namespace {

// Cyclic Jacobi on a real symmetric matrix; slow but independent of Eigen.
std::vector<double> jacobi_eigenvalues(RMat a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int r = 0; r < n; ++r) {
          double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          double apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
      }
  }
  std::vector<double> ev(n);
  for (int r = 0; r < n; ++r) ev[r] = a(r, r);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Truncated Taylor series with scaling, as an oracle for expm.
QuatMatrix series_exp(const QuatMatrix& a) {
  int s = 0;
  double nrm = a.norm();
  while (nrm > 0.1) {
    nrm /= 2;
    ++s;
  }
  QuatMatrix x = a * std::pow(0.5, s);
  QuatMatrix term = QuatMatrix::identity(a.rows()), sum = term;
  for (int p = 1; p < 30; ++p) {
    term = term * x * (1.0 / p);
    sum += term;
  }
  for (int r = 0; r < s; ++r) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("quaternion units and norms") {
  CHECK(i * i == Quaternion(-1));
  CHECK(j * j == Quaternion(-1));
  CHECK(k * k == Quaternion(-1));
  CHECK(i * j * k == Quaternion(-1));
  CHECK(i * j == k);
  CHECK(j * i == -k);
  std::mt19937 rng(1);
  for (int s = 0; s < 100; ++s) {
    Quaternion p = random_quat(rng), q = random_quat(rng);
    CHECK(p.norm2() >= 0);
    CHECK(dist((p * q).conj(), q.conj() * p.conj()) < 1e-13);
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-12);
    CHECK(dist(p * p.inverse(), one) < 1e-13);
    CHECK(p.conj().x == -p.x);
  }
}

TEST_CASE("matrix adjoint, real and vector parts") {
  std::mt19937 rng(2);
  QuatMatrix a = random_qmat(3, 2, rng), b = random_qmat(2, 4, rng);
  CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() < 1e-13);
  CHECK((a.real_part() + a.vec_part() - a).max_abs() == 0.0);
  QuatMatrix v = a.vec_part();
  for (const auto& q : v.data()) CHECK(q.w == 0.0);
}

TEST_CASE("complex embedding") {
  CMat e1 = embed_complex(QuatMatrix{{one}});
  CHECK((e1 - CMat::Identity(2, 2)).norm() == 0.0);
  CMat ej = embed_complex(QuatMatrix{{j}});
  CMat want(2, 2);
  want << 0, 1, -1, 0;
  CHECK((ej - want).norm() == 0.0);

  std::mt19937 rng(3);
  for (int s = 0; s < 20; ++s) {
    QuatMatrix a = random_qmat(3, 2, rng), b = random_qmat(2, 4, rng);
    CHECK((embed_complex(a * b) - embed_complex(a) * embed_complex(b)).norm() <= 1e-13);
    CHECK((embed_complex(a.adjoint()) - embed_complex(a).adjoint()).norm() <= 1e-15);
    CHECK((unembed(embed_complex(a)) - a).max_abs() == 0.0);
  }
}

TEST_CASE("real flatten round trip") {
  std::mt19937 rng(4);
  QuatMatrix a = random_qmat(3, 5, rng);
  CHECK((unflatten(flatten(a), 3, 5) - a).max_abs() == 0.0);
}

TEST_CASE("null space of A^dagger") {
  // basic instanton at 0
  QuatMatrix a{{one}, {0.0}};
  QuatMatrix v = null_space_quat(a, 1);
  CHECK(std::abs(v(0, 0).norm()) < 1e-15);
  CHECK(std::abs(v(1, 0).norm() - 1) < 1e-15);

  // M = 0, L = diag(alpha): matches the explicit frame up to a right Sp(k) factor
  std::mt19937 rng(5);
  std::vector<double> alphas{0.7, 1.3, 2.0};
  StandardData d = make_example("m0-family", {1.0, 0.5, alphas});
  for (int s = 0; s < 10; ++s) {
    Quaternion x = random_quat(rng);
    QuatMatrix V = null_space_quat(delta(d, x), 3);
    QuatMatrix W = m0_frame(alphas, x);
    QuatMatrix g = V.adjoint() * W;
    CHECK(unitarity_residual(g) < 1e-12);
    CHECK((V * g - W).max_abs() < 1e-12);
  }

  // random valid Delta(x)
  for (int s = 0; s < 20; ++s) {
    StandardData r = testsupport::random_standard(2, 3, rng);
    QuatMatrix D = delta(r, random_quat(rng));
    QuatMatrix V = null_space_quat(D, 2);
    CHECK((V.adjoint() * D).norm() <= 1e-10 * D.norm());
    CHECK(unitarity_residual(V) <= 1e-12);
  }

  CHECK_THROWS_AS(null_space_quat(QuatMatrix{{one}, {0.0}}, 2), DimensionError);
}

TEST_CASE("real symmetric eigenvalues") {
  SymEig e = sym_eig_real((RMat(2, 2) << 2, 0, 0, 1).finished());
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));

  RMat R = make_example("iso-ex").R().real_matrix();
  RVec ev = sym_eig_real(R).values;
  std::vector<double> want{4, 4, 4, 12, 12, 12, 12};
  for (int r = 0; r < 7; ++r) CHECK(std::abs(ev(r) - want[r]) < 1e-12);

  std::mt19937 rng(6);
  for (int s = 0; s < 20; ++s) {
    RMat a = testsupport::random_real(6, 6, rng);
    RMat sym = a + a.transpose();
    RVec got = sym_eig_real(sym).values;
    auto oracle = jacobi_eigenvalues(sym);
    for (int r = 0; r < 6; ++r) CHECK(std::abs(got(r) - oracle[r]) < 1e-10);
  }
  CHECK_THROWS(sym_eig_real((RMat(2, 2) << 1, 2, 0, 1).finished()));
}

TEST_CASE("quaternionic Hermitian eigenvalues") {
  std::mt19937 rng(7);
  QuatMatrix a = random_qmat(4, 4, rng);
  QuatMatrix h = a + a.adjoint();
  RVec ev = hermitian_eigenvalues(h);
  CHECK(ev.size() == 4);
  // every eigenvalue appears twice in the complex embedding
  Eigen::SelfAdjointEigenSolver<CMat> es(embed_complex(h));
  for (int r = 0; r < 4; ++r) {
    CHECK(std::abs(es.eigenvalues()(2 * r) - ev(r)) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(2 * r + 1) - ev(r)) < 1e-12);
  }
}

TEST_CASE("symplectic polar factor") {
  std::mt19937 rng(8);
  QuatMatrix u = testsupport::random_symplectic(3, rng);
  CHECK((nearest_unitary_alignment(u) - u).max_abs() < 1e-13);
  CHECK((nearest_unitary_alignment(2.0 * QuatMatrix::identity(3)) - QuatMatrix::identity(3)).max_abs() < 1e-14);

  for (int s = 0; s < 5; ++s) {
    QuatMatrix a = random_qmat(3, 3, rng);
    QuatMatrix p = nearest_unitary_alignment(a);
    CHECK(unitarity_residual(p) <= 1e-12);
    const double best = (a - p).norm();
    // no nearby or random symplectic matrix does better
    for (int t = 0; t < 400; ++t) {
      QuatMatrix x = random_qmat(3, 3, rng);
      x = 0.5 * (x - x.adjoint());
      double eps = t < 200 ? 1e-2 : 1.0;
      QuatMatrix other = p * expm(eps * x);
      CHECK((a - other).norm() >= best - 1e-12);
    }
  }
}

TEST_CASE("matrix exponential and inverse") {
  std::mt19937 rng(9);
  for (int s = 0; s < 10; ++s) {
    QuatMatrix x = random_qmat(3, 3, rng);
    CHECK((expm(x) - series_exp(x)).max_abs() < 1e-10 * std::max(1.0, series_exp(x).max_abs()));
    CHECK((expm(x) * expm(-1.0 * x) - QuatMatrix::identity(3)).max_abs() < 1e-11);
    CHECK((x * inverse(x) - QuatMatrix::identity(3)).max_abs() < 1e-10);
  }
}

TEST_CASE("ranks and singular values") {
  QuatMatrix b = rank_deficient_pair().b;
  CHECK(numeric_rank(b) == 1);
  CHECK(numeric_rank(QuatMatrix::identity(3)) == 3);
  CHECK(sigma_max(2.0 * QuatMatrix::identity(2)) == doctest::Approx(2.0));
  CHECK(sigma_min(QuatMatrix{{one, 0.0}, {0.0, 3.0 * j}}) == doctest::Approx(1.0));
}
