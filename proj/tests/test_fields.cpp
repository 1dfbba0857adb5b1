#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "instsym/fields.hpp"
#include "instsym/liealg.hpp"
#include "instsym/registry.hpp"
#include "instsym/symmetry.hpp"
#include "support.hpp"

using namespace instsym;
using namespace instsym::qunit;
using testsupport::random_quat;

namespace {

// Basic instanton, V = [conj(x); 1]/sqrt(1+|x|^2) by hand, so Phi = (x i conj(x) + i) / (2 (1 + |x|^2))
// and at x = z + r j this has norm sqrt((1 + |z|^2 - r^2)^2 + 4 r^2 |z|^2) / (2 (1 + |z|^2 + r^2)).
double basic_phi_norm(double x0, double x1, double r) {
  const double z2 = x0 * x0 + x1 * x1;
  return std::sqrt((1 + z2 - r * r) * (1 + z2 - r * r) + 4 * r * r * z2) / (2 * (1 + z2 + r * r));
}

double max_err(const std::array<QuatMatrix, 4>& a, const std::array<QuatMatrix, 4>& b) {
  double e = 0;
  for (int mu = 0; mu < 4; ++mu) e = std::max(e, (a[mu] - b[mu]).max_abs());
  return e;
}

std::array<double, 4> as_vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

}  // namespace

TEST_CASE("kernel frames") {
  KernelFrame f = kernel_frame(make_example("basic"), Quaternion(0));
  CHECK(f.V(0, 0).norm() < 1e-15);
  CHECK(std::abs(f.V(1, 0).norm() - 1) < 1e-15);

  std::mt19937 rng(41);
  for (const auto& e : example_registry()) {
    StandardData d = make_example(e.name);
    for (int s = 0; s < 10; ++s) CHECK(frame_residual(d, kernel_frame(d, random_quat(rng, 2.0))) <= 1e-10);
  }
}

TEST_CASE("connection on the M = 0 family") {
  std::vector<double> alphas{0.6, 1.0, 1.7};
  StandardData d = make_example("m0-family", {1.0, 0.5, alphas});
  FrameFn explicit_frame = [&](const Quaternion& y) { return m0_frame(alphas, y); };
  std::mt19937 rng(42);
  for (int s = 0; s < 10; ++s) {
    Quaternion x = random_quat(rng);
    auto closed = m0_connection(alphas, x);
    auto fd = connection_fd(d, x, 1e-4, explicit_frame);
    CHECK(max_err(fd, closed) <= 1e-6);
    // second order in h
    double e1 = max_err(connection_fd(d, x, 4e-2, explicit_frame), closed);
    double e2 = max_err(connection_fd(d, x, 2e-2, explicit_frame), closed);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
  }
  auto at0 = m0_connection({1.0}, Quaternion(0));
  for (const auto& a : at0) CHECK(a.max_abs() == 0.0);
  FrameFn basic_frame = [](const Quaternion& y) { return m0_frame({1.0}, y); };
  auto fd0 = connection_fd(make_example("basic"), Quaternion(0), 1e-4, basic_frame);
  for (const auto& a : fd0) CHECK(a.max_abs() < 1e-12);
}

TEST_CASE("connection is sp(n) valued and gauge covariant") {
  std::mt19937 rng(43);
  for (const char* name : {"rot-ex", "not-in-ms", "iso-ex"}) {
    StandardData d = make_example(name);
    for (int s = 0; s < 5; ++s) {
      Quaternion x = random_quat(rng);
      auto A = connection_fd(d, x, 1e-4);
      for (const auto& a : A) CHECK(anti_hermitian_residual(a) <= 1e-8);
      // constant gauge g: A -> g^dagger A g
      QuatMatrix g = testsupport::random_symplectic(d.n, rng);
      FrameFn base = anchored_gauge(d, kernel_frame(d, Quaternion(0)).V);
      FrameFn moved = [&](const Quaternion& y) { return base(y) * g; };
      auto B = connection_fd(d, x, 1e-4, moved);
      for (int mu = 0; mu < 4; ++mu) CHECK((B[mu] - g.adjoint() * A[mu] * g).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("hyperbolic Higgs field of the basic instanton") {
  StandardData d = make_example("basic");
  RMat rho = RMat::Zero(1, 1);
  // at the centre the field vanishes
  MonopoleSample s = higgs_hyperbolic(d, rho, {0, 0, 1});
  CHECK(s.phi_norm < 1e-15);
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> u(-2, 2), ur(0.05, 3);
  for (int q = 0; q < 50; ++q) {
    double x0 = u(rng), x1 = u(rng), r = ur(rng);
    MonopoleSample m = higgs_hyperbolic(d, rho, {x0, x1, r});
    CHECK(std::abs(m.phi_norm - basic_phi_norm(x0, x1, r)) < 1e-12);
    CHECK(anti_hermitian_residual(m.Phi) < 1e-14);
  }
  // the mass is 1/2 at the boundary
  CHECK(std::abs(higgs_hyperbolic(d, rho, {0, 0, 1e-6}).phi_norm - 0.5) < 1e-9);
}

TEST_CASE("hyperbolic Higgs field is independent of theta") {
  ConvertedData cd = not_in_ms_converted(0.5);
  RMat rho(2, 2);
  rho << 0, 1, -1, 0;
  std::mt19937 rng(45);
  std::uniform_real_distribution<double> u(-1, 1), ur(0.2, 2);
  for (int q = 0; q < 10; ++q) {
    const double x0 = u(rng), x1 = u(rng), r = ur(rng);
    Quaternion X(x0, x1, r, 0);
    auto ref = anti_hermitian_spectrum(higgs_hyperbolic_at(cd.data, rho, X));
    for (double th : {0.4, 1.9, 3.0, 5.5}) {
      Quaternion x = qexp(0.5 * th * i) * X * qexp(-0.5 * th * i);
      auto sp = anti_hermitian_spectrum(higgs_hyperbolic_at(cd.data, rho, x));
      CHECK(testsupport::max_abs_diff(sp, ref) < 1e-10);
    }
  }
  // L^dagger L is invariant under the combined circle action
  QuatMatrix LtL = cd.data.L.adjoint() * cd.data.L;
  for (double th : {0.3, 1.2, 2.5}) {
    QuatMatrix g = qexp(-0.5 * th * i) * QuatMatrix::from_real(expm(QuatMatrix::from_real(0.5 * th * rho)).real_matrix());
    QuatMatrix gi = QuatMatrix::from_real(expm(QuatMatrix::from_real(-0.5 * th * rho)).real_matrix()) * qexp(0.5 * th * i);
    CHECK((g * LtL * gi - LtL).max_abs() < 1e-12);
  }
  // finite and smooth along a line
  double prev = -1, maxjump = 0;
  for (int q = 0; q <= 200; ++q) {
    double r = 0.05 + q * 0.02;
    double v = higgs_hyperbolic(cd.data, rho, {0.1, -0.2, r}).phi_norm;
    CHECK(std::isfinite(v));
    if (prev >= 0) maxjump = std::max(maxjump, std::abs(v - prev));
    prev = v;
  }
  CHECK(maxjump < 0.05);
}

TEST_CASE("Hopf map") {
  CHECK(dist(hopf_map(one), i) == 0.0);
  CHECK(dist(hopf_map(j), -i) == 0.0);
  std::mt19937 rng(46);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  for (int s = 0; s < 1000; ++s) {
    double th = ang(rng);
    Quaternion x = random_quat(rng), p = random_quat(rng);
    p = p / p.norm();
    Quaternion lhs = hopf_map(qexp(th * i) * x * p.conj());
    Quaternion rhs = p * hopf_map(x) * p.conj();
    CHECK(dist(lhs, rhs) <= 1e-12 * std::max(1.0, x.norm2()));
  }
  for (int s = 0; s < 50; ++s) {
    Quaternion X = random_quat(rng).vec_part();
    Quaternion x = hopf_section({X.x, X.y, X.z}, ang(rng));
    CHECK(dist(hopf_map(x), X) < 1e-12);
    CHECK(std::abs(x.norm2() - X.norm()) < 1e-12);
  }
}

TEST_CASE("circle one-form xi") {
  CHECK(xi_form(one, {0, 1, 0, 0}) == doctest::Approx(2.0));
  std::mt19937 rng(47);
  for (int s = 0; s < 50; ++s) {
    Quaternion x = random_quat(rng), v = random_quat(rng);
    Quaternion dtheta = i * x;  // d/dtheta of e^{i theta} x
    double inner = v.w * dtheta.w + v.x * dtheta.x + v.y * dtheta.y + v.z * dtheta.z;
    CHECK(std::abs(xi_form(x, as_vec(v)) - 2 * inner) < 1e-12);
    Quaternion perp = v - (inner / dtheta.norm2()) * dtheta;
    CHECK(std::abs(xi_form(x, as_vec(perp))) < 1e-12);
  }
}

TEST_CASE("singular monopoles") {
  StandardData d = make_example("basic");
  RMat rho = RMat::Zero(1, 1);
  std::mt19937 rng(48);
  for (double R : {0.3, 1.0, 2.5}) {
    double ref = -1;
    for (int s = 0; s < 8; ++s) {
      Quaternion dir = random_quat(rng).vec_part();
      dir = dir * (R / dir.norm());
      MonopoleSample m = higgs_singular(d, rho, {dir.x, dir.y, dir.z});
      CHECK(m.lift_residual < 1e-12);
      if (ref < 0) ref = m.phi_norm;
      CHECK(std::abs(m.phi_norm - ref) < 1e-12);
    }
  }
  // changing the section only conjugates Phi
  StandardData rot = make_example("rot-ex");
  SolveResult c0 = solve_generators(rot, {KindTag::circular, 0.0});
  REQUIRE(c0.nonempty());
  RMat r0 = c0.certificates[0].generators[0].real_matrix();
  for (int s = 0; s < 5; ++s) {
    Quaternion X = random_quat(rng).vec_part();
    auto a = higgs_singular(rot, r0, {X.x, X.y, X.z}, 0.0);
    auto b = higgs_singular(rot, r0, {X.x, X.y, X.z}, 1.1);
    CHECK(testsupport::max_abs_diff(a.phi_eigs, b.phi_eigs) < 1e-10);
    CHECK(a.lift_residual < 1e-12);
  }
}

TEST_CASE("Manton-Sutcliffe orbit") {
  CHECK(orbit_period(ms_generator()) == doctest::Approx(M_PI));
  Quaternion X(0, 0.3, -0.2, 0.4);
  CHECK(dist(orbit_point(ms_generator(), M_PI / 2, X), X / X.norm2()) < 1e-14);
  CHECK(dist(orbit_point(ms_generator(), M_PI, X), X) < 1e-14);
}

TEST_CASE("orbit holonomy") {
  StandardData d = make_example("basic");
  const Sp2Element Y = ms_generator();
  Quaternion X(0, 0.3, 0.2, -0.4);
  auto h = orbit_holonomy(d, Y, X, 512);
  REQUIRE(h.phases.size() == 2);
  // cyclic invariance: start at another grid point of the same orbit
  for (int m : {1, 37, 300}) {
    Quaternion Xm = orbit_point(Y, m * M_PI / 512, X);
    CHECK(testsupport::max_abs_diff(orbit_holonomy(d, Y, Xm, 512).phases, h.phases) <= 1e-8);
  }
  // palindromic
  auto hi = orbit_holonomy(d, Y, X / X.norm2(), 512);
  CHECK(testsupport::max_abs_diff(h.phases, hi.phases) <= 1e-5);
  // second order
  auto h1 = orbit_holonomy(d, Y, X, 128), h2 = orbit_holonomy(d, Y, X, 256), h4 = orbit_holonomy(d, Y, X, 512);
  double r = testsupport::max_abs_diff(h1.phases, h2.phases) / testsupport::max_abs_diff(h2.phases, h4.phases);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
  // parallel and serial batches agree
  std::vector<Quaternion> xs{X, X * 0.5, Quaternion(0, 0.1, 0.7, 0)};
  auto pa = orbit_holonomy_batch(d, Y, xs, 64), se = orbit_holonomy_batch_serial(d, Y, xs, 64);
  for (size_t q = 0; q < xs.size(); ++q) CHECK(pa[q].phases == se[q].phases);
  // a generator whose orbits do not close is refused
  Sp2Element irr{{i, 0.0}, {0.0, std::sqrt(2.0) * i}};
  CHECK_THROWS(orbit_holonomy(d, irr, X, 64));
}

TEST_CASE("field grids, parallel and serial") {
  StandardData d = make_example("basic");
  std::vector<std::array<double, 3>> pts{{0, 0, 1}, {0.5, 0.1, 0.3}, {-1, 2, 0.7}};
  auto a = hyperbolic_grid(d, RMat::Zero(1, 1), pts), b = hyperbolic_grid_serial(d, RMat::Zero(1, 1), pts);
  for (size_t q = 0; q < pts.size(); ++q) CHECK(a[q].phi_norm == b[q].phi_norm);
}

TEST_CASE("Chakrabarti profiles") {
  CHECK(std::abs(chakrabarti_profile(1.5, 0.5) - 2.375 / 13) < 1e-15);
  for (int q = 1; q <= 50; ++q) {
    double r = q / 51.0;
    CHECK(std::abs(chakrabarti_profile(1.5, r) - (5 * r - r * r * r) / (4 * r * r + 12)) <= 1e-12);
  }
  for (double r : {0.25, 0.5, 0.8}) CHECK(std::abs(chakrabarti_profile(2, r) - chakrabarti_profile(2, 1 / r)) <= 1e-12);
  CHECK(std::abs(chakrabarti_profile(1.5, 0.5) - chakrabarti_profile(1.5, 2)) > 0.01);
  CHECK(chakrabarti_mass(1.5) == doctest::Approx(0.25));
  CHECK_THROWS(chakrabarti_profile(1.0, 0.5));
  CHECK_THROWS(chakrabarti_profile(2.0, 1.0));
  CHECK_THROWS(chakrabarti_profile(2.0, -0.5));
  CHECK_THROWS(chakrabarti_profile(1.3, 2.0));
}

TEST_CASE("norms and spectra") {
  QuatMatrix a{{i, 0.0}, {0.0, 2.0 * j}};
  CHECK(sp_norm(a) == doctest::Approx(std::sqrt(2.5)));
  auto sp = anti_hermitian_spectrum(a);
  REQUIRE(sp.size() == 4);
  CHECK(sp[0] == doctest::Approx(-2.0));
  CHECK(sp[3] == doctest::Approx(2.0));
}
