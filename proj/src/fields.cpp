#include "instsym/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "instsym/liealg.hpp"

namespace instsym {

using namespace qunit;

KernelFrame kernel_frame(const StandardData& d, const Quaternion& x) {
  return {x, null_space_quat(delta(d, x), d.n)};
}

double frame_residual(const StandardData& d, const KernelFrame& f) {
  double a = (f.V.adjoint() * delta(d, f.x)).max_abs();
  return std::max(a, unitarity_residual(f.V));
}

FrameFn anchored_gauge(const StandardData& d, const QuatMatrix& anchor) {
  return [d, anchor](const Quaternion& y) {
    QuatMatrix F = kernel_frame(d, y).V;
    return F * nearest_unitary_alignment(F.adjoint() * anchor);
  };
}

Quaternion coord_unit(int mu) {
  switch (mu) {
    case 0: return one;
    case 1: return i;
    case 2: return j;
    case 3: return k;
  }
  throw std::out_of_range("coordinate index");
}

std::array<QuatMatrix, 4> connection_fd(const StandardData& d, const Quaternion& x, double h, const FrameFn& gauge) {
  if (h <= 0) h = default_fd_step(x);
  FrameFn g = gauge ? gauge : anchored_gauge(d, kernel_frame(d, 0.0).V);
  QuatMatrix V0 = g(x);
  std::array<QuatMatrix, 4> A;
  for (int mu = 0; mu < 4; ++mu) {
    Quaternion e = coord_unit(mu) * h;
    A[mu] = V0.adjoint() * (g(x + e) - g(x - e)) * (0.5 / h);
  }
  return A;
}

QuatMatrix m0_frame(const std::vector<double>& alphas, const Quaternion& x) {
  const int k = static_cast<int>(alphas.size());
  QuatMatrix V(2 * k, k);
  for (int l = 0; l < k; ++l) {
    double s = std::sqrt(alphas[l] * alphas[l] + x.norm2());
    V(l, l) = x.conj() / s;
    V(k + l, l) = Quaternion(alphas[l] / s);
  }
  return V;
}

std::array<QuatMatrix, 4> m0_connection(const std::vector<double>& alphas, const Quaternion& x) {
  const int k = static_cast<int>(alphas.size());
  std::array<QuatMatrix, 4> A;
  for (int mu = 0; mu < 4; ++mu) {
    Quaternion e = coord_unit(mu);
    Quaternion q = 0.5 * (x * e.conj() - e * x.conj());
    A[mu] = QuatMatrix(k, k);
    for (int l = 0; l < k; ++l) A[mu](l, l) = q / (x.norm2() + alphas[l] * alphas[l]);
  }
  return A;
}

double sp_norm(const QuatMatrix& a) {
  if (a.rows() == 0) return 0;
  double tr = 0;
  QuatMatrix sq = a * a;
  for (int r = 0; r < a.rows(); ++r) tr += sq(r, r).w;
  return std::sqrt(std::max(0.0, -tr / a.rows()));
}

std::vector<double> anti_hermitian_spectrum(const QuatMatrix& a) {
  CMat e = cplx(0, -1) * embed_complex(a);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
  const RVec& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

QuatMatrix ll_inverse(const StandardData& d) { return inverse(d.L * d.L.adjoint()); }

QuatMatrix hyperbolic_block(const StandardData& d, const RMat& rho) {
  QuatMatrix r = QuatMatrix::from_real(rho);
  QuatMatrix ir = QuatMatrix::identity(d.k) * i - r;
  return block_diag(d.L * ir * d.L.adjoint() * ll_inverse(d), ir);
}

QuatMatrix singular_block(const StandardData& d, const RMat& rho) {
  QuatMatrix r = QuatMatrix::from_real(rho);
  QuatMatrix ir = QuatMatrix::identity(d.k) * i - r;
  return block_diag(-(d.L * r * d.L.adjoint() * ll_inverse(d)), ir);
}

void check_rho(const StandardData& d, const RMat& rho) {
  if (rho.rows() != d.k || rho.cols() != d.k) throw DimensionError("rho must be k x k");
  if ((rho + rho.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("rho must be antisymmetric");
}

void finish(MonopoleSample& s) {
  s.phi_norm = sp_norm(s.Phi);
  s.phi_eigs = anti_hermitian_spectrum(s.Phi);
  for (int l = 0; l < 3; ++l) s.A_norms[l] = sp_norm(s.A[l]);
}

}  // namespace

QuatMatrix higgs_hyperbolic_at(const StandardData& d, const RMat& rho, const Quaternion& x) {
  check_rho(d, rho);
  QuatMatrix V = kernel_frame(d, x).V;
  return 0.5 * (V.adjoint() * hyperbolic_block(d, rho) * V);
}

MonopoleSample higgs_hyperbolic(const StandardData& d, const RMat& rho, const std::array<double, 3>& X,
                                const FrameFn& gauge) {
  check_rho(d, rho);
  if (!(X[2] > 0)) throw std::domain_error("half-space point needs r > 0");
  Quaternion x(X[0], X[1], X[2], 0);
  FrameFn g = gauge ? gauge : anchored_gauge(d, kernel_frame(d, 0.0).V);
  QuatMatrix V = g(x);
  MonopoleSample s;
  s.X = X;
  s.Phi = 0.5 * (V.adjoint() * hyperbolic_block(d, rho) * V);
  auto A = connection_fd(d, x, -1, g);
  s.A = {A[0], A[1], A[2]};  // d/dx0, d/dx1, d/dr
  finish(s);
  return s;
}

Quaternion hopf_map(const Quaternion& x) { return x.conj() * i * x; }

Quaternion hopf_differential(const Quaternion& x, const std::array<double, 4>& v) {
  Quaternion q(v[0], v[1], v[2], v[3]);
  return q.conj() * i * x + x.conj() * i * q;
}

double xi_form(const Quaternion& x, const std::array<double, 4>& v) {
  return 2 * (-x.x * v[0] + x.w * v[1] - x.z * v[2] + x.y * v[3]);
}

Quaternion hopf_section(const std::array<double, 3>& X, double theta) {
  Quaternion v(0, X[0], X[1], X[2]);
  double r = v.norm();
  if (r == 0) throw std::domain_error("the Hopf section is undefined at X = 0");
  Quaternion u = v / r;
  // rot i rot^dagger = u
  Quaternion rot = one - u * i;
  if (rot.norm() < 1e-8)
    rot = j;
  else
    rot = rot / rot.norm();
  return std::sqrt(r) * (qexp(theta * i) * rot.conj());
}

std::array<std::array<double, 4>, 3> singular_lifts(const Quaternion& x) {
  const double s = 1.0 / (2 * x.norm2());
  const double x0 = x.w, x1 = x.x, x2 = x.y, x3 = x.z;
  return {{{s * x0, s * x1, -s * x2, -s * x3}, {-s * x3, s * x2, s * x1, -s * x0}, {s * x2, s * x3, s * x0, s * x1}}};
}

MonopoleSample higgs_singular(const StandardData& d, const RMat& rho, const std::array<double, 3>& X,
                              double section_theta, const FrameFn& gauge) {
  check_rho(d, rho);
  Quaternion x = hopf_section(X, section_theta);
  Quaternion target(0, X[0], X[1], X[2]);
  if (dist(hopf_map(x), target) > 1e-10 * std::max(1.0, target.norm()))
    throw std::runtime_error("Hopf section does not map back to X");
  const double nX = target.norm();
  FrameFn g = gauge ? gauge : anchored_gauge(d, kernel_frame(d, 1.0).V);
  QuatMatrix V = g(x);
  MonopoleSample s;
  s.X = X;
  s.Phi = (1.0 / (2 * nX)) * (V.adjoint() * singular_block(d, rho) * V);
  auto Amu = connection_fd(d, x, -1, g);
  auto w = singular_lifts(x);
  for (int l = 0; l < 3; ++l) {
    s.A[l] = QuatMatrix(d.n, d.n);
    for (int mu = 0; mu < 4; ++mu) s.A[l] += w[l][mu] * Amu[mu];
    Quaternion e = coord_unit(l + 1);
    s.lift_residual = std::max({s.lift_residual, dist(hopf_differential(x, w[l]), e), std::abs(xi_form(x, w[l]))});
  }
  finish(s);
  return s;
}

Quaternion orbit_point(const Sp2Element& Y, double theta, const Quaternion& x) {
  return conformal_point(ConformalElement::from_matrix(exp_sp2(Y, theta)), x);
}

double orbit_period(const Sp2Element& Y) {
  TorusForm tf = conjugate_to_torus(Y);
  const double w = std::max(std::abs(tf.a), std::abs(tf.b));
  if (w < 1e-12) throw std::domain_error("orbit_period: generator is zero");
  QuatMatrix I2 = QuatMatrix::identity(2);
  for (int m = 1; m <= 256; ++m) {
    double T = m * M_PI / w;
    QuatMatrix g = exp_sp2(Y, T);
    if ((g - I2).max_abs() < 1e-9 || (g + I2).max_abs() < 1e-9) return T;
  }
  throw std::domain_error("orbit_period: the one-parameter subgroup does not close");
}

HolonomySpectrum orbit_holonomy(const StandardData& d, const Sp2Element& Y, const Quaternion& x, int steps,
                                double period) {
  if (steps < 2) throw std::invalid_argument("orbit_holonomy needs at least two steps");
  if (period <= 0) period = orbit_period(Y);
  Quaternion back = orbit_point(Y, period, x);
  if (dist(back, x) > 1e-9 * std::max(1.0, x.norm())) throw std::domain_error("orbit does not close at the period");
  QuatMatrix V0 = kernel_frame(d, x).V;
  QuatMatrix U = V0;
  for (int s = 1; s <= steps; ++s) {
    QuatMatrix Vs = s == steps ? V0 : kernel_frame(d, orbit_point(Y, period * s / steps, x)).V;
    U = Vs * nearest_unitary_alignment(Vs.adjoint() * U);
  }
  QuatMatrix H = V0.adjoint() * U;
  Eigen::ComplexEigenSolver<CMat> es(embed_complex(H), false);
  HolonomySpectrum out;
  out.base = x;
  for (Eigen::Index r = 0; r < es.eigenvalues().size(); ++r) out.phases.push_back(std::arg(es.eigenvalues()(r)));
  std::sort(out.phases.begin(), out.phases.end());
  return out;
}

std::vector<HolonomySpectrum> orbit_holonomy_batch(const StandardData& d, const Sp2Element& Y,
                                                   const std::vector<Quaternion>& xs, int steps) {
  std::vector<HolonomySpectrum> out(xs.size());
  const double T = orbit_period(Y);
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (long q = 0; q < n; ++q) out[q] = orbit_holonomy(d, Y, xs[q], steps, T);
  return out;
}

std::vector<HolonomySpectrum> orbit_holonomy_batch_serial(const StandardData& d, const Sp2Element& Y,
                                                          const std::vector<Quaternion>& xs, int steps) {
  std::vector<HolonomySpectrum> out;
  const double T = orbit_period(Y);
  for (const auto& x : xs) out.push_back(orbit_holonomy(d, Y, x, steps, T));
  return out;
}

std::vector<MonopoleSample> hyperbolic_grid(const StandardData& d, const RMat& rho,
                                            const std::vector<std::array<double, 3>>& pts) {
  std::vector<MonopoleSample> out(pts.size());
  FrameFn g = anchored_gauge(d, kernel_frame(d, 0.0).V);
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (long q = 0; q < n; ++q) out[q] = higgs_hyperbolic(d, rho, pts[q], g);
  return out;
}

std::vector<MonopoleSample> hyperbolic_grid_serial(const StandardData& d, const RMat& rho,
                                                   const std::vector<std::array<double, 3>>& pts) {
  std::vector<MonopoleSample> out;
  FrameFn g = anchored_gauge(d, kernel_frame(d, 0.0).V);
  for (const auto& p : pts) out.push_back(higgs_hyperbolic(d, rho, p, g));
  return out;
}

double chakrabarti_profile(double C, double r) {
  if (!(C > 1)) throw std::domain_error("chakrabarti_profile needs C > 1");
  if (!(r > 0) || r == 1) throw std::domain_error("chakrabarti_profile needs r > 0, r != 1");
  const double twoC = 2 * C;
  const bool integral = std::abs(twoC - std::round(twoC)) < 1e-12;
  if (r > 1 && !integral) throw std::domain_error("chakrabarti_profile: r > 1 needs 2C integral");
  const double u = (1 + r) / (1 - r);
  const double p = integral ? std::pow(u, std::round(twoC)) : std::pow(u, twoC);
  return 0.5 * C * (p + 1) / (p - 1) - (r * r + 1) / (4 * r);
}

double chakrabarti_mass(double C) {
  if (!(C > 1)) throw std::domain_error("chakrabarti_mass needs C > 1");
  return (C - 1) / 2;
}

}  // namespace instsym
