// Shared helpers for the unit tests and the acceptance binary.
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "instsym/adhm.hpp"
#include "instsym/symmetry.hpp"

namespace testsupport {

using namespace instsym;

inline Quaternion random_quat(std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng), n(rng), n(rng)};
}

inline QuatMatrix random_qmat(int r, int c, std::mt19937& rng, double scale = 1.0) {
  QuatMatrix m(r, c);
  for (auto& q : m.data()) q = random_quat(rng, scale);
  return m;
}

inline QuatMatrix random_symmetric(int k, std::mt19937& rng, double scale = 1.0) {
  QuatMatrix m = random_qmat(k, k, rng, scale);
  return 0.5 * (m + m.transpose());
}

inline QuatMatrix random_symplectic(int n, std::mt19937& rng) {
  return nearest_unitary_alignment(random_qmat(n, n, rng));
}

inline RMat random_real(int r, int c, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  RMat m(r, c);
  for (Eigen::Index a = 0; a < m.size(); ++a) m.data()[a] = n(rng);
  return m;
}

inline bool is_valid(const StandardData& d) {
  GridSpec g;
  g.step_frac = 0.25;
  return validate(d, g).ok();
}

inline QuatMatrix hermitian_sqrt(const QuatMatrix& h);

// Random standard data that passes validation. R has to come out real: for n = k take
// L = sqrt(cI - M^dagger M), otherwise build M from commuting real parts and L = Q L_real.
inline StandardData random_standard(int n, int k, std::mt19937& rng, double m_scale = 0.3) {
  if (n > k) throw std::invalid_argument("standard data needs n <= k");
  for (;;) {
    QuatMatrix M, L;
    if (n == k) {
      M = random_symmetric(k, rng, m_scale);
      L = random_symplectic(n, rng) * hermitian_sqrt((1.0 + sigma_max(M) * sigma_max(M)) * QuatMatrix::identity(k) -
                                                      M.adjoint() * M);
    } else {
      RMat a = random_real(k, k, rng);
      RMat A = m_scale * 0.5 * (a + a.transpose());
      std::normal_distribution<double> nd(0.0, 1.0);
      RMat f = nd(rng) * A + nd(rng) * A * A, g = nd(rng) * A * A;
      M = QuatMatrix::from_real(A) + qunit::i * QuatMatrix::from_real(f) + qunit::j * QuatMatrix::from_real(g);
      L = random_symplectic(n, rng) * QuatMatrix::from_real(random_real(n, k, rng));
    }
    StandardData d(L, M);
    if (is_valid(d)) return d;
  }
}

// Random pair gauge-equivalent to valid standard data; K is kept well conditioned.
inline ADHMPair random_pair(int n, int k, std::mt19937& rng) {
  StandardData d = random_standard(n, k, rng);
  GaugeElement g{random_symplectic(n + k, rng), RMat::Identity(k, k) + 0.3 * random_real(k, k, rng)};
  return gauge_apply(g, d.pair());
}

// Hermitian square root on the complex embedding; functional calculus keeps the j-structure.
inline QuatMatrix hermitian_sqrt(const QuatMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(embed_complex(h));
  RVec s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  CMat r = es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return unembed(r);
}

// Block rotation generator: 2x2 blocks freq * [[0,1],[-1,0]], plus a zero row when k is odd.
inline RMat block_generator(const std::vector<double>& freqs, int k) {
  RMat rho = RMat::Zero(k, k);
  for (size_t b = 0; b < freqs.size(); ++b) {
    int r = 2 * static_cast<int>(b);
    rho(r, r + 1) = freqs[b];
    rho(r + 1, r) = -freqs[b];
  }
  return rho;
}

struct SyntheticCircular {
  StandardData data;
  RMat rho;
  double t;
  int t_num, t_den;
};

// Circular-t certificate whose blocks share an irrational frequency offset. The M block
// is drawn from the solution space for that generator and L is chosen so R = c I.
inline SyntheticCircular synthetic_circular(int t_num, int t_den, std::mt19937& rng) {
  const double t = static_cast<double>(t_num) / t_den;
  std::uniform_int_distribution<int> half(-3, 3);
  std::uniform_int_distribution<int> blocks(1, 2);
  std::uniform_real_distribution<double> off(0.1, 0.9);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (;;) {
    const int nb = blocks(rng);
    const int k = 2 * nb + (rng() % 2 == 0 ? 0 : 1);
    const double s = off(rng) * std::sqrt(2.0);
    std::vector<double> freqs;
    for (int b = 0; b < nb; ++b) freqs.push_back(s + 0.5 * half(rng));
    RMat rho = block_generator(freqs, k);
    auto basis = solve_M_space({rho}, {KindTag::circular, t});
    if (basis.empty()) continue;
    QuatMatrix M(k, k);
    for (const auto& b : basis) M += nd(rng) * b;
    M *= 0.4 / std::max(1e-12, sigma_max(M));
    const double c = 1.0;
    QuatMatrix L = hermitian_sqrt(c * QuatMatrix::identity(k) - M.adjoint() * M);
    StandardData d(L, M);
    return {d, rho, t, t_num, t_den};
  }
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0;
  for (size_t q = 0; q < a.size(); ++q) m = std::max(m, std::abs(a[q] - b[q]));
  return m;
}

}  // namespace testsupport
