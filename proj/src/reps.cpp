#include "instsym/reps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace instsym {

const char* algebra_name(Algebra a) { return a == Algebra::sp1 ? "sp1" : "sp1_plus_sp1"; }

const char* field_name(Field f) {
  switch (f) {
    case Field::real: return "real";
    case Field::complex: return "complex";
    case Field::quaternionic: return "quaternionic";
  }
  return "?";
}

namespace {

constexpr cplx I1(0, 1);

struct Spin {
  CMat jx, jy, jz;
};

// spin (n-1)/2 in the basis m = j, j-1, ..., -j
Spin spin_matrices(int n) {
  const double j = 0.5 * (n - 1);
  CMat jp = CMat::Zero(n, n), jz = CMat::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    double m = j - r;
    jz(r, r) = m;
    if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  CMat jm = jp.adjoint();
  return {0.5 * (jp + jm), (jp - jm) / (2.0 * I1), jz};
}

// antiunitary structure C v = S conj(v), commuting with the irrep
RMat structure_map(int n) {
  if (n == 1) return RMat::Identity(1, 1);
  Spin s = spin_matrices(n);
  CMat S = (-I1 * M_PI * s.jy).exp();
  return S.real();
}

// Columns spanning the C-fixed real subspace (C^2 = +1).
CMat real_basis(const RMat& S) {
  const int n = static_cast<int>(S.rows());
  CMat W(n, n);
  int have = 0;
  for (int e = 0; e < n && have < n; ++e)
    for (cplx ph : {cplx(1, 0), I1}) {
      if (have == n) break;
      CVec v = CVec::Zero(n);
      v(e) = ph;
      CVec w = v + S.cast<cplx>() * v.conjugate();
      for (int pass = 0; pass < 2; ++pass)
        for (int p = 0; p < have; ++p) w -= W.col(p) * W.col(p).dot(w);
      double nw = w.norm();
      if (nw < 1e-8) continue;
      W.col(have++) = w / nw;
    }
  if (have != n) throw std::runtime_error("real structure extraction failed");
  return W;
}

// W = [u1, C u1, u2, C u2, ...] for C^2 = -1
CMat quaternionic_basis(const RMat& S) {
  const int n = static_cast<int>(S.rows());
  CMat W(n, n);
  int have = 0;
  for (int e = 0; e < n && have < n; ++e) {
    CVec w = CVec::Zero(n);
    w(e) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < have; ++p) w -= W.col(p) * W.col(p).dot(w);
    double nw = w.norm();
    if (nw < 1e-8) continue;
    w /= nw;
    W.col(have++) = w;
    W.col(have++) = S.cast<cplx>() * w.conjugate();
  }
  if (have != n) throw std::runtime_error("quaternionic structure extraction failed");
  return W;
}

std::vector<CMat> conjugate_all(const std::vector<CMat>& gens, const CMat& W) {
  std::vector<CMat> out;
  for (const auto& g : gens) out.push_back(W.adjoint() * g * W);
  return out;
}

std::vector<CMat> realified(const std::vector<CMat>& gens) {
  std::vector<CMat> out;
  for (const auto& y : gens) {
    const Eigen::Index n = y.rows();
    RMat r(2 * n, 2 * n);
    r << y.real(), -y.imag(), y.imag(), y.real();
    out.push_back(r.cast<cplx>());
  }
  return out;
}

std::vector<CMat> force_real(const std::vector<CMat>& gens) {
  std::vector<CMat> out;
  for (const auto& g : gens) {
    if (g.imag().norm() > 1e-10 * std::max(1.0, g.norm())) throw std::runtime_error("real form produced complex generators");
    // orthonormal real basis: the generator is antisymmetric up to rounding, so make it exact
    RMat a = g.real();
    out.push_back((0.5 * (a - a.transpose())).cast<cplx>());
  }
  return out;
}

}  // namespace

Representation complex_irrep_sp1(int n) {
  if (n < 1) throw std::invalid_argument("irrep dimension must be >= 1");
  Spin s = spin_matrices(n);
  Representation r;
  r.algebra = Algebra::sp1;
  r.field = Field::complex;
  r.dim = n;
  r.generators = {I1 * s.jz, I1 * s.jy, I1 * s.jx};
  r.constituents = {{{n}, 1}};
  r.label = "V" + std::to_string(n);
  return r;
}

RMat left_mult_matrix(const Quaternion& q) {
  RMat m(4, 4);
  const Quaternion basis[4] = {qunit::one, qunit::i, qunit::j, qunit::k};
  for (int c = 0; c < 4; ++c) {
    Quaternion p = q * basis[c];
    m.col(c) << p.w, p.x, p.y, p.z;
  }
  return m;
}

RMat right_mult_matrix(const Quaternion& q) {
  RMat m(4, 4);
  const Quaternion basis[4] = {qunit::one, qunit::i, qunit::j, qunit::k};
  for (int c = 0; c < 4; ++c) {
    Quaternion p = basis[c] * q;
    m.col(c) << p.w, p.x, p.y, p.z;
  }
  return m;
}

RMat realify_left(const QuatMatrix& q) {
  RMat m = RMat::Zero(4 * q.rows(), 4 * q.cols());
  for (int a = 0; a < q.rows(); ++a)
    for (int b = 0; b < q.cols(); ++b) m.block(4 * a, 4 * b, 4, 4) = left_mult_matrix(q(a, b));
  return m;
}

Representation real_irrep_sp1(int n) {
  if (n < 1) throw std::invalid_argument("irrep dimension must be >= 1");
  Representation r;
  r.algebra = Algebra::sp1;
  r.field = Field::real;
  r.dim = n;
  r.label = "R" + std::to_string(n);
  if (n % 2 == 1) {
    Representation c = complex_irrep_sp1(n);
    r.generators = force_real(conjugate_all(c.generators, real_basis(structure_map(n))));
    r.constituents = {{{n}, 1}};
    return r;
  }
  if (n % 4 != 0) throw std::invalid_argument("no real irreducible representation of dimension 2 mod 4");
  const int m = n / 2;
  Representation c = complex_irrep_sp1(m);
  CMat W = quaternionic_basis(structure_map(m));
  for (const auto& y : conjugate_all(c.generators, W)) r.generators.push_back(realify_left(unembed(y)).cast<cplx>());
  r.generators = force_real(r.generators);
  r.constituents = {{{m}, 2}};
  return r;
}

Representation irrep_spin4(int m, int n, Field field) {
  if (m < 1 || n < 1) throw std::invalid_argument("spin4 labels must be >= 1");
  Representation a = complex_irrep_sp1(m), b = complex_irrep_sp1(n);
  std::vector<CMat> gens;
  CMat Im = CMat::Identity(m, m), In = CMat::Identity(n, n);
  for (const auto& y : a.generators) gens.push_back(Eigen::kroneckerProduct(y, In).eval());
  for (const auto& y : b.generators) gens.push_back(Eigen::kroneckerProduct(Im, y).eval());
  Representation r;
  r.algebra = Algebra::sp1_plus_sp1;
  r.field = field;
  r.label = (field == Field::complex ? "V" : "R") + std::to_string(m) + "," + std::to_string(n);
  if (field == Field::complex) {
    r.dim = m * n;
    r.generators = gens;
    r.constituents = {{{m, n}, 1}};
    return r;
  }
  if (field != Field::real) throw std::invalid_argument("spin4 irreps are built over R or C");
  if ((m - n) % 2 == 0) {
    RMat S = Eigen::kroneckerProduct(structure_map(m), structure_map(n));
    r.dim = m * n;
    r.generators = force_real(conjugate_all(gens, real_basis(S)));
    r.constituents = {{{m, n}, 1}};
  } else {
    r.dim = 2 * m * n;
    r.generators = force_real(realified(gens));
    r.constituents = {{{m, n}, 2}};
  }
  return r;
}

Representation trivial_rep(Algebra a, int dim, Field field) {
  Representation r;
  r.algebra = a;
  r.field = field;
  r.dim = dim;
  int ng = a == Algebra::sp1 ? 3 : 6;
  for (int l = 0; l < ng; ++l) r.generators.push_back(CMat::Zero(dim, dim));
  if (dim > 0) r.constituents = {{a == Algebra::sp1 ? std::vector<int>{1} : std::vector<int>{1, 1}, dim}};
  r.label = "trivial" + std::to_string(dim);
  return r;
}

Representation direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty direct sum");
  Representation r;
  r.algebra = parts[0].algebra;
  r.field = parts[0].field;
  int ng = parts[0].num_generators();
  for (const auto& p : parts) {
    if (p.algebra != r.algebra) throw std::invalid_argument("direct sum over different algebras");
    r.dim += p.dim;
    for (const auto& c : p.constituents) r.constituents.push_back(c);
    r.label += (r.label.empty() ? "" : "+") + p.label;
  }
  for (int l = 0; l < ng; ++l) {
    CMat g = CMat::Zero(r.dim, r.dim);
    int off = 0;
    for (const auto& p : parts) {
      g.block(off, off, p.dim, p.dim) = p.generators[l];
      off += p.dim;
    }
    r.generators.push_back(g);
  }
  return r;
}

Representation quaternion_left_rep() {
  Representation r;
  r.algebra = Algebra::sp1;
  r.field = Field::real;
  r.dim = 4;
  for (Quaternion q : {0.5 * qunit::i, 0.5 * qunit::j, 0.5 * qunit::k}) r.generators.push_back(left_mult_matrix(q).cast<cplx>());
  r.constituents = {{{2}, 2}};
  r.label = "iota";
  return r;
}

Representation adjoint_rep() {
  Representation r;
  r.algebra = Algebra::sp1;
  r.field = Field::real;
  r.dim = 3;
  for (Quaternion u : {0.5 * qunit::i, 0.5 * qunit::j, 0.5 * qunit::k}) {
    RMat full = left_mult_matrix(u) - right_mult_matrix(u);
    r.generators.push_back(full.block(1, 1, 3, 3).cast<cplx>());
  }
  r.constituents = {{{3}, 1}};
  r.label = "ad";
  return r;
}

Representation quaternion_bimodule_rep() {
  Representation r;
  r.algebra = Algebra::sp1_plus_sp1;
  r.field = Field::real;
  r.dim = 4;
  for (Quaternion q : {0.5 * qunit::i, 0.5 * qunit::j, 0.5 * qunit::k}) r.generators.push_back(left_mult_matrix(q).cast<cplx>());
  for (Quaternion q : {0.5 * qunit::i, 0.5 * qunit::j, 0.5 * qunit::k}) r.generators.push_back((-right_mult_matrix(q)).cast<cplx>());
  r.constituents = {{{2, 2}, 1}};
  r.label = "nu";
  return r;
}

double bracket_residual(const Representation& r) {
  // [Y_l, Y_m] = eps_lmp Y_p within each sp(1) slot; slots commute
  double worst = 0;
  const int slots = r.algebra == Algebra::sp1 ? 1 : 2;
  for (int s = 0; s < slots; ++s)
    for (int l = 0; l < 3; ++l) {
      const CMat& a = r.generators[3 * s + l];
      const CMat& b = r.generators[3 * s + (l + 1) % 3];
      const CMat& c = r.generators[3 * s + (l + 2) % 3];
      worst = std::max(worst, (a * b - b * a - c).norm());
    }
  if (slots == 2)
    for (int l = 0; l < 3; ++l)
      for (int m = 3; m < 6; ++m) {
        const CMat& a = r.generators[l];
        const CMat& b = r.generators[m];
        worst = std::max(worst, (a * b - b * a).norm());
      }
  return worst;
}

CMat casimir(const Representation& r) {
  CMat c = CMat::Zero(r.dim, r.dim);
  for (int l = 0; l < 3; ++l) c += r.generators[l] * r.generators[l];
  return c;
}

TensorSpec tensor(const Representation& a, bool dual_a, const Representation& b, bool dual_b,
                  const Representation& c, bool dual_c) {
  return {{a, b, c}, {dual_a, dual_b, dual_c}};
}

namespace {

// V_a (x) V_b (x) V_c of sp(1) has an invariant iff the spins close a triangle with integer sum.
int triangle(int a, int b, int c) {
  if ((a + b + c) % 2 == 0) return 0;
  if (c > a + b - 1) return 0;
  if (c < std::abs(a - b) + 1) return 0;
  return 1;
}

void check_shape(const TensorSpec& spec) {
  if (spec.factors.size() != 3 || spec.dual.size() != 3) throw UnsupportedShape("tensor spec must have three factors");
  for (const auto& f : spec.factors)
    if (f.algebra != spec.factors[0].algebra) throw UnsupportedShape("factors over different algebras");
}

std::vector<CMat> factor_gens(const Representation& r, bool dual) {
  std::vector<CMat> g;
  for (const auto& y : r.generators) g.push_back(dual ? CMat(-y.transpose()) : y);
  return g;
}

bool all_real(const TensorSpec& spec) {
  return std::all_of(spec.factors.begin(), spec.factors.end(), [](const Representation& r) { return r.field == Field::real; });
}

CMat reshape_vec(const CVec& v, int d1, int rest) {
  CMat m(d1, rest);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < rest; ++b) m(a, b) = v(static_cast<Eigen::Index>(a) * rest + b);
  return m;
}

// Orthonormal real basis of the real span of complex vectors (columns).
RMat real_span(const CMat& vecs, int expected) {
  RMat stacked(vecs.rows(), 2 * vecs.cols());
  stacked << vecs.real(), vecs.imag();
  Eigen::JacobiSVD<RMat> svd(stacked, Eigen::ComputeThinU);
  RMat u = svd.matrixU().leftCols(expected);
  return u;
}

InvariantResult finish_basis(const TensorSpec& spec, const CMat& null_vecs, bool real) {
  InvariantResult out;
  const int d1 = spec.factors[0].dim;
  const int rest = spec.factors[1].dim * spec.factors[2].dim;
  out.dim = static_cast<int>(null_vecs.cols());
  if (real) {
    RMat rb = real_span(null_vecs, out.dim);
    for (int c = 0; c < out.dim; ++c) {
      CMat m = reshape_vec(rb.col(c).cast<cplx>(), d1, rest);
      normalize_phase(m);
      out.basis.push_back(m);
    }
  } else {
    for (int c = 0; c < out.dim; ++c) {
      CMat m = reshape_vec(null_vecs.col(c), d1, rest);
      normalize_phase(m);
      out.basis.push_back(m);
    }
  }
  return out;
}

}  // namespace

void normalize_phase(CMat& m) {
  double nrm = m.norm();
  if (nrm == 0) return;
  m /= nrm;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      cplx z = m(r, c);
      if (std::abs(z) <= 1e-12) continue;
      if (std::abs(z.imag()) <= 1e-12) {
        if (z.real() < 0) m = -m;
      } else {
        m *= std::conj(z) / std::abs(z);
      }
      return;
    }
}

int trivial_summand_count(const TensorSpec& spec) {
  check_shape(spec);
  const auto& f = spec.factors;
  int total = 0;
  for (const auto& c0 : f[0].constituents)
    for (const auto& c1 : f[1].constituents)
      for (const auto& c2 : f[2].constituents) {
        int t = c0.multiplicity * c1.multiplicity * c2.multiplicity;
        for (size_t s = 0; s < c0.labels.size(); ++s) t *= triangle(c0.labels[s], c1.labels[s], c2.labels[s]);
        total += t;
      }
  return total;
}

InvariantResult numeric_invariants_dense(const TensorSpec& spec, bool want_basis) {
  check_shape(spec);
  const auto& f = spec.factors;
  const int d0 = f[0].dim, d1 = f[1].dim, d2 = f[2].dim;
  const int D = d0 * d1 * d2;
  const int ng = f[0].num_generators();
  std::vector<std::vector<CMat>> g(3);
  for (int s = 0; s < 3; ++s) g[s] = factor_gens(f[s], spec.dual[s]);
  CMat I0 = CMat::Identity(d0, d0), I1m = CMat::Identity(d1, d1), I2 = CMat::Identity(d2, d2);
  CMat H = CMat::Zero(D, D);
  for (int l = 0; l < ng; ++l) {
    CMat G = Eigen::kroneckerProduct(g[0][l], Eigen::kroneckerProduct(I1m, I2).eval()).eval();
    G += Eigen::kroneckerProduct(I0, Eigen::kroneckerProduct(g[1][l], I2).eval()).eval();
    G += Eigen::kroneckerProduct(I0, Eigen::kroneckerProduct(I1m, g[2][l]).eval()).eval();
    H += G.adjoint() * G;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  const auto& ev = es.eigenvalues();
  double top = std::max(1.0, ev(D - 1));
  int nul = 0;
  while (nul < D && ev(nul) <= 1e-9 * top) ++nul;
  if (!want_basis) return {nul, {}};
  return finish_basis(spec, es.eigenvectors().leftCols(nul), all_real(spec));
}

InvariantResult numeric_invariants_weight(const TensorSpec& spec, bool want_basis) {
  check_shape(spec);
  const auto& f = spec.factors;
  const int ng = f[0].num_generators();
  const double mix = std::sqrt(2.0);
  std::vector<std::vector<CMat>> g(3);
  std::vector<CMat> vecs(3);
  std::vector<RVec> wts(3);
  for (int s = 0; s < 3; ++s) {
    g[s] = factor_gens(f[s], spec.dual[s]);
    CMat h = g[s][0];
    if (ng == 6) h += mix * g[s][3];
    CMat herm = I1 * h;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (herm + herm.adjoint()));
    vecs[s] = es.eigenvectors();
    wts[s] = es.eigenvalues();
  }
  // zero-weight triples
  std::vector<std::array<int, 3>> idx;
  for (int a = 0; a < f[0].dim; ++a)
    for (int b = 0; b < f[1].dim; ++b)
      for (int c = 0; c < f[2].dim; ++c)
        if (std::abs(wts[0](a) + wts[1](b) + wts[2](c)) < 1e-8) idx.push_back({a, b, c});
  const int K = static_cast<int>(idx.size());
  if (K == 0) return {0, {}};

  // inner products <Y e_a, Y e_b>, <Y e_a, e_b>, in the eigenbasis of each factor
  std::vector<std::vector<CMat>> yy(3), ye(3);
  for (int s = 0; s < 3; ++s)
    for (int l = 0; l < ng; ++l) {
      CMat ya = g[s][l] * vecs[s];
      yy[s].push_back(ya.adjoint() * ya);
      ye[s].push_back(ya.adjoint() * vecs[s]);
    }
  CMat H = CMat::Zero(K, K);
  for (int t = 0; t < K; ++t)
    for (int u = t; u < K; ++u) {
      cplx acc = 0;
      const auto& A = idx[t];
      const auto& B = idx[u];
      for (int l = 0; l < ng; ++l)
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) {
            cplx term = 1;
            for (int s = 0; s < 3 && term != cplx(0); ++s) {
              if (s == p && s == q) term *= yy[s][l](A[s], B[s]);
              else if (s == p) term *= ye[s][l](A[s], B[s]);
              else if (s == q) term *= std::conj(ye[s][l](B[s], A[s]));
              else term *= (A[s] == B[s]) ? 1.0 : 0.0;
            }
            acc += term;
          }
      H(t, u) = acc;
      H(u, t) = std::conj(acc);
    }
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  const auto& ev = es.eigenvalues();
  double top = std::max(1.0, ev(K - 1));
  int nul = 0;
  while (nul < K && ev(nul) <= 1e-9 * top) ++nul;
  if (!want_basis) return {nul, {}};
  const int d1 = f[1].dim, d2 = f[2].dim;
  const int D = f[0].dim * d1 * d2;
  CMat full = CMat::Zero(D, nul);
  for (int c = 0; c < nul; ++c)
    for (int t = 0; t < K; ++t) {
      cplx coef = es.eigenvectors()(t, c);
      if (std::abs(coef) < 1e-15) continue;
      const auto& A = idx[t];
      for (int a = 0; a < f[0].dim; ++a)
        for (int b = 0; b < d1; ++b)
          for (int e = 0; e < d2; ++e)
            full((static_cast<Eigen::Index>(a) * d1 + b) * d2 + e, c) +=
                coef * vecs[0](a, A[0]) * vecs[1](b, A[1]) * vecs[2](e, A[2]);
    }
  return finish_basis(spec, full, all_real(spec));
}

InvariantResult numeric_invariants(const TensorSpec& spec, bool want_basis) {
  check_shape(spec);
  long D = 1;
  for (const auto& f : spec.factors) D *= f.dim;
  return D <= 300 ? numeric_invariants_dense(spec, want_basis) : numeric_invariants_weight(spec, want_basis);
}

std::vector<CMat> trivial_summand_basis(const TensorSpec& spec) {
  int expected = trivial_summand_count(spec);
  InvariantResult r = numeric_invariants(spec, true);
  if (r.dim != expected)
    throw ConsistencyError("closed-form count " + std::to_string(expected) + " but numeric nullspace has dimension " +
                           std::to_string(r.dim));
  return r.basis;
}

int intertwiner_dim(const Representation& r1, const Representation& r2) {
  if (r1.num_generators() != r2.num_generators()) throw std::invalid_argument("intertwiner between different algebras");
  const int d1 = r1.dim, d2 = r2.dim, D = d1 * d2;
  CMat I1m = CMat::Identity(d1, d1), I2 = CMat::Identity(d2, d2);
  CMat H = CMat::Zero(D, D);
  for (int l = 0; l < r1.num_generators(); ++l) {
    // vec_row(Y2 T - T Y1) = (Y2 (x) I - I (x) Y1^T) vec_row(T)
    CMat G = Eigen::kroneckerProduct(r2.generators[l], I1m).eval() -
             Eigen::kroneckerProduct(I2, r1.generators[l].transpose()).eval();
    H += G.adjoint() * G;
  }
  if (r1.field == Field::real && r2.field == Field::real) {
    Eigen::SelfAdjointEigenSolver<RMat> es(H.real());
    double top = std::max(1.0, es.eigenvalues()(D - 1));
    int nul = 0;
    while (nul < D && es.eigenvalues()(nul) <= 1e-9 * top) ++nul;
    return nul;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  double top = std::max(1.0, es.eigenvalues()(D - 1));
  int nul = 0;
  while (nul < D && es.eigenvalues()(nul) <= 1e-9 * top) ++nul;
  return nul;
}

std::vector<double> weight_multiset(const Representation& r, int generator) {
  CMat h = I1 * r.generators.at(generator);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> w(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return w;
}

}  // namespace instsym
