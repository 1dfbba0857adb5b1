#include "instsym/liealg.hpp"

#include <cmath>
#include <stdexcept>

namespace instsym {

using namespace qunit;

Quaternion upsilon(int l) {
  switch (l) {
    case 0: return 0.5 * i;
    case 1: return 0.5 * j;
    case 2: return 0.5 * k;
  }
  throw std::out_of_range("upsilon index");
}

Sp2Element ms_generator() { return QuatMatrix{{0.0, 1.0}, {-1.0, 0.0}}; }

namespace {

QuatMatrix d2(Quaternion a, Quaternion b) { return QuatMatrix{{a, 0.0}, {0.0, b}}; }

std::vector<Sp2Element> h311() { return {d2(upsilon(0), upsilon(0)), d2(upsilon(1), upsilon(1)), d2(upsilon(2), upsilon(2))}; }
std::vector<Sp2Element> h41() { return {d2(upsilon(0), 0.0), d2(upsilon(1), 0.0), d2(upsilon(2), 0.0)}; }

std::vector<Sp2Element> h5() {
  const double s = std::sqrt(3.0) / 2;
  // printed in this order; the three are tau of i/2, j/2, k/2
  return {d2(0.5 * i, 1.5 * i), QuatMatrix{{j, s}, {-s, 0.0}}, QuatMatrix{{k, -s * i}, {-s * i, 0.0}}};
}

}  // namespace

const std::vector<std::string>& subalgebra_names() {
  static const std::vector<std::string> names{"r_t", "toral", "h311", "h41", "h5", "p311", "p41", "sp1sp1", "sp2"};
  return names;
}

std::vector<Sp2Element> subalgebra(const std::string& name, double t) {
  if (name == "r_t") return {d2(i, t * i)};
  if (name == "toral") return {d2(i, 0.0), d2(0.0, i)};
  if (name == "h311") return h311();
  if (name == "h41") return h41();
  if (name == "h5") return h5();
  if (name == "p311") {
    auto g = h311();
    g.push_back(ms_generator());
    return g;
  }
  if (name == "p41") {
    auto g = h41();
    g.push_back(d2(0.0, i));
    return g;
  }
  if (name == "sp1sp1") {
    auto g = h41();
    for (int l = 0; l < 3; ++l) g.push_back(d2(0.0, upsilon(l)));
    return g;
  }
  if (name == "sp2") {
    std::vector<Sp2Element> g{d2(i, 0.0), d2(j, 0.0), d2(k, 0.0), d2(0.0, i), d2(0.0, j), d2(0.0, k)};
    g.push_back(ms_generator());
    for (Quaternion q : {i, j, k}) g.push_back(QuatMatrix{{0.0, q}, {q, 0.0}});
    return g;
  }
  throw std::invalid_argument("unknown subalgebra: " + name);
}

StructureConstants structure_constants(const std::vector<QuatMatrix>& gens) {
  const int d = static_cast<int>(gens.size());
  StructureConstants c(d, std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0)));
  if (d == 0) return c;
  RMat basis(flatten(gens[0]).size(), d);
  for (int a = 0; a < d; ++a) basis.col(a) = flatten(gens[a]);
  Eigen::CompleteOrthogonalDecomposition<RMat> cod(basis);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      RVec coef = cod.solve(flatten(commutator(gens[a], gens[b])));
      for (int e = 0; e < d; ++e) c[a][b][e] = std::abs(coef[e]) < 1e-14 ? 0.0 : coef[e];
    }
  return c;
}

double bracket_closure_residual(const std::vector<QuatMatrix>& gens) {
  const int d = static_cast<int>(gens.size());
  if (d == 0) return 0;
  RMat basis(flatten(gens[0]).size(), d);
  for (int a = 0; a < d; ++a) basis.col(a) = flatten(gens[a]);
  Eigen::CompleteOrthogonalDecomposition<RMat> cod(basis);
  double worst = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      RVec br = flatten(commutator(gens[a], gens[b]));
      worst = std::max(worst, (basis * cod.solve(br) - br).norm());
    }
  return worst;
}

double anti_hermitian_residual(const QuatMatrix& x) { return (x + x.adjoint()).max_abs(); }

QuatMatrix exp_sp2(const Sp2Element& x, double theta) { return expm(theta * x); }

TorusForm conjugate_to_torus(const Sp2Element& x) {
  if (x.rows() != 2 || x.cols() != 2) throw DimensionError("conjugate_to_torus needs a 2x2 element");
  TorusForm out;
  if (x.max_abs() < 1e-300) {
    out.A = QuatMatrix::identity(2);
    return out;
  }
  CMat E = embed_complex(x);
  CMat H = cplx(0, -1) * E;
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (H + H.adjoint()));
  // ascending: -a, -b, b, a
  const auto& ev = es.eigenvalues();
  out.a = ev(3);
  out.b = std::max(0.0, ev(2));
  CMat u(4, 2);
  u.col(0) = es.eigenvectors().col(3);
  u.col(1) = es.eigenvectors().col(2);
  // u2 must also avoid the j-image of u1 (matters only when b = 0)
  CVec s1 = j_structure(u.col(0));
  u.col(1) -= s1 * s1.dot(u.col(1));
  u.col(1) -= u.col(0) * u.col(0).dot(u.col(1));
  for (int c = 0; c < 2; ++c) {
    Eigen::Index idx;
    u.col(c).cwiseAbs().maxCoeff(&idx);
    cplx ph = u(idx, c) / std::abs(u(idx, c));
    u.col(c) = u.col(c) / ph;
    u.col(c).normalize();
  }
  QuatMatrix V = unembed_columns(u);
  out.A = V.adjoint();
  return out;
}

}  // namespace instsym
