#include "instsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace instsym {

using namespace qunit;

std::string kind_name(const SymmetryKind& k) {
  switch (k.tag) {
    case KindTag::circular: return "circular";
    case KindTag::toral: return "toral";
    case KindTag::simple_spherical: return "simple_spherical";
    case KindTag::isoclinic_spherical: return "isoclinic_spherical";
    case KindTag::conformal_spherical: return "conformal_spherical";
    case KindTag::isoclinic_superspherical: return "isoclinic_superspherical";
    case KindTag::conformal_superspherical: return "conformal_superspherical";
    case KindTag::rotational: return "rotational";
    case KindTag::full: return "full";
    case KindTag::ms_circle: return "ms_circle";
  }
  return "?";
}

std::optional<SymmetryKind> parse_kind(const std::string& name, double t) {
  static const KindTag all[] = {KindTag::circular,
                                KindTag::toral,
                                KindTag::simple_spherical,
                                KindTag::isoclinic_spherical,
                                KindTag::conformal_spherical,
                                KindTag::isoclinic_superspherical,
                                KindTag::conformal_superspherical,
                                KindTag::rotational,
                                KindTag::full,
                                KindTag::ms_circle};
  for (KindTag tag : all) {
    SymmetryKind k{tag, 0};
    if (kind_name(k) != name) continue;
    if (tag == KindTag::circular) {
      if (!(t >= 0 && t <= 1)) return std::nullopt;
      k.t = t;
    }
    return k;
  }
  return std::nullopt;
}

bool is_conformal(const SymmetryKind& k) {
  return k.tag == KindTag::conformal_spherical || k.tag == KindTag::conformal_superspherical ||
         k.tag == KindTag::full || k.tag == KindTag::ms_circle;
}

std::vector<Sp2Element> kind_algebra(const SymmetryKind& k) {
  switch (k.tag) {
    case KindTag::circular: return subalgebra("r_t", k.t);
    case KindTag::toral: return subalgebra("toral");
    case KindTag::simple_spherical: return subalgebra("h311");
    case KindTag::isoclinic_spherical: return subalgebra("h41");
    case KindTag::conformal_spherical: return subalgebra("h5");
    case KindTag::isoclinic_superspherical: return subalgebra("p41");
    case KindTag::conformal_superspherical: return subalgebra("p311");
    case KindTag::rotational: return subalgebra("sp1sp1");
    case KindTag::full: return subalgebra("sp2");
    case KindTag::ms_circle: return {ms_generator()};
  }
  return {};
}

int num_generators(const SymmetryKind& k) { return static_cast<int>(kind_algebra(k).size()); }

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::solvable: return "solvable";
    case SolveStatus::empty: return "empty";
    case SolveStatus::indeterminate: return "indeterminate";
    case SolveStatus::no_homomorphism: return "no_homomorphism";
  }
  return "?";
}

namespace {

// The so(k) kinds: T_l(M) + [rho_l, M] = 0 with T_l fixed by the kind.
QuatMatrix kind_term(const SymmetryKind& kind, int l, const QuatMatrix& M) {
  switch (kind.tag) {
    case KindTag::circular: return kind.t * (M * i) - i * M;
    case KindTag::toral: return l == 0 ? -(i * M) : M * i;
    case KindTag::simple_spherical: return upsilon(l) * M - M * upsilon(l);
    case KindTag::isoclinic_spherical: return upsilon(l) * M;
    case KindTag::isoclinic_superspherical: return l < 3 ? upsilon(l) * M : -2.0 * (M * i);
    case KindTag::rotational: return l < 3 ? upsilon(l) * M : -(M * upsilon(l - 3));
    default: break;
  }
  throw std::logic_error("kind_term on a conformal kind");
}

// Basis of so(k): E_ab - E_ba for a < b.
int so_dim(int k) { return k * (k - 1) / 2; }
QuatMatrix so_element(const RVec& z, int k) {
  QuatMatrix r(k, k);
  int c = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b, ++c) {
      r(a, b) = Quaternion(z[c]);
      r(b, a) = Quaternion(-z[c]);
    }
  return r;
}

// Basis of sp(N): unit imaginary diagonals, then q at (a,b) and -conj(q) at (b,a).
int sp_dim(int N) { return N * (2 * N + 1); }
QuatMatrix sp_element(const RVec& z, int N) {
  QuatMatrix r(N, N);
  int c = 0;
  for (int a = 0; a < N; ++a) {
    r(a, a) = Quaternion(0, z[c], z[c + 1], z[c + 2]);
    c += 3;
  }
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Quaternion q(z[c], z[c + 1], z[c + 2], z[c + 3]);
      c += 4;
      r(a, b) = q;
      r(b, a) = -q.conj();
    }
  return r;
}

RVec concat(const std::vector<RVec>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.size();
  RVec out(n);
  n = 0;
  for (const auto& p : parts) {
    out.segment(n, p.size()) = p;
    n += p.size();
  }
  return out;
}

struct Context {
  const StandardData& d;
  SymmetryKind kind;
  bool conformal;
  std::vector<Sp2Element> algebra;
  QuatMatrix Mh, U, Ut, R;
  std::vector<std::pair<QuatMatrix, QuatMatrix>> acted;  // (Mhat_Y, U_Y) per generator

  Context(const StandardData& data, const SymmetryKind& k)
      : d(data), kind(k), conformal(is_conformal(k)), algebra(kind_algebra(k)) {
    Mh = d.mhat();
    U = d.U();
    Ut = U.adjoint();
    R = d.R();
    if (conformal)
      for (const auto& ups : algebra) acted.push_back(lie_action(Mh, U, ups));
  }

  int N() const { return d.n + d.k; }
  int params() const { return conformal ? sp_dim(N()) : so_dim(d.k); }
  QuatMatrix element(const RVec& z) const { return conformal ? sp_element(z, N()) : so_element(z, d.k); }

  // Stacked pieces of each constraint for generator l.
  std::vector<RVec> equation_parts(int l, const QuatMatrix& rho) const {
    if (!conformal) {
      QuatMatrix e = kind_term(kind, l, d.M) + commutator(rho, d.M);
      return {flatten(e), flatten(commutator(rho, R))};
    }
    const auto& [MhY, UY] = acted[l];
    QuatMatrix lam = Ut * rho * U - Ut * UY;
    QuatMatrix e1 = rho * Mh - MhY - Mh * lam;
    QuatMatrix e2 = rho * U - UY - U * lam;
    return {flatten(e1), flatten(e2), flatten(lam.vec_part())};
  }
  RVec equation(int l, const QuatMatrix& rho) const { return concat(equation_parts(l, rho)); }

  // Affine map z -> A z - b with A z - b = equation(element(z)).
  void assemble(int l, RMat& A, RVec& b) const {
    const int p = params();
    RVec z = RVec::Zero(p);
    RVec f0 = equation(l, element(z));
    A.resize(f0.size(), p);
    for (int c = 0; c < p; ++c) {
      z.setZero();
      z[c] = 1;
      A.col(c) = equation(l, element(z)) - f0;
    }
    b = -f0;
  }
};

void check_shape(const Context& ctx, const SymmetryCertificate& c) {
  const int want = static_cast<int>(ctx.algebra.size());
  if (static_cast<int>(c.generators.size()) != want)
    throw DimensionError("certificate has " + std::to_string(c.generators.size()) + " generators, kind needs " +
                         std::to_string(want));
  const int sz = ctx.conformal ? ctx.N() : ctx.d.k;
  for (const auto& g : c.generators)
    if (g.rows() != sz || g.cols() != sz) throw DimensionError("certificate generator has the wrong size");
}

struct Brackets {
  StructureConstants c;
  int dim = 0;
};

Brackets brackets_for(const SymmetryKind& k) {
  auto alg = kind_algebra(k);
  return {structure_constants(alg), static_cast<int>(alg.size())};
}

RVec bracket_defect(const Brackets& br, const std::vector<QuatMatrix>& rho) {
  std::vector<RVec> parts;
  for (int a = 0; a < br.dim; ++a)
    for (int b = a + 1; b < br.dim; ++b) {
      QuatMatrix e = commutator(rho[a], rho[b]);
      for (int c = 0; c < br.dim; ++c)
        if (br.c[a][b][c] != 0) e -= br.c[a][b][c] * rho[c];
      parts.push_back(flatten(e));
    }
  if (parts.empty()) return RVec::Zero(0);
  return concat(parts);
}

}  // namespace

double residual(const StandardData& d, const SymmetryCertificate& c) {
  Context ctx(d, c.kind);
  check_shape(ctx, c);
  double worst = 0;
  for (size_t l = 0; l < c.generators.size(); ++l) {
    const QuatMatrix& g = c.generators[l];
    if (ctx.conformal)
      worst = std::max(worst, anti_hermitian_residual(g));
    else
      worst = std::max({worst, g.vec_part().norm(), (g + g.transpose()).norm()});
    for (const RVec& part : ctx.equation_parts(static_cast<int>(l), g)) worst = std::max(worst, part.norm());
  }
  return worst;
}

double homomorphism_residual(const SymmetryCertificate& c) {
  Brackets br = brackets_for(c.kind);
  if (static_cast<int>(c.generators.size()) != br.dim) throw DimensionError("certificate size does not match kind");
  RVec f = bracket_defect(br, c.generators);
  return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
}

namespace {

struct GeneratorSolution {
  RVec z0;    // min-norm particular solution
  RMat kern;  // columns spanning the kernel
  double eta = 0;
};

GeneratorSolution solve_linear(const Context& ctx, int l, double kernel_tol) {
  RMat A;
  RVec b;
  ctx.assemble(l, A, b);
  GeneratorSolution s;
  const Eigen::Index p = A.cols();
  if (p == 0) {
    s.z0 = RVec::Zero(0);
    s.kern = RMat::Zero(0, 0);
    s.eta = b.norm() > 0 ? 1.0 : 0.0;
    return s;
  }
  Eigen::BDCSVD<RMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index r = 0; r < sv.size(); ++r)
    if (sv(r) > kernel_tol * smax) ++rank;
  RVec utb = svd.matrixU().leftCols(rank).adjoint() * b;
  for (Eigen::Index r = 0; r < rank; ++r) utb(r) /= sv(r);
  s.z0 = svd.matrixV().leftCols(rank) * utb;
  s.kern = svd.matrixV().rightCols(p - rank);
  double denom = smax * s.z0.norm() + b.norm();
  s.eta = denom > 0 ? (A * s.z0 - b).norm() / denom : 0.0;
  return s;
}

// Levenberg-Marquardt on the bracket equations over rho_l = z0_l + N_l c_l.
struct Refined {
  std::vector<QuatMatrix> rho;
  double defect = 0;
};

Refined refine_homomorphism(const Context& ctx, const Brackets& br, const std::vector<GeneratorSolution>& sols,
                            const SolveOptions& opt) {
  const int g = static_cast<int>(sols.size());
  std::vector<Eigen::Index> offset(g + 1, 0);
  for (int l = 0; l < g; ++l) offset[l + 1] = offset[l] + sols[l].kern.cols();
  const Eigen::Index nc = offset[g];

  auto build = [&](const RVec& c) {
    std::vector<QuatMatrix> rho(g);
    for (int l = 0; l < g; ++l) {
      RVec z = sols[l].z0;
      if (sols[l].kern.cols()) z += sols[l].kern * c.segment(offset[l], sols[l].kern.cols());
      rho[l] = ctx.element(z);
    }
    return rho;
  };
  auto F = [&](const RVec& c) { return bracket_defect(br, build(c)); };

  double scale = 1;
  for (const auto& s : sols) scale = std::max(scale, s.z0.norm());
  const double target = 1e-13 * scale * scale;

  auto run = [&](RVec c) {
    RVec f = F(c);
    double mu = 1e-3;
    for (int it = 0; it < opt.newton_iters && f.size() && f.norm() > target; ++it) {
      RMat J(f.size(), nc);
      for (Eigen::Index q = 0; q < nc; ++q) {
        RVec e = RVec::Zero(nc);
        e[q] = 1;
        // central differences are exact here: the defect is quadratic in c
        J.col(q) = 0.5 * (F(c + e) - F(c - e));
      }
      RMat JtJ = J.transpose() * J;
      RVec g = J.transpose() * f;
      bool moved = false;
      for (int tries = 0; tries < 12; ++tries) {
        RMat H = JtJ;
        H.diagonal().array() += mu * (1 + JtJ.diagonal().array());
        RVec step = H.ldlt().solve(-g);
        RVec fn = F(c + step);
        if (fn.norm() < f.norm()) {
          c += step;
          f = fn;
          mu = std::max(mu / 10, 1e-15);
          moved = true;
          break;
        }
        mu *= 10;
      }
      if (!moved) break;
    }
    return std::make_pair(c, f.size() ? f.norm() : 0.0);
  };

  RVec c0 = RVec::Zero(nc);
  auto [best, bestf] = run(c0);
  std::mt19937 rng(12345);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int r = 0; r < opt.restarts && bestf > target && nc > 0; ++r) {
    RVec c(nc);
    for (Eigen::Index q = 0; q < nc; ++q) c[q] = nd(rng) * scale;
    auto [cr, fr] = run(c);
    if (fr < bestf) {
      best = cr;
      bestf = fr;
    }
  }
  return {build(best), bestf};
}

}  // namespace

SolveResult solve_generators(const StandardData& d, const SymmetryKind& kind, const SolveOptions& opt) {
  Context ctx(d, kind);
  const int g = static_cast<int>(ctx.algebra.size());
  SolveResult out;
  std::vector<GeneratorSolution> sols;
  sols.reserve(g);
  for (int l = 0; l < g; ++l) {
    sols.push_back(solve_linear(ctx, l, opt.kernel_tol));
    out.backward_error = std::max(out.backward_error, sols.back().eta);
  }
  out.kernel.resize(g);
  for (int l = 0; l < g; ++l)
    for (Eigen::Index c = 0; c < sols[l].kern.cols(); ++c) out.kernel[l].push_back(ctx.element(sols[l].kern.col(c)));

  std::ostringstream diag;
  if (out.backward_error > opt.empty_tol) {
    out.status = SolveStatus::empty;
    diag << "linear constraints inconsistent (backward error " << out.backward_error << ")";
    out.diagnostic = diag.str();
    return out;
  }
  if (out.backward_error > opt.member_tol) {
    out.status = SolveStatus::indeterminate;
    diag << "indeterminate: backward error " << out.backward_error << " lies between " << opt.member_tol << " and "
         << opt.empty_tol;
    out.diagnostic = diag.str();
    return out;
  }

  Brackets br = brackets_for(kind);
  Refined ref = refine_homomorphism(ctx, br, sols, opt);
  SymmetryCertificate cert{kind, std::move(ref.rho), 0};
  cert.residual = std::max(residual(d, cert), homomorphism_residual(cert));
  if (cert.residual > opt.newton_tol) {
    out.status = SolveStatus::no_homomorphism;
    diag << "linear constraints solvable but bracket refinement stalled at " << cert.residual;
    out.diagnostic = diag.str();
    return out;
  }
  out.status = SolveStatus::solvable;
  out.certificates.push_back(std::move(cert));
  return out;
}

std::vector<SolveResult> solve_batch(const std::vector<StandardData>& data, const std::vector<SymmetryKind>& kinds,
                                     const SolveOptions& opt) {
  if (data.size() != kinds.size()) throw DimensionError("solve_batch needs one kind per data set");
  std::vector<SolveResult> out(data.size());
  const long n = static_cast<long>(data.size());
#pragma omp parallel for schedule(dynamic)
  for (long q = 0; q < n; ++q) out[q] = solve_generators(data[q], kinds[q], opt);
  return out;
}

std::vector<SolveResult> solve_batch_serial(const std::vector<StandardData>& data,
                                            const std::vector<SymmetryKind>& kinds, const SolveOptions& opt) {
  if (data.size() != kinds.size()) throw DimensionError("solve_batch needs one kind per data set");
  std::vector<SolveResult> out;
  out.reserve(data.size());
  for (size_t q = 0; q < data.size(); ++q) out.push_back(solve_generators(data[q], kinds[q], opt));
  return out;
}

// ---- M spaces

std::vector<QuatMatrix> solve_M_space(const std::vector<RMat>& generators, const SymmetryKind& kind, bool symmetric) {
  if (is_conformal(kind)) throw std::invalid_argument("solve_M_space: conformal kinds have no so(k) generators");
  if (static_cast<int>(generators.size()) != num_generators(kind))
    throw std::invalid_argument("solve_M_space: kind " + kind_name(kind) + " needs " +
                                std::to_string(num_generators(kind)) + " generators, got " +
                                std::to_string(generators.size()));
  const int k = static_cast<int>(generators.at(0).rows());
  std::vector<QuatMatrix> rho;
  for (const auto& gmat : generators) {
    if (gmat.rows() != k || gmat.cols() != k) throw DimensionError("generators must be k x k");
    rho.push_back(QuatMatrix::from_real(gmat));
  }
  // unknown layout: 4 reals per free entry
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < k; ++a)
    for (int b = symmetric ? a : 0; b < k; ++b) slots.emplace_back(a, b);
  const int p = 4 * static_cast<int>(slots.size());
  auto build = [&](const RVec& z) {
    QuatMatrix M(k, k);
    for (size_t s = 0; s < slots.size(); ++s) {
      Quaternion q(z[4 * s], z[4 * s + 1], z[4 * s + 2], z[4 * s + 3]);
      M(slots[s].first, slots[s].second) = q;
      if (symmetric) M(slots[s].second, slots[s].first) = q;
    }
    return M;
  };
  auto eq = [&](const QuatMatrix& M) {
    std::vector<RVec> parts;
    for (size_t l = 0; l < rho.size(); ++l)
      parts.push_back(flatten(kind_term(kind, static_cast<int>(l), M) + commutator(rho[l], M)));
    return concat(parts);
  };
  RVec z = RVec::Zero(p);
  RMat A(eq(build(z)).size(), p);
  for (int c = 0; c < p; ++c) {
    z.setZero();
    z[c] = 1;
    A.col(c) = eq(build(z));
  }
  Eigen::BDCSVD<RMat> svd(A, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index r = 0; r < sv.size(); ++r)
    if (sv(r) > 1e-10 * std::max(smax, 1e-300)) ++rank;
  std::vector<QuatMatrix> basis;
  for (int c = rank; c < p; ++c) {
    QuatMatrix M = build(svd.matrixV().col(c));
    M *= 1.0 / M.norm();
    basis.push_back(std::move(M));
  }
  return basis;
}

std::vector<QuatMatrix> solve_M_space(const Representation& rep, const SymmetryKind& kind, int n, bool symmetric) {
  if (n < 1) throw std::invalid_argument("solve_M_space: n must be positive");
  if (rep.field != Field::real) throw std::invalid_argument("solve_M_space: generating representation must be real");
  const int want = num_generators(kind);
  const bool sp1_kind = kind.tag == KindTag::simple_spherical || kind.tag == KindTag::isoclinic_spherical;
  if ((sp1_kind && rep.algebra != Algebra::sp1) ||
      (kind.tag == KindTag::rotational && rep.algebra != Algebra::sp1_plus_sp1) || rep.num_generators() != want)
    throw std::invalid_argument("solve_M_space: representation of " + std::string(algebra_name(rep.algebra)) +
                                " does not match kind " + kind_name(kind));
  std::vector<RMat> gens;
  for (int l = 0; l < rep.num_generators(); ++l) gens.push_back(rep.real_generator(l));
  return solve_M_space(gens, kind, symmetric);
}

double span_residual(const std::vector<QuatMatrix>& basis, const QuatMatrix& M) {
  const double nm = M.norm();
  if (basis.empty()) return nm > 0 ? 1.0 : 0.0;
  RVec m = flatten(M);
  RMat B(m.size(), static_cast<Eigen::Index>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    if (basis[c].rows() != M.rows() || basis[c].cols() != M.cols()) throw DimensionError("basis and M differ in shape");
    B.col(static_cast<Eigen::Index>(c)) = flatten(basis[c]);
  }
  RVec coef = B.colPivHouseholderQr().solve(m);
  return nm > 0 ? (B * coef - m).norm() / nm : (B * coef - m).norm();
}

// ---- rationalization

namespace {

struct Block {
  int start = 0, size = 1;
  double freq = 0;
};

// Orthogonal decomposition of a real antisymmetric matrix into 1x1 zeros and 2x2 blocks freq*[[0,1],[-1,0]].
void antisym_blocks(const RMat& rho, RMat& Q, std::vector<Block>& blocks) {
  Eigen::RealSchur<RMat> rs(rho);
  Q = rs.matrixU();
  const RMat& T = rs.matrixT();
  const int k = static_cast<int>(rho.rows());
  const double scale = std::max(1.0, rho.norm());
  blocks.clear();
  for (int r = 0; r < k;) {
    if (r + 1 < k && std::abs(T(r + 1, r)) > 1e-13 * scale) {
      blocks.push_back({r, 2, 0.5 * (T(r, r + 1) - T(r + 1, r))});
      r += 2;
    } else {
      blocks.push_back({r, 1, 0});
      r += 1;
    }
  }
}

}  // namespace

RMat rationalize_circular_generator(const StandardData& d, const RMat& rho, int t_num, int t_den, double tol) {
  if (t_den <= 0 || t_num < 0 || t_num > t_den) throw std::invalid_argument("rationalize: need 0 <= a/b <= 1");
  const double t = static_cast<double>(t_num) / t_den;
  const int k = d.k;
  if (rho.rows() != k || rho.cols() != k) throw DimensionError("rationalize: rho must be k x k");
  SymmetryKind kind{KindTag::circular, t};
  const double scale = std::max(1.0, d.R().max_abs());
  if (residual(d, {kind, {QuatMatrix::from_real(rho)}, 0}) > tol * scale)
    throw std::invalid_argument("rationalize: rho is not a circular certificate for this data");

  RMat Q;
  std::vector<Block> blocks;
  antisym_blocks(0.5 * (rho - rho.transpose()), Q, blocks);
  const int nb = static_cast<int>(blocks.size());
  QuatMatrix Mq = QuatMatrix::from_real(Q.transpose()) * d.M * QuatMatrix::from_real(Q);
  QuatMatrix Rq = QuatMatrix::from_real(RMat(Q.transpose() * d.R().real_matrix() * Q));
  const QuatMatrix E = QuatMatrix::from_real((RMat(2, 2) << 0, 1, -1, 0).finished());

  // sign[p] relates the shift of p to its component root; fixed[] pins a component
  std::vector<int> sign(nb, 0), comp(nb, -1);
  std::vector<bool> pinned(nb, false), comp_pinned;
  std::vector<std::vector<std::pair<int, int>>> adj(nb);  // (neighbor, +1 for a_l - a_p fixed, -1 for a_l + a_p)
  const double link_tol = 1e-9 * std::max(1.0, Mq.max_abs() + Rq.max_abs());
  for (const QuatMatrix* X : {&Mq, &Rq})
    for (int l = 0; l < nb; ++l)
      for (int p = l; p < nb; ++p) {
        QuatMatrix B = X->block(blocks[l].start, blocks[p].start, blocks[l].size, blocks[p].size);
        if (B.max_abs() <= link_tol) continue;
        if (blocks[l].size == 1 && blocks[p].size == 1) continue;
        if (blocks[l].size == 1 || blocks[p].size == 1) {
          pinned[blocks[l].size == 2 ? l : p] = true;
          continue;
        }
        QuatMatrix EBE = E * B * E;
        QuatMatrix plus = 0.5 * (B - EBE);  // E B = B E
        QuatMatrix minus = 0.5 * (B + EBE);  // E B = -B E
        if (l == p) {
          if (minus.max_abs() > link_tol) pinned[l] = true;
          continue;
        }
        if (plus.max_abs() > link_tol) {
          adj[l].push_back({p, 1});
          adj[p].push_back({l, 1});
        }
        if (minus.max_abs() > link_tol) {
          adj[l].push_back({p, -1});
          adj[p].push_back({l, -1});
        }
      }

  int ncomp = 0;
  std::vector<int> roots;
  for (int s = 0; s < nb; ++s) {
    if (comp[s] >= 0 || blocks[s].size == 1) continue;
    bool pin = false;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    sign[s] = 1;
    while (!stack.empty()) {
      int l = stack.back();
      stack.pop_back();
      pin = pin || pinned[l];
      for (auto [p, ty] : adj[l]) {
        int want = ty > 0 ? sign[l] : -sign[l];
        if (comp[p] < 0) {
          comp[p] = ncomp;
          sign[p] = want;
          stack.push_back(p);
        } else if (sign[p] != want) {
          pin = true;  // odd cycle: the common shift must vanish
        }
      }
    }
    comp_pinned.push_back(pin);
    roots.push_back(s);
    ++ncomp;
  }

  std::vector<double> fnew(nb, 0.0);
  for (int l = 0; l < nb; ++l) {
    if (blocks[l].size == 1) continue;
    int c = comp[l];
    double shift = comp_pinned[c] ? 0.0 : -blocks[roots[c]].freq;
    fnew[l] = blocks[l].freq + sign[l] * shift;
    // snap to the lattice 2b a' in Z when already there up to rounding
    double v = 2.0 * t_den * fnew[l];
    if (std::abs(v - std::round(v)) < 1e-6) fnew[l] = std::round(v) / (2.0 * t_den);
  }

  RMat T = RMat::Zero(k, k);
  for (int l = 0; l < nb; ++l)
    if (blocks[l].size == 2) {
      T(blocks[l].start, blocks[l].start + 1) = fnew[l];
      T(blocks[l].start + 1, blocks[l].start) = -fnew[l];
    }
  RMat out = Q * T * Q.transpose();
  out = 0.5 * (out - out.transpose());

  double res = residual(d, {kind, {QuatMatrix::from_real(out)}, 0});
  if (res > tol * scale) {
    std::ostringstream os;
    os << "rationalize: reassigned frequencies break the circular equations (residual " << res << ")";
    throw std::runtime_error(os.str());
  }
  RMat per = (2.0 * M_PI * 2.0 * t_den * out).exp();
  double closure = (per - RMat::Identity(k, k)).cwiseAbs().maxCoeff();
  if (closure > 1e-8) {
    std::ostringstream os;
    os << "rationalize: rho' does not generate a circle (closure defect " << closure << ")";
    throw std::runtime_error(os.str());
  }
  return out;
}

// ---- induced representations

InducedRep induced_structure_rep(const StandardData& d, const SymmetryCertificate& c) {
  const QuatMatrix& L = d.L;
  const QuatMatrix LLt = L * L.adjoint();
  const QuatMatrix LLinv = inverse(LLt);
  const int k = d.k;
  const QuatMatrix I_i = QuatMatrix::identity(k) * i;
  Context ctx(d, c.kind);
  check_shape(ctx, c);
  std::vector<QuatMatrix> y;
  const auto& g = c.generators;
  switch (c.kind.tag) {
    case KindTag::circular: y.push_back(L * (g[0] - c.kind.t * I_i) * L.adjoint() * LLinv); break;
    case KindTag::toral:
      y.push_back(L * g[0] * L.adjoint() * LLinv);
      y.push_back(L * (g[1] - I_i) * L.adjoint() * LLinv);
      break;
    case KindTag::isoclinic_spherical:
      for (int l = 0; l < 3; ++l) y.push_back(LLinv * L * g[l] * L.adjoint());
      break;
    case KindTag::isoclinic_superspherical:
      for (int l = 0; l < 3; ++l) y.push_back(L * g[l] * L.adjoint() * LLinv);
      y.push_back(L * (g[3] + 2.0 * I_i) * L.adjoint() * LLinv);
      break;
    case KindTag::rotational:
      for (int l = 0; l < 6; ++l) {
        QuatMatrix shift = l < 3 ? QuatMatrix(k, k) : QuatMatrix::identity(k) * upsilon(l - 3);
        y.push_back(LLinv * L * (shift + g[l]) * L.adjoint());
      }
      break;
    default:
      throw std::invalid_argument("induced_structure_rep: no induced representation for kind " + kind_name(c.kind));
  }
  InducedRep out;
  for (const auto& m : y) {
    out.membership_residual = std::max(out.membership_residual, anti_hermitian_residual(m));
    out.membership_residual = std::max(out.membership_residual, commutator(LLt, m).max_abs());
  }
  SymmetryCertificate induced{c.kind, y, 0};
  out.bracket_residual = homomorphism_residual(induced);
  out.generators = std::move(y);
  const double tol = 1e-8 * std::max(1.0, LLt.max_abs());
  if (out.membership_residual > tol) {
    std::ostringstream os;
    os << "induced generators are not in sp(n) (residual " << out.membership_residual
       << "); the certificate is inconsistent";
    throw std::runtime_error(os.str());
  }
  return out;
}

bool in_ms_set(const StandardData& d, double tol) {
  if (d.M.real_part().max_abs() > tol) return false;
  return (d.R() - QuatMatrix::identity(d.k)).max_abs() <= tol;
}

}  // namespace instsym
