#include "instsym/adhm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace instsym {

StandardData::StandardData(QuatMatrix L_, QuatMatrix M_) : n(L_.rows()), k(L_.cols()), L(std::move(L_)), M(std::move(M_)) {
  if (M.rows() != k || M.cols() != k) throw DimensionError("M must be k x k with k = cols(L)");
}

QuatMatrix standard_U(int n, int k) { return vstack(QuatMatrix(n, k), QuatMatrix::identity(k)); }

QuatMatrix StandardData::U() const { return standard_U(n, k); }

GaugeElement GaugeElement::identity(int n, int k) { return {QuatMatrix::identity(n + k), RMat::Identity(k, k)}; }

ConformalElement ConformalElement::from_matrix(const QuatMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("conformal element must be 2x2");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

QuatMatrix ConformalElement::matrix() const { return QuatMatrix{{A, B}, {C, D}}; }

QuatMatrix delta(const StandardData& d, const Quaternion& x) {
  QuatMatrix lower = d.M - QuatMatrix::identity(d.k) * x;
  return vstack(d.L, lower);
}

QuatMatrix delta(const ADHMPair& p, const Quaternion& x) { return p.a - p.b * x; }

namespace {

// R - M^dagger x - x^dagger M + |x|^2 I, kept quaternionic
QuatMatrix gram(const QuatMatrix& R, const QuatMatrix& Mh, const QuatMatrix& M, const Quaternion& x) {
  QuatMatrix g = R - Mh * x - x.conj() * M;
  double n2 = x.norm2();
  for (int i = 0; i < g.rows(); ++i) g(i, i) += n2;
  return g;
}

double min_eig_of(const QuatMatrix& g) {
  double scale = std::max(1.0, g.max_abs());
  if (g.vec_part().max_abs() <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<RMat> es(g.real_matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  return hermitian_eigenvalues(g)(0);
}

struct GramPieces {
  QuatMatrix R, Mh, M;
};

GramPieces pieces(const StandardData& d) { return {d.R(), d.M.adjoint(), d.M}; }

}  // namespace

RMat delta_gram_real(const StandardData& d, const Quaternion& x) {
  auto p = pieces(d);
  return gram(p.R, p.Mh, p.M, x).real_matrix();
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::full: return "full";
    case Domain::circular: return "circular";
    case Domain::toral: return "toral";
    case Domain::simple_spherical: return "simple_spherical";
    case Domain::isoclinic: return "isoclinic";
  }
  return "?";
}

std::optional<Domain> parse_domain(const std::string& s) {
  for (Domain d : {Domain::full, Domain::circular, Domain::toral, Domain::simple_spherical, Domain::isoclinic})
    if (s == domain_name(d)) return d;
  return std::nullopt;
}

std::vector<Quaternion> pd_grid(Domain dom, double radius, double step) {
  std::vector<Quaternion> pts;
  const int m = std::max(1, static_cast<int>(std::ceil(radius / step - 1e-9)));
  const double h = radius / m;
  const double r2 = radius * radius * (1 + 1e-12);
  auto in = [&](double a, double b, double c, double e) { return a * a + b * b + c * c + e * e <= r2; };
  switch (dom) {
    case Domain::full:
      for (int a = -m; a <= m; ++a)
        for (int b = -m; b <= m; ++b)
          for (int c = -m; c <= m; ++c)
            for (int e = -m; e <= m; ++e)
              if (in(a * h, b * h, c * h, e * h)) pts.push_back({a * h, b * h, c * h, e * h});
      break;
    case Domain::circular:
      for (int a = -m; a <= m; ++a)
        for (int b = -m; b <= m; ++b)
          for (int c = 0; c <= m; ++c)
            if (in(a * h, b * h, c * h, 0)) pts.push_back({a * h, b * h, c * h, 0});
      break;
    case Domain::toral:
      for (int a = 0; a <= m; ++a)
        for (int c = 0; c <= m; ++c)
          if (in(a * h, 0, c * h, 0)) pts.push_back({a * h, 0, c * h, 0});
      break;
    case Domain::simple_spherical:
      for (int a = -m; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
          if (in(a * h, b * h, 0, 0)) pts.push_back({a * h, b * h, 0, 0});
      break;
    case Domain::isoclinic:
      for (int a = 0; a <= m; ++a) pts.push_back({a * h, 0, 0, 0});
      break;
  }
  return pts;
}

double min_gram_eigenvalue_serial(const StandardData& d, const std::vector<Quaternion>& pts) {
  auto p = pieces(d);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) best = std::min(best, min_eig_of(gram(p.R, p.Mh, p.M, x)));
  return best;
}

double min_gram_eigenvalue(const StandardData& d, const std::vector<Quaternion>& pts) {
  auto p = pieces(d);
  double best = std::numeric_limits<double>::infinity();
  const long N = static_cast<long>(pts.size());
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long i = 0; i < N; ++i) best = std::min(best, min_eig_of(gram(p.R, p.Mh, p.M, pts[i])));
  return best;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate(const StandardData& d, const GridSpec& grid) {
  ValidationReport rep;
  const double tol = grid.tol;

  double mnorm = d.M.norm();
  double asym = (d.M - d.M.transpose()).max_abs();
  rep.checks.push_back({"M symmetric", asym, asym <= tol * (1 + mnorm), ""});

  if (d.n > d.k) {
    rep.checks.push_back({"n <= k", double(d.n - d.k), false, "n exceeds k"});
  } else {
    RVec ev = hermitian_eigenvalues(d.L * d.L.adjoint());
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    rep.checks.push_back({"L L^dagger positive definite", ev(0), ev(0) > tol * scale, ""});
  }

  QuatMatrix R = d.R();
  double rnorm = std::max(R.norm(), 1e-300);
  double rim = R.vec_part().max_abs();
  rep.checks.push_back({"R real", rim, rim <= tol * rnorm, ""});
  RVec rev = hermitian_eigenvalues(R);
  double rmin = rev.cwiseAbs().minCoeff();
  rep.checks.push_back({"R nonsingular", rmin, rmin > tol * rnorm, ""});

  rep.radius = grid.radius_margin * sigma_max(d.mhat());
  if (rep.radius <= 0) rep.radius = 1.0;
  auto pts = pd_grid(grid.domain, rep.radius, grid.step_frac * rep.radius);
  rep.grid_points = static_cast<long>(pts.size());
  rep.min_eigenvalue = min_gram_eigenvalue(d, pts);
  std::ostringstream msg;
  msg << "domain " << domain_name(grid.domain) << ", radius " << rep.radius << ", " << pts.size() << " points";
  rep.checks.push_back({"Delta^dagger Delta positive definite", rep.min_eigenvalue,
                        rep.min_eigenvalue > tol * std::max(1.0, rnorm), msg.str()});
  return rep;
}

ValidationReport validate_pair(const ADHMPair& p, const GridSpec& grid) {
  ValidationReport rep;
  int r = numeric_rank(p.b);
  std::ostringstream msg;
  msg << "the rank of b is " << r << ", not k=" << p.k;
  bool rank_ok = r == p.k;
  rep.checks.push_back({"rank b", double(p.k - r), rank_ok, rank_ok ? "" : msg.str()});

  QuatMatrix btb = p.b.adjoint() * p.b;
  double im = btb.vec_part().max_abs();
  bool real_ok = im <= grid.tol * std::max(1.0, btb.norm());
  rep.checks.push_back({"b^dagger b real", im, real_ok, ""});
  QuatMatrix atb = p.a.adjoint() * p.b;
  double asym = (atb - atb.transpose()).max_abs();
  rep.checks.push_back({"a^dagger b symmetric", asym, asym <= grid.tol * std::max(1.0, atb.norm()), ""});
  if (!rep.ok()) return rep;

  auto red = reduce_standard(p, grid.tol);
  ValidationReport inner = validate(red.data, grid);
  for (auto& c : inner.checks) rep.checks.push_back(c);
  rep.min_eigenvalue = inner.min_eigenvalue;
  rep.radius = inner.radius;
  rep.grid_points = inner.grid_points;
  return rep;
}

Reduction reduce_standard(const ADHMPair& p, double tol) {
  const int n = p.n, k = p.k, N = n + k;
  if (p.a.rows() != N || p.b.rows() != N || p.a.cols() != k || p.b.cols() != k)
    throw DimensionError("pair dimensions do not match (n, k)");
  if (numeric_rank(p.b) != k) throw InvalidData("b does not have rank k");
  QuatMatrix btb_q = p.b.adjoint() * p.b;
  if (btb_q.vec_part().max_abs() > tol * std::max(1.0, btb_q.norm())) throw InvalidData("b^dagger b is not real");
  RMat btb = btb_q.real_matrix();

  // K = diag(sqrt(lambda)) J^T; a multiple of the identity keeps J = I.
  RMat J, Kinv, K;
  double mean = btb.trace() / k;
  if ((btb - mean * RMat::Identity(k, k)).norm() <= 1e-12 * std::max(1.0, mean)) {
    K = std::sqrt(mean) * RMat::Identity(k, k);
    Kinv = RMat::Identity(k, k) / std::sqrt(mean);
  } else {
    auto es = sym_eig_real(btb);
    J = es.vectors;
    RVec s = es.values.cwiseSqrt();
    K = s.asDiagonal() * J.transpose();
    Kinv = J * s.cwiseInverse().asDiagonal();
  }
  QuatMatrix bp = p.b * Kinv;  // orthonormal columns

  // Rows of Qtilde: Gram-Schmidt on e_1..e_N against columns of bp, pivot on largest residual.
  std::vector<QuatMatrix> basis;
  for (int c = 0; c < k; ++c) basis.push_back(bp.block(0, c, N, 1));
  std::vector<QuatMatrix> comp;
  std::vector<bool> used(N, false);
  for (int r = 0; r < n; ++r) {
    int best = -1;
    double best_norm = -1;
    QuatMatrix best_vec;
    for (int cand = 0; cand < N; ++cand) {
      if (used[cand]) continue;
      QuatMatrix v(N, 1);
      v(cand, 0) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : basis) v -= u * (u.adjoint() * v)(0, 0);
        for (const auto& u : comp) v -= u * (u.adjoint() * v)(0, 0);
      }
      double nv = v.norm();
      if (nv > best_norm + 1e-12) {
        best_norm = nv;
        best = cand;
        best_vec = v;
      }
    }
    if (best < 0 || best_norm < 1e-8) throw InvalidData("orthogonal complement construction failed");
    used[best] = true;
    comp.push_back(best_vec * (1.0 / best_norm));
  }
  QuatMatrix Q(N, N);
  for (int r = 0; r < n; ++r) Q.set_block(r, 0, comp[r].adjoint());
  Q.set_block(n, 0, bp.adjoint());

  QuatMatrix ap = Q * p.a * Kinv;
  StandardData out(ap.block(0, 0, n, k), ap.block(n, 0, k, k));
  return {out, {Q, K}};
}

ADHMPair gauge_apply(const GaugeElement& g, const ADHMPair& p) {
  if (g.Q.rows() != p.n + p.k || g.K.rows() != p.k) throw DimensionError("gauge element does not match data");
  RMat Kinv = g.K.inverse();
  return {p.n, p.k, g.Q * p.a * Kinv, g.Q * p.b * Kinv};
}

GaugeElement gauge_compose(const GaugeElement& g1, const GaugeElement& g2) { return {g1.Q * g2.Q, g1.K * g2.K}; }

ADHMPair conformal_apply(const ConformalElement& c, const ADHMPair& p) {
  return {p.n, p.k, p.a * c.D - p.b * c.B, p.b * c.A - p.a * c.C};
}

Quaternion conformal_point(const ConformalElement& c, const Quaternion& x) {
  return (c.A * x + c.B) * (c.C * x + c.D).inverse();
}

IsometryCheck verify_isometry_equivariance(const StandardData& d, const Quaternion& a, const Quaternion& b,
                                           const RMat& K, double tol) {
  IsometryCheck out;
  if (K.rows() != d.k || K.cols() != d.k) throw DimensionError("K must be k x k");
  double orth = (K.transpose() * K - RMat::Identity(d.k, d.k)).cwiseAbs().maxCoeff();
  if (orth > 1e-12 * std::max(1.0, K.norm())) throw std::invalid_argument("K is not orthogonal");

  QuatMatrix Kq = QuatMatrix::from_real(K);
  QuatMatrix KT = QuatMatrix::from_real(K.transpose());
  double scale = std::max(1.0, d.mhat().norm());
  double r1 = (a.conj() * (Kq * d.M * KT) - d.M * b.conj()).max_abs() / scale;
  QuatMatrix R = d.R();
  double r2 = (Kq * R - R * Kq).max_abs() / std::max(1.0, R.norm());
  out.residual = std::max(r1, r2);
  if (r2 > tol) {
    out.failure = "[K,R] != 0";
    return out;
  }
  if (r1 > tol) {
    out.failure = "a^dagger K M K^T != M b^dagger";
    return out;
  }
  QuatMatrix LLh = d.L * d.L.adjoint();
  out.q = d.L * b.conj() * Kq * d.L.adjoint() * inverse(LLh);
  double r3 = unitarity_residual(out.q);
  out.residual = std::max(out.residual, r3);
  if (r3 > tol) {
    out.failure = "induced q not in Sp(n)";
    return out;
  }
  ConformalElement c{a, 0.0, 0.0, b};
  ADHMPair moved = conformal_apply(c, d.pair());
  GaugeElement g{block_diag(out.q, a.conj() * Kq), K};
  ADHMPair back = gauge_apply(g, moved);
  double r4 = std::max((back.a - d.mhat()).max_abs() / scale, (back.b - d.U()).max_abs());
  out.residual = std::max(out.residual, r4);
  if (r4 > tol) {
    out.failure = "gauge does not return the data";
    return out;
  }
  out.ok = true;
  return out;
}

std::pair<QuatMatrix, QuatMatrix> lie_action(const QuatMatrix& mhat, const QuatMatrix& U, const Sp2Element& ups) {
  if (ups.rows() != 2 || ups.cols() != 2) throw DimensionError("algebra element must be 2x2");
  const Quaternion &A = ups(0, 0), &B = ups(0, 1), &C = ups(1, 0), &D = ups(1, 1);
  return {mhat * D - U * B, U * A - mhat * C};
}

std::pair<QuatMatrix, QuatMatrix> lie_action(const StandardData& d, const Sp2Element& ups) {
  return lie_action(d.mhat(), d.U(), ups);
}

}  // namespace instsym
