#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "instsym/quatmat.hpp"

namespace instsym {

// (a, b), both (n+k) x k
struct ADHMPair {
  int n = 0, k = 0;
  QuatMatrix a, b;
};

// Standard form: a = Mhat = [L; M], b = U = [0; I_k]
struct StandardData {
  int n = 0, k = 0;
  QuatMatrix L;  // n x k
  QuatMatrix M;  // k x k, symmetric

  StandardData() = default;
  StandardData(QuatMatrix L_, QuatMatrix M_);

  QuatMatrix mhat() const { return vstack(L, M); }
  QuatMatrix U() const;
  QuatMatrix R() const { return L.adjoint() * L + M.adjoint() * M; }
  ADHMPair pair() const { return {n, k, mhat(), U()}; }
};

QuatMatrix standard_U(int n, int k);

struct GaugeElement {
  QuatMatrix Q;  // (n+k) x (n+k), symplectic
  RMat K;        // k x k, invertible
  static GaugeElement identity(int n, int k);
};

// Block matrix [[A, B], [C, D]] acting by (Ax+B)(Cx+D)^{-1}.
struct ConformalElement {
  Quaternion A{1}, B{0}, C{0}, D{1};
  static ConformalElement from_matrix(const QuatMatrix& m);
  QuatMatrix matrix() const;
};

using Sp2Element = QuatMatrix;  // 2x2, anti-Hermitian

QuatMatrix delta(const StandardData& d, const Quaternion& x);
QuatMatrix delta(const ADHMPair& p, const Quaternion& x);

// Delta(x)^dagger Delta(x) assembled from R and M, real part only.
RMat delta_gram_real(const StandardData& d, const Quaternion& x);

enum class Domain { full, circular, toral, simple_spherical, isoclinic };
const char* domain_name(Domain d);
std::optional<Domain> parse_domain(const std::string& s);

struct GridSpec {
  double step_frac = 0.05;      // spacing as a fraction of the radius
  double radius_margin = 1.05;  // r* = margin * ||Mhat||_2
  Domain domain = Domain::full;
  double tol = 1e-10;
};

struct Check {
  std::string name;
  double residual = 0;
  bool pass = true;
  std::string message;
};

struct ValidationReport {
  std::vector<Check> checks;
  double min_eigenvalue = 0;
  double radius = 0;
  long grid_points = 0;
  bool ok() const;
  const Check* find(const std::string& name) const;
};

// Sampled points of the chosen domain; all |x| <= radius.
std::vector<Quaternion> pd_grid(Domain dom, double radius, double step);

// Minimum eigenvalue of Delta^dagger Delta over points; parallel and serial variants.
double min_gram_eigenvalue(const StandardData& d, const std::vector<Quaternion>& pts);
double min_gram_eigenvalue_serial(const StandardData& d, const std::vector<Quaternion>& pts);

ValidationReport validate(const StandardData& d, const GridSpec& grid = {});
ValidationReport validate_pair(const ADHMPair& p, const GridSpec& grid = {});

struct InvalidData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Reduction {
  StandardData data;
  GaugeElement gauge;
};
Reduction reduce_standard(const ADHMPair& p, double tol = 1e-10);

ADHMPair gauge_apply(const GaugeElement& g, const ADHMPair& p);
GaugeElement gauge_compose(const GaugeElement& g1, const GaugeElement& g2);  // g1 after g2
ADHMPair conformal_apply(const ConformalElement& c, const ADHMPair& p);
Quaternion conformal_point(const ConformalElement& c, const Quaternion& x);

struct IsometryCheck {
  bool ok = false;
  double residual = 0;
  std::string failure;  // empty when ok
  QuatMatrix q;         // induced Sp(n) element
};
IsometryCheck verify_isometry_equivariance(const StandardData& d, const Quaternion& a, const Quaternion& b,
                                           const RMat& K, double tol = 1e-10);

// Derivative of the conformal action along Upsilon = [[A, B], [C, D]]: (Mhat D - U B, U A - Mhat C).
std::pair<QuatMatrix, QuatMatrix> lie_action(const StandardData& d, const Sp2Element& ups);
std::pair<QuatMatrix, QuatMatrix> lie_action(const QuatMatrix& mhat, const QuatMatrix& U, const Sp2Element& ups);

}  // namespace instsym
