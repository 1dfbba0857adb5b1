#pragma once

#include <optional>
#include <string>
#include <vector>

#include "instsym/adhm.hpp"
#include "instsym/liealg.hpp"
#include "instsym/reps.hpp"

namespace instsym {

enum class KindTag {
  circular,
  toral,
  simple_spherical,
  isoclinic_spherical,
  conformal_spherical,
  isoclinic_superspherical,
  conformal_superspherical,
  rotational,
  full,
  ms_circle
};

struct SymmetryKind {
  KindTag tag = KindTag::circular;
  double t = 0;  // circular only, in [0, 1]
};

std::string kind_name(const SymmetryKind& k);
std::optional<SymmetryKind> parse_kind(const std::string& name, double t = 0);
bool is_conformal(const SymmetryKind& k);
int num_generators(const SymmetryKind& k);
// The sp(2) elements whose action each generator must mirror (conformal kinds) or, for
// so(k) kinds, a matrix realization of the same abstract algebra used for its brackets.
std::vector<Sp2Element> kind_algebra(const SymmetryKind& k);

struct SymmetryCertificate {
  SymmetryKind kind;
  // real antisymmetric k x k for so(k) kinds, anti-Hermitian (n+k) x (n+k) for conformal kinds
  std::vector<QuatMatrix> generators;
  double residual = 0;
};

// Max Frobenius norm over the linear constraint equations (including [rho, R] = 0 and
// realness of the induced lambda).
double residual(const StandardData& d, const SymmetryCertificate& c);
// Max deviation from [rho_a, rho_b] = sum c_ab^e rho_e.
double homomorphism_residual(const SymmetryCertificate& c);

enum class SolveStatus { solvable, empty, indeterminate, no_homomorphism };
const char* status_name(SolveStatus s);

struct SolveOptions {
  double member_tol = 1e-10;  // backward error below this: solvable
  double empty_tol = 1e-6;    // backward error above this: empty
  double kernel_tol = 1e-10;  // relative singular value cut for kernel directions
  double newton_tol = 1e-9;
  int newton_iters = 60;
  int restarts = 6;
};

struct SolveResult {
  SolveStatus status = SolveStatus::empty;
  double backward_error = 0;  // worst over generators
  std::vector<SymmetryCertificate> certificates;  // refined homomorphism first
  std::vector<std::vector<QuatMatrix>> kernel;    // per-generator linear kernel directions
  std::string diagnostic;
  bool nonempty() const { return status == SolveStatus::solvable && !certificates.empty(); }
};

SolveResult solve_generators(const StandardData& d, const SymmetryKind& kind, const SolveOptions& opt = {});

// Batch entry point: one result per (data, kind) pair, evaluated in parallel.
std::vector<SolveResult> solve_batch(const std::vector<StandardData>& data, const std::vector<SymmetryKind>& kinds,
                                     const SolveOptions& opt = {});
std::vector<SolveResult> solve_batch_serial(const std::vector<StandardData>& data,
                                            const std::vector<SymmetryKind>& kinds, const SolveOptions& opt = {});

// Space of M solving the kind equation for fixed real generators. symmetric=false drops Mt = M.
std::vector<QuatMatrix> solve_M_space(const std::vector<RMat>& generators, const SymmetryKind& kind,
                                      bool symmetric = true);
std::vector<QuatMatrix> solve_M_space(const Representation& rep, const SymmetryKind& kind, int n,
                                      bool symmetric = true);
// Distance from M to the span of a basis, relative to |M|.
double span_residual(const std::vector<QuatMatrix>& basis, const QuatMatrix& M);

// rho' with exp(2 pi 2b rho') = I solving the same circular equations, t = a / b.
RMat rationalize_circular_generator(const StandardData& d, const RMat& rho, int t_num, int t_den,
                                    double tol = 1e-8);

struct InducedRep {
  std::vector<QuatMatrix> generators;  // n x n, in sp(n)
  double membership_residual = 0;       // anti-Hermiticity and [LL^dagger, y]
  double bracket_residual = 0;
};
InducedRep induced_structure_rep(const StandardData& d, const SymmetryCertificate& c);

bool in_ms_set(const StandardData& d, double tol = 1e-10);

}  // namespace instsym
