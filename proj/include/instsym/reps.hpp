#pragma once

#include <string>
#include <vector>

#include "instsym/quatmat.hpp"

namespace instsym {

enum class Algebra { sp1, sp1_plus_sp1 };
enum class Field { real, complex, quaternionic };

const char* algebra_name(Algebra a);
const char* field_name(Field f);

// One irreducible complex constituent of the complexification, with multiplicity.
// labels: {n} for sp(1), {m, n} for sp(1)+sp(1).
struct Constituent {
  std::vector<int> labels;
  int multiplicity = 1;
};

struct Representation {
  Algebra algebra = Algebra::sp1;
  Field field = Field::complex;
  int dim = 0;
  // One matrix per basis element: 3 for sp(1), 6 for sp(1)+sp(1).
  // Real representations keep a zero imaginary part; quaternionic ones are stored embedded.
  std::vector<CMat> generators;
  std::vector<Constituent> constituents;
  std::string label;

  int num_generators() const { return static_cast<int>(generators.size()); }
  RMat real_generator(int l) const { return generators.at(l).real(); }
};

Representation complex_irrep_sp1(int n);
Representation real_irrep_sp1(int n);
Representation irrep_spin4(int m, int n, Field field);
Representation trivial_rep(Algebra a, int dim, Field field = Field::real);
Representation direct_sum(const std::vector<Representation>& parts);
// Left multiplication by sp(1) on H, viewed as R^4 (basis 1, i, j, k).
Representation quaternion_left_rep();
// ad action of sp(1) on its own real span (R^3).
Representation adjoint_rep();
// nu(upsilon, omega) x = upsilon x - x omega on H, viewed as R^4.
Representation quaternion_bimodule_rep();

// Real 4x4 matrix of left (resp. right) multiplication by q on H in the basis 1, i, j, k.
RMat left_mult_matrix(const Quaternion& q);
RMat right_mult_matrix(const Quaternion& q);
// Real 4N x 4N matrix of v -> Q v on H^N.
RMat realify_left(const QuatMatrix& q);

double bracket_residual(const Representation& r);
CMat casimir(const Representation& r);  // sum over each sp(1) slot of Y_l^2; slot 0 only

struct TensorSpec {
  std::vector<Representation> factors;
  std::vector<bool> dual;
};

TensorSpec tensor(const Representation& a, bool dual_a, const Representation& b, bool dual_b,
                  const Representation& c, bool dual_c);

struct UnsupportedShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Closed-form count from the complex constituents and the triangle rule.
int trivial_summand_count(const TensorSpec& spec);

struct InvariantResult {
  int dim = 0;
  std::vector<CMat> basis;  // each reshaped as d1 x (d2*d3), unit Frobenius norm
};

// Numeric invariant subspace of the tensor product; dense SVD for small totals,
// weight-space restriction beyond that.
InvariantResult numeric_invariants(const TensorSpec& spec, bool want_basis = true);
InvariantResult numeric_invariants_dense(const TensorSpec& spec, bool want_basis = true);
InvariantResult numeric_invariants_weight(const TensorSpec& spec, bool want_basis = true);

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Basis of the trivial part; throws ConsistencyError if closed form and numerics disagree.
std::vector<CMat> trivial_summand_basis(const TensorSpec& spec);

// Fix the scale of a basis vector: unit norm, first nonzero entry with positive real part
// (or positive imaginary part when the real part vanishes).
void normalize_phase(CMat& m);

// Dimension of the space of intertwiners T with T r1(g) = r2(g) T for all g (real or complex).
int intertwiner_dim(const Representation& r1, const Representation& r2);

// Sorted eigenvalues of i * Y_0 over all generators' first element; used to compare complexifications.
std::vector<double> weight_multiset(const Representation& r, int generator = 0);

}  // namespace instsym
