#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "instsym/quat.hpp"

namespace instsym {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

class QuatMatrix {
 public:
  QuatMatrix() = default;
  QuatMatrix(int r, int c) : rows_(r), cols_(c), data_(static_cast<size_t>(r) * c) {}
  QuatMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QuatMatrix identity(int n);
  static QuatMatrix zero(int r, int c) { return QuatMatrix(r, c); }
  static QuatMatrix from_real(const RMat& m);
  static QuatMatrix diag(const std::vector<Quaternion>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Quaternion& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Quaternion& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  QuatMatrix adjoint() const;
  QuatMatrix transpose() const;  // no conjugation
  QuatMatrix real_part() const;
  QuatMatrix vec_part() const;
  // real components as an ordinary matrix; comp 0..3 picks w,x,y,z
  RMat component(int comp) const;
  RMat real_matrix() const { return component(0); }

  double norm() const;  // Frobenius
  double max_abs() const;

  QuatMatrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const QuatMatrix& b);

  QuatMatrix& operator+=(const QuatMatrix& o);
  QuatMatrix& operator-=(const QuatMatrix& o);
  QuatMatrix& operator*=(double s);

  const std::vector<Quaternion>& data() const { return data_; }
  std::vector<Quaternion>& data() { return data_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Quaternion> data_;
};

QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b);
QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b);
QuatMatrix operator-(const QuatMatrix& a);
QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator*(QuatMatrix a, double s);
QuatMatrix operator*(double s, QuatMatrix a);
QuatMatrix operator*(const Quaternion& q, const QuatMatrix& a);  // entrywise left scalar
QuatMatrix operator*(const QuatMatrix& a, const Quaternion& q);  // entrywise right scalar
QuatMatrix operator*(const RMat& r, const QuatMatrix& a);
QuatMatrix operator*(const QuatMatrix& a, const RMat& r);

QuatMatrix vstack(const QuatMatrix& top, const QuatMatrix& bottom);
QuatMatrix hstack(const QuatMatrix& left, const QuatMatrix& right);
QuatMatrix block_diag(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix commutator(const QuatMatrix& a, const QuatMatrix& b);

// Real vectorization, 4 reals per entry in row-major order.
RVec flatten(const QuatMatrix& a);
QuatMatrix unflatten(const RVec& v, int rows, int cols);

// Complex embedding: alpha + beta j  ->  [[alpha, beta], [-conj(beta), conj(alpha)]]
CMat embed_complex(const QuatMatrix& a);
// Inverse of embed_complex; reads the even rows and ignores the redundant half.
QuatMatrix unembed(const CMat& e);
// Columns u of a complex 2N vector space -> quaternionic vectors in H^N.
QuatMatrix unembed_columns(const CMat& u);
// Right multiplication by j, acting on embedded column vectors.
CVec j_structure(const CVec& u);

double sigma_max(const QuatMatrix& a);
double sigma_min(const QuatMatrix& a);
int numeric_rank(const QuatMatrix& a, double rel_tol = 1e-10);

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Orthonormal basis V of ker(A^dagger): V^dagger A = 0, V^dagger V = I.
QuatMatrix null_space_quat(const QuatMatrix& a, int expected_dim, double rel_tol = 1e-10);

struct SymEig {
  RVec values;   // ascending
  RMat vectors;  // columns orthonormal
};
SymEig sym_eig_real(const RMat& s, double sym_tol = 1e-10);

// Symplectic polar factor of a square quaternionic matrix.
QuatMatrix nearest_unitary_alignment(const QuatMatrix& a);

QuatMatrix expm(const QuatMatrix& a);
QuatMatrix inverse(const QuatMatrix& a);

// Hermitian quaternionic matrix -> eigenvalues (each listed once, ascending).
RVec hermitian_eigenvalues(const QuatMatrix& h);

// max |A^dagger A - I|
double unitarity_residual(const QuatMatrix& a);

}  // namespace instsym
