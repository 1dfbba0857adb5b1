#include "instsym/quatmat.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace instsym {

QuatMatrix::QuatMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged initializer");
    for (const auto& q : r) data_.push_back(q);
  }
}

QuatMatrix QuatMatrix::identity(int n) {
  QuatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QuatMatrix QuatMatrix::from_real(const RMat& r) {
  QuatMatrix m(static_cast<int>(r.rows()), static_cast<int>(r.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = r(i, j);
  return m;
}

QuatMatrix QuatMatrix::diag(const std::vector<Quaternion>& d) {
  int n = static_cast<int>(d.size());
  QuatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

QuatMatrix QuatMatrix::adjoint() const {
  QuatMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
  return m;
}

QuatMatrix QuatMatrix::transpose() const {
  QuatMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

QuatMatrix QuatMatrix::real_part() const {
  QuatMatrix m = *this;
  for (auto& q : m.data_) q = q.real_part();
  return m;
}

QuatMatrix QuatMatrix::vec_part() const {
  QuatMatrix m = *this;
  for (auto& q : m.data_) q = q.vec_part();
  return m;
}

RMat QuatMatrix::component(int comp) const {
  RMat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const auto& q = (*this)(i, j);
      r(i, j) = comp == 0 ? q.w : comp == 1 ? q.x : comp == 2 ? q.y : q.z;
    }
  return r;
}

double QuatMatrix::norm() const {
  double s = 0;
  for (const auto& q : data_) s += q.norm2();
  return std::sqrt(s);
}

double QuatMatrix::max_abs() const {
  double s = 0;
  for (const auto& q : data_) s = std::max(s, q.norm());
  return s;
}

QuatMatrix QuatMatrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  QuatMatrix m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void QuatMatrix::set_block(int r0, int c0, const QuatMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

QuatMatrix& QuatMatrix::operator+=(const QuatMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("sum shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QuatMatrix& QuatMatrix::operator-=(const QuatMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("difference shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QuatMatrix& QuatMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
QuatMatrix operator-(const QuatMatrix& a) { return a * -1.0; }
QuatMatrix operator*(QuatMatrix a, double s) { return a *= s; }
QuatMatrix operator*(double s, QuatMatrix a) { return a *= s; }

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("product shape mismatch " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  QuatMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      const Quaternion& ail = a(i, l);
      if (ail.norm2() == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

QuatMatrix operator*(const Quaternion& q, const QuatMatrix& a) {
  QuatMatrix m = a;
  for (auto& e : m.data()) e = q * e;
  return m;
}

QuatMatrix operator*(const QuatMatrix& a, const Quaternion& q) {
  QuatMatrix m = a;
  for (auto& e : m.data()) e = e * q;
  return m;
}

QuatMatrix operator*(const RMat& r, const QuatMatrix& a) { return QuatMatrix::from_real(r) * a; }
QuatMatrix operator*(const QuatMatrix& a, const RMat& r) { return a * QuatMatrix::from_real(r); }

QuatMatrix vstack(const QuatMatrix& top, const QuatMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("vstack column mismatch");
  QuatMatrix m(top.rows() + bottom.rows(), top.cols());
  m.set_block(0, 0, top);
  m.set_block(top.rows(), 0, bottom);
  return m;
}

QuatMatrix hstack(const QuatMatrix& left, const QuatMatrix& right) {
  if (left.rows() != right.rows()) throw DimensionError("hstack row mismatch");
  QuatMatrix m(left.rows(), left.cols() + right.cols());
  m.set_block(0, 0, left);
  m.set_block(0, left.cols(), right);
  return m;
}

QuatMatrix block_diag(const QuatMatrix& a, const QuatMatrix& b) {
  QuatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

QuatMatrix commutator(const QuatMatrix& a, const QuatMatrix& b) { return a * b - b * a; }

RVec flatten(const QuatMatrix& a) {
  RVec v(4 * a.data().size());
  for (size_t i = 0; i < a.data().size(); ++i) {
    const auto& q = a.data()[i];
    v[4 * i] = q.w;
    v[4 * i + 1] = q.x;
    v[4 * i + 2] = q.y;
    v[4 * i + 3] = q.z;
  }
  return v;
}

QuatMatrix unflatten(const RVec& v, int rows, int cols) {
  QuatMatrix m(rows, cols);
  if (v.size() != 4L * rows * cols) throw DimensionError("unflatten size mismatch");
  for (size_t i = 0; i < m.data().size(); ++i) m.data()[i] = {v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]};
  return m;
}

CMat embed_complex(const QuatMatrix& a) {
  CMat e(2 * a.rows(), 2 * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      cplx al = a(i, j).alpha(), be = a(i, j).beta();
      e(2 * i, 2 * j) = al;
      e(2 * i, 2 * j + 1) = be;
      e(2 * i + 1, 2 * j) = -std::conj(be);
      e(2 * i + 1, 2 * j + 1) = std::conj(al);
    }
  return e;
}

QuatMatrix unembed(const CMat& e) {
  if (e.rows() % 2 || e.cols() % 2) throw DimensionError("unembed needs even dimensions");
  QuatMatrix a(static_cast<int>(e.rows() / 2), static_cast<int>(e.cols() / 2));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = Quaternion::from_pair(e(2 * i, 2 * j), e(2 * i, 2 * j + 1));
  return a;
}

QuatMatrix unembed_columns(const CMat& u) {
  if (u.rows() % 2) throw DimensionError("unembed_columns needs even length");
  QuatMatrix v(static_cast<int>(u.rows() / 2), static_cast<int>(u.cols()));
  for (int c = 0; c < v.cols(); ++c)
    for (int i = 0; i < v.rows(); ++i) v(i, c) = Quaternion::from_pair(u(2 * i, c), -std::conj(u(2 * i + 1, c)));
  return v;
}

CVec j_structure(const CVec& u) {
  CVec s(u.size());
  for (Eigen::Index i = 0; i + 1 < u.size(); i += 2) {
    s[i] = -std::conj(u[i + 1]);
    s[i + 1] = std::conj(u[i]);
  }
  return s;
}

double sigma_max(const QuatMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(embed_complex(a));
  return svd.singularValues()(0);
}

double sigma_min(const QuatMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(embed_complex(a));
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

int numeric_rank(const QuatMatrix& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(embed_complex(a));
  const auto& s = svd.singularValues();
  if (s(0) == 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r / 2;  // singular values of the embedding come in pairs
}

QuatMatrix null_space_quat(const QuatMatrix& a, int expected_dim, double rel_tol) {
  const int N = a.rows();
  CMat ah = embed_complex(a).adjoint();  // 2k x 2N
  Eigen::JacobiSVD<CMat> svd(ah, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax) ++rank;
  const int kdim = 2 * N - rank;
  if (kdim != 2 * expected_dim)
    throw DimensionError("kernel dimension " + std::to_string(kdim) + " in embedding, expected " +
                         std::to_string(2 * expected_dim));
  CMat ker = svd.matrixV().rightCols(kdim);

  // Pair each new vector u with u.j so the span stays a right H-module.
  CMat basis(2 * N, kdim);
  int have = 0;
  for (int c = 0; c < kdim && have < kdim; ++c) {
    CVec u = ker.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < have; ++p) u -= basis.col(p) * basis.col(p).dot(u);
    double nu = u.norm();
    if (nu < 1e-6) continue;
    u /= nu;
    basis.col(have++) = u;
    basis.col(have++) = j_structure(u);
  }
  if (have != kdim) throw DimensionError("quaternionic pairing of kernel failed");
  CMat firsts(2 * N, expected_dim);
  for (int l = 0; l < expected_dim; ++l) firsts.col(l) = basis.col(2 * l);
  return unembed_columns(firsts);
}

SymEig sym_eig_real(const RMat& s, double sym_tol) {
  if (s.rows() != s.cols()) throw DimensionError("sym_eig_real needs a square matrix");
  double scale = std::max(1.0, s.norm());
  if ((s - s.transpose()).norm() > sym_tol * scale) throw std::invalid_argument("sym_eig_real: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (s + s.transpose()));
  return {es.eigenvalues(), es.eigenvectors()};
}

QuatMatrix nearest_unitary_alignment(const QuatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("polar factor needs a square matrix");
  Eigen::JacobiSVD<CMat> svd(embed_complex(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return a;
  if (s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0))) throw std::domain_error("polar factor of a singular matrix");
  return unembed(svd.matrixU() * svd.matrixV().adjoint());
}

QuatMatrix expm(const QuatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm needs a square matrix");
  CMat e = embed_complex(a);
  CMat r = e.exp();
  return unembed(r);
}

QuatMatrix inverse(const QuatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse needs a square matrix");
  Eigen::FullPivLU<CMat> lu(embed_complex(a));
  if (!lu.isInvertible()) throw std::domain_error("singular quaternionic matrix");
  return unembed(lu.inverse());
}

RVec hermitian_eigenvalues(const QuatMatrix& h) {
  CMat e = embed_complex(h);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
  RVec all = es.eigenvalues();
  RVec out(all.size() / 2);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = 0.5 * (all(2 * i) + all(2 * i + 1));
  return out;
}

double unitarity_residual(const QuatMatrix& a) {
  return (a.adjoint() * a - QuatMatrix::identity(a.cols())).max_abs();
}

}  // namespace instsym
