#include "unit_fibers/linalg.h"

#include <algorithm>
#include <string>

#include "unit_fibers/error.h"

namespace unit_fibers {
namespace {

LinalgConfig g_config;

void RequireFinite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("non-finite ") + what);
  }
}

}  // namespace

const LinalgConfig& GetLinalgConfig() { return g_config; }
void SetLinalgConfig(const LinalgConfig& config) { g_config = config; }

Matrix Orthonormalize(const Matrix& vectors) {
  const double tol = g_config.rank_threshold;
  Matrix out(vectors.rows(), vectors.cols());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Vector v = vectors.col(j);
    // Two passes of modified Gram-Schmidt keep the frame orthonormal to
    // roundoff even for nearly dependent input.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < k; ++i) v -= out.col(i).dot(v) * out.col(i);
    }
    const double norm = v.norm();
    if (norm < tol) continue;
    out.col(k++) = v / norm;
  }
  return out.leftCols(k);
}

Matrix Orthonormalize(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return Matrix(0, 0);
  Matrix m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != m.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "vectors differ in dimension");
    }
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return Orthonormalize(m);
}

Matrix OrthogonalComplement(const Matrix& frame, int dim) {
  Matrix all(dim, frame.cols() + dim);
  if (frame.cols() > 0) all.leftCols(frame.cols()) = frame;
  all.rightCols(dim) = Matrix::Identity(dim, dim);
  const Matrix basis = Orthonormalize(all);
  return basis.rightCols(basis.cols() - frame.cols());
}

AffineSubspace::AffineSubspace(Vector base, const Matrix& directions)
    : base_(std::move(base)) {
  RequireFinite(base_, "base point");
  if (directions.cols() > 0) {
    if (directions.rows() != base_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "direction vectors must live in the ambient space");
    }
    RequireFinite(directions, "direction vector");
    frame_ = Orthonormalize(directions);
  } else {
    frame_ = Matrix(base_.size(), 0);
  }
}

AffineSubspace AffineSubspace::Point(Vector base) {
  return AffineSubspace(std::move(base), Matrix());
}

Vector AffineSubspace::Project(const Vector& p) const {
  const Vector rel = p - base_;
  return base_ + frame_ * (frame_.transpose() * rel);
}

double AffineSubspace::Residual(const Vector& p) const {
  return (p - Project(p)).norm();
}

std::optional<AffineSubspace> AffineIntersect(const AffineSubspace& a,
                                              const AffineSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimensions differ");
  }
  const int d = a.ambient_dim();
  // x is in A iff N_A^T (x - a) = 0 for an orthonormal basis N_A of the
  // complement of A's directions.
  const Matrix na = OrthogonalComplement(a.frame(), d);
  const Matrix nb = OrthogonalComplement(b.frame(), d);
  Matrix constraints(na.cols() + nb.cols(), d);
  Vector rhs(na.cols() + nb.cols());
  constraints.topRows(na.cols()) = na.transpose();
  constraints.bottomRows(nb.cols()) = nb.transpose();
  rhs.head(na.cols()) = na.transpose() * a.base();
  rhs.tail(nb.cols()) = nb.transpose() * b.base();

  if (constraints.rows() == 0) {
    // Both are the whole space.
    return AffineSubspace(a.base(), Matrix::Identity(d, d));
  }

  Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? std::max(sigma(0), 1.0) : 1.0;
  const double thr = g_config.rank_threshold * smax;
  const double floor = g_config.ill_conditioned_floor * smax;

  int rank = 0;
  bool ill = false;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) >= thr) {
      ++rank;
    } else if (sigma(i) >= floor) {
      ill = true;
    }
  }

  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  // Minimum-norm least-squares solution over the numerically nonzero part.
  Vector x = Vector::Zero(d);
  for (int i = 0; i < rank; ++i) {
    x += (u.col(i).dot(rhs) / sigma(i)) * v.col(i);
  }
  const double scale = std::max({1.0, a.base().norm(), b.base().norm()});
  if ((constraints * x - rhs).norm() > 1e-9 * scale) return std::nullopt;

  AffineSubspace result(x, v.rightCols(d - rank));
  result.set_ill_conditioned(ill);
  return result;
}

int SpanDim(const std::vector<Matrix>& frames, const std::vector<Vector>& extra) {
  Eigen::Index rows = -1, cols = 0;
  for (const auto& f : frames) {
    if (f.cols() == 0) continue;
    if (rows >= 0 && f.rows() != rows) {
      throw Error(ErrorCode::kInvalidArgument, "frames differ in dimension");
    }
    rows = f.rows();
    cols += f.cols();
  }
  for (const auto& e : extra) {
    if (rows >= 0 && e.size() != rows) {
      throw Error(ErrorCode::kInvalidArgument, "vectors differ in dimension");
    }
    rows = e.size();
    ++cols;
  }
  if (cols == 0) return 0;
  Matrix stacked(rows, cols);
  Eigen::Index j = 0;
  for (const auto& f : frames) {
    if (f.cols() == 0) continue;
    stacked.middleCols(j, f.cols()) = f;
    j += f.cols();
  }
  for (const auto& e : extra) stacked.col(j++) = e;

  Eigen::JacobiSVD<Matrix> svd(stacked);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double thr = g_config.rank_threshold * sigma(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) rank += sigma(i) >= thr;
  return rank;
}

}  // namespace unit_fibers
