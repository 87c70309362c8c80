#ifndef UNIT_FIBERS_LINALG_H_
#define UNIT_FIBERS_LINALG_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace unit_fibers {

using Vector = Eigen::VectorXd;
// Column-major list of direction vectors; a frame is a Matrix whose columns
// are orthonormal.
using Matrix = Eigen::MatrixXd;

// Rank and dependence threshold, relative to the largest singular value (or
// to 1 for frames of unit vectors).
struct LinalgConfig {
  double rank_threshold = 1e-10;
  // Singular values between this and rank_threshold mark a result
  // ill-conditioned.
  double ill_conditioned_floor = 1e-12;
};

const LinalgConfig& GetLinalgConfig();
void SetLinalgConfig(const LinalgConfig& config);

// Orthonormal basis of span(vectors) by modified Gram-Schmidt. A vector whose
// residual after projection has norm < rank_threshold is dropped.
Matrix Orthonormalize(const Matrix& vectors);
Matrix Orthonormalize(const std::vector<Vector>& vectors);

// Orthonormal basis of the orthogonal complement of span(frame) in R^dim.
Matrix OrthogonalComplement(const Matrix& frame, int dim);

class AffineSubspace {
 public:
  // Throws Error(kInvalidArgument) on non-finite input or mismatched sizes.
  // Directions are orthonormalized on construction.
  AffineSubspace(Vector base, const Matrix& directions);

  static AffineSubspace Point(Vector base);

  int ambient_dim() const { return static_cast<int>(base_.size()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Vector& base() const { return base_; }
  const Matrix& frame() const { return frame_; }

  bool ill_conditioned() const { return ill_conditioned_; }
  void set_ill_conditioned(bool v) { ill_conditioned_ = v; }

  // Orthogonal projection of p onto the subspace.
  Vector Project(const Vector& p) const;
  // Distance from p to the subspace.
  double Residual(const Vector& p) const;

 private:
  Vector base_;
  Matrix frame_;
  bool ill_conditioned_ = false;
};

// Intersection of two affine subspaces of the same ambient space, or
// nullopt when they do not meet. Solved jointly through the SVD of the
// stacked normal-equation constraints.
std::optional<AffineSubspace> AffineIntersect(const AffineSubspace& a,
                                              const AffineSubspace& b);

// Rank of the columns of all frames plus the extra vectors.
int SpanDim(const std::vector<Matrix>& frames,
            const std::vector<Vector>& extra = {});

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_LINALG_H_
