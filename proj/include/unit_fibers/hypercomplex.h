#ifndef UNIT_FIBERS_HYPERCOMPLEX_H_
#define UNIT_FIBERS_HYPERCOMPLEX_H_

#include <array>
#include <span>

#include <Eigen/Dense>

namespace unit_fibers {

// An element of the complex numbers (dim 2), quaternions (dim 4) or
// octonions (dim 8).
//
// Coordinate 0 is the real part, coordinates 1..dim-1 are the imaginary units
// e_1..e_{dim-1}. The multiplication table comes from iterated Cayley-Dickson
// doubling starting at the reals,
//
//   (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),
//
// where an element of the doubled algebra stores (a, b) as its lower and
// upper halves. With this convention the quaternion units are
// (e_1, e_2, e_3) = (i, j, k) with ij = k, and the octonion units extend them
// by e_4 = (0, 1) and e_{4+m} = e_m e_4 for m = 1..3. The `algebra-table`
// subcommand prints the full table.
class HypercomplexElement {
 public:
  static constexpr int kMaxDim = 8;

  // Throws Error(kInvalidArgument) unless coords.size() is 2, 4 or 8 and all
  // entries are finite.
  explicit HypercomplexElement(std::span<const double> coords);

  static HypercomplexElement Unit(int dim, int index);
  static HypercomplexElement One(int dim) { return Unit(dim, 0); }

  int dim() const { return dim_; }
  double operator[](int i) const { return coords_[i]; }
  std::span<const double> coords() const { return {coords_.data(), static_cast<std::size_t>(dim_)}; }

  double norm() const;
  double norm_squared() const;
  HypercomplexElement conjugate() const;

  Eigen::VectorXd ToVector() const;

  friend HypercomplexElement operator*(const HypercomplexElement& a,
                                       const HypercomplexElement& b);
  friend HypercomplexElement operator+(const HypercomplexElement& a,
                                       const HypercomplexElement& b);
  friend HypercomplexElement operator-(const HypercomplexElement& a,
                                       const HypercomplexElement& b);
  friend bool operator==(const HypercomplexElement& a,
                         const HypercomplexElement& b) = default;

 private:
  HypercomplexElement() = default;

  int dim_ = 0;
  std::array<double, kMaxDim> coords_{};
};

// Cayley-Dickson product. Throws Error(kInvalidArgument) on dim mismatch.
HypercomplexElement Multiply(const HypercomplexElement& a,
                             const HypercomplexElement& b);

bool IsAlgebraDim(int dim);

// e_m * y for the imaginary unit e_m, 1 <= m <= dim-1, with dim = y.size().
Eigen::VectorXd ImaginaryLeftMultiply(int m, const Eigen::VectorXd& y);

// Matrix L with L y = e_m y. Skew-symmetric and orthogonal.
Eigen::MatrixXd LeftMultiplicationMatrix(int m, int dim);

// Structure constants: unit(i) * unit(j) = sign * unit(index).
struct TableEntry {
  int index;
  int sign;
};
TableEntry BasisProduct(int dim, int i, int j);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_HYPERCOMPLEX_H_
