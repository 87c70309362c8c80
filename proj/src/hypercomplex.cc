#include "unit_fibers/hypercomplex.h"

#include <cmath>
#include <string>

#include "unit_fibers/error.h"

namespace unit_fibers {
namespace {

using Coords = std::array<double, HypercomplexElement::kMaxDim>;

void Conjugate(std::span<const double> x, std::span<double> out) {
  out[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = -x[i];
}

// out = x * y for x, y of equal power-of-two length.
void CayleyDickson(std::span<const double> x, std::span<const double> y,
                   std::span<double> out) {
  const std::size_t n = x.size();
  if (n == 1) {
    out[0] = x[0] * y[0];
    return;
  }
  const std::size_t h = n / 2;
  auto a = x.first(h), b = x.last(h);
  auto c = y.first(h), d = y.last(h);

  std::array<double, 4> conj_c{}, conj_d{}, t1{}, t2{};
  auto cc = std::span(conj_c).first(h);
  auto cd = std::span(conj_d).first(h);
  auto s1 = std::span(t1).first(h);
  auto s2 = std::span(t2).first(h);
  Conjugate(c, cc);
  Conjugate(d, cd);

  // Lower half: a c - conj(d) b.
  CayleyDickson(a, c, s1);
  CayleyDickson(cd, b, s2);
  for (std::size_t i = 0; i < h; ++i) out[i] = s1[i] - s2[i];
  // Upper half: d a + b conj(c).
  CayleyDickson(d, a, s1);
  CayleyDickson(b, cc, s2);
  for (std::size_t i = 0; i < h; ++i) out[h + i] = s1[i] + s2[i];
}

}  // namespace

bool IsAlgebraDim(int dim) { return dim == 2 || dim == 4 || dim == 8; }

HypercomplexElement::HypercomplexElement(std::span<const double> coords) {
  if (!IsAlgebraDim(static_cast<int>(coords.size()))) {
    throw Error(ErrorCode::kInvalidArgument,
                "hypercomplex dimension must be 2, 4 or 8, got " +
                    std::to_string(coords.size()));
  }
  dim_ = static_cast<int>(coords.size());
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(coords[i])) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
    }
    coords_[i] = coords[i];
  }
}

HypercomplexElement HypercomplexElement::Unit(int dim, int index) {
  if (!IsAlgebraDim(dim) || index < 0 || index >= dim) {
    throw Error(ErrorCode::kInvalidArgument, "basis unit out of range");
  }
  Coords c{};
  c[index] = 1.0;
  return HypercomplexElement(std::span<const double>(c.data(), dim));
}

double HypercomplexElement::norm_squared() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += coords_[i] * coords_[i];
  return s;
}

double HypercomplexElement::norm() const { return std::sqrt(norm_squared()); }

HypercomplexElement HypercomplexElement::conjugate() const {
  HypercomplexElement r = *this;
  for (int i = 1; i < dim_; ++i) r.coords_[i] = -r.coords_[i];
  return r;
}

Eigen::VectorXd HypercomplexElement::ToVector() const {
  return Eigen::Map<const Eigen::VectorXd>(coords_.data(), dim_);
}

HypercomplexElement Multiply(const HypercomplexElement& a,
                             const HypercomplexElement& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot multiply elements of dimension " +
                    std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  Coords out{};
  CayleyDickson(a.coords(), b.coords(), std::span(out).first(a.dim()));
  return HypercomplexElement(std::span<const double>(out.data(), a.dim()));
}

HypercomplexElement operator*(const HypercomplexElement& a,
                              const HypercomplexElement& b) {
  return Multiply(a, b);
}

HypercomplexElement operator+(const HypercomplexElement& a,
                              const HypercomplexElement& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in sum");
  }
  HypercomplexElement r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords_[i] += b.coords_[i];
  return r;
}

HypercomplexElement operator-(const HypercomplexElement& a,
                              const HypercomplexElement& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in difference");
  }
  HypercomplexElement r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords_[i] -= b.coords_[i];
  return r;
}

Eigen::VectorXd ImaginaryLeftMultiply(int m, const Eigen::VectorXd& y) {
  const int dim = static_cast<int>(y.size());
  if (!IsAlgebraDim(dim)) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector length must be 2, 4 or 8, got " + std::to_string(dim));
  }
  if (m < 1 || m >= dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "imaginary unit index " + std::to_string(m) +
                    " outside 1.." + std::to_string(dim - 1));
  }
  const HypercomplexElement x(std::span<const double>(y.data(), dim));
  return Multiply(HypercomplexElement::Unit(dim, m), x).ToVector();
}

Eigen::MatrixXd LeftMultiplicationMatrix(int m, int dim) {
  Eigen::MatrixXd l(dim, dim);
  for (int j = 0; j < dim; ++j) {
    l.col(j) = ImaginaryLeftMultiply(m, Eigen::VectorXd::Unit(dim, j));
  }
  return l;
}

TableEntry BasisProduct(int dim, int i, int j) {
  const auto p = HypercomplexElement::Unit(dim, i) * HypercomplexElement::Unit(dim, j);
  for (int k = 0; k < dim; ++k) {
    if (p[k] != 0.0) return {k, p[k] > 0 ? 1 : -1};
  }
  return {0, 0};
}

}  // namespace unit_fibers
