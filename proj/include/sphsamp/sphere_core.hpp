#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sphsamp {

using Complex = std::complex<double>;
using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row-major (theta, phi) layout of a full equiangular grid, pole rings included.
template <typename Scalar>
using GridArray = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised when an argument violates a documented precondition that is not a
/// numeric domain problem (wrong grid kind, mismatched band-limit, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Band-limit L: all harmonic coefficients with degree >= L vanish.
class BandLimit {
 public:
  explicit BandLimit(int L) : value_(L) {
    if (L < 1) throw std::domain_error("band-limit must be >= 1, got " + std::to_string(L));
  }
  int value() const noexcept { return value_; }
  operator int() const noexcept { return value_; }  // NOLINT: used pervasively in index arithmetic

 private:
  int value_;
};

enum class GridKind { DH, MW };

std::string_view to_string(GridKind kind);
/// Parses "dh" / "mw" (case-insensitive).
GridKind parse_grid_kind(std::string_view text);

/// Equiangular sampling grid of one of the two supported sampling theorems.
///
/// DH: theta_t = pi t / 2L (t < 2L), phi_p = pi p / L (p < 2L); the north
/// pole row t = 0 is stored once.
/// MW: theta_t = pi (2t+1) / (2L-1) (t < L), phi_p = 2 pi p / (2L-1)
/// (p < 2L-1); the south pole row t = L-1 is stored once.
struct GridDescriptor {
  GridKind kind;
  int L;
  int n_theta;
  int n_phi;
  int n_samples;

  bool operator==(const GridDescriptor&) const = default;

  /// Row index of the row holding a pole (stored as a single sample).
  int pole_row() const noexcept { return kind == GridKind::DH ? 0 : n_theta - 1; }
  bool is_pole_row(int t) const noexcept { return t == pole_row(); }

  /// Position of sample (t, p) in the stored vector; every p of the pole row
  /// maps to the same slot.
  int stored_index(int t, int p) const;

  double theta(int t) const;
  double phi(int p) const;
  double theta_spacing() const;
  double phi_spacing() const;
};

GridDescriptor make_grid(GridKind kind, BandLimit L);

int sample_count(GridKind kind, BandLimit L);

double theta_node(const GridDescriptor& grid, int t);
double phi_node(const GridDescriptor& grid, int p);

/// Flat harmonic index l^2 + l + m.
int flat_index(int l, int m);

/// Inverse of flat_index.
inline void degree_order(int index, int& l, int& m) {
  l = static_cast<int>(std::sqrt(static_cast<double>(index)));
  while (l * l > index) --l;
  while ((l + 1) * (l + 1) <= index) ++l;
  m = index - l * l - l;
}

/// Spherical harmonic coefficients f_lm for l < L, ordered by flat_index.
class HarmonicCoeffs {
 public:
  explicit HarmonicCoeffs(BandLimit L) : L_(L), values_(VectorXc::Zero(int(L) * int(L))) {}
  HarmonicCoeffs(BandLimit L, VectorXc values);

  int L() const noexcept { return L_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  Complex& operator()(int l, int m) { return values_(flat_index(l, m)); }
  const Complex& operator()(int l, int m) const { return values_(flat_index(l, m)); }

  VectorXc& values() noexcept { return values_; }
  const VectorXc& values() const noexcept { return values_; }

 private:
  int L_;
  VectorXc values_;
};

/// Samples of a function on a grid; see GridDescriptor for the storage order.
class SphereSignal {
 public:
  explicit SphereSignal(const GridDescriptor& grid)
      : grid_(grid), values_(VectorXc::Zero(grid.n_samples)) {}
  SphereSignal(const GridDescriptor& grid, VectorXc values);

  const GridDescriptor& grid() const noexcept { return grid_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  Complex& operator()(int t, int p) { return values_(grid_.stored_index(t, p)); }
  const Complex& operator()(int t, int p) const { return values_(grid_.stored_index(t, p)); }

  VectorXc& values() noexcept { return values_; }
  const VectorXc& values() const noexcept { return values_; }

 private:
  GridDescriptor grid_;
  VectorXc values_;
};

/// Broadcasts stored samples onto the full n_theta x n_phi array.
template <typename Derived>
GridArray<typename Derived::Scalar> expand(const GridDescriptor& grid,
                                           const Eigen::MatrixBase<Derived>& stored) {
  GridArray<typename Derived::Scalar> full(grid.n_theta, grid.n_phi);
  for (int t = 0; t < grid.n_theta; ++t)
    for (int p = 0; p < grid.n_phi; ++p) full(t, p) = stored(grid.stored_index(t, p));
  return full;
}

/// Adjoint of expand: pole rings are summed into their single stored slot.
template <typename Derived>
Vector<typename Derived::Scalar> expand_adjoint(const GridDescriptor& grid,
                                                const Eigen::MatrixBase<Derived>& full) {
  Vector<typename Derived::Scalar> stored = Vector<typename Derived::Scalar>::Zero(grid.n_samples);
  for (int t = 0; t < grid.n_theta; ++t)
    for (int p = 0; p < grid.n_phi; ++p) stored(grid.stored_index(t, p)) += full(t, p);
  return stored;
}

/// Keeps the p = 0 sample of each pole ring; inverse of expand on
/// pole-consistent arrays.
template <typename Derived>
Vector<typename Derived::Scalar> contract(const GridDescriptor& grid,
                                         const Eigen::MatrixBase<Derived>& full) {
  Vector<typename Derived::Scalar> stored(grid.n_samples);
  for (int t = 0; t < grid.n_theta; ++t) {
    const int width = grid.is_pole_row(t) ? 1 : grid.n_phi;
    for (int p = 0; p < width; ++p) stored(grid.stored_index(t, p)) = full(t, p);
  }
  return stored;
}

}  // namespace sphsamp
