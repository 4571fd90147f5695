#include "sphsamp/sphere_core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace sphsamp {

using std::numbers::pi;

std::string_view to_string(GridKind kind) { return kind == GridKind::DH ? "dh" : "mw"; }

GridKind parse_grid_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dh") return GridKind::DH;
  if (lower == "mw") return GridKind::MW;
  throw std::invalid_argument("unknown grid kind '" + std::string(text) + "' (expected dh or mw)");
}

int sample_count(GridKind kind, BandLimit L) {
  const int l = L;
  return kind == GridKind::DH ? (2 * l - 1) * 2 * l + 1 : (l - 1) * (2 * l - 1) + 1;
}

GridDescriptor make_grid(GridKind kind, BandLimit L) {
  const int l = L;
  if (kind == GridKind::DH) return {kind, l, 2 * l, 2 * l, sample_count(kind, L)};
  return {kind, l, l, 2 * l - 1, sample_count(kind, L)};
}

int GridDescriptor::stored_index(int t, int p) const {
  if (t < 0 || t >= n_theta || p < 0 || p >= n_phi)
    throw std::domain_error("grid index (" + std::to_string(t) + ", " + std::to_string(p) +
                            ") out of range");
  if (kind == GridKind::DH) return t == 0 ? 0 : 1 + (t - 1) * n_phi + p;
  return t == n_theta - 1 ? (n_theta - 1) * n_phi : t * n_phi + p;
}

double GridDescriptor::theta(int t) const {
  if (t < 0 || t >= n_theta) throw std::domain_error("theta index " + std::to_string(t) + " out of range");
  if (kind == GridKind::DH) return pi * t / (2.0 * L);
  return pi * (2.0 * t + 1.0) / (2.0 * L - 1.0);
}

double GridDescriptor::phi(int p) const {
  if (p < 0 || p >= n_phi) throw std::domain_error("phi index " + std::to_string(p) + " out of range");
  if (kind == GridKind::DH) return pi * p / L;
  return 2.0 * pi * p / (2.0 * L - 1.0);
}

double GridDescriptor::theta_spacing() const {
  return kind == GridKind::DH ? pi / (2.0 * L) : 2.0 * pi / (2.0 * L - 1.0);
}

double GridDescriptor::phi_spacing() const { return 2.0 * pi / n_phi; }

double theta_node(const GridDescriptor& grid, int t) { return grid.theta(t); }
double phi_node(const GridDescriptor& grid, int p) { return grid.phi(p); }

int flat_index(int l, int m) {
  if (l < 0 || m > l || m < -l)
    throw std::domain_error("invalid harmonic index (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
  return l * l + l + m;
}

HarmonicCoeffs::HarmonicCoeffs(BandLimit L, VectorXc values) : L_(L), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(L_) * L_)
    throw ContractError("coefficient vector length " + std::to_string(values_.size()) +
                        " does not match L^2 = " + std::to_string(L_ * L_));
}

SphereSignal::SphereSignal(const GridDescriptor& grid, VectorXc values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_samples)
    throw ContractError("signal length " + std::to_string(values_.size()) +
                        " does not match grid sample count " + std::to_string(grid_.n_samples));
}

}  // namespace sphsamp
