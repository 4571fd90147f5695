#include "sphsamp/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sphsamp {

using std::numbers::pi;

namespace {

void check_degree_order(int l, int m) {
  if (l < 0 || m < -l || m > l)
    throw std::domain_error("invalid (l, m) = (" + std::to_string(l) + ", " + std::to_string(m) + ")");
}

// Normalized lambda_lm for a single (l, m >= 0).
double normalized_legendre_single(int l, int m, double x, double s) {
  double pmm = 1.0 / std::sqrt(4.0 * pi);
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  if (l == m) return pmm;
  double prev = pmm;
  double cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double a = std::sqrt((4.0 * k * k - 1.0) / (double(k) * k - double(m) * m));
    const double b = std::sqrt((double(k - 1) * (k - 1) - double(m) * m) / (4.0 * (k - 1) * (k - 1) - 1.0));
    const double next = a * (x * cur - b * prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double legendre(int l, int m, double x) {
  if (l < 0 || m < 0 || m > l)
    throw std::domain_error("legendre requires 0 <= m <= l, got (" + std::to_string(l) + ", " +
                            std::to_string(m) + ")");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("legendre argument outside [-1, 1]");
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= -(2.0 * k - 1.0) * s;
  if (l == m) return pmm;
  double prev = pmm;
  double cur = x * (2.0 * m + 1.0) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double next = (x * (2.0 * k - 1.0) * cur - (k + m - 1.0) * prev) / (k - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex ylm(int l, int m, double theta, double phi) {
  check_degree_order(l, m);
  const int am = std::abs(m);
  const double value = normalized_legendre_single(l, am, std::cos(theta), std::sin(theta));
  const Complex y = std::polar(value, am * phi);
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

VectorXr normalized_legendre(int L, double theta) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  VectorXr table(L * (L + 1) / 2);
  double pmm = 1.0 / std::sqrt(4.0 * pi);
  for (int m = 0; m < L; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    table(tri_index(m, m)) = pmm;
    if (m + 1 >= L) continue;
    double prev = pmm;
    double cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
    table(tri_index(m + 1, m)) = cur;
    for (int l = m + 2; l < L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
      const double next = a * (x * cur - b * prev);
      prev = cur;
      cur = next;
      table(tri_index(l, m)) = cur;
    }
  }
  return table;
}

DeltaTable build_delta_table(BandLimit L) {
  const double h = std::numbers::sqrt2 / 2.0;  // cos(pi/4) = sin(pi/4)
  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(L);
  Eigen::MatrixXd current = Eigen::MatrixXd::Ones(1, 1);
  slices.push_back(current);

  // Doubled angular momentum: twice_j = 2j; matrix index i = m + j.
  for (int twice_j = 0; twice_j + 2 <= 2 * (int(L) - 1); ) {
    for (int half = 0; half < 2; ++half, ++twice_j) {
      const int n = twice_j + 1;  // 2j' = 2j + 1, matrix size n + 1
      auto at = [&](int i, int k) -> double {
        return (i < 0 || k < 0 || i > twice_j || k > twice_j) ? 0.0 : current(i, k);
      };
      Eigen::MatrixXd next(n + 1, n + 1);
      for (int i = 0; i <= n; ++i) {
        const double up_i = std::sqrt(double(i));
        const double dn_i = std::sqrt(double(n - i));
        for (int k = 0; k <= n; ++k) {
          const double up_k = std::sqrt(double(k));
          const double dn_k = std::sqrt(double(n - k));
          next(i, k) = (up_i * up_k * h * at(i - 1, k - 1) - up_i * dn_k * h * at(i - 1, k) +
                        dn_i * up_k * h * at(i, k - 1) + dn_i * dn_k * h * at(i, k)) /
                       n;
        }
      }
      current = std::move(next);
    }
    slices.push_back(current);
  }
  return DeltaTable(std::move(slices));
}

double wigner_d(const DeltaTable& delta, int l, int m, int n, double beta) {
  check_degree_order(l, m);
  check_degree_order(l, n);
  if (l >= delta.L()) throw std::domain_error("degree beyond delta table band-limit");
  Complex sum = 0.0;
  for (int mp = -l; mp <= l; ++mp) sum += delta(l, mp, m) * delta(l, mp, n) * std::polar(1.0, mp * beta);
  // i^{n-m}
  const int k = ((n - m) % 4 + 4) % 4;
  const Complex phase = k == 0 ? Complex(1, 0) : k == 1 ? Complex(0, 1) : k == 2 ? Complex(-1, 0) : Complex(0, -1);
  return (phase * sum).real();
}

}  // namespace sphsamp
