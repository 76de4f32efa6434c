#include "steklov/sphere.hpp"

#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

void validate_npm(int n, int p, int m) {
  if (n < 2) throw DomainError("sphere mode: n must be >= 2, got " + std::to_string(n));
  if (p < 0 || p > n - 2)
    throw DomainError("sphere mode: p must be in [0, n-2], got p=" +
                      std::to_string(p) + " for n=" + std::to_string(n));
  if (m < 1) throw DomainError("sphere mode: m must be >= 1, got " + std::to_string(m));
}

}  // namespace

std::int64_t sphere_eigenvalue_exact(int n, int p, int m) {
  validate_npm(n, p, m);
  return static_cast<std::int64_t>(m + p) * (n + m - p - 2);
}

double sphere_eigenvalue(int n, int p, int m) {
  return static_cast<double>(sphere_eigenvalue_exact(n, p, m));
}

ModeIndex make_mode(int n, int p, int m) {
  return ModeIndex{n, p, m, sphere_eigenvalue(n, p, m)};
}

double ratio_bound(int n, int p, int k) {
  if (n < 3) throw DomainError("ratio_bound: n must be >= 3");
  validate_npm(n, p, k);
  const double num = sphere_eigenvalue(n, p, k + 1);
  const double den = sphere_eigenvalue(n, p, k);
  return num / den;
}

std::function<std::int64_t(int, int, int)>& multiplicity_provider() {
  static std::function<std::int64_t(int, int, int)> provider;
  return provider;
}

}  // namespace steklov
