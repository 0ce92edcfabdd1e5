#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pfiber::detail {

// Finite-difference weights (Fornberg) for derivatives 0..m at z from nodes x.
// Result is indexed [derivative][node].
std::vector<std::vector<double>> fornberg(double z, const std::vector<double>& x, int m);

// Seven-point derivative stencils on the uniform grid i*h, i = 0..n-1.
// Even reflection u(-r) = u(r) at the origin, one-sided near the outer edge.
class RadialStencil {
 public:
  static constexpr int kWidth = 7;

  RadialStencil(std::size_t n, double h);

  void first(const double* u, double* du) const;
  void second(const double* u, double* d2u) const;
  // 3-D radial Laplacian u'' + 2u'/r, with 3u''(0) at the origin.
  void laplacian(const double* u, double* lap) const;

  std::size_t size() const { return n_; }

 private:
  struct Row {
    std::array<int, kWidth> idx;
    std::array<double, kWidth> w;
  };
  std::size_t n_;
  double h_;
  std::vector<Row> d1_;
  std::vector<Row> d2_;
};

}  // namespace pfiber::detail
