#include "stencil.hpp"

#include <cstdlib>

#include "pfiber/error.hpp"

namespace pfiber::detail {

std::vector<std::vector<double>> fornberg(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

RadialStencil::RadialStencil(std::size_t n, double h) : n_(n), h_(h) {
  if (n < static_cast<std::size_t>(kWidth))
    fail(ErrorKind::invalid_input, "grid too small for derivative stencils");
  d1_.resize(n);
  d2_.resize(n);
  const int N = static_cast<int>(n);
  const int half = kWidth / 2;
  for (int i = 0; i < N; ++i) {
    // window of grid offsets; near the origin negative offsets reflect
    int start = i - half;
    if (i + half > N - 1) start = N - kWidth;
    std::vector<double> x(kWidth);
    std::array<int, kWidth> idx{};
    for (int k = 0; k < kWidth; ++k) {
      x[k] = static_cast<double>(start + k);
      idx[k] = std::abs(start + k);
    }
    auto c = fornberg(static_cast<double>(i), x, 2);
    Row r1{}, r2{};
    r1.idx = idx;
    r2.idx = idx;
    for (int k = 0; k < kWidth; ++k) {
      r1.w[k] = c[1][k] / h;
      r2.w[k] = c[2][k] / (h * h);
    }
    d1_[i] = r1;
    d2_[i] = r2;
  }
}

namespace {
inline double apply(const std::array<int, 7>& idx, const std::array<double, 7>& w,
                    const double* u) {
  double s = 0.0;
  for (int k = 0; k < 7; ++k) s += w[k] * u[idx[k]];
  return s;
}
}  // namespace

void RadialStencil::first(const double* u, double* du) const {
  for (std::size_t i = 0; i < n_; ++i) du[i] = apply(d1_[i].idx, d1_[i].w, u);
  du[0] = 0.0;  // even profile
}

void RadialStencil::second(const double* u, double* d2u) const {
  for (std::size_t i = 0; i < n_; ++i) d2u[i] = apply(d2_[i].idx, d2_[i].w, u);
}

void RadialStencil::laplacian(const double* u, double* lap) const {
  lap[0] = 3.0 * apply(d2_[0].idx, d2_[0].w, u);
  for (std::size_t i = 1; i < n_; ++i) {
    const double r = h_ * static_cast<double>(i);
    lap[i] = apply(d2_[i].idx, d2_[i].w, u) + 2.0 * apply(d1_[i].idx, d1_[i].w, u) / r;
  }
}

}  // namespace pfiber::detail
