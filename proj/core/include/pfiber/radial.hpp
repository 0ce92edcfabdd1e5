#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace pfiber {

namespace detail {
class RadialStencil;
}

// Uniform radial grid 0 = r_0 < ... < r_{N-1} = r_max with volume weights 4 pi r^2 dr.
class RadialGrid {
 public:
  static constexpr double kDefaultRMax = 40.0;
  static constexpr std::size_t kDefaultPoints = 4096;

  explicit RadialGrid(double r_max = kDefaultRMax, std::size_t n_points = kDefaultPoints);

  double r_max() const { return data_->r_max; }
  std::size_t size() const { return data_->nodes.size(); }
  double spacing() const { return data_->h; }
  const std::vector<double>& nodes() const { return data_->nodes; }
  const std::vector<double>& weights() const { return data_->weights; }
  const detail::RadialStencil& stencil() const { return *data_->stencil; }

  bool same_as(const RadialGrid& other) const;

 private:
  struct Data {
    double r_max;
    double h;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::shared_ptr<const detail::RadialStencil> stencil;
  };
  std::shared_ptr<const Data> data_;
};

class RadialFunction {
 public:
  RadialFunction(RadialGrid grid, std::vector<double> values);

  template <class F>
  static RadialFunction sample(const RadialGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.nodes()[i]);
    return RadialFunction(grid, std::move(v));
  }

  static RadialFunction zero(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // u(r_max)^2 * r_max^3
  double leak() const;

  RadialFunction scaled(double k) const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

inline constexpr double kLeakTolerance = 1e-8;

double integrate_mass(const RadialFunction& u);
double integrate_grad_sq(const RadialFunction& u);
double integrate_lp(const RadialFunction& u, double p);

// Weighted inner product sum w_i f_i g_i on the grid of f.
double inner(const RadialFunction& f, const RadialFunction& g);

std::vector<double> radial_derivative(const RadialFunction& u);
std::vector<double> laplacian(const RadialFunction& u);

// u^t(x) = t^{3/2} u(t x), interpolated on the same grid, zero outside the box.
RadialFunction dilate(const RadialFunction& u, double t, double leak_tol = kLeakTolerance);

RadialFunction project_to_sphere(const RadialFunction& u, double r);

// The scalar integrals of the theory for one profile and one exponent.
struct Integrals {
  double mass = 0.0;
  double grad_sq = 0.0;  // A
  double hartree = 0.0;  // B
  double lp = 0.0;       // C
  double p = 0.0;

  // integrals of k*u
  Integrals scaled(double k) const;
  // integrals of (r/mass)^{1/2} u
  Integrals normalized(double r = 1.0) const;
  // integrals of u^t
  Integrals dilated(double t) const;
};

// Parametric profile: sum_k c_k g(r / sigma_k), g Gaussian or exponential.
struct Profile {
  enum class Shape { gaussian, exponential };
  Shape shape = Shape::gaussian;
  std::vector<double> widths;
  std::vector<double> coeffs;

  double operator()(double r) const;
  RadialFunction sample(const RadialGrid& grid) const;
  // exact t^{3/2} u(t x)
  Profile dilated(double t) const;
  Profile scaled(double k) const;
  // smallest width, used to size witness grids
  double min_width() const;
};

class TrialFamily {
 public:
  enum class Kind { single_gaussian, gaussian_mixture, exponential };

  static TrialFamily single_gaussian();
  static TrialFamily gaussian_mixture(int terms = 3);
  static TrialFamily exponential();
  static TrialFamily from_name(const std::string& name);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  int terms() const { return terms_; }

  // Overrides the width box (applies to every term).
  void set_width_bounds(double sigma_min, double sigma_max);

  std::string name() const;
  std::string descriptor() const;

  bool in_bounds(const std::vector<double>& x) const;
  std::vector<double> clamp(std::vector<double> x) const;
  std::vector<double> default_point() const;
  std::vector<double> random_point(std::mt19937_64& rng) const;

  Profile profile(const std::vector<double>& x) const;
  RadialFunction sample(const std::vector<double>& x, const RadialGrid& grid) const;

 private:
  TrialFamily(Kind kind, int terms);
  Kind kind_;
  int terms_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace pfiber
