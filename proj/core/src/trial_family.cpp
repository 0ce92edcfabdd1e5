#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfiber/error.hpp"
#include "pfiber/radial.hpp"

namespace pfiber {

double Profile::operator()(double r) const {
  double s = 0.0;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    const double x = r / widths[k];
    s += coeffs[k] * (shape == Shape::gaussian ? std::exp(-0.5 * x * x) : std::exp(-x));
  }
  return s;
}

RadialFunction Profile::sample(const RadialGrid& grid) const {
  return RadialFunction::sample(grid, [this](double r) { return (*this)(r); });
}

Profile Profile::dilated(double t) const {
  Profile o = *this;
  const double amp = std::pow(t, 1.5);
  for (auto& w : o.widths) w /= t;
  for (auto& c : o.coeffs) c *= amp;
  return o;
}

Profile Profile::scaled(double k) const {
  Profile o = *this;
  for (auto& c : o.coeffs) c *= k;
  return o;
}

double Profile::min_width() const {
  double m = widths.empty() ? 1.0 : widths[0];
  for (std::size_t k = 0; k < widths.size(); ++k)
    if (coeffs[k] != 0.0) m = std::min(m, widths[k]);
  return m;
}

TrialFamily::TrialFamily(Kind kind, int terms) : kind_(kind), terms_(terms) {}

TrialFamily TrialFamily::single_gaussian() {
  TrialFamily f(Kind::single_gaussian, 1);
  f.lower_ = {std::log(0.35)};
  f.upper_ = {std::log(3.5)};
  return f;
}

TrialFamily TrialFamily::gaussian_mixture(int terms) {
  if (terms < 1) fail(ErrorKind::invalid_input, "mixture needs at least one term");
  TrialFamily f(Kind::gaussian_mixture, terms);
  for (int k = 0; k < terms; ++k) {
    f.lower_.push_back(std::log(0.35));
    f.upper_.push_back(std::log(3.5));
  }
  for (int k = 0; k < terms; ++k) {
    f.lower_.push_back(k == 0 ? 0.1 : 0.0);
    f.upper_.push_back(1.0);
  }
  return f;
}

TrialFamily TrialFamily::exponential() {
  TrialFamily f(Kind::exponential, 1);
  f.lower_ = {std::log(0.2)};
  f.upper_ = {std::log(1.4)};
  return f;
}

TrialFamily TrialFamily::from_name(const std::string& name) {
  if (name == "single-gaussian" || name == "gaussian") return single_gaussian();
  if (name == "exponential") return exponential();
  if (name == "gaussian-mixture" || name == "mixture") return gaussian_mixture(3);
  const std::string prefix = "gaussian-mixture-";
  if (name.rfind(prefix, 0) == 0) {
    const int k = std::stoi(name.substr(prefix.size()));
    return gaussian_mixture(k);
  }
  fail(ErrorKind::invalid_input, "unknown trial family '" + name + "'");
}

void TrialFamily::set_width_bounds(double sigma_min, double sigma_max) {
  if (!(sigma_min > 0.0) || !(sigma_max > sigma_min))
    fail(ErrorKind::invalid_input, "width bounds must satisfy 0 < min < max");
  for (int k = 0; k < terms_; ++k) {
    lower_[k] = std::log(sigma_min);
    upper_[k] = std::log(sigma_max);
  }
}

std::string TrialFamily::name() const {
  switch (kind_) {
    case Kind::single_gaussian: return "single-gaussian";
    case Kind::exponential: return "exponential";
    case Kind::gaussian_mixture:
      return terms_ == 3 ? "gaussian-mixture" : "gaussian-mixture-" + std::to_string(terms_);
  }
  return "unknown";
}

std::string TrialFamily::descriptor() const {
  std::ostringstream os;
  os << name() << " sigma in [" << std::exp(lower_[0]) << ", " << std::exp(upper_[0]) << "]";
  return os.str();
}

bool TrialFamily::in_bounds(const std::vector<double>& x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  return true;
}

std::vector<double> TrialFamily::clamp(std::vector<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower_[i], upper_[i]);
  return x;
}

std::vector<double> TrialFamily::default_point() const {
  std::vector<double> x(dim());
  for (int k = 0; k < terms_; ++k) x[k] = 0.0;  // sigma = 1
  if (kind_ == Kind::gaussian_mixture) {
    // spread widths around 1 so the simplex starts nondegenerate
    for (int k = 0; k < terms_; ++k) {
      x[k] = std::clamp(std::log(0.6) + k * std::log(2.0), lower_[k], upper_[k]);
      x[terms_ + k] = k == 0 ? 1.0 : 0.3;
    }
  }
  return x;
}

std::vector<double> TrialFamily::random_point(std::mt19937_64& rng) const {
  std::vector<double> x(dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uniform_real_distribution<double> d(lower_[i], upper_[i]);
    x[i] = d(rng);
  }
  return x;
}

Profile TrialFamily::profile(const std::vector<double>& x) const {
  if (x.size() != dim()) fail(ErrorKind::invalid_input, "parameter vector has wrong size");
  Profile pr;
  pr.shape = kind_ == Kind::exponential ? Profile::Shape::exponential : Profile::Shape::gaussian;
  for (int k = 0; k < terms_; ++k) pr.widths.push_back(std::exp(x[k]));
  if (kind_ == Kind::gaussian_mixture) {
    for (int k = 0; k < terms_; ++k) pr.coeffs.push_back(x[terms_ + k]);
  } else {
    pr.coeffs.push_back(1.0);
  }
  return pr;
}

RadialFunction TrialFamily::sample(const std::vector<double>& x, const RadialGrid& grid) const {
  return profile(x).sample(grid);
}

}  // namespace pfiber
