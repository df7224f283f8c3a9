#include "bergman/reinhardt.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bergman::kernel {

namespace {

constexpr double kPi = std::numbers::pi;

void enumerate(int dim, int remaining, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (static_cast<int>(current.size()) == dim) {
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current.push_back(k);
    enumerate(dim, remaining - k, current, out);
    current.pop_back();
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// Splits "prod:disc,ball:2" style factor lists on commas that are not
// inside a nested spec (none of our factor specs nest, so plain split).
int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size() || v <= 0) throw std::invalid_argument(what);
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string("domain spec: bad integer for ") + what);
  }
}

// log of the ball(k) moment pi^k * alpha! / (k + |alpha|)!.
double log_ball_moment(int k, const int* alpha) {
  double total = k * std::log(kPi);
  int sum = 0;
  for (int i = 0; i < k; ++i) {
    total += std::lgamma(alpha[i] + 1.0);
    sum += alpha[i];
  }
  total -= std::lgamma(k + sum + 1.0);
  return total;
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int total_degree) {
  std::vector<MultiIndex> out;
  std::vector<std::vector<MultiIndex>> by_degree;
  // degree-major ordering: enumerate per exact degree
  for (int T = 0; T <= total_degree; ++T) {
    std::vector<MultiIndex> all;
    MultiIndex cur;
    enumerate(dim, T, cur, all);
    for (auto& a : all) {
      int s = 0;
      for (int v : a) s += v;
      if (s == T) out.push_back(a);
    }
  }
  return out;
}

ReinhardtDomain::ReinhardtDomain(std::vector<Factor> factors, std::vector<double> scales)
    : factors_(std::move(factors)), scales_(std::move(scales)) {
  dim_ = 0;
  for (const auto& f : factors_) dim_ += f.dim;
  if (scales_.empty()) scales_.assign(dim_, 1.0);
  if (static_cast<int>(scales_.size()) != dim_) {
    throw std::invalid_argument("ReinhardtDomain: scale vector length mismatch");
  }
  for (double s : scales_) {
    if (!(s > 0.0)) throw std::invalid_argument("ReinhardtDomain: scales must be > 0");
  }
}

ReinhardtDomain ReinhardtDomain::parse(const std::string& spec) {
  auto build_factor = [](const std::string& fs) -> Factor {
    const auto parts = split(fs, ':');
    Factor f;
    if (parts[0] == "disc") {
      if (parts.size() != 1) throw std::invalid_argument("domain spec: disc takes no argument");
      f.shape = Factor::Shape::kDisc;
      f.dim = 1;
    } else if (parts[0] == "ball") {
      if (parts.size() != 2) throw std::invalid_argument("domain spec: ball:k");
      f.shape = Factor::Shape::kBall;
      f.dim = parse_int(parts[1], "ball dimension");
    } else if (parts[0] == "egg") {
      if (parts.size() != 2) throw std::invalid_argument("domain spec: egg:m");
      f.shape = Factor::Shape::kEgg;
      f.dim = 2;
      f.m = parse_int(parts[1], "egg exponent");
    } else {
      throw std::invalid_argument("domain spec: unknown factor \"" + fs + "\"");
    }
    return f;
  };

  const auto head = spec.substr(0, spec.find(':'));
  if (head == "scale") {
    const auto p1 = spec.find(':');
    const auto p2 = spec.find(':', p1 + 1);
    if (p2 == std::string::npos) throw std::invalid_argument("domain spec: scale:lambda:<spec>");
    const double lambda = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
    ReinhardtDomain inner = parse(spec.substr(p2 + 1));
    std::vector<double> scales = inner.scales_;
    for (auto& s : scales) s *= lambda;
    ReinhardtDomain out(inner.factors_, scales);
    out.spec_ = spec;
    return out;
  }
  if (head == "anisoscale") {
    const auto p1 = spec.find(':');
    const auto p2 = spec.find(':', p1 + 1);
    if (p2 == std::string::npos) {
      throw std::invalid_argument("domain spec: anisoscale:l1,l2,...:<spec>");
    }
    const auto lam_parts = split(spec.substr(p1 + 1, p2 - p1 - 1), ',');
    ReinhardtDomain inner = parse(spec.substr(p2 + 1));
    if (static_cast<int>(lam_parts.size()) != inner.dim_) {
      throw std::invalid_argument("domain spec: anisoscale length mismatch");
    }
    std::vector<double> scales = inner.scales_;
    for (int i = 0; i < inner.dim_; ++i) scales[i] *= std::stod(lam_parts[i]);
    ReinhardtDomain out(inner.factors_, scales);
    out.spec_ = spec;
    return out;
  }

  std::vector<Factor> factors;
  if (head == "prod") {
    const auto body = spec.substr(spec.find(':') + 1);
    for (const auto& fs : split(body, ',')) factors.push_back(build_factor(fs));
    if (factors.empty()) throw std::invalid_argument("domain spec: empty product");
  } else if (head == "polydisc") {
    const auto parts = split(spec, ':');
    if (parts.size() != 2) throw std::invalid_argument("domain spec: polydisc:k");
    const int k = parse_int(parts[1], "polydisc dimension");
    factors.assign(k, Factor{Factor::Shape::kDisc, 1, 2});
  } else {
    factors.push_back(build_factor(spec));
  }
  ReinhardtDomain out(std::move(factors), {});
  out.spec_ = spec;
  return out;
}

double ReinhardtDomain::egg_moment(int m, int a, int b) const {
  const EggKey key{m, a, b};
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  // N_{(a,b)} = 4 pi^2 / (2a+2) * int_0^1 rho^(2b+1) (1 - rho^(2m))^(a+1) drho
  const auto f = [&](double rho) {
    return std::pow(rho, 2 * b + 1) * std::pow(1.0 - std::pow(rho, 2 * m), a + 1);
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, 1.0, 15, 1e-13, &error);
  if (integral <= 0.0 || error > 1e-12 * integral) {
    throw std::runtime_error("egg moment quadrature failed to converge");
  }
  const double value = 4.0 * kPi * kPi / (2.0 * a + 2.0) * integral;
  std::unique_lock lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

LogScalar ReinhardtDomain::log_moment(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) {
    throw std::invalid_argument("moment: multi-index length mismatch");
  }
  double log_total = 0.0;
  int off = 0;
  for (const auto& f : factors_) {
    switch (f.shape) {
      case Factor::Shape::kDisc:
        log_total += std::log(kPi) - std::log(alpha[off] + 1.0);
        break;
      case Factor::Shape::kBall:
        log_total += log_ball_moment(f.dim, alpha.data() + off);
        break;
      case Factor::Shape::kEgg:
        log_total += std::log(egg_moment(f.m, alpha[off], alpha[off + 1]));
        break;
    }
    off += f.dim;
  }
  for (int i = 0; i < dim_; ++i) {
    log_total += (2.0 * alpha[i] + 2.0) * std::log(scales_[i]);
  }
  return LogScalar::from_log(log_total);
}

double ReinhardtDomain::moment(const MultiIndex& alpha) const {
  const auto v = log_moment(alpha).to_value();
  if (!v) throw std::range_error("moment: value out of double range; use log_moment");
  return *v;
}

std::vector<double> ReinhardtDomain::inscribed_radii() const {
  std::vector<double> r;
  r.reserve(dim_);
  for (const auto& f : factors_) {
    switch (f.shape) {
      case Factor::Shape::kDisc:
        r.push_back(1.0);
        break;
      case Factor::Shape::kBall:
        for (int i = 0; i < f.dim; ++i) r.push_back(1.0 / std::sqrt(double(f.dim)));
        break;
      case Factor::Shape::kEgg:
        r.push_back(std::sqrt(0.5));
        r.push_back(std::pow(0.5, 1.0 / (2.0 * f.m)));
        break;
    }
  }
  for (int i = 0; i < dim_; ++i) r[i] *= scales_[i];
  return r;
}

}  // namespace bergman::kernel
