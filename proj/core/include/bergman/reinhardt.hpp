#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bergman/log_scalar.hpp"

namespace bergman::kernel {

using MultiIndex = std::vector<int>;

/// Enumerates all multi-indices in dim variables of total degree <= T,
/// ordered by total degree then lexicographically.
std::vector<MultiIndex> multi_indices_up_to(int dim, int total_degree);

/// Bounded complete Reinhardt domain given as a product of rotation
/// invariant factors with optional per-coordinate dilations.  Monomials
/// z^alpha are mutually orthogonal; the domain is characterized for our
/// purposes by its moments N_alpha = ||z^alpha||^2_{L^2}.
class ReinhardtDomain {
 public:
  struct Factor {
    enum class Shape { kDisc, kBall, kEgg } shape = Shape::kDisc;
    int dim = 1;  // complex dimension of the factor
    int m = 2;    // egg exponent: {|z1|^2 + |z2|^(2m) < 1}
  };

  ReinhardtDomain(std::vector<Factor> factors, std::vector<double> scales);

  /// Spec strings: "disc", "ball:k", "polydisc:k", "prod:<spec>,<spec>,...",
  /// "egg:m", "scale:lambda:<spec>", "anisoscale:l1,l2,...:<spec>".
  static ReinhardtDomain parse(const std::string& spec);

  int dim() const { return dim_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const std::vector<double>& scales() const { return scales_; }
  const std::string& spec() const { return spec_; }

  /// N_alpha.  Closed form for disc/polydisc/ball factors, adaptive
  /// quadrature (1e-12 relative) for egg factors; memoized, safe for
  /// concurrent callers.
  double moment(const MultiIndex& alpha) const;

  /// N_alpha carried in the log domain (exact for the closed forms even
  /// when per-coordinate scales push the value out of double range).
  LogScalar log_moment(const MultiIndex& alpha) const;

  /// Per-coordinate radii of an inscribed polydisc (used for truncation
  /// tail bounds).
  std::vector<double> inscribed_radii() const;

 private:
  std::vector<Factor> factors_;
  std::vector<double> scales_;
  int dim_;
  std::string spec_;

  struct EggKey {
    int m, a, b;
    bool operator==(const EggKey& o) const { return m == o.m && a == o.a && b == o.b; }
  };
  struct EggKeyHash {
    std::size_t operator()(const EggKey& k) const {
      return std::hash<long long>()((static_cast<long long>(k.m) << 40) ^
                                    (static_cast<long long>(k.a) << 20) ^ k.b);
    }
  };
  struct Cache {
    std::unordered_map<EggKey, double, EggKeyHash> values;
    std::shared_mutex mutex;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  double egg_moment(int m, int a, int b) const;
};

}  // namespace bergman::kernel
