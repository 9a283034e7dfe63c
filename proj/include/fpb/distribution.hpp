#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpb/rng.hpp"

namespace fpb {

// Distribution of the highest competing bid m on [0, 1], also reused as the
// demand distribution in the inventory environment. Four families:
//   uniform              U[0,1]
//   twopoint:d:1|2       atoms {1/3, 2/3} with masses {1/2+d, 1/2-d} (variant 1)
//                        or {1/2-d, 1/2+d} (variant 2), d in (0, 1/4)
//   piecewise:x,m;...    atomic distribution with given support/masses (sum 1)
//   truncnorm:mu:sigma   N(mu, sigma^2) conditioned on [0, 1]
// cdf() is the right-continuous F; sample() draws via quantile(), so the
// sampler and the cdf agree by construction. Generator state is owned by the
// caller — one engine per replication, never shared across threads.
class BidDistribution {
 public:
  enum class Family { kUniform, kTwoPoint, kPiecewise, kTruncNormal };

  static BidDistribution uniform();
  static BidDistribution two_point(double delta, int variant);
  static BidDistribution piecewise(std::vector<double> support,
                                   std::vector<double> masses);
  static BidDistribution truncated_normal(double mu, double sigma);
  // natoms atoms at sorted U(0,1) positions with normalized U(0,1) masses.
  static BidDistribution random_piecewise(Rng& rng, int natoms);

  Family family() const { return family_; }

  double cdf(double b) const;
  // Smallest x with cdf(x) >= u (u in [0,1]); exact for the atomic families,
  // bisection for the truncated normal.
  double quantile(double u) const;
  double sample(Rng& rng) const { return quantile(uniform01(rng)); }

  // Partial integral of the CDF: I(a) = integral_0^a F(x) dx, a in [0,1].
  // E[min(a, X)] = a - I(a); E[(a - X)^+] = I(a).
  double integral_cdf(double a) const;

  // Round-trippable config token, e.g. "twopoint:0.1:1".
  std::string spec_string() const;
  static BidDistribution parse(const std::string& spec);

 private:
  BidDistribution() = default;

  Family family_ = Family::kUniform;
  double delta_ = 0.0;  // twopoint
  int variant_ = 1;     // twopoint
  double mu_ = 0.0, sigma_ = 1.0;  // truncnorm
  std::vector<double> support_;    // atomic families, ascending
  std::vector<double> cum_;        // cumulative masses, cum_.back() == 1
};

}  // namespace fpb
