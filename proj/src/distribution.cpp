#include "fpb/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fpb {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(8.0 * std::atan(1.0));
}

// integral of Phi(z) dz, antiderivative z*Phi(z) + phi(z).
double normal_cdf_integral(double z) { return z * normal_cdf(z) + normal_pdf(z); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

double parse_num(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

BidDistribution BidDistribution::uniform() {
  BidDistribution d;
  d.family_ = Family::kUniform;
  return d;
}

BidDistribution BidDistribution::two_point(double delta, int variant) {
  if (!(delta > 0.0 && delta < 0.25))
    throw std::invalid_argument("twopoint delta must lie in (0, 1/4)");
  if (variant != 1 && variant != 2)
    throw std::invalid_argument("twopoint variant must be 1 or 2");
  BidDistribution d;
  d.family_ = Family::kTwoPoint;
  d.delta_ = delta;
  d.variant_ = variant;
  double low = variant == 1 ? 0.5 + delta : 0.5 - delta;
  d.support_ = {1.0 / 3.0, 2.0 / 3.0};
  d.cum_ = {low, 1.0};
  return d;
}

BidDistribution BidDistribution::piecewise(std::vector<double> support,
                                           std::vector<double> masses) {
  if (support.empty() || support.size() != masses.size())
    throw std::invalid_argument("piecewise: support/mass size mismatch");
  BidDistribution d;
  d.family_ = Family::kPiecewise;
  d.support_ = std::move(support);
  for (size_t i = 0; i < d.support_.size(); ++i) {
    if (d.support_[i] < 0.0 || d.support_[i] > 1.0)
      throw std::invalid_argument("piecewise: support outside [0,1]");
    if (i > 0 && d.support_[i] <= d.support_[i - 1])
      throw std::invalid_argument("piecewise: support must be ascending");
    if (masses[i] <= 0.0) throw std::invalid_argument("piecewise: mass <= 0");
  }
  d.cum_.resize(masses.size());
  std::partial_sum(masses.begin(), masses.end(), d.cum_.begin());
  if (std::abs(d.cum_.back() - 1.0) > 1e-9)
    throw std::invalid_argument("piecewise: masses must sum to 1");
  d.cum_.back() = 1.0;
  return d;
}

BidDistribution BidDistribution::truncated_normal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("truncnorm: sigma must be > 0");
  BidDistribution d;
  d.family_ = Family::kTruncNormal;
  d.mu_ = mu;
  d.sigma_ = sigma;
  return d;
}

BidDistribution BidDistribution::random_piecewise(Rng& rng, int natoms) {
  if (natoms < 1) throw std::invalid_argument("random_piecewise: natoms >= 1");
  std::vector<double> xs(natoms), ms(natoms);
  for (auto& x : xs) x = uniform01(rng);
  std::sort(xs.begin(), xs.end());
  double total = 0.0;
  for (auto& m : ms) total += (m = uniform01(rng) + 1e-3);
  for (auto& m : ms) m /= total;
  return piecewise(std::move(xs), std::move(ms));
}

double BidDistribution::cdf(double b) const {
  switch (family_) {
    case Family::kUniform:
      return std::clamp(b, 0.0, 1.0);
    case Family::kTwoPoint:
    case Family::kPiecewise: {
      auto it = std::upper_bound(support_.begin(), support_.end(), b);
      return it == support_.begin() ? 0.0 : cum_[it - support_.begin() - 1];
    }
    case Family::kTruncNormal: {
      if (b <= 0.0) return 0.0;
      if (b >= 1.0) return 1.0;
      double lo = normal_cdf((0.0 - mu_) / sigma_);
      double hi = normal_cdf((1.0 - mu_) / sigma_);
      return (normal_cdf((b - mu_) / sigma_) - lo) / (hi - lo);
    }
  }
  return 0.0;
}

double BidDistribution::quantile(double u) const {
  if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile: u outside [0,1]");
  switch (family_) {
    case Family::kUniform:
      return u;
    case Family::kTwoPoint:
    case Family::kPiecewise: {
      auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
      if (it == cum_.end()) --it;
      return support_[it - cum_.begin()];
    }
    case Family::kTruncNormal: {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) >= u ? hi : lo) = mid;
      }
      return hi;
    }
  }
  return 0.0;
}

double BidDistribution::integral_cdf(double a) const {
  if (a <= 0.0) return 0.0;
  a = std::min(a, 1.0);
  switch (family_) {
    case Family::kUniform:
      return 0.5 * a * a;
    case Family::kTwoPoint:
    case Family::kPiecewise: {
      double acc = 0.0, prev = 0.0;
      for (size_t i = 0; i < support_.size(); ++i) {
        double mass = cum_[i] - prev;
        prev = cum_[i];
        if (support_[i] < a) acc += mass * (a - support_[i]);
      }
      return acc;
    }
    case Family::kTruncNormal: {
      double lo = normal_cdf((0.0 - mu_) / sigma_);
      double hi = normal_cdf((1.0 - mu_) / sigma_);
      double za = (a - mu_) / sigma_, z0 = (0.0 - mu_) / sigma_;
      double raw = sigma_ * (normal_cdf_integral(za) - normal_cdf_integral(z0));
      return (raw - a * lo) / (hi - lo);
    }
  }
  return 0.0;
}

std::string BidDistribution::spec_string() const {
  switch (family_) {
    case Family::kUniform:
      return "uniform";
    case Family::kTwoPoint:
      return "twopoint:" + fmt_num(delta_) + ":" + std::to_string(variant_);
    case Family::kPiecewise: {
      std::string s = "piecewise:";
      double prev = 0.0;
      for (size_t i = 0; i < support_.size(); ++i) {
        if (i) s += ";";
        s += fmt_num(support_[i]) + "," + fmt_num(cum_[i] - prev);
        prev = cum_[i];
      }
      return s;
    }
    case Family::kTruncNormal:
      return "truncnorm:" + fmt_num(mu_) + ":" + fmt_num(sigma_);
  }
  return "uniform";
}

BidDistribution BidDistribution::parse(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw std::invalid_argument("empty distribution spec");
  const std::string& name = parts[0];
  if (name == "uniform") {
    if (parts.size() != 1) throw std::invalid_argument("uniform takes no params");
    return uniform();
  }
  if (name == "twopoint") {
    if (parts.size() != 3) throw std::invalid_argument("twopoint:<delta>:<1|2>");
    return two_point(parse_num(parts[1]), int(parse_num(parts[2])));
  }
  if (name == "truncnorm") {
    if (parts.size() != 3) throw std::invalid_argument("truncnorm:<mu>:<sigma>");
    return truncated_normal(parse_num(parts[1]), parse_num(parts[2]));
  }
  if (name == "piecewise") {
    if (parts.size() != 2) throw std::invalid_argument("piecewise:<x,m;x,m;...>");
    std::vector<double> xs, ms;
    for (const auto& pair : split(parts[1], ';')) {
      auto xm = split(pair, ',');
      if (xm.size() != 2) throw std::invalid_argument("piecewise atom: " + pair);
      xs.push_back(parse_num(xm[0]));
      ms.push_back(parse_num(xm[1]));
    }
    return piecewise(std::move(xs), std::move(ms));
  }
  throw std::invalid_argument("unknown distribution family: " + name);
}

}  // namespace fpb
