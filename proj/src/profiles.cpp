#include "driftspec/profiles.hpp"

#include "driftspec/measure.hpp"
#include "driftspec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace driftspec {

double MonotoneProfile::value_at(double s) const {
  if (s < 0.0) throw std::domain_error("MonotoneProfile: s >= 0 required");
  const auto n = breaks.size();
  if (n == 0 || s >= breaks[n - 1]) return 0.0;
  // index of last break <= s
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (breaks[mid] <= s)
      lo = mid;
    else
      hi = mid;
  }
  if (kind == Kind::Step) return values[lo];
  const double t = (s - breaks[lo]) / (breaks[hi] - breaks[lo]);
  return (1.0 - t) * values[lo] + t * values[hi];
}

double MonotoneProfile::integral_pow(double p, double s_hi) const {
  if (!(p > 0.0)) throw std::invalid_argument("MonotoneProfile: p > 0 required");
  if (s_hi <= 0.0) return 0.0;
  double total = 0.0;
  if (kind == Kind::Step) {
    for (Eigen::Index i = 0; i + 1 < breaks.size(); ++i) {
      const double a = breaks[i];
      const double b = std::min(breaks[i + 1], s_hi);
      if (b <= a) break;
      total += std::pow(std::abs(values[i]), p) * (b - a);
    }
    return total;
  }
  const GaussLegendre& rule = detail::gl8();
  for (Eigen::Index i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = std::min(breaks[i + 1], s_hi);
    if (b <= a) break;
    const double va = values[i], vb = values[i + 1], w = breaks[i + 1] - breaks[i];
    total += gauss_panel(
        [&](double s) {
          const double t = (s - breaks[i]) / w;
          return std::pow(std::abs((1.0 - t) * va + t * vb), p);
        },
        a, b, rule);
  }
  return total;
}

double MonotoneProfile::sup() const {
  return values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
}

double norm_mN(const RadialProfile& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("norm_mN: p > 0 required");
  const Dimension N(f.dim);
  double total = 0.0;
  if (f.kind == RadialProfile::Kind::Step) {
    for (Eigen::Index i = 0; i + 1 < f.r.size(); ++i)
      total += std::pow(std::abs(f.v[i]), p) * (ball_volume(N, f.r[i + 1]) - ball_volume(N, f.r[i]));
  } else {
    const double nw = N.value() * unit_ball_volume(N);
    const GaussLegendre& rule = detail::gl8();
    for (Eigen::Index i = 0; i + 1 < f.r.size(); ++i) {
      const double ra = f.r[i], rb = f.r[i + 1];
      if (rb <= ra) continue;
      const double va = f.v[i], vb = f.v[i + 1];
      total += nw * gauss_panel(
                        [&](double r) {
                          const double t = (r - ra) / (rb - ra);
                          const double u = (1.0 - t) * va + t * vb;
                          return std::pow(std::abs(u), p) * std::pow(r, f.dim - 1) *
                                 std::exp(0.5 * r * r);
                        },
                        ra, rb, rule);
    }
  }
  return std::pow(total, 1.0 / p);
}

} // namespace driftspec
