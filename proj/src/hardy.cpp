#include "driftspec/hardy.hpp"

#include "driftspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace driftspec {

namespace {

// int_r^inf t^{1-N} e^{-t^2/2} dt, scaled by e^{r^2/2} so that no factor
// underflows: returns int_0^12 (r+s)^{1-N} e^{-r s - s^2/2} ds. The remainder
// beyond r+12 is below e^{-72} relative.
double tail_integral_scaled(int N, double r) {
  return integrate(
      [&](double s) { return std::pow(r + s, 1.0 - N) * std::exp(-r * s - 0.5 * s * s); }, 0.0,
      12.0, 1e-12);
}

} // namespace

double rho(Dimension N, double r) {
  if (!(r > 0.0)) throw std::domain_error("rho: r > 0 required");
  const int n = N.value();
  return std::pow(r, 1.0 - n) / tail_integral_scaled(n, r);
}

double ode_residual(Dimension N, double r) {
  if (!(r > 0.0)) throw std::domain_error("ode_residual: r > 0 required");
  const double h = 1e-5 * r;  // relative step keeps rho''' h^2 under control near 0
  const double drho = (rho(N, r + h) - rho(N, r - h)) / (2.0 * h);
  const double v = rho(N, r);
  return std::abs(drho + (N.value() - 1.0) / r * v + r * v - v * v);
}

HardyWeight find_T(Dimension N) {
  const int samples = 1000;
  const double lo = 1e-3, hi = 10.0;
  Eigen::VectorXd rs(samples), vs(samples);
  for (int i = 0; i < samples; ++i) {
    rs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    vs[i] = rho(N, rs[i]);
  }
  int imin = 0;
  for (int i = 1; i < samples; ++i)
    if (vs[i] < vs[imin]) imin = i;
  if (imin == 0 || imin == samples - 1)
    throw std::runtime_error("find_T: minimum escaped the scan interval");
  // the sampled curve must be decreasing before and increasing after
  for (int i = 1; i < samples; ++i) {
    const bool ok = i <= imin ? vs[i] <= vs[i - 1] + 1e-12 * vs[i - 1]
                              : vs[i] >= vs[i - 1] - 1e-12 * vs[i - 1];
    if (!ok) throw std::runtime_error("find_T: sampled rho is not unimodal");
  }
  double a = rs[imin - 1], b = rs[imin + 1];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = rho(N, x1), f2 = rho(N, x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = rho(N, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = rho(N, x2);
    }
  }
  HardyWeight w{N, 0.5 * (a + b), 0.0};
  w.rhoT = rho(N, w.T);
  return w;
}

double rho_truncated(const HardyWeight& w, double r) {
  if (!(r > 0.0)) throw std::domain_error("rho_truncated: r > 0 required");
  return r < w.T ? rho(w.N, r) : w.rhoT;
}

double hardy_ratio(const HardyWeight& w, const RadialProfile& u) {
  if (u.kind != RadialProfile::Kind::Nodal)
    throw std::invalid_argument("hardy_ratio: nodal profile required");
  const auto n = u.r.size();
  if (n < 3) throw std::invalid_argument("hardy_ratio: profile too small");
  if (std::abs(u.v[n - 1]) > 1e-12 * u.v.cwiseAbs().maxCoeff())
    throw std::invalid_argument("hardy_ratio: profile must vanish at its right end");
  const int N = u.dim;
  auto a = [&](double r) { return std::pow(r, N - 1) * std::exp(0.5 * r * r); };
  double num = 0.0, den = 0.0;
  double f_prev = -1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double ra = u.r[i], rb = u.r[i + 1];
    if (!(rb > ra)) continue;
    const double slope = (u.v[i + 1] - u.v[i]) / (rb - ra);
    const double aa = ra > 0.0 ? a(ra) : 0.0;
    const double ab = a(rb);
    num += slope * slope * 0.5 * (aa + ab) * (rb - ra);
    if (f_prev < 0.0) {
      const double rt = ra > 0.0 ? rho_truncated(w, ra) : 0.0;
      f_prev = ra > 0.0 ? u.v[i] * u.v[i] * rt * rt * aa : 0.0;
    }
    const double rt = rho_truncated(w, rb);
    const double f = u.v[i + 1] * u.v[i + 1] * rt * rt * ab;
    den += 0.5 * (f_prev + f) * (rb - ra);
    f_prev = f;
  }
  if (!(den > 0.0)) throw std::invalid_argument("hardy_ratio: degenerate input, zero denominator");
  return num / den;
}

SharpnessResult sharpness_sequence(Dimension N, long k) {
  if (k < 1) throw std::invalid_argument("sharpness_sequence: k >= 1 required");
  const int n_grid = 100000;
  const double r_lo = 1e-7, r_hi = 10.0, taper_start = 9.0;
  const double kink = 1.0 / static_cast<double>(k);
  std::vector<double> nodes;
  nodes.reserve(n_grid + 4);
  for (int i = 0; i < n_grid; ++i)
    nodes.push_back(r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (n_grid - 1)));
  nodes.push_back(kink);
  nodes.push_back(taper_start);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const int m = static_cast<int>(nodes.size());

  const int dim = N.value();
  Eigen::VectorXd r(m);
  for (int i = 0; i < m; ++i) r[i] = nodes[i];
  auto g = [&](double t) { return std::pow(t, 1.0 - dim) * std::exp(-0.5 * t * t); };
  // suffix tail integrals F_i = int_{r_i}^inf g, accumulated backward so the
  // exponentially small far tail never cancels
  Eigen::VectorXd tail(m);
  tail[m - 1] = integrate(g, r_hi, r_hi + 12.0, 1e-12);
  for (int i = m - 2; i >= 0; --i)
    tail[i] = tail[i + 1] + gauss_panel(g, r[i], r[i + 1], detail::gl8());

  const double kink_tail = tail[std::lower_bound(nodes.begin(), nodes.end(), kink) - nodes.begin()];
  RadialProfile prof;
  prof.dim = dim;
  prof.kind = RadialProfile::Kind::Nodal;
  prof.r = r;
  prof.v.resize(m);
  double num = 0.0, den = 0.0;
  auto chi = [&](double x) {
    return x <= taper_start ? 1.0 : std::max(0.0, (r_hi - x) / (r_hi - taper_start));
  };
  Eigen::VectorXd f(m);
  for (int i = 0; i < m; ++i) {
    const double gi = g(r[i]);
    const double rho_i = gi / tail[i];
    const double psi = std::sqrt(r[i] <= kink ? kink_tail : tail[i]);
    prof.v[i] = chi(r[i]) * psi;
    // f = (chi psi)^2 rho^2 a with a = 1/g
    f[i] = prof.v[i] * prof.v[i] * rho_i * rho_i / gi;
  }
  auto a = [&](double x) { return std::pow(x, dim - 1) * std::exp(0.5 * x * x); };
  for (int i = 0; i + 1 < m; ++i) {
    const double dr = r[i + 1] - r[i];
    if (!(dr > 0.0)) continue;
    const double slope = (prof.v[i + 1] - prof.v[i]) / dr;
    num += slope * slope * 0.5 * (a(r[i]) + a(r[i + 1])) * dr;
    den += 0.5 * (f[i] + f[i + 1]) * dr;
  }
  // denominator mass below the first node, in closed form: psi is constant
  // there and int_0^eps rho^2 a dr = 1/F(eps) exactly
  den += kink_tail / tail[0];
  return {std::move(prof), num / den};
}

} // namespace driftspec
