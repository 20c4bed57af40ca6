#include "driftspec/chiti.hpp"

#include "driftspec/errors.hpp"
#include "driftspec/measure.hpp"
#include "driftspec/quadrature.hpp"
#include "driftspec/radial.hpp"
#include "driftspec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace driftspec {

ChitiData build_chiti(Dimension N, double lambda) {
  const double r_tilde = find_radius_for_lambda(N, lambda);
  const RadialProfile z = eigenfunction_ivp(N, lambda, r_tilde);
  // first eigenfunction: positive and nonincreasing in r
  const double top = z.v[0];
  for (Eigen::Index i = 0; i + 1 < z.v.size(); ++i) {
    if (z.v[i + 1] > z.v[i] + 1e-10 * top)
      throw std::runtime_error("build_chiti: eigenfunction not nonincreasing");
  }
  if (std::abs(z.v[z.v.size() - 1]) > 1e-4 * top)
    throw ConvergenceError("build_chiti: eigenfunction does not vanish at r~",
                           std::abs(z.v[z.v.size() - 1]) / top);

  ChitiData data{N, lambda, r_tilde, 0.0, {}};
  const int n = N.value();
  const double nw = n * unit_ball_volume(N);
  auto hfun = [&](double r) { return nw * std::pow(r, n - 1) * std::exp(0.5 * r * r); };
  const Eigen::VectorXd t = cumulative_integral(hfun, z.r);
  data.L_tilde = t[t.size() - 1];
  data.z_star.kind = MonotoneProfile::Kind::Nodal;
  data.z_star.breaks = t;
  data.z_star.values = z.v.cwiseMax(0.0);
  data.z_star.values[data.z_star.values.size() - 1] = 0.0;
  data.z_star.total_measure = data.L_tilde;
  return data;
}

double chiti_constant(const ChitiData& data, double r, double q) {
  if (!(r > 0.0) || !(q > r)) throw std::invalid_argument("chiti_constant: need 0 < r < q");
  const double den = std::pow(data.z_star.integral_pow(r, data.L_tilde), 1.0 / r);
  if (!(den > 0.0)) throw std::invalid_argument("chiti_constant: degenerate profile");
  if (std::isinf(q)) return data.z_star.sup() / den;
  return std::pow(data.z_star.integral_pow(q, data.L_tilde), 1.0 / q) / den;
}

namespace {

double sl_sigma1_fixed(Dimension N, double L, int n) {
  // s_i = L (i/n)^2, unknowns i = 1..n; Dirichlet at 0, Neumann at L
  Eigen::VectorXd s(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    s[i] = L * t * t;
  }
  TridiagPencil pencil;
  pencil.diag.resize(n);
  pencil.off.resize(n - 1);
  pencil.mass.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double hl = s[i] - s[i - 1];
    const double hr = i < n ? s[i + 1] - s[i] : 0.0;
    double diag = 1.0 / hl;
    if (i < n) diag += 1.0 / hr;
    pencil.diag[i - 1] = diag;
    if (i < n) pencil.off[i - 1] = -1.0 / hr;
    const double d = i < n ? 0.5 * (s[i + 1] - s[i - 1]) : 0.5 * (s[n] - s[n - 1]);
    const double I = isoperimetric_profile(N, s[i]);
    pencil.mass[i - 1] = d / (I * I);
  }
  return smallest_eigenpairs(pencil, 1, 1e-9, true).values[0];
}

} // namespace

double sl_sigma1(Dimension N, double L, int n) {
  if (!(L > 0.0)) throw std::domain_error("sl_sigma1: L > 0 required");
  const double coarse = sl_sigma1_fixed(N, L, n);
  const double fine = sl_sigma1_fixed(N, L, 2 * n);
  return (4.0 * fine - coarse) / 3.0;
}

MonotoneProfile rescale_to_match(const MonotoneProfile& u_star, const ChitiData& data, double q) {
  const double tu = u_star.integral_pow(q, u_star.total_measure);
  const double tz = data.z_star.integral_pow(q, data.L_tilde);
  if (!(tu > 0.0)) throw std::invalid_argument("rescale_to_match: degenerate profile");
  MonotoneProfile out = u_star;
  out.values *= std::pow(tz / tu, 1.0 / q);
  return out;
}

namespace {

// Prefix q-integrals of a profile, for O(log n) partial-integral queries.
class PrefixPow {
public:
  PrefixPow(const MonotoneProfile& prof, double q) : prof_(prof), q_(q) {
    const auto n = prof.breaks.size();
    prefix_.resize(n);
    prefix_[0] = piece(0, prof.breaks[0]);
    for (Eigen::Index i = 1; i < n; ++i)
      prefix_[i] = prefix_[i - 1] + piece(i - 1, prof.breaks[i]) - piece(i - 1, prof.breaks[i - 1]);
  }

  double at(double s) const {
    const auto& b = prof_.breaks;
    if (s <= b[0]) return piece_from_zero(s);
    if (s >= b[b.size() - 1]) return prefix_[b.size() - 1];
    Eigen::Index lo = 0, hi = b.size() - 1;
    while (hi - lo > 1) {
      const Eigen::Index mid = (lo + hi) / 2;
      if (b[mid] <= s)
        lo = mid;
      else
        hi = mid;
    }
    return prefix_[lo] + piece(lo, s) - piece(lo, b[lo]);
  }

private:
  // integral of value^q from 0 to s assuming s lies at or before breaks[0]
  double piece_from_zero(double s) const {
    if (prof_.kind == MonotoneProfile::Kind::Step) return 0.0;
    return s <= 0.0 ? 0.0 : std::pow(std::abs(prof_.values[0]), q_) * s;  // breaks[0] == 0
  }

  // integral of value^q from breaks[i] to s, for s within piece i
  double piece(Eigen::Index i, double s) const {
    const auto& b = prof_.breaks;
    if (prof_.kind == MonotoneProfile::Kind::Step) {
      if (i + 1 >= b.size()) return 0.0;
      return std::pow(std::abs(prof_.values[i]), q_) * (std::min(s, b[i + 1]) - b[i]);
    }
    if (i + 1 >= b.size()) return 0.0;
    const double a = b[i], c = std::min(s, b[i + 1]);
    if (c <= a) return 0.0;
    const double va = prof_.values[i], vb = prof_.values[i + 1], w = b[i + 1] - b[i];
    return gauss_panel(
        [&](double t) {
          const double x = (t - a) / w;
          return std::pow(std::abs((1.0 - x) * va + x * vb), q_);
        },
        a, c, detail::gl8());
  }

  const MonotoneProfile& prof_;
  double q_;
  Eigen::VectorXd prefix_;
};

} // namespace

ConcentrationReport concentration_comparison(const MonotoneProfile& u_star, const ChitiData& data,
                                             double q, double slack_rel) {
  if (!(q > 0.0)) throw std::invalid_argument("concentration_comparison: q > 0 required");
  const double tu = u_star.integral_pow(q, u_star.total_measure);
  const double tz = data.z_star.integral_pow(q, data.L_tilde);
  if (std::abs(tu - tz) > 1e-6 * tz)
    throw std::invalid_argument("concentration_comparison: total q-integrals do not match");

  const PrefixPow pu(u_star, q);
  const PrefixPow pz(data.z_star, q);
  // evaluation points: breakpoints of both profiles inside (0, L~)
  std::vector<double> pts;
  for (Eigen::Index i = 0; i < u_star.breaks.size(); ++i)
    if (u_star.breaks[i] > 0.0 && u_star.breaks[i] < data.L_tilde) pts.push_back(u_star.breaks[i]);
  const Eigen::Index stride = std::max<Eigen::Index>(1, data.z_star.breaks.size() / 8192);
  for (Eigen::Index i = stride; i < data.z_star.breaks.size(); i += stride)
    if (data.z_star.breaks[i] > 0.0 && data.z_star.breaks[i] < data.L_tilde)
      pts.push_back(data.z_star.breaks[i]);
  std::sort(pts.begin(), pts.end());

  ConcentrationReport rep;
  rep.worst_margin_rel = -std::numeric_limits<double>::infinity();
  for (double sp : pts) {
    const double margin = (pu.at(sp) - pz.at(sp)) / tz;
    if (margin > rep.worst_margin_rel) {
      rep.worst_margin_rel = margin;
      rep.s_at_worst = sp;
    }
  }
  rep.pass = rep.worst_margin_rel <= slack_rel;
  return rep;
}

} // namespace driftspec
