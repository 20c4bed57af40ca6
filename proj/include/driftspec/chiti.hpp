#pragma once

#include "driftspec/profiles.hpp"
#include "driftspec/special.hpp"

namespace driftspec {

// Reverse-Holder machinery: the matched ball B_r~ with lambda_1(B_r~) equal
// to a given eigenvalue, its first eigenfunction rearranged by measure, the
// best constant C(N, r, q, lambda), and the singular Sturm-Liouville problem
// -phi'' = sigma I^{-2}(s) phi on (0, L) with phi(0) = phi'(L) = 0.

struct ChitiData {
  Dimension N;
  double lambda = 0.0;    // matched eigenvalue
  double r_tilde = 0.0;   // radius with lambda_1(B_r~) = lambda
  double L_tilde = 0.0;   // m_N(B_r~)
  MonotoneProfile z_star; // rearranged first eigenfunction, nodal in measure
};

ChitiData build_chiti(Dimension N, double lambda);

/// C(N, r, q, lambda) = ||z*||_{L^q(0,L~)} / ||z*||_{L^r(0,L~)}; q may be inf.
double chiti_constant(const ChitiData& data, double r, double q);

/// First eigenvalue sigma_1(0, L) of the Sturm-Liouville problem with weight
/// I^{-2}(s), mesh graded quadratically toward the singular endpoint s = 0,
/// Richardson-extrapolated over n and 2n.
double sl_sigma1(Dimension N, double L, int n = 2048);

struct ConcentrationReport {
  double worst_margin_rel = 0.0;  // max over s of (int_0^s u*^q - int_0^s z*^q) / total
  double s_at_worst = 0.0;
  bool pass = false;
};

/// Prop-style concentration comparison of partial q-integrals on (0, L~).
/// Both profiles must carry equal total q-integrals (use rescale_to_match).
ConcentrationReport concentration_comparison(const MonotoneProfile& u_star,
                                             const ChitiData& data, double q, double slack_rel);

/// Rescale u_star so its total q-integral matches the reference profile's.
MonotoneProfile rescale_to_match(const MonotoneProfile& u_star, const ChitiData& data, double q);

} // namespace driftspec
