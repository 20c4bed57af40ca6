#pragma once

#include <stdexcept>
#include <vector>

namespace driftspec {

/// One eigenvalue with its multiplicity and provenance. For radial (ball)
/// spectra ell is the spherical-harmonic degree; raster spectra use ell = -1.
struct SpectrumEntry {
  double lambda = 0.0;
  int multiplicity = 1;
  int ell = -1;
  int radial_index = 1;
  double residual = 0.0;  // backward-relative: scaled by the operator bound
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // nondecreasing in lambda

  int total_multiplicity() const {
    int m = 0;
    for (const auto& e : entries) m += e.multiplicity;
    return m;
  }

  /// k-th eigenvalue counting multiplicity, 1-based.
  double kth(int k) const {
    if (k < 1) throw std::invalid_argument("Spectrum::kth: k >= 1 required");
    int seen = 0;
    for (const auto& e : entries) {
      seen += e.multiplicity;
      if (seen >= k) return e.lambda;
    }
    throw std::out_of_range("Spectrum::kth: not enough eigenvalues");
  }
};

} // namespace driftspec
