#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hiertags/hierarchy.hpp"

namespace hiertags {

// All comparisons below take the exact hierarchy first. The reconstructed one
// is re-expressed over the exact tag identifiers by name (its synthetic root,
// if any, removed); differing tag sets throw.

struct LinkCounts {
  std::size_t exact = 0;
  std::size_t acceptable = 0;  ///< includes the exact links
  std::size_t inverted = 0;
  std::size_t unrelated = 0;
  std::size_t missing = 0;
  std::size_t normalizer = 0;  ///< max(N - 1, M_r)
};

struct LinkRatios {
  double r_E = 0, r_A = 0, r_I = 0, r_U = 0, r_M = 0;
  LinkCounts counts;
};

LinkRatios link_ratios(const Hierarchy& exact, const Hierarchy& recon);

/// Mutual information of the descendant-set distributions, normalized so
/// that identical hierarchies score exactly 1; negative values clamp to 0.
/// Throws when both hierarchies are edgeless.
double nmi(const Hierarchy& exact, const Hierarchy& recon);

/// The same quantity computed as a community-comparison NMI, where every tag
/// defines the community of its descendants (tag itself excluded).
double partition_nmi(const Hierarchy& exact, const Hierarchy& recon);

/// Pool-adjacent-violators fit of a non-increasing sequence (equal weights).
std::vector<double> isotonic_non_increasing(std::span<const double> values);

struct DecayCurve {
  std::vector<double> f;
  std::vector<double> nmi;       ///< after the monotone fit
  std::vector<double> raw_mean;  ///< before the monotone fit
  int runs = 0;
};

struct CurveOptions {
  RewireOrder order = RewireOrder::random;
  int runs = 10;
  /// Defaults to 0, 0.05, ..., 1.
  std::vector<double> grid = default_grid();
  std::uint64_t seed = 1;
  unsigned threads = 1;

  static std::vector<double> default_grid();
};

/// Mean NMI between `exact` and its rewired copies over the grid. Run r at
/// grid point k uses Rng(mix_seed(seed, k * runs + r)), so the curve does not
/// depend on the thread count.
DecayCurve decay_curve(const Hierarchy& exact, const CurveOptions& options = {});

/// Smallest fraction f* with I(f*) = nmi_value, interpolating linearly
/// between grid points; values at or above I(0) give the first grid point,
/// values at or below the last point give the last one.
double equivalent_rewiring(double nmi_value, const DecayCurve& curve);

/// 1 - f*.
inline double lmi(double nmi_value, const DecayCurve& curve) { return 1.0 - equivalent_rewiring(nmi_value, curve); }

struct QualityReport {
  LinkRatios ratios;
  double nmi = 0;
  std::optional<double> lmi;
  std::size_t tags = 0;   ///< N
  std::size_t links = 0;  ///< M_r
};

QualityReport evaluate(const Hierarchy& exact, const Hierarchy& recon, const DecayCurve* curve = nullptr);

/// "metric TAB value" lines: r_E, r_A, r_I, r_U, r_M, nmi, lmi, N, M_r.
void write_report(std::ostream& out, const QualityReport& report);
/// "f TAB I(f)" lines.
void write_curve(std::ostream& out, const DecayCurve& curve);
/// Reads write_curve() output; f must increase strictly and I(f) must not
/// increase.
DecayCurve read_curve(std::istream& in);

}  // namespace hiertags
