#pragma once
//
// Spectral localization regions implied by an (α,β,C) triple: the closed
// disk, the open disk with the point 1, the radial-gap sets Ω(q,a), sectors
// with vertex 1, and (a-)Stolz closures.
//

#include <string>
#include <variant>
#include <vector>

#include "rk/linalg.hpp"
#include "rk/rk_condition.hpp"

namespace rk {

// `scale` is the radial inflation factor applied by inflate(); 1 is exact.
struct ClosedUnitDisk {
  double scale = 1.0;
};

// 𝔻 ∪ {1}
struct OpenDiskUnionOne {
  double scale = 1.0;
};

// { r e^{iθ} : r ≤ max(0, 1 − q|e^{iθ}−1|^a) }, the point 1 excluded.
struct OmegaGap {
  OmegaGap(double q, double a);
  double q;
  double a;
  double scale = 1.0;

  double radius(double theta) const;
};

// (1 − Σ̄_ω) ∩ 𝔻̄ with Σ_ω = { |arg w| < ω }.
struct SectorAtOne {
  explicit SectorAtOne(double omega);
  double omega;
  double scale = 1.0;
};

// { z ∈ 𝔻̄ : |1−z|^a ≤ σ(1−|z|) } ∪ {1}; reduces to {1} when the open
// a-Stolz domain is empty (a ≤ 1 and σ ≤ 1).
struct StolzClosure {
  StolzClosure(double sigma, double a);
  double sigma;
  double a;

  bool degenerate() const noexcept { return a <= 1.0 && sigma <= 1.0; }
  // |1−z|^a − σ(1−|z|)
  double gauge(Complex z) const;
};

using RegionShape = std::variant<ClosedUnitDisk, OpenDiskUnionOne, OmegaGap, SectorAtOne, StolzClosure>;

struct RegionDescriptor {
  RegionShape shape;
  std::string provenance;
};

std::string region_name(const RegionShape& shape);

// Localization region for an (α,β)-RK operator with constant C.
RegionDescriptor region_for(const RKParams& params);

bool contains(const RegionShape& shape, Complex z);
inline bool contains(const RegionDescriptor& region, Complex z) { return contains(region.shape, z); }

// How far z lies outside the region's defining inequality (≤ 0 inside, except
// for structurally excluded points such as z = 1 in Ω(q,a)).
double excess(const RegionShape& shape, Complex z);

struct BoundaryPoint {
  double theta;  // ray angle about `center`
  Complex z;
};

struct BoundaryTrace {
  Complex center;
  std::vector<BoundaryPoint> points;
};

// n points of ∂region ∩ 𝔻̄, traced along rays from an interior center at
// angles 2πj/n. Stolz and sector boundaries are found by bisection to 1e-12.
BoundaryTrace boundary_trace(const RegionShape& shape, std::size_t n, unsigned threads = 1);
std::vector<Complex> boundary_points(const RegionShape& shape, std::size_t n, unsigned threads = 1);

// C_{α,β} ≥ 2^{α/(1−β) − 1}; DomainError if β ≥ 1.
bool kreiss_floor_ok(const RKParams& params);

// Region enlarged by a relative tolerance: Stolz σ → σ(1+tol), disk radii
// and radial profiles → ·(1+tol), sector half-angle → ω(1+tol).
RegionShape inflate(const RegionShape& shape, double tol);

struct SpectrumViolation {
  std::size_t index;
  Complex z;
  double margin;
};

struct SpectrumReport {
  std::vector<SpectrumViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

SpectrumReport check_spectrum(const std::vector<Complex>& eigenvalues, const RegionShape& shape,
                              double tol);

}  // namespace rk
