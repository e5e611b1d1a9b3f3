#include "rk/spectral_regions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rk/parallel.hpp"

namespace rk {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double chord(double theta) { return std::abs(2.0 * std::sin(0.5 * theta)); }

bool is_one(Complex z) { return z == Complex(1.0, 0.0); }

// Largest r with |center + r·dir| ≤ 1, for |center| < 1 and |dir| = 1.
double exit_radius(Complex center, Complex dir) {
  const double b = (std::conj(center) * dir).real();
  const double disc = b * b - std::norm(center) + 1.0;
  return -b + std::sqrt(std::max(0.0, disc));
}

// sup{ r ∈ [0, hi] : inside(r) } for a predicate that is true on [0, r*] and
// false after it.
template <typename Inside>
double radial_bisection(double hi, Inside&& inside) {
  if (inside(hi)) return hi;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

OmegaGap::OmegaGap(double q_, double a_) : q(q_), a(a_) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("Omega gap requires q in (0, 1]");
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("Omega gap requires a finite exponent a >= 0");
}

double OmegaGap::radius(double theta) const {
  return scale * std::max(0.0, 1.0 - q * std::pow(chord(theta), a));
}

SectorAtOne::SectorAtOne(double omega_) : omega(omega_) {
  if (!(omega >= 0.0 && omega < 0.5 * std::numbers::pi))
    throw DomainError("sector half-angle must lie in [0, pi/2)");
}

StolzClosure::StolzClosure(double sigma_, double a_) : sigma(sigma_), a(a_) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("Stolz closure requires sigma > 0");
  if (!(a >= 1.0) || !std::isfinite(a)) throw DomainError("Stolz closure requires a >= 1");
}

double StolzClosure::gauge(Complex z) const {
  return std::pow(std::abs(1.0 - z), a) - sigma * (1.0 - std::abs(z));
}

std::string region_name(const RegionShape& shape) {
  return std::visit(overloaded{[](const ClosedUnitDisk&) { return std::string("ClosedUnitDisk"); },
                               [](const OpenDiskUnionOne&) { return std::string("OpenDiskUnionOne"); },
                               [](const OmegaGap&) { return std::string("OmegaGap"); },
                               [](const SectorAtOne&) { return std::string("SectorAtOne"); },
                               [](const StolzClosure&) { return std::string("StolzClosure"); }},
                    shape);
}

RegionDescriptor region_for(const RKParams& params) {
  const double alpha = params.alpha();
  const double beta = params.beta();
  if (beta >= 1.0)
    return {ClosedUnitDisk{}, "beta >= 1: no localization sharper than the closed unit disk"};

  const double cab = torus_constant(params);
  const double order = alpha / (1.0 - beta);
  std::ostringstream note;
  note.precision(17);
  switch (unit_sum_sign(alpha, beta)) {
    case -1:
      note << "alpha+beta < 1: spectrum in the open unit disk; radial gap from the torus bound with "
              "C_ab = "
           << cab << ", point 1 excluded";
      return {OmegaGap(1.0 / cab, order), note.str()};
    case 0:
      note << "alpha+beta = 1: Ritt condition on the unit circle with C_ab = " << cab
           << "; Stolz closure with sigma = C_ab, equivalently sector of half-angle omega = arccos(1/C_ab) = "
           << std::acos(1.0 / cab);
      return {StolzClosure(cab, 1.0), note.str()};
    default:
      note << "alpha+beta > 1: closure of the " << order << "-Stolz domain with sigma = 2 C_ab = " << 2.0 * cab;
      return {StolzClosure(2.0 * cab, order), note.str()};
  }
}

bool contains(const RegionShape& shape, Complex z) {
  if (!is_finite(z)) return false;
  const double modulus = std::abs(z);
  return std::visit(
      overloaded{[&](const ClosedUnitDisk& d) { return modulus <= d.scale; },
                 [&](const OpenDiskUnionOne& d) { return is_one(z) || modulus < d.scale; },
                 [&](const OmegaGap& g) { return !is_one(z) && modulus <= g.radius(std::arg(z)); },
                 [&](const SectorAtOne& s) {
                   if (is_one(z)) return true;
                   return modulus <= s.scale && std::abs(std::arg(1.0 - z)) <= s.omega;
                 },
                 [&](const StolzClosure& s) {
                   if (is_one(z)) return true;
                   if (s.degenerate() || modulus > 1.0) return false;
                   return s.gauge(z) <= 0.0;
                 }},
      shape);
}

double excess(const RegionShape& shape, Complex z) {
  const double modulus = std::abs(z);
  return std::visit(
      overloaded{[&](const ClosedUnitDisk& d) { return modulus - d.scale; },
                 [&](const OpenDiskUnionOne& d) { return is_one(z) ? 0.0 : modulus - d.scale; },
                 [&](const OmegaGap& g) { return is_one(z) ? 0.0 : modulus - g.radius(std::arg(z)); },
                 [&](const SectorAtOne& s) {
                   if (is_one(z)) return 0.0;
                   return std::max(modulus - s.scale, std::abs(std::arg(1.0 - z)) - s.omega);
                 },
                 [&](const StolzClosure& s) {
                   if (is_one(z)) return 0.0;
                   if (s.degenerate()) return std::abs(1.0 - z);
                   return std::max(modulus - 1.0, s.gauge(z));
                 }},
      shape);
}

BoundaryTrace boundary_trace(const RegionShape& shape, std::size_t n, unsigned threads) {
  if (n == 0) throw DomainError("boundary needs at least one point");

  Complex center(0.0, 0.0);
  bool collapsed = false;
  if (const auto* s = std::get_if<StolzClosure>(&shape); s && s->sigma <= 1.0) {
    if (s->degenerate()) {
      collapsed = true;
      center = 1.0;
    } else {
      // a > 1: the margin σu − u^a along the real axis (u = 1 − x) peaks at
      // u* = (σ/a)^{1/(a−1)} < 1, an interior point of the convex set.
      center = 1.0 - std::pow(s->sigma / s->a, 1.0 / (s->a - 1.0));
    }
  }

  BoundaryTrace trace{center, std::vector<BoundaryPoint>(n)};
  parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t j = begin; j < end; ++j) {
      const double theta = 2.0 * std::numbers::pi * double(j) / double(n);
      const Complex dir = std::polar(1.0, theta);
      Complex z;
      if (collapsed) {
        z = center;
      } else {
        z = std::visit(
            overloaded{[&](const ClosedUnitDisk& d) { return d.scale * dir; },
                       [&](const OpenDiskUnionOne& d) { return d.scale * dir; },
                       [&](const OmegaGap& g) { return g.radius(theta) * dir; },
                       [&](const SectorAtOne& s) {
                         const double r = radial_bisection(s.scale, [&](double r) {
                           const Complex w = 1.0 - r * dir;
                           return std::abs(w) == 0.0 || std::abs(std::arg(w)) <= s.omega;
                         });
                         return r * dir;
                       },
                       [&](const StolzClosure& s) {
                         const double r = radial_bisection(exit_radius(center, dir), [&](double r) {
                           return s.gauge(center + r * dir) <= 0.0;
                         });
                         return center + r * dir;
                       }},
            shape);
      }
      trace.points[j] = {theta, z};
    }
  });
  return trace;
}

std::vector<Complex> boundary_points(const RegionShape& shape, std::size_t n, unsigned threads) {
  const auto trace = boundary_trace(shape, n, threads);
  std::vector<Complex> points;
  points.reserve(n);
  for (const auto& p : trace.points) points.push_back(p.z);
  return points;
}

bool kreiss_floor_ok(const RKParams& params) {
  const double cab = torus_constant(params);
  return cab >= std::pow(2.0, params.alpha() / (1.0 - params.beta()) - 1.0);
}

RegionShape inflate(const RegionShape& shape, double tol) {
  if (!(tol >= 0.0)) throw DomainError("tolerance must be non-negative");
  const double f = 1.0 + tol;
  return std::visit(overloaded{[&](ClosedUnitDisk d) -> RegionShape {
                                 d.scale *= f;
                                 return d;
                               },
                               [&](OpenDiskUnionOne d) -> RegionShape {
                                 d.scale *= f;
                                 return d;
                               },
                               [&](OmegaGap g) -> RegionShape {
                                 g.scale *= f;
                                 return g;
                               },
                               [&](SectorAtOne s) -> RegionShape {
                                 s.omega *= f;
                                 s.scale *= f;
                                 return s;
                               },
                               [&](StolzClosure s) -> RegionShape {
                                 s.sigma *= f;
                                 return s;
                               }},
                    shape);
}

SpectrumReport check_spectrum(const std::vector<Complex>& eigenvalues, const RegionShape& shape,
                              double tol) {
  const RegionShape widened = inflate(shape, tol);
  SpectrumReport report;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const Complex z = eigenvalues[i];
    if (!contains(widened, z)) report.violations.push_back({i, z, excess(widened, z)});
  }
  return report;
}

}  // namespace rk
