#ifndef HSK_ZERO_FINDING_HPP
#define HSK_ZERO_FINDING_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "hsk/elliptic_function.hpp"
#include "hsk/lattice.hpp"

namespace hsk {

using CFn = std::function<cplx(cplx)>;

// Region {origin + x*e1 + y*e2 : 0 <= x,y <= 1}.
struct Parallelogram {
  cplx origin, e1, e2;

  cplx point(double x, double y) const { return origin + x * e1 + y * e2; }
  std::pair<double, double> coords(cplx z) const;
  bool contains(cplx z, double tol = 0.0) const;
  double diameter() const { return std::abs(e1) + std::abs(e2); }
  Parallelogram sub(double x0, double y0, double dx, double dy) const {
    return {point(x0, y0), e1 * dx, e2 * dy};
  }
};

struct PoleSpec {
  cplx location;
  int order = 1;  // > 0
};

struct ZeroFindOptions {
  int boundary_samples = 16;      // initial samples per edge
  double boundary_floor = 1e-12;  // relative |f| floor triggering a contour retry
  int max_retries = 8;
  double refine_size = 0.04;      // cell diameter (fraction of region) to switch to Newton
  double zero_tol = 1e-10;        // |f| target, times the local scale
  double dedup_tol = 1e-8;
  // Zeros closer than this are treated as one multiple zero (Newton can only
  // localise an m-fold zero to ~ zero_tol^(1/m)).
  double cluster_tol = 3e-6;
  bool with_multiplicities = true;
};

struct ZeroFindResult {
  int count = 0;                    // zeros counted with multiplicity
  std::vector<cplx> zeros;          // distinct locations
  std::vector<int> multiplicities;  // parallel to zeros
};

// Net winding number of f along a circle (counts zeros - poles inside).
int winding_on_circle(const CFn& f, cplx center, double radius, int initial_samples = 48);

// Pole order measured by a small-circle winding; assumes no zeros of f
// within the circle.
int measure_pole_order(const CFn& f, cplx pole, double radius = 1e-3);

// Argument-principle zero search over a parallelogram. Poles of f inside
// the region must be declared (location + order). If fprime is null the
// Newton polish uses central differences. Throws contour_error when
// boundary placement keeps failing after the retry budget.
ZeroFindResult find_zeros(const CFn& f, const CFn* fprime, const Parallelogram& region,
                          const std::vector<PoleSpec>& poles_inside,
                          const ZeroFindOptions& opts = {});

// elliptic_core front end: zeros of an EllipticFunction on a region.
// Pole bookkeeping (lattice translates landing inside the region) is exact.
ZeroFindResult ef_zero_count(const EllipticFunction& f, const Parallelogram& region,
                             const ZeroFindOptions& opts = {});

// Fundamental-domain region for a lattice, offset so that the given points
// (typically the poles) sit well inside.
Parallelogram fundamental_domain(const Lattice& lat, const std::vector<cplx>& keep_interior = {});

// Lattice translates of p falling inside the region (open, with margin tol).
std::vector<cplx> translates_in_region(cplx p, const Lattice& lat, const Parallelogram& region,
                                       double tol = 1e-9);

}  // namespace hsk

#endif
