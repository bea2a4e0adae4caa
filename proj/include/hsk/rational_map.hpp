#ifndef HSK_RATIONAL_MAP_HPP
#define HSK_RATIONAL_MAP_HPP

#include <vector>

#include "hsk/spectral_curve.hpp"

#include "json.hpp"

namespace hsk {

struct ProjectiveValue {
  cplx value;
  bool infinite = false;
};

// Degree-k rational map in the P-coordinate chart on (dual torus)/(+-):
// R(w) = num(w)/den(w), coefficients stored low degree first, gauge fixed by
// setting the largest-modulus denominator coefficient to 1.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(std::vector<cplx> num, std::vector<cplx> den, LatticePtr lattice, cplx xi0);

  int k() const { return k_; }
  const std::vector<cplx>& num() const { return num_; }
  const std::vector<cplx>& den() const { return den_; }
  const LatticePtr& lattice() const { return lattice_; }
  cplx xi0() const { return xi0_; }

  ProjectiveValue eval(cplx w) const;
  ProjectiveValue at_infinity() const;  // ratio of the degree-k coefficients

  // All coefficients except the gauge-fixed one, as a flat parameter vector
  // (2k+1 complex numbers).
  std::vector<cplx> free_parameters() const;
  RationalMap with_parameters(const std::vector<cplx>& params) const;

  nlohmann::ordered_json to_json() const;

 private:
  void normalize();

  int k_ = 0;
  std::vector<cplx> num_, den_;
  int gauge_index_ = 0;  // index into den_ of the coefficient fixed to 1
  LatticePtr lattice_;
  cplx xi0_{0.0, 0.0};
};

// Fit num(w) - y * den(w) = 0 in least squares over the samples; degree k.
// Throws numerical_error if the smallest singular value is not well below
// the next one (no clean rational relation).
RationalMap fit_rational_map(const std::vector<cplx>& w_samples, const std::vector<cplx>& y_samples,
                             int k, LatticePtr lattice, cplx xi0);

// Realize the symmetric spectral curve as a rational map: sample fibers,
// take y = P(xi_w) (checked equal on both fiber points), fit, and validate
// on holdout samples. Requires a smooth symmetric curve.
RationalMap extract_map(const SpectralCurve& curve);

struct CurveSample {
  cplx w;
  cplx xi;  // one of the two symmetric fiber points (-xi is the other)
};

// Invert P(xi) = R(w) over a sample set of w (skipping poles of R).
std::vector<CurveSample> reconstruct_curve(const RationalMap& map, int n_samples = 200);

// dim of the space of degree-k maps modulo scale.
int param_count(int k);

struct DeformationRank {
  int expected;       // 2k+1
  int rank;           // measured rank of the branch-value Jacobian
  bool full;          // rank == expected
};

// Finite-difference Jacobian of the 4k branch values (preimages of the three
// half-period values and of infinity) with respect to the free parameters.
DeformationRank deformation_rank(const RationalMap& map);

}  // namespace hsk

#endif
