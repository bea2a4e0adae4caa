#ifndef HSK_SPECTRAL_CURVE_HPP
#define HSK_SPECTRAL_CURVE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "hsk/higgs.hpp"
#include "hsk/zero_finding.hpp"

#include "json.hpp"

namespace hsk {

// How the rank-2 instanton bundle restricts to the elliptic fiber over w.
struct RestrictionType {
  enum Kind { SplitDistinct, IndecomposableF2, DoublePoint };
  Kind kind;
  cplx xi_a, xi_b;  // fiber points (coincide for the latter two kinds)
};

struct BranchData {
  std::vector<cplx> pi1;        // branch points of the k-fold cover (xi values)
  std::vector<int> pi1_mult;    // discriminant zero multiplicities
  std::vector<cplx> pi2_finite; // branch values of the double cover (w values)
  bool pi2_infinity = false;    // infinity is a branch value (P-graph style)
  std::vector<cplx> pi2_ram_xi; // ramification points on the base torus
  std::vector<cplx> nodes;      // xi locations of detected nodes (non-good)

  int pi1_count() const;
  int pi2_count() const { return static_cast<int>(pi2_finite.size()) + (pi2_infinity ? 1 : 0); }
};

// The eigenvalue locus det(Phi(xi) - w I) = 0 in (dual torus) x P^1 with its
// cached invariants. Immutable after build().
class SpectralCurve {
 public:
  static SpectralCurve build(std::shared_ptr<const HiggsField> phi);

  const HiggsField& field() const { return *phi_; }
  int k() const { return phi_->k(); }
  const LatticePtr& lattice() const { return phi_->lattice(); }

  // det(Phi(xi) - w I) and the monic char polynomial in w.
  cplx F(cplx xi, cplx w) const { return phi_->char_eval(xi, w); }
  cplx p_monic(cplx xi, cplx w) const;

  // k eigenvalues over xi, sorted by (Re, Im).
  std::vector<cplx> fiber_over_base(cplx xi) const;

  // The two zeros of xi -> F(xi, w) in the fundamental domain. Throws
  // invariant_violation if the count differs from 2.
  std::vector<TorusPoint> fiber_over_w(cplx w) const;

  const BranchData& branch_data() const { return branch_; }
  int genus() const { return genus_; }            // from pi1 data
  int genus_from_pi2() const { return genus2_; }  // Riemann-Hurwitz cross-check
  std::pair<int, int> homology() const { return {k(), 2}; }
  bool smooth() const { return smooth_; }

  // One eigenvalue diverges like |epsilon| / |xi -+ xi0|.
  bool contains_poles_at_infinity(double rel_tol = 5e-3) const;

  // F(-xi, w) = F(xi, w) within tol at random samples, and the tau-fixed
  // points coincide with the ramification points of the double cover.
  bool involution_check(int samples = 100, double tol = 1e-9) const;

  RestrictionType restriction_type(cplx w) const;

  // Unit kernel vector of Phi(xi) - w I, largest component rotated to the
  // positive real axis. Requires (xi, w) on the curve to 1e-8.
  Vector eigenline(cplx xi, cplx w) const;

  // Zeros minus poles, with multiplicity, of one adjugate-column component
  // of the eigenline over the whole compact curve. Expected 0.
  int eigenline_degree() const;

  nlohmann::ordered_json to_json() const;
  // Sampled curve as CSV rows "xi_re,xi_im,w_re,w_im,sheet".
  std::string sample_csv(int n_base = 64) const;

 private:
  SpectralCurve() = default;

  void compute_pi2_branch();
  void compute_pi1_branch();
  void check_homology();
  cplx refine_ramification(cplx seed, cplx w) const;

  std::shared_ptr<const HiggsField> phi_;
  Parallelogram domain_;
  BranchData branch_;
  int genus_ = 0, genus2_ = 0;
  bool smooth_ = false;
  mutable std::optional<std::vector<PoleSpec>> fiber_pole_cache_;
};

}  // namespace hsk

#endif
