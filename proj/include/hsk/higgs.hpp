#ifndef HSK_HIGGS_HPP
#define HSK_HIGGS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "hsk/elliptic_function.hpp"
#include "hsk/lattice.hpp"

#include "json.hpp"

namespace hsk {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Rank-1 building block R = u * v^T.
struct ResidueDyad {
  Vector u, v;
  Matrix matrix() const { return u * v.transpose(); }
  cplx eigenvalue() const { return (v.transpose() * u)(0); }  // the nonzero one
};

// Residue matrices as dyads: rank <= 1 at each of +-xi0 in the generic case,
// or up to two dyads at the single pole when xi0 has order 2.
struct ResidueData {
  std::vector<ResidueDyad> plus;
  std::vector<ResidueDyad> minus;  // empty in the order-2 variant
};

struct OddPerturbation {
  int i = 0, j = 0;
  cplx delta;  // adds delta * (P(xi - xi0) - P(xi + xi0)) to entry (i,j)
};

struct HiggsOptions {
  bool order_two = false;
  std::optional<std::uint64_t> seed;
  std::optional<OddPerturbation> odd;
};

// Meromorphic k x k Higgs field on the dual torus: entries
//   C_ij + (R+)_ij zeta(xi - xi0) + (R-)_ij zeta(xi + xi0)
// with R- = -R+ entrywise (residue sums vanish per entry), or
//   C_ij + A_ij P(xi - xi0)
// in the order-2 variant. Immutable after construction.
class HiggsField {
 public:
  int k() const { return k_; }
  const LatticePtr& lattice() const { return lattice_; }
  const TorusPoint& xi0() const { return xi0_; }
  cplx epsilon() const { return epsilon_; }
  bool order_two() const { return order_two_; }
  bool su2_symmetric() const { return su2_symmetric_; }
  const Matrix& constants() const { return constants_; }
  const Matrix& residue_plus() const { return residue_plus_; }
  const Matrix& residue_minus() const { return residue_minus_; }
  const ResidueData& residues() const { return residues_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const std::optional<OddPerturbation>& odd() const { return odd_; }

  // Entrywise evaluation; throws pole_error close to the poles.
  Matrix eval(cplx xi, double pole_tol = 1e-11) const;

  // Monic characteristic polynomial coefficients at xi:
  //   det(w I - Phi(xi)) = w^k + a_1 w^{k-1} + ... + a_k,  a_1 = -tr Phi.
  Vector char_coeffs_at(cplx xi) const;

  // det(Phi(xi) - w I) = (-1)^k (w^k + a_1 w^{k-1} + ... + a_k).
  cplx char_eval(cplx xi, cplx w) const;

  // Eigenvalues of Phi(xi) sorted lexicographically by (Re, Im).
  std::vector<cplx> eigenvalues(cplx xi) const;

  // Poles with orders: {xi0, -xi0} order 1 (order-2 variant: {xi0} order 2).
  // The odd perturbation raises the orders to 2 at both points.
  std::vector<std::pair<cplx, int>> poles() const;

  // Canonical principal-parts form of one entry.
  EllipticFunction entry(int i, int j) const;

  nlohmann::ordered_json to_json() const;
  static HiggsField from_json(const nlohmann::ordered_json& j);

  friend HiggsField build_higgs(int, LatticePtr, cplx, const ResidueData&, const Matrix&,
                                const HiggsOptions&);
  friend HiggsField weierstrass_graph_field(LatticePtr, cplx);

 private:
  HiggsField() = default;

  int k_ = 0;
  LatticePtr lattice_;
  TorusPoint xi0_;
  cplx epsilon_{0.0, 0.0};
  bool order_two_ = false;
  bool su2_symmetric_ = true;
  Matrix constants_, residue_plus_, residue_minus_;
  ResidueData residues_;
  std::optional<std::uint64_t> seed_;
  std::optional<OddPerturbation> odd_;
};

// Validating constructor. Rejects xi0 = identity, rank violations,
// non-semi-simple residues and entrywise residue-sum violations.
HiggsField build_higgs(int k, LatticePtr lattice, cplx xi0, const ResidueData& residues,
                       const Matrix& regular_part, const HiggsOptions& options = {});

// Reproducible random field: rank-1 dyads and a constant regular part drawn
// from the seed. Dyads are redrawn if |v^T u| falls under the
// semi-simplicity floor.
HiggsField random_higgs(int k, LatticePtr lattice, cplx xi0, std::uint64_t seed,
                        const HiggsOptions& options = {});

// The graph-of-P curve source: k = 1, Phi = P(xi - xi_c). xi_c may be any
// order <= 2 point including the identity; this bypasses the nontriviality
// check, for spectral-curve fixtures only.
HiggsField weierstrass_graph_field(LatticePtr lattice, cplx xi_c = cplx(0.0, 0.0));

}  // namespace hsk

#endif
