#ifndef HSK_ELLIPTIC_FUNCTION_HPP
#define HSK_ELLIPTIC_FUNCTION_HPP

#include <utility>
#include <vector>

#include "hsk/lattice.hpp"

namespace hsk {

// One principal-parts term. order 1 contributes coeff * zeta(u - pole);
// order m >= 2 contributes coeff * P^{(m-2)}(u - pole).
struct EFTerm {
  cplx pole;
  int order = 1;
  cplx coeff;
};

// Canonical principal-parts form of a meromorphic doubly-periodic function:
// constant + sum of EFTerms. Double-periodicity requires the order-1
// coefficients to sum to zero; validate() enforces it.
class EllipticFunction {
 public:
  EllipticFunction() = default;
  EllipticFunction(LatticePtr lat, cplx constant) : constant_(constant), lattice_(std::move(lat)) {}
  EllipticFunction(LatticePtr lat, cplx constant, std::vector<EFTerm> terms);

  static EllipticFunction constant_function(LatticePtr lat, cplx c) {
    return EllipticFunction(std::move(lat), c);
  }

  const LatticePtr& lattice() const { return lattice_; }
  cplx constant() const { return constant_; }
  const std::vector<EFTerm>& terms() const { return terms_; }

  // Sum of order-1 coefficients; must vanish for a true elliptic function.
  cplx residue_total() const;
  // Throws validation_error if the residue sum is off (relative to scale).
  void validate(double tol = 1e-10) const;

  cplx eval(cplx u, double pole_tol = 1e-11) const;
  cplx operator()(cplx u) const { return eval(u); }

  // Order-1 coefficient at the given pole (0 if no simple pole there).
  cplx residue_at(cplx pole, double tol = 1e-8) const;

  EllipticFunction derivative() const;

  // Distinct poles (reduced representatives) with their maximal term order.
  // Terms with negligible coefficients are dropped.
  std::vector<std::pair<cplx, int>> poles(double coeff_tol = 0.0) const;
  // Total pole order counted with multiplicity over one fundamental cell.
  int total_pole_order(double coeff_tol = 0.0) const;

  EllipticFunction operator+(const EllipticFunction& o) const;
  EllipticFunction operator*(cplx s) const;
  EllipticFunction operator+(cplx s) const;

 private:
  cplx constant_{0.0, 0.0};
  std::vector<EFTerm> terms_;
  LatticePtr lattice_;
};

}  // namespace hsk

#endif
