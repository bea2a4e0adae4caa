#ifndef HSK_LATTICE_HPP
#define HSK_LATTICE_HPP

#include <array>
#include <complex>
#include <memory>

namespace hsk {

using cplx = std::complex<double>;

// Period lattice Z + tau*Z, Im(tau) > 0, with the derived Weierstrass data.
// eta1, eta2 are the full-period increments of zeta:
//   zeta(u+1) - zeta(u) = eta1,   zeta(u+tau) - zeta(u) = eta2,
// so the Legendre relation reads eta1*tau - eta2 = 2*pi*i.
struct Lattice {
  cplx tau;
  cplx g2, g3;
  cplx eta1, eta2;
  cplx nome;  // q = exp(i*pi*tau)

  // Half-period points 0, 1/2, tau/2, (1+tau)/2 (order <= 2 in the torus group).
  std::array<cplx, 4> order_two_points() const {
    return {cplx(0.0, 0.0), cplx(0.5, 0.0), tau * 0.5, (1.0 + tau) * 0.5};
  }
};

using LatticePtr = std::shared_ptr<const Lattice>;

// Computes g2, g3 (Eisenstein q-series) and eta1, eta2 for Z + tau*Z.
// Series are truncated adaptively until two successive truncations agree
// to 1e-13 relative. Throws domain_error unless Im(tau) > 0.
LatticePtr lattice_invariants(cplx tau);

// A point on the torus C/(Z + tau*Z), kept reduced to the centered cell
// x + y*tau with x, y in [-1/2, 1/2).
struct TorusPoint {
  cplx z;
  LatticePtr lattice;

  TorusPoint() = default;
  TorusPoint(cplx raw, LatticePtr lat);

  bool approx_equal(const TorusPoint& other, double tol = 1e-8) const;
  // true if 2z is a lattice vector but z is not (z has exact order 2)
  bool is_order_two(double tol = 1e-8) const;
  bool is_identity(double tol = 1e-8) const;
};

// Reduce u to the centered fundamental cell; m, n receive the subtracted
// integer multiples of 1 and tau.
cplx reduce_mod_lattice(cplx u, const Lattice& lat, long* m = nullptr, long* n = nullptr);

// Distance from u to the nearest lattice translate of p (p = 0 gives
// distance to the lattice itself).
double lattice_distance(cplx u, cplx p, const Lattice& lat);

struct WeierstrassValues {
  cplx wp;        // P(u)
  cplx wp_prime;  // P'(u)
  cplx zeta;      // zeta(u)
};

// Evaluate P, P', zeta at u via theta series at the reduced argument.
// Throws pole_error if u is within pole_tol of a lattice point.
WeierstrassValues weierstrass_eval(cplx u, const Lattice& lat, double pole_tol = 1e-11);

// Individual accessors (same pole handling).
cplx weierstrass_p(cplx u, const Lattice& lat);
cplx weierstrass_p_prime(cplx u, const Lattice& lat);
cplx weierstrass_zeta(cplx u, const Lattice& lat);

// P and its derivatives d^j P / du^j for j = 0..max_order (max_order <= 5),
// obtained from P, P' and the differential equation.
void weierstrass_p_derivs(cplx u, const Lattice& lat, int max_order, cplx* out);

// Sign s in  zeta(u-a) - zeta(u+a) + 2 zeta(a) = s * P'(a) / (P(u) - P(a)).
// The classical identity holds with a fixed global sign; it is measured
// once per lattice rather than assumed.
int zeta_pprime_sign(const Lattice& lat);

}  // namespace hsk

#endif
