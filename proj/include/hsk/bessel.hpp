#ifndef HSK_BESSEL_HPP
#define HSK_BESSEL_HPP

namespace hsk {

// Modified Bessel functions of the second kind. Power series for r <= 2,
// exponentially convergent trapezoidal quadrature of the cosh-substituted
// integral representation for larger r. Relative accuracy ~1e-12.
// Throws domain_error for r <= 0.
double bessel_k0(double r);
double bessel_k1(double r);

// Independent evaluation paths, exposed for cross-validation.
double bessel_k0_series(double r);    // valid for small r (use r <= 2)
double bessel_k0_integral(double r);  // valid for all r > 0
double bessel_k1_integral(double r);

double bessel_i0(double r);

// integral_0^R r K0(r) dr by adaptive Gauss-Legendre panels (R = inf means
// integrate until the tail is negligible). The plane mass of the kernel is
// 2*pi times this.
double k0_radial_mass(double R);

// L1 norm of K0(|w|) over the plane, i.e. 2*pi * integral_0^inf r K0 dr.
double k0_plane_l1();

}  // namespace hsk

#endif
