#include "hsk/bessel.hpp"

#include <cmath>
#include <numbers>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

constexpr double euler_gamma = 0.577215664901532860606512090082;

void check_positive(double r, const char* who) {
  if (!(r > 0.0)) throw domain_error(std::string(who) + ": argument must be positive");
}

// trapezoid on [0, T] of g (even around 0, double-exponential decay); the
// closed-contour Euler-Maclaurin cancellation makes this spectrally accurate
template <typename G>
double cosh_trapezoid(G g, double r) {
  double tmax = std::acosh(std::max(2.0, 740.0 / r));
  const double h = 0.05;
  int n = static_cast<int>(tmax / h) + 1;
  double s = 0.5 * g(0.0);
  for (int j = 1; j <= n; ++j) s += g(j * h);
  return s * h;
}

}  // namespace

double bessel_i0(double r) {
  double x2 = 0.25 * r * r;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= x2 / (static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double bessel_k0_series(double r) {
  check_positive(r, "bessel_k0_series");
  double x2 = 0.25 * r * r;
  double term = 1.0, hm = 0.0, sum = 0.0;
  for (int m = 1; m < 200; ++m) {
    term *= x2 / (static_cast<double>(m) * m);
    hm += 1.0 / m;
    sum += term * hm;
    if (term * hm < 1e-17 * (sum + 1.0)) break;
  }
  return -(std::log(0.5 * r) + euler_gamma) * bessel_i0(r) + sum;
}

double bessel_k0_integral(double r) {
  check_positive(r, "bessel_k0_integral");
  return cosh_trapezoid([r](double t) { return std::exp(-r * std::cosh(t)); }, r);
}

double bessel_k1_integral(double r) {
  check_positive(r, "bessel_k1_integral");
  return cosh_trapezoid([r](double t) { return std::exp(-r * std::cosh(t)) * std::cosh(t); }, r);
}

double bessel_k0(double r) {
  check_positive(r, "bessel_k0");
  if (r > 740.0) return 0.0;  // below double underflow of e^{-r}
  return r <= 2.0 ? bessel_k0_series(r) : bessel_k0_integral(r);
}

double bessel_k1(double r) {
  check_positive(r, "bessel_k1");
  if (r > 740.0) return 0.0;
  if (r > 2.0) return bessel_k1_integral(r);
  // series: K1 = 1/r + (ln(r/2)+gamma) I1 - ... ; assembled from the standard
  // expansion K1(r) = 1/r + ln(r/2) I1(r) - (1/r) sum_{m>=0} c_m
  // use the stable form via I1 and the psi-weighted series
  double x2 = 0.25 * r * r;
  double i1 = 0.5 * r;  // I1 series accumulates below
  double term = 0.5 * r;
  for (int m = 1; m < 200; ++m) {
    term *= x2 / (static_cast<double>(m) * (m + 1.0));
    i1 += term;
    if (term < 1e-17 * i1) break;
  }
  // K1(r) = (1/r) + I1(r) ln(r/2) - (r/4) sum_{m>=0} (psi(m+1)+psi(m+2))/(m!(m+1)!) x2^m
  double sum = 0.0;
  double fac = 1.0;  // x2^m / (m! (m+1)!)
  double psi1 = -euler_gamma, psi2 = 1.0 - euler_gamma;
  for (int m = 0; m < 200; ++m) {
    if (m > 0) {
      fac *= x2 / (static_cast<double>(m) * (m + 1.0));
      psi1 += 1.0 / m;
      psi2 += 1.0 / (m + 1.0);
    }
    double t = fac * (psi1 + psi2);
    sum += t;
    if (std::abs(t) < 1e-17 * (std::abs(sum) + 1.0) && m > 3) break;
  }
  return 1.0 / r + std::log(0.5 * r) * i1 - 0.25 * r * sum;
}

namespace {

// 20-point Gauss-Legendre nodes/weights on [-1, 1]
const double gl_x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                         0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                         0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                         0.9931285991850949};
const double gl_w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                         0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                         0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                         0.0176140071391521};

template <typename G>
double gauss_panel(G g, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 10; ++i) {
    s += gl_w[i] * (g(mid + half * gl_x[i]) + g(mid - half * gl_x[i]));
  }
  return s * half;
}

}  // namespace

double k0_radial_mass(double R) {
  double upper = std::isfinite(R) ? R : 45.0;  // r K0 ~ e^{-45} ~ 3e-20 beyond
  auto g = [](double r) { return r <= 0.0 ? 0.0 : r * bessel_k0(r); };
  double total = 0.0;
  double a = 0.0;
  // dyadic panels toward 0 where derivatives of r*K0 are log-singular
  for (int k = 14; k >= 0; --k) {
    double b = std::ldexp(1.0, -k);  // 2^-14 .. 1
    if (b > upper) break;
    total += gauss_panel(g, a, b);
    a = b;
  }
  while (a < upper) {
    double b = std::min(a + 0.5, upper);
    total += gauss_panel(g, a, b);
    a = b;
  }
  return total;
}

double k0_plane_l1() { return 2.0 * std::numbers::pi * k0_radial_mass(std::numeric_limits<double>::infinity()); }

}  // namespace hsk
