#include "hsk/lattice.hpp"

#include <cmath>
#include <numbers>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

constexpr double pi = std::numbers::pi;

// Eisenstein-type q-series  sum_{n>=1} n^s * p^n / (1 - p^n), p = q^2.
// Truncation is adaptive: stop once two successive partial sums agree to
// 1e-13 relative and the last term is below 1e-18 of the running sum.
cplx eisenstein_sum(cplx p, int s) {
  cplx sum = 0.0;
  cplx pn = 1.0;
  cplx prev = 1e300;
  for (int n = 1; n <= 600; ++n) {
    pn *= p;
    double ns = std::pow(static_cast<double>(n), s);
    cplx term = ns * pn / (1.0 - pn);
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0) &&
        std::abs(sum - prev) < 1e-13 * (std::abs(sum) + 1.0)) {
      return sum;
    }
    prev = sum;
  }
  throw numerical_error("eisenstein_sum: series did not converge (Im tau too small?)");
}

// theta_1 and its first three v-derivatives at nome q.
struct Theta1Values {
  cplx t, d1, d2, d3;
};

Theta1Values theta1_eval(cplx v, cplx q) {
  Theta1Values th{0.0, 0.0, 0.0, 0.0};
  double qa = std::abs(q);
  double scale = 0.0;
  for (int n = 0; n <= 64; ++n) {
    double m = 2.0 * n + 1.0;
    cplx qpow = std::pow(q, 0.25 * m * m);
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    cplx s = std::sin(m * v), c = std::cos(m * v);
    cplx a = 2.0 * sign * qpow;
    th.t += a * s;
    th.d1 += a * m * c;
    th.d2 -= a * m * m * s;
    th.d3 -= a * m * m * m * c;
    double tsz = std::abs(a) * (std::abs(s) + std::abs(c)) * m * m * m;
    scale = std::max(scale, tsz);
    if (n >= 2 && tsz < 1e-17 * (scale + 1.0)) break;
    if (n == 64) throw numerical_error("theta1_eval: series did not converge");
    (void)qa;
  }
  return th;
}

}  // namespace

LatticePtr lattice_invariants(cplx tau) {
  if (!(tau.imag() > 0.0)) {
    throw domain_error("lattice_invariants: Im(tau) must be positive");
  }
  auto lat = std::make_shared<Lattice>();
  lat->tau = tau;
  lat->nome = std::exp(cplx(0.0, pi) * tau);

  cplx p = lat->nome * lat->nome;  // exp(2*pi*i*tau)
  cplx e2 = 1.0 - 24.0 * eisenstein_sum(p, 1);
  cplx e4 = 1.0 + 240.0 * eisenstein_sum(p, 3);
  cplx e6 = 1.0 - 504.0 * eisenstein_sum(p, 5);

  double pi2 = pi * pi;
  lat->g2 = (4.0 / 3.0) * pi2 * pi2 * e4;
  lat->g3 = (8.0 / 27.0) * pi2 * pi2 * pi2 * e6;
  lat->eta1 = pi2 / 3.0 * e2;
  lat->eta2 = lat->eta1 * tau - cplx(0.0, 2.0 * pi);

  cplx disc = lat->g2 * lat->g2 * lat->g2 - 27.0 * lat->g3 * lat->g3;
  double scale = std::pow(std::abs(lat->g2), 3) + 27.0 * std::norm(lat->g3) + 1e-300;
  if (std::abs(disc) < 1e-10 * scale) {
    throw numerical_error("lattice_invariants: degenerate lattice, g2^3 - 27 g3^2 = 0");
  }
  return lat;
}

cplx reduce_mod_lattice(cplx u, const Lattice& lat, long* m_out, long* n_out) {
  double b = u.imag() / lat.tau.imag();
  double a = u.real() - b * lat.tau.real();
  long m = std::lround(a);
  long n = std::lround(b);
  if (m_out) *m_out = m;
  if (n_out) *n_out = n;
  return u - static_cast<double>(m) - static_cast<double>(n) * lat.tau;
}

double lattice_distance(cplx u, cplx p, const Lattice& lat) {
  cplx d = reduce_mod_lattice(u - p, lat);
  // the centered representative of the difference may still not be the
  // closest translate near cell corners; check the 9 neighbours
  double best = std::abs(d);
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::abs(d - static_cast<double>(i) - static_cast<double>(j) * lat.tau));
    }
  }
  return best;
}

TorusPoint::TorusPoint(cplx raw, LatticePtr lat) : z(0.0), lattice(std::move(lat)) {
  z = reduce_mod_lattice(raw, *lattice);
}

bool TorusPoint::approx_equal(const TorusPoint& other, double tol) const {
  return lattice_distance(z, other.z, *lattice) < tol;
}

bool TorusPoint::is_identity(double tol) const {
  return lattice_distance(z, 0.0, *lattice) < tol;
}

bool TorusPoint::is_order_two(double tol) const {
  return !is_identity(tol) && lattice_distance(2.0 * z, 0.0, *lattice) < tol;
}

WeierstrassValues weierstrass_eval(cplx u, const Lattice& lat, double pole_tol) {
  long m = 0, n = 0;
  cplx ur = reduce_mod_lattice(u, lat, &m, &n);
  if (std::abs(ur) < pole_tol) {
    throw pole_error("weierstrass_eval: argument at a lattice point");
  }
  cplx v = pi * ur;
  Theta1Values th = theta1_eval(v, lat.nome);
  cplx r1 = th.d1 / th.t;                      // (log theta1)'
  cplx r2 = th.d2 / th.t - r1 * r1;            // (log theta1)''
  cplx r3 = th.d3 / th.t - 3.0 * r1 * (th.d2 / th.t) + 2.0 * r1 * r1 * r1;

  WeierstrassValues w;
  w.zeta = lat.eta1 * ur + pi * r1 + static_cast<double>(m) * lat.eta1 +
           static_cast<double>(n) * lat.eta2;
  w.wp = -lat.eta1 - pi * pi * r2;
  w.wp_prime = -pi * pi * pi * r3;
  return w;
}

cplx weierstrass_p(cplx u, const Lattice& lat) { return weierstrass_eval(u, lat).wp; }
cplx weierstrass_p_prime(cplx u, const Lattice& lat) { return weierstrass_eval(u, lat).wp_prime; }
cplx weierstrass_zeta(cplx u, const Lattice& lat) { return weierstrass_eval(u, lat).zeta; }

void weierstrass_p_derivs(cplx u, const Lattice& lat, int max_order, cplx* out) {
  if (max_order < 0) return;
  if (max_order > 5) {
    throw domain_error("weierstrass_p_derivs: orders above 5 not supported");
  }
  WeierstrassValues w = weierstrass_eval(u, lat);
  cplx p = w.wp, dp = w.wp_prime;
  out[0] = p;
  if (max_order >= 1) out[1] = dp;
  if (max_order >= 2) out[2] = 6.0 * p * p - 0.5 * lat.g2;
  if (max_order >= 3) out[3] = 12.0 * p * dp;
  if (max_order >= 4) out[4] = 12.0 * dp * dp + 12.0 * p * out[2];
  if (max_order >= 5) out[5] = 288.0 * p * p * dp - 12.0 * lat.g2 * dp;
}

int zeta_pprime_sign(const Lattice& lat) {
  // measure at a handful of generic points; both candidates are checked
  cplx a(0.23, 0.31 * lat.tau.imag());
  double plus = 0.0, minus = 0.0;
  for (int i = 1; i <= 3; ++i) {
    cplx u(0.11 * i + 0.07, (0.13 * i) * lat.tau.imag());
    WeierstrassValues wu = weierstrass_eval(u, lat);
    WeierstrassValues wum = weierstrass_eval(u - a, lat);
    WeierstrassValues wup = weierstrass_eval(u + a, lat);
    WeierstrassValues wa = weierstrass_eval(a, lat);
    cplx lhs = wum.zeta - wup.zeta + 2.0 * wa.zeta;
    cplx rhs = wa.wp_prime / (wu.wp - wa.wp);
    plus += std::abs(lhs - rhs);
    minus += std::abs(lhs + rhs);
  }
  if (std::min(plus, minus) > 1e-8 * (plus + minus)) {
    throw numerical_error("zeta_pprime_sign: identity fails for both signs");
  }
  return plus < minus ? 1 : -1;
}

}  // namespace hsk
