#include "hsk/spectral_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// adj(M) = (-1)^{k-1} (M^{k-1} + c_1 M^{k-2} + ... + c_{k-1} I) with c_j the
// monic char-poly coefficients; valid for singular M as well.
Matrix adjugate(const Matrix& m) {
  int k = static_cast<int>(m.rows());
  if (k == 1) return Matrix::Ones(1, 1);
  Matrix acc = m;
  Matrix b = Matrix::Identity(k, k);
  for (int j = 1; j < k; ++j) {
    cplx c = -acc.trace() / static_cast<double>(j);
    b = m * b + c * Matrix::Identity(k, k);
    if (j < k - 1) acc = m * (acc + c * Matrix::Identity(k, k));
  }
  return (k % 2 == 0) ? Matrix(-b) : b;
}

// Discriminant in w of the monic polynomial w^k + a1 w^{k-1} + ... + ak.
cplx discriminant_from_coeffs(const Vector& a) {
  int k = static_cast<int>(a.size());
  if (k == 1) return 1.0;
  if (k == 2) return a(0) * a(0) - 4.0 * a(1);
  int n = 2 * k - 1;
  Matrix s = Matrix::Zero(n, n);
  for (int r = 0; r < k - 1; ++r) {
    s(r, r) = 1.0;
    for (int j = 0; j < k; ++j) s(r, r + 1 + j) = a(j);
  }
  for (int r = 0; r < k; ++r) {
    s(k - 1 + r, r) = static_cast<double>(k);
    for (int j = 1; j < k; ++j) s(k - 1 + r, r + j) = static_cast<double>(k - j) * a(j - 1);
  }
  cplx res = s.partialPivLu().determinant();
  return ((k * (k - 1)) / 2 % 2 == 0) ? res : -res;
}

std::vector<cplx> sorted_eigs(std::vector<cplx> ev) {
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

struct SheetTracks {
  std::vector<cplx> xi;              // step points along the circle
  std::vector<std::vector<cplx>> w;  // [sheet][step]
  int steps = 0;
  int loops = 1;
};

// Eigenvalue continuation along `loops` turns of a circle, branches matched
// by continuity. Throws numerical_error if branches cannot be separated.
SheetTracks track_sheets(const HiggsField& phi, cplx center, double radius, int loops,
                         int steps_hint = 96) {
  int k = phi.k();
  for (int steps = steps_hint; steps <= 12288; steps *= 2) {
    SheetTracks tr;
    tr.steps = steps;
    tr.loops = loops;
    tr.xi.resize(steps + 1);
    tr.w.assign(k, std::vector<cplx>(steps + 1));
    bool ok = true;
    std::vector<cplx> prev;
    for (int j = 0; j <= steps && ok; ++j) {
      double th = two_pi * loops * static_cast<double>(j) / steps;
      cplx xi = center + radius * std::exp(cplx(0.0, th));
      tr.xi[j] = xi;
      std::vector<cplx> ev;
      {
        Eigen::ComplexEigenSolver<Matrix> es(phi.eval(xi));
        ev.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
      }
      if (j == 0) {
        ev = sorted_eigs(ev);
        for (int l = 0; l < k; ++l) tr.w[l][0] = ev[l];
        prev = ev;
        continue;
      }
      std::vector<bool> used(k, false);
      std::vector<cplx> cur(k);
      for (int l = 0; l < k && ok; ++l) {
        int best = -1;
        double bd = 1e300, second = 1e300;
        for (int m = 0; m < k; ++m) {
          if (used[m]) continue;
          double d = std::abs(ev[m] - prev[l]);
          if (d < bd) {
            second = bd;
            bd = d;
            best = m;
          } else {
            second = std::min(second, d);
          }
        }
        if (best < 0 || (second < 1e300 && bd > 0.45 * second)) {
          ok = false;
          break;
        }
        used[best] = true;
        cur[l] = ev[best];
      }
      if (!ok) break;
      for (int l = 0; l < k; ++l) tr.w[l][j] = cur[l];
      prev = cur;
    }
    if (ok) return tr;
  }
  throw numerical_error("track_sheets: eigenvalue branches could not be separated");
}

// Winding of the sampled closed sequence; false if a step turns too fast.
bool sampled_winding(const std::vector<cplx>& h, double* out) {
  double total = 0.0;
  for (size_t j = 0; j + 1 < h.size(); ++j) {
    if (std::abs(h[j]) == 0.0 || std::abs(h[j + 1]) == 0.0) return false;
    double d = std::arg(h[j + 1] / h[j]);
    if (std::abs(d) > 1.0) return false;
    total += d;
  }
  *out = total / two_pi;
  return true;
}

int round_strict(double w, const char* who) {
  long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.2) {
    throw numerical_error(std::string(who) + ": winding not close to an integer");
  }
  return static_cast<int>(r);
}

// Per-sheet windings of h(xi, w_sheet(xi)) around a circle; re-tracks with a
// denser stepping until every sheet's phase sequence is resolved.
std::vector<int> sheet_windings(const HiggsField& phi, cplx center, double radius, int loops,
                                const std::function<cplx(cplx, cplx)>& h) {
  int k = phi.k();
  for (int steps = 128; steps <= 12288; steps *= 2) {
    SheetTracks tr = track_sheets(phi, center, radius, loops, steps);
    std::vector<int> out(k);
    bool ok = true;
    for (int l = 0; l < k && ok; ++l) {
      std::vector<cplx> vals(tr.xi.size());
      for (size_t j = 0; j < tr.xi.size(); ++j) vals[j] = h(tr.xi[j], tr.w[l][j]);
      double wind;
      ok = sampled_winding(vals, &wind);
      if (ok) out[l] = round_strict(wind, "sheet_windings");
    }
    if (ok) return out;
  }
  throw numerical_error("sheet_windings: could not resolve the phase along a sheet");
}

}  // namespace

int BranchData::pi1_count() const {
  int n = 0;
  for (int m : pi1_mult) n += m;
  return n;
}

cplx SpectralCurve::p_monic(cplx xi, cplx w) const {
  Vector a = phi_->char_coeffs_at(xi);
  cplx p = 1.0;
  for (int j = 0; j < k(); ++j) p = p * w + a(j);
  return p;
}

std::vector<cplx> SpectralCurve::fiber_over_base(cplx xi) const {
  return phi_->eigenvalues(xi);
}

SpectralCurve SpectralCurve::build(std::shared_ptr<const HiggsField> phi) {
  SpectralCurve c;
  c.phi_ = std::move(phi);
  const Lattice& lat = *c.phi_->lattice();
  std::vector<cplx> keep;
  for (const auto& [p, ord] : c.phi_->poles()) keep.push_back(p);
  for (cplx h : lat.order_two_points()) keep.push_back(h);
  c.domain_ = fundamental_domain(lat, keep);

  if (c.phi_->odd()) {
    // perturbed fixtures break the simple-pole structure; only raw
    // evaluation and symmetry checks are meaningful on them
    c.genus_ = -1;
    c.genus2_ = -1;
    c.smooth_ = false;
    return c;
  }

  c.compute_pi2_branch();
  c.compute_pi1_branch();
  c.check_homology();

  c.genus_ = c.branch_.pi1_count() / 2 + 1;
  c.genus2_ = (c.branch_.pi2_count() - 2) / 2;
  return c;
}

void SpectralCurve::compute_pi2_branch() {
  const Lattice& lat = *lattice();
  const HiggsField& phi = *phi_;
  branch_.pi2_finite.clear();
  branch_.pi2_ram_xi.clear();
  branch_.pi2_infinity = false;

  if (!phi.su2_symmetric()) return;

  double h = 1e-6;
  for (cplx xic : lat.order_two_points()) {
    bool at_pole = false;
    for (const auto& [p, ord] : phi.poles()) {
      if (lattice_distance(xic, p, lat) < 1e-9) at_pole = true;
    }
    if (at_pole) {
      // the double pole of the order-2 variant ramifies the double cover
      // over w = infinity
      branch_.pi2_infinity = true;
      branch_.pi2_ram_xi.push_back(reduce_mod_lattice(xic, lat));
      // eigenvalues staying bounded at the pole are additional branch
      // values; report the observed limits
      std::vector<cplx> lim1 = phi.eigenvalues(xic + 1e-5);
      std::vector<cplx> lim2 = phi.eigenvalues(xic + 3.16e-5);
      for (cplx v1 : lim1) {
        for (cplx v2 : lim2) {
          if (std::abs(v1 - v2) < 1e-4 * (1.0 + std::abs(v1)) && std::abs(v1) < 1e4) {
            branch_.pi2_finite.push_back(v1);
            branch_.pi2_ram_xi.push_back(reduce_mod_lattice(xic, lat));
          }
        }
      }
      continue;
    }
    // evenness makes every char coefficient critical at an order-2 point,
    // so all k sheets over it are ramification points of the double cover;
    // verified here rather than assumed
    Vector ap = phi.char_coeffs_at(xic + h);
    Vector am = phi.char_coeffs_at(xic - h);
    for (int j = 0; j < k(); ++j) {
      double scale = std::abs(ap(j)) + std::abs(am(j)) + 1.0;
      if (std::abs(ap(j) - am(j)) / (2.0 * h) > 1e-5 * scale / h) {
        throw invariant_violation(
            "pi2 branch: char coefficient not critical over an order-2 point");
      }
    }
    for (cplx w : phi.eigenvalues(xic)) {
      branch_.pi2_finite.push_back(w);
      branch_.pi2_ram_xi.push_back(reduce_mod_lattice(xic, lat));
    }
  }
}

void SpectralCurve::compute_pi1_branch() {
  branch_.pi1.clear();
  branch_.pi1_mult.clear();
  branch_.nodes.clear();
  if (k() == 1) {
    smooth_ = true;  // graphs over the torus carry no pi1 ramification
    return;
  }
  const HiggsField& phi = *phi_;
  CFn disc = [&phi](cplx xi) { return discriminant_from_coeffs(phi.char_coeffs_at(xi)); };

  std::vector<PoleSpec> poles;
  for (const auto& [p, ord] : phi.poles()) {
    for (cplx t : translates_in_region(p, *lattice(), domain_, -1e-7)) {
      int measured = 0;
      for (double r : {1.5e-3, 8e-4, 2.5e-3}) {
        try {
          measured = measure_pole_order(disc, t, r);
          break;
        } catch (const contour_error&) {
        }
      }
      if (measured <= 0) {
        throw numerical_error("pi1 branch: could not measure discriminant pole order");
      }
      poles.push_back({t, measured});
    }
  }

  ZeroFindOptions opts;
  opts.refine_size = 0.05;
  auto res = find_zeros(disc, nullptr, domain_, poles, opts);
  branch_.pi1 = res.zeros;
  branch_.pi1_mult = res.multiplicities;
  smooth_ = true;
  for (size_t i = 0; i < res.zeros.size(); ++i) {
    if (res.multiplicities[i] != 1) {
      smooth_ = false;
      branch_.nodes.push_back(res.zeros[i]);
    }
  }
}

namespace {

const std::vector<PoleSpec>& fiber_poles(const SpectralCurve& c, const Parallelogram& domain,
                                         std::optional<std::vector<PoleSpec>>& cache) {
  if (!cache) {
    const HiggsField& phi = c.field();
    cplx w_probe(0.7312, -0.4177);  // generic probe fixes the pole orders
    CFn f = [&](cplx xi) { return c.p_monic(xi, w_probe); };
    std::vector<PoleSpec> poles;
    for (const auto& [p, ord] : phi.poles()) {
      for (cplx t : translates_in_region(p, *phi.lattice(), domain, -1e-7)) {
        int measured = 0;
        for (double r : {1.5e-3, 8e-4, 2.5e-3}) {
          try {
            measured = measure_pole_order(f, t, r);
            break;
          } catch (const contour_error&) {
          }
        }
        if (measured <= 0) throw numerical_error("fiber poles: measurement failed");
        poles.push_back({t, measured});
      }
    }
    cache = poles;
  }
  return *cache;
}

}  // namespace

std::vector<TorusPoint> SpectralCurve::fiber_over_w(cplx w) const {
  const auto& poles = fiber_poles(*this, domain_, fiber_pole_cache_);
  CFn f = [this, w](cplx xi) { return p_monic(xi, w); };
  auto res = find_zeros(f, nullptr, domain_, poles);
  if (res.count != 2) {
    throw invariant_violation("fiber_over_w: expected a degree-2 fiber, found " +
                              std::to_string(res.count));
  }
  std::vector<TorusPoint> out;
  for (size_t i = 0; i < res.zeros.size(); ++i) {
    for (int m = 0; m < res.multiplicities[i]; ++m) {
      out.emplace_back(res.zeros[i], phi_->lattice());
    }
  }
  return out;
}

void SpectralCurve::check_homology() {
  const cplx samples[3] = {{0.913, 0.427}, {-1.221, 0.618}, {0.207, -1.133}};
  for (cplx w : samples) {
    (void)fiber_over_w(w);  // throws unless the fiber degree is 2
  }
}

bool SpectralCurve::contains_poles_at_infinity(double rel_tol) const {
  const HiggsField& phi = *phi_;
  cplx dir = std::exp(cplx(0.0, 0.41));
  for (const auto& [p, base_ord] : phi.poles()) {
    double expect = std::abs(phi.epsilon());
    bool ok = false;
    for (double delta : {1e-4, 3e-5}) {
      double vmax = 0.0;
      for (cplx ev : phi.eigenvalues(p + delta * dir)) vmax = std::max(vmax, std::abs(ev));
      double scaled = phi.order_two() ? vmax * delta * delta : vmax * delta;
      if (std::abs(scaled - expect) < rel_tol * expect) ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

bool SpectralCurve::involution_check(int samples, double tol) const {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 1000000ull) / 1000000.0;
  };
  const Lattice& lat = *lattice();
  for (int i = 0; i < samples; ++i) {
    cplx xi = (next() - 0.5) + (next() - 0.5) * lat.tau;
    if (lattice_distance(xi, phi_->xi0().z, lat) < 0.05 ||
        lattice_distance(xi, -phi_->xi0().z, lat) < 0.05) {
      continue;
    }
    cplx w(2.0 * next() - 1.0, 2.0 * next() - 1.0);
    cplx fp = F(xi, w), fm = F(-xi, w);
    double scale = std::max(1.0, std::max(std::abs(fp), std::abs(fm)));
    if (std::abs(fp - fm) > tol * scale) return false;
  }
  if (!phi_->su2_symmetric()) return false;

  // tau-fixed points must coincide with the double-cover ramification points
  for (size_t i = 0; i < branch_.pi2_finite.size(); ++i) {
    cplx w = branch_.pi2_finite[i];
    cplx xic = branch_.pi2_ram_xi[i];
    cplx xr = refine_ramification(xic, w);
    if (lattice_distance(xr, -xr, lat) > 1e-7) return false;
    if (lattice_distance(xr, xic, lat) > 1e-7) return false;
  }
  return true;
}

// Newton on d p/d xi = 0 (the midpoint of a colliding fiber pair).
cplx SpectralCurve::refine_ramification(cplx seed, cplx w) const {
  cplx xr = seed;
  double h = 1e-6;
  for (int it = 0; it < 40; ++it) {
    cplx d1 = (p_monic(xr + h, w) - p_monic(xr - h, w)) / (2.0 * h);
    cplx d2 = (p_monic(xr + h, w) - 2.0 * p_monic(xr, w) + p_monic(xr - h, w)) / (h * h);
    if (std::abs(d2) == 0.0) break;
    cplx step = d1 / d2;
    xr -= step;
    if (std::abs(step) < 1e-13) break;
  }
  return xr;
}

RestrictionType SpectralCurve::restriction_type(cplx w) const {
  const auto& poles = fiber_poles(*this, domain_, fiber_pole_cache_);
  CFn f = [this, w](cplx xi) { return p_monic(xi, w); };
  auto res = find_zeros(f, nullptr, domain_, poles);
  if (res.count != 2) {
    throw invariant_violation("restriction_type: fiber degree != 2");
  }

  // Newton cannot separate a genuinely collided pair from one split by
  // ~sqrt(tol); measure the separation through the local quadratic model at
  // the pair midpoint instead.
  cplx mid = res.zeros.size() == 2 ? 0.5 * (res.zeros[0] + res.zeros[1]) : res.zeros[0];
  cplx xr = refine_ramification(mid, w);
  double h = 1e-6;
  cplx d2 = (p_monic(xr + h, w) - 2.0 * p_monic(xr, w) + p_monic(xr - h, w)) / (h * h);
  double sep;
  if (std::abs(d2) == 0.0) {
    sep = 1.0;
  } else {
    sep = 2.0 * std::sqrt(std::abs(p_monic(xr, w) / (0.5 * d2)));
  }
  if (res.zeros.size() == 2) {
    sep = std::max(sep, std::abs(res.zeros[0] - res.zeros[1]));
  }

  if (sep > 1e-5) {
    std::vector<TorusPoint> pts = fiber_over_w(w);
    return {RestrictionType::SplitDistinct, pts[0].z, pts[1].z};
  }
  if (sep > 1e-7) {
    throw classification_error(
        "restriction_type: fiber separation in the ambiguity band [1e-7, 1e-5]; candidates "
        "SplitDistinct and IndecomposableF2");
  }

  cplx hw(1e-6, 0.0);
  cplx dpw = (p_monic(xr, w + hw) - p_monic(xr, w - hw)) / (2.0 * hw);
  double wscale = 1.0;
  for (cplx ev : phi_->eigenvalues(xr + 0.11)) wscale = std::max(wscale, std::abs(ev));
  if (std::abs(dpw) > 1e-5 * wscale) {
    return {RestrictionType::IndecomposableF2, xr, xr};
  }
  if (std::abs(dpw) < 1e-9 * wscale) {
    return {RestrictionType::DoublePoint, xr, xr};
  }
  throw classification_error(
      "restriction_type: dp/dw in the ambiguity band; candidates IndecomposableF2 and "
      "DoublePoint");
}

Vector SpectralCurve::eigenline(cplx xi, cplx w) const {
  Matrix m = phi_->eval(xi) - w * Matrix::Identity(k(), k());
  double scale = m.norm() + 1.0;
  if (std::abs(F(xi, w)) > 1e-8 * std::pow(scale, k())) {
    throw domain_error("eigenline: (xi, w) is not on the curve");
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (k() >= 2 && sv(k() - 2) < 1e-6 * (sv(0) + 1e-300)) {
    throw numerical_error("eigenline: node (two-dimensional kernel)");
  }
  Vector v = svd.matrixV().col(k() - 1);
  int imax = 0;
  for (int i = 1; i < k(); ++i) {
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  }
  cplx ph = v(imax) / std::abs(v(imax));
  return v / ph;
}

int SpectralCurve::eigenline_degree() const {
  const HiggsField& phi = *phi_;
  const Lattice& lat = *lattice();
  const int kk = k();
  if (kk == 1) return 0;  // the section (1) frames the line globally
  if (!smooth_) throw domain_error("eigenline_degree: curve must be smooth");

  // pick the adjugate component with the healthiest magnitude at probes;
  // a component that is identically small would shed spurious zeros
  int bi = 0, bj = 0;
  {
    std::vector<std::pair<cplx, cplx>> probes;
    for (double t : {0.13, 0.41, 0.77}) {
      cplx xi = domain_.point(0.21 + 0.5 * t, 0.33 + 0.29 * t);
      for (cplx w : phi.eigenvalues(xi)) probes.emplace_back(xi, w);
    }
    double best = -1.0;
    for (int i = 0; i < kk; ++i) {
      for (int j = 0; j < kk; ++j) {
        double score = 1e300;
        for (auto& [xi, w] : probes) {
          Matrix a = adjugate(phi.eval(xi) - w * Matrix::Identity(kk, kk));
          score = std::min(score, std::abs(a(i, j)));
        }
        if (score > best) {
          best = score;
          bi = i;
          bj = j;
        }
      }
    }
  }
  auto h = [&phi, bi, bj, kk](cplx xi, cplx w) -> cplx {
    return adjugate(phi.eval(xi) - w * Matrix::Identity(kk, kk))(bi, bj);
  };
  // symmetric product over the sheets: a single-valued function of xi
  CFn bigH = [&phi, &h](cplx xi) {
    cplx prod = 1.0;
    for (cplx w : phi.eigenvalues(xi)) prod *= h(xi, w);
    return prod;
  };

  int degree = 0;

  // poles of the section: the k curve points over each pole of the field
  for (const auto& [p, ord] : phi.poles()) {
    double radius = 1e-3;
    std::vector<int> winds = sheet_windings(phi, p, radius, 1, h);
    int sum = 0;
    for (int wv : winds) sum += wv;
    if (sum != winding_on_circle(bigH, p, radius)) {
      throw numerical_error("eigenline_degree: sheet-winding sum mismatch at a pole");
    }
    degree += sum;
  }

  // zeros of the section, located through the symmetric product
  std::vector<PoleSpec> hpoles;
  for (const auto& [p, ord] : phi.poles()) {
    for (cplx t : translates_in_region(p, lat, domain_, -1e-7)) {
      int measured = 0;
      for (double r : {1.1e-3, 6e-4, 1.9e-3}) {
        try {
          measured = measure_pole_order(bigH, t, r);
          break;
        } catch (const contour_error&) {
        }
      }
      if (measured <= 0) throw numerical_error("eigenline_degree: H pole measurement failed");
      hpoles.push_back({t, measured});
    }
  }
  ZeroFindOptions opts;
  opts.refine_size = 0.05;
  auto zeros = find_zeros(bigH, nullptr, domain_, hpoles, opts);
  for (size_t zi = 0; zi < zeros.zeros.size(); ++zi) {
    cplx z = zeros.zeros[zi];
    double near_branch = 1e300;
    for (cplx b : branch_.pi1) near_branch = std::min(near_branch, lattice_distance(z, b, lat));

    if (near_branch > 1e-4) {
      double radius = std::min(1e-3, 0.2 * near_branch);
      std::vector<int> winds = sheet_windings(phi, z, radius, 1, h);
      int sum = 0;
      for (int wv : winds) sum += wv;
      if (sum != winding_on_circle(bigH, z, radius)) {
        throw numerical_error("eigenline_degree: sheet-winding sum mismatch at a zero");
      }
      degree += sum;
      continue;
    }

    // zero at a simple branch point: one double loop closes the colliding
    // pair (counted once in the local coordinate), spectators close twice
    double radius = 5e-4;
    SheetTracks tr = track_sheets(phi, z, radius, 2);
    int mid = tr.steps / 2;
    bool pair_done = false;
    for (int l = 0; l < kk; ++l) {
      bool swapped = std::abs(tr.w[l][mid] - tr.w[l][0]) >
                     1e-6 * (std::abs(tr.w[l][0]) + 1.0);
      std::vector<cplx> vals(tr.xi.size());
      for (size_t j = 0; j < tr.xi.size(); ++j) vals[j] = h(tr.xi[j], tr.w[l][j]);
      double wind;
      if (!sampled_winding(vals, &wind)) {
        throw numerical_error("eigenline_degree: branch-point winding unresolved");
      }
      int iw = round_strict(wind, "eigenline_degree");
      if (swapped) {
        if (!pair_done) {
          degree += iw;  // order in the local two-sheet coordinate
          pair_done = true;
        }
      } else {
        if (iw % 2 != 0) {
          throw numerical_error("eigenline_degree: spectator winding not even");
        }
        degree += iw / 2;
      }
    }
  }

  return degree;
}

nlohmann::ordered_json SpectralCurve::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k();
  j["tau"] = {lattice()->tau.real(), lattice()->tau.imag()};
  j["xi0"] = {phi_->xi0().z.real(), phi_->xi0().z.imag()};
  nlohmann::ordered_json b1 = nlohmann::ordered_json::array();
  for (cplx xi : branch_.pi1) b1.push_back({xi.real(), xi.imag()});
  j["branch_pi1"] = b1;
  nlohmann::ordered_json b2 = nlohmann::ordered_json::array();
  for (cplx w : branch_.pi2_finite) b2.push_back({w.real(), w.imag()});
  j["branch_pi2"] = b2;
  j["branch_pi2_infinity"] = branch_.pi2_infinity;
  j["genus"] = genus_;
  j["homology"] = {k(), 2};
  j["smooth"] = smooth_;
  return j;
}

std::string SpectralCurve::sample_csv(int n_base) const {
  std::ostringstream out;
  out << "xi_re,xi_im,w_re,w_im,sheet\n";
  out.precision(17);
  const Lattice& lat = *lattice();
  for (int a = 0; a < n_base; ++a) {
    for (int b = 0; b < n_base; ++b) {
      cplx xi = domain_.point((a + 0.5) / n_base, (b + 0.5) / n_base);
      bool near_pole = false;
      for (const auto& [p, ord] : phi_->poles()) {
        if (lattice_distance(xi, p, lat) < 5e-3) near_pole = true;
      }
      if (near_pole) continue;
      auto ev = phi_->eigenvalues(xi);
      for (size_t l = 0; l < ev.size(); ++l) {
        out << xi.real() << "," << xi.imag() << "," << ev[l].real() << "," << ev[l].imag() << ","
            << l << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace hsk
