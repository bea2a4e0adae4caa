#include "hsk/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

cplx horner(const std::vector<cplx>& c, cplx w) {
  cplx v = 0.0;
  for (size_t j = c.size(); j-- > 0;) v = v * w + c[j];
  return v;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
  // strip negligible leading coefficients, then companion matrix
  double scale = 0.0;
  for (cplx v : c) scale = std::max(scale, std::abs(v));
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && std::abs(c[deg]) < 1e-12 * scale) --deg;
  if (deg <= 0) return {};
  Matrix comp = Matrix::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Matrix> es(comp);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

// interior fiber points for a symmetric curve; y must agree on both points
cplx quotient_coordinate(const SpectralCurve& curve, cplx w) {
  auto fiber = curve.fiber_over_w(w);
  const Lattice& lat = *curve.lattice();
  cplx y1 = weierstrass_p(fiber[0].z, lat);
  cplx y2 = weierstrass_p(fiber[1].z, lat);
  if (std::abs(y1 - y2) > 1e-8 * (1.0 + std::abs(y1))) {
    throw numerical_error(
        "extract_map: the two fiber points give different quotient coordinates "
        "(curve not symmetric?)");
  }
  return 0.5 * (y1 + y2);
}

}  // namespace

RationalMap::RationalMap(std::vector<cplx> num, std::vector<cplx> den, LatticePtr lattice,
                         cplx xi0)
    : num_(std::move(num)), den_(std::move(den)), lattice_(std::move(lattice)), xi0_(xi0) {
  if (num_.size() != den_.size() || num_.empty()) {
    throw validation_error("RationalMap: numerator and denominator sizes must match");
  }
  k_ = static_cast<int>(num_.size()) - 1;
  normalize();
}

void RationalMap::normalize() {
  gauge_index_ = 0;
  for (size_t i = 1; i < den_.size(); ++i) {
    if (std::abs(den_[i]) > std::abs(den_[gauge_index_])) gauge_index_ = static_cast<int>(i);
  }
  cplx g = den_[gauge_index_];
  if (std::abs(g) == 0.0) throw validation_error("RationalMap: denominator vanishes identically");
  for (auto& v : num_) v /= g;
  for (auto& v : den_) v /= g;

  // degree must be exactly k after normalization
  double scale = 0.0;
  for (cplx v : num_) scale = std::max(scale, std::abs(v));
  for (cplx v : den_) scale = std::max(scale, std::abs(v));
  if (std::abs(num_[k_]) < 1e-10 * scale && std::abs(den_[k_]) < 1e-10 * scale) {
    throw validation_error("RationalMap: degree dropped below k");
  }

  // no common roots: resultant-by-roots test
  auto rn = poly_roots(num_), rd = poly_roots(den_);
  for (cplx a : rn) {
    for (cplx b : rd) {
      if (std::abs(a - b) < 1e-10 * (1.0 + std::abs(a))) {
        throw validation_error("RationalMap: numerator and denominator share a root");
      }
    }
  }
}

ProjectiveValue RationalMap::eval(cplx w) const {
  cplx n = horner(num_, w), d = horner(den_, w);
  double scale = std::abs(n) + std::abs(d);
  if (std::abs(d) < 1e-14 * scale) {
    if (std::abs(n) < 1e-14 * scale) {
      throw invariant_violation("RationalMap::eval: 0/0 (common root)");
    }
    return {cplx(0.0), true};
  }
  return {n / d, false};
}

ProjectiveValue RationalMap::at_infinity() const {
  double scale = 0.0;
  for (cplx v : num_) scale = std::max(scale, std::abs(v));
  for (cplx v : den_) scale = std::max(scale, std::abs(v));
  if (std::abs(den_[k_]) < 1e-10 * scale) return {cplx(0.0), true};
  return {num_[k_] / den_[k_], false};
}

std::vector<cplx> RationalMap::free_parameters() const {
  std::vector<cplx> p;
  for (int i = 0; i <= k_; ++i) p.push_back(num_[i]);
  for (int i = 0; i <= k_; ++i) {
    if (i != gauge_index_) p.push_back(den_[i]);
  }
  return p;
}

RationalMap RationalMap::with_parameters(const std::vector<cplx>& params) const {
  if (static_cast<int>(params.size()) != 2 * k_ + 1) {
    throw validation_error("with_parameters: expected 2k+1 parameters");
  }
  std::vector<cplx> num(k_ + 1), den(k_ + 1);
  int at = 0;
  for (int i = 0; i <= k_; ++i) num[i] = params[at++];
  for (int i = 0; i <= k_; ++i) den[i] = (i == gauge_index_) ? cplx(1.0) : params[at++];
  RationalMap m;
  m.k_ = k_;
  m.num_ = std::move(num);
  m.den_ = std::move(den);
  m.gauge_index_ = gauge_index_;
  m.lattice_ = lattice_;
  m.xi0_ = xi0_;
  return m;  // deliberately not re-normalized: keeps the parameter chart fixed
}

nlohmann::ordered_json RationalMap::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k_;
  j["tau"] = {lattice_->tau.real(), lattice_->tau.imag()};
  j["xi0"] = {xi0_.real(), xi0_.imag()};
  auto dump = [](const std::vector<cplx>& c) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (cplx v : c) a.push_back({v.real(), v.imag()});
    return a;
  };
  j["num"] = dump(num_);
  j["den"] = dump(den_);
  ProjectiveValue r = at_infinity();
  if (r.infinite) {
    j["p_of_xi0"] = "inf";
  } else {
    j["p_of_xi0"] = {r.value.real(), r.value.imag()};
  }
  return j;
}

RationalMap fit_rational_map(const std::vector<cplx>& w_samples,
                             const std::vector<cplx>& y_samples, int k, LatticePtr lattice,
                             cplx xi0) {
  size_t n = w_samples.size();
  if (n != y_samples.size() || n < 2 * static_cast<size_t>(k) + 2) {
    throw validation_error("fit_rational_map: not enough samples");
  }
  Matrix a(n, 2 * k + 2);
  for (size_t r = 0; r < n; ++r) {
    cplx wp = 1.0;
    double row_scale = 1.0 + std::abs(y_samples[r]);
    for (int j = 0; j <= k; ++j) {
      a(r, j) = wp / row_scale;
      a(r, k + 1 + j) = -y_samples[r] * wp / row_scale;
      wp *= w_samples[r];
    }
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double rel = sv(2 * k + 1) / (sv(0) + 1e-300);
  if (rel > 1e-8) {
    throw numerical_error("fit_rational_map: fit residual " + std::to_string(rel) +
                          " exceeds 1e-8 (extraction error)");
  }
  Vector c = svd.matrixV().col(2 * k + 1);
  std::vector<cplx> num(c.data(), c.data() + k + 1);
  std::vector<cplx> den(c.data() + k + 1, c.data() + 2 * k + 2);
  return RationalMap(std::move(num), std::move(den), std::move(lattice), xi0);
}

RationalMap extract_map(const SpectralCurve& curve) {
  if (!curve.field().su2_symmetric()) {
    throw domain_error("extract_map: field must be symmetric");
  }
  if (!curve.smooth()) {
    throw domain_error("extract_map: curve must be smooth");
  }
  int k = curve.k();
  LatticePtr lat = curve.lattice();

  // sampling circle around the finite branch values, kept clear of them
  const auto& bd = curve.branch_data();
  cplx center = 0.0;
  for (cplx w : bd.pi2_finite) center += w;
  if (!bd.pi2_finite.empty()) center /= static_cast<double>(bd.pi2_finite.size());
  double rad = 0.5;
  for (cplx w : bd.pi2_finite) rad = std::max(rad, std::abs(w - center));
  rad *= 1.6;

  int n_fit = 4 * k + 4, n_holdout = 50;
  auto sample_at = [&](double t) -> cplx {
    cplx w = center + rad * std::exp(cplx(0.0, 2.0 * std::numbers::pi * t));
    for (cplx b : bd.pi2_finite) {
      if (std::abs(w - b) < 1e-3) w += cplx(0.0, 2e-3);
    }
    return w;
  };

  std::vector<cplx> ws, ys;
  for (int i = 0; i < n_fit; ++i) {
    cplx w = sample_at((i + 0.13) / n_fit);
    ws.push_back(w);
    ys.push_back(quotient_coordinate(curve, w));
  }
  RationalMap map = fit_rational_map(ws, ys, k, lat, curve.field().xi0().z);

  for (int i = 0; i < n_holdout; ++i) {
    cplx w = sample_at((i + 0.517) / n_holdout * 0.993);
    cplx y = quotient_coordinate(curve, w);
    ProjectiveValue r = map.eval(w);
    if (r.infinite || std::abs(r.value - y) > 1e-7 * (1.0 + std::abs(y))) {
      throw numerical_error("extract_map: holdout validation failed (extraction error)");
    }
  }
  return map;
}

std::vector<CurveSample> reconstruct_curve(const RationalMap& map, int n_samples) {
  const Lattice& lat = *map.lattice();
  std::vector<CurveSample> out;
  Parallelogram dom = fundamental_domain(lat, {cplx(0.0, 0.0)});
  for (int i = 0; i < n_samples; ++i) {
    cplx w = 1.7 * std::exp(cplx(0.0, 2.0 * std::numbers::pi * (i + 0.29) / n_samples)) +
             cplx(0.11, 0.07);
    ProjectiveValue y = map.eval(w);
    if (y.infinite) continue;

    cplx xi;
    if (std::abs(y.value) > 1e4) {
      // chart switch near the double pole: Newton from the small-argument
      // asymptote P(xi) ~ 1/xi^2
      xi = 1.0 / std::sqrt(y.value);
      bool ok = false;
      for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
        if (attempt == 1) xi = -xi;
        for (int it = 0; it < 50; ++it) {
          WeierstrassValues wv = weierstrass_eval(xi, lat);
          cplx step = (wv.wp - y.value) / wv.wp_prime;
          xi -= step;
          if (std::abs(step) < 1e-14) break;
        }
        ok = std::abs(weierstrass_p(xi, lat) - y.value) < 1e-6 * (1.0 + std::abs(y.value));
      }
      if (!ok) throw numerical_error("reconstruct_curve: P-inversion failed near the pole");
    } else {
      EllipticFunction f(map.lattice(), -y.value, {{cplx(0.0, 0.0), 2, cplx(1.0, 0.0)}});
      auto zeros = ef_zero_count(f, dom);
      if (zeros.count != 2 || zeros.zeros.empty()) {
        throw numerical_error("reconstruct_curve: P-inversion did not give two points");
      }
      xi = zeros.zeros[0];
    }
    out.push_back({w, reduce_mod_lattice(xi, lat)});
  }
  return out;
}

int param_count(int k) {
  if (k < 1) throw domain_error("param_count: k must be >= 1");
  return 2 * k + 1;
}

DeformationRank deformation_rank(const RationalMap& map) {
  const Lattice& lat = *map.lattice();
  int k = map.k();

  // features: preimages of the three finite half-period values and of inf
  auto features = [&](const RationalMap& m) {
    std::vector<cplx> f;
    for (cplx hp : {cplx(0.5, 0.0), 0.5 * lat.tau, 0.5 * (1.0 + lat.tau)}) {
      cplx e = weierstrass_p(hp, lat);
      std::vector<cplx> poly(k + 1);
      for (int j = 0; j <= k; ++j) poly[j] = m.num()[j] - e * m.den()[j];
      for (cplx r : poly_roots(poly)) f.push_back(r);
    }
    for (cplx r : poly_roots(m.den())) f.push_back(r);
    return f;
  };

  std::vector<cplx> base = features(map);
  std::vector<cplx> params = map.free_parameters();
  int np = static_cast<int>(params.size());
  double h = 1e-6;

  Matrix jac(base.size(), np);
  for (int p = 0; p < np; ++p) {
    std::vector<cplx> pp = params;
    pp[p] += h;
    std::vector<cplx> f = features(map.with_parameters(pp));
    // greedy nearest matching to the base feature list
    std::vector<bool> used(f.size(), false);
    for (size_t i = 0; i < base.size(); ++i) {
      int best = -1;
      double bd = 1e300;
      for (size_t j = 0; j < f.size(); ++j) {
        if (used[j]) continue;
        double d = std::abs(f[j] - base[i]);
        if (d < bd) {
          bd = d;
          best = static_cast<int>(j);
        }
      }
      if (best < 0) throw numerical_error("deformation_rank: feature matching failed");
      used[best] = true;
      jac(i, p) = (f[best] - base[i]) / h;
    }
  }

  Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-6 * (sv(0) + 1e-300)) ++rank;
  }
  DeformationRank out;
  out.expected = 2 * k + 1;
  out.rank = rank;
  out.full = rank == out.expected;
  return out;
}

}  // namespace hsk
