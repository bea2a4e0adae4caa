#include "hsk/higgs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

Matrix dyad_sum(const std::vector<ResidueDyad>& dyads, int k) {
  Matrix m = Matrix::Zero(k, k);
  for (const auto& d : dyads) {
    if (d.u.size() != k || d.v.size() != k) {
      throw validation_error("ResidueDyad: vector length does not match rank");
    }
    m += d.matrix();
  }
  return m;
}

void check_semisimple(const ResidueDyad& d) {
  double nu = d.u.norm(), nv = d.v.norm();
  if (nu == 0.0 || nv == 0.0) return;
  if (std::abs(d.eigenvalue()) < 1e-6 * nu * nv) {
    throw validation_error("residue dyad is nilpotent within tolerance (v^T u ~ 0)");
  }
}

}  // namespace

HiggsField build_higgs(int k, LatticePtr lattice, cplx xi0, const ResidueData& residues,
                       const Matrix& regular_part, const HiggsOptions& options) {
  if (k < 1) throw domain_error("build_higgs: rank must be >= 1");
  if (regular_part.rows() != k || regular_part.cols() != k) {
    throw validation_error("build_higgs: regular part has wrong shape");
  }
  TorusPoint p0(xi0, lattice);
  if (p0.is_identity()) {
    throw domain_error("build_higgs: asymptotic state must differ from the identity");
  }

  HiggsField f;
  f.k_ = k;
  f.lattice_ = lattice;
  f.xi0_ = p0;
  f.order_two_ = options.order_two;
  f.constants_ = regular_part;
  f.residues_ = residues;
  f.seed_ = options.seed;
  f.odd_ = options.odd;
  f.su2_symmetric_ = !options.odd.has_value();

  if (options.order_two) {
    if (!p0.is_order_two()) {
      throw validation_error("build_higgs: order-2 variant requires an order-2 xi0");
    }
    if (residues.plus.empty() || residues.plus.size() > 2 || !residues.minus.empty()) {
      throw validation_error("build_higgs: order-2 variant takes 1 or 2 dyads at xi0 only");
    }
    for (const auto& d : residues.plus) check_semisimple(d);
    f.residue_plus_ = dyad_sum(residues.plus, k);
    f.residue_minus_ = Matrix::Zero(k, k);
    // rank check is structural (<= 2 dyads); epsilon records the dominant
    // coefficient eigenvalue of the double pole
    Eigen::ComplexEigenSolver<Matrix> es(f.residue_plus_);
    cplx emax = 0.0;
    for (int i = 0; i < k; ++i) {
      if (std::abs(es.eigenvalues()(i)) > std::abs(emax)) emax = es.eigenvalues()(i);
    }
    f.epsilon_ = emax;
    return f;
  }

  if (residues.plus.size() != 1 || residues.minus.size() != 1) {
    throw validation_error("build_higgs: exactly one dyad per pole (rank <= 1)");
  }
  check_semisimple(residues.plus[0]);
  check_semisimple(residues.minus[0]);
  f.residue_plus_ = dyad_sum(residues.plus, k);
  f.residue_minus_ = dyad_sum(residues.minus, k);

  double scale = f.residue_plus_.norm() + f.residue_minus_.norm();
  if ((f.residue_plus_ + f.residue_minus_).norm() > 1e-10 * std::max(1.0, scale)) {
    throw validation_error(
        "build_higgs: entrywise residue sum over the two poles must vanish (R- = -R+)");
  }
  f.epsilon_ = residues.plus[0].eigenvalue();
  cplx eps_minus = residues.minus[0].eigenvalue();
  if (std::abs(eps_minus + f.epsilon_) > 1e-10 * std::max(1.0, std::abs(f.epsilon_))) {
    throw validation_error("build_higgs: residue eigenvalues must be (epsilon, -epsilon)");
  }
  return f;
}

HiggsField random_higgs(int k, LatticePtr lattice, cplx xi0, std::uint64_t seed,
                        const HiggsOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto draw = [&]() { return cplx(unif(rng), unif(rng)); };

  HiggsOptions opts = options;
  opts.seed = seed;

  Matrix constants(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) constants(i, j) = draw();
  }

  ResidueData rd;
  auto draw_dyad = [&]() {
    for (int attempt = 0; attempt < 64; ++attempt) {
      ResidueDyad d;
      d.u = Vector(k);
      d.v = Vector(k);
      for (int i = 0; i < k; ++i) {
        d.u(i) = draw();
        d.v(i) = draw();
      }
      if (std::abs(d.eigenvalue()) > 1e-3 * d.u.norm() * d.v.norm()) return d;
    }
    throw numerical_error("random_higgs: could not draw a semi-simple dyad");
  };

  if (options.order_two) {
    rd.plus.push_back(draw_dyad());
    rd.plus.push_back(draw_dyad());
  } else {
    ResidueDyad d = draw_dyad();
    rd.plus.push_back(d);
    ResidueDyad dm;
    dm.u = d.u;
    dm.v = -d.v;
    rd.minus.push_back(dm);
  }
  return build_higgs(k, std::move(lattice), xi0, rd, constants, opts);
}

HiggsField weierstrass_graph_field(LatticePtr lattice, cplx xi_c) {
  HiggsField f;
  f.k_ = 1;
  f.lattice_ = lattice;
  f.xi0_ = TorusPoint(xi_c, lattice);
  f.order_two_ = true;
  f.su2_symmetric_ = true;
  f.constants_ = Matrix::Zero(1, 1);
  f.residue_plus_ = Matrix::Ones(1, 1);
  f.residue_minus_ = Matrix::Zero(1, 1);
  ResidueDyad d;
  d.u = Vector::Ones(1);
  d.v = Vector::Ones(1);
  f.residues_.plus.push_back(d);
  f.epsilon_ = 1.0;
  return f;
}

Matrix HiggsField::eval(cplx xi, double pole_tol) const {
  const Lattice& lat = *lattice_;
  Matrix m = constants_;
  if (order_two_) {
    cplx d = xi - xi0_.z;
    if (std::abs(reduce_mod_lattice(d, lat)) < pole_tol) {
      throw pole_error("HiggsField::eval: at the pole xi0");
    }
    m += residue_plus_ * weierstrass_p(d, lat);
  } else {
    WeierstrassValues wm = weierstrass_eval(xi - xi0_.z, lat, pole_tol);
    WeierstrassValues wp = weierstrass_eval(xi + xi0_.z, lat, pole_tol);
    m += residue_plus_ * wm.zeta + residue_minus_ * wp.zeta;
  }
  if (odd_) {
    cplx dm = xi - xi0_.z, dp = xi + xi0_.z;
    m(odd_->i, odd_->j) +=
        odd_->delta * (weierstrass_p(dm, lat) - weierstrass_p(dp, lat));
  }
  return m;
}

Vector HiggsField::char_coeffs_at(cplx xi) const {
  // Faddeev-LeVerrier: det(wI - M) = w^k + a_1 w^{k-1} + ... + a_k
  Matrix m = eval(xi);
  Vector a(k_);
  Matrix acc = m;
  for (int j = 1; j <= k_; ++j) {
    a(j - 1) = -acc.trace() / static_cast<double>(j);
    if (j < k_) acc = m * (acc + a(j - 1) * Matrix::Identity(k_, k_));
  }
  return a;
}

cplx HiggsField::char_eval(cplx xi, cplx w) const {
  Vector a = char_coeffs_at(xi);
  cplx p = 1.0;
  for (int j = 0; j < k_; ++j) p = p * w + a(j);
  return (k_ % 2 == 0) ? p : -p;
}

std::vector<cplx> HiggsField::eigenvalues(cplx xi) const {
  Eigen::ComplexEigenSolver<Matrix> es(eval(xi));
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + k_);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

std::vector<std::pair<cplx, int>> HiggsField::poles() const {
  int base = order_two_ ? 2 : 1;
  int ord = odd_ ? 2 : base;
  if (order_two_) {
    return {{xi0_.z, std::max(base, ord)}};
  }
  return {{xi0_.z, ord}, {reduce_mod_lattice(-xi0_.z, *lattice_), ord}};
}

EllipticFunction HiggsField::entry(int i, int j) const {
  std::vector<EFTerm> terms;
  cplx xm = xi0_.z, xp = reduce_mod_lattice(-xi0_.z, *lattice_);
  if (order_two_) {
    if (std::abs(residue_plus_(i, j)) != 0.0) terms.push_back({xm, 2, residue_plus_(i, j)});
  } else {
    if (std::abs(residue_plus_(i, j)) != 0.0) terms.push_back({xm, 1, residue_plus_(i, j)});
    if (std::abs(residue_minus_(i, j)) != 0.0) terms.push_back({xp, 1, residue_minus_(i, j)});
  }
  if (odd_ && odd_->i == i && odd_->j == j) {
    terms.push_back({xm, 2, odd_->delta});
    terms.push_back({xp, 2, -odd_->delta});
  }
  return EllipticFunction(lattice_, constants_(i, j), std::move(terms));
}

namespace {

nlohmann::ordered_json cplx_json(cplx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

cplx cplx_from(const nlohmann::ordered_json& j) {
  return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

nlohmann::ordered_json vector_json(const Vector& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(cplx_json(v(i)));
  return a;
}

Vector vector_from(const nlohmann::ordered_json& j) {
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = cplx_from(j.at(i));
  return v;
}

}  // namespace

nlohmann::ordered_json HiggsField::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k_;
  j["tau"] = cplx_json(lattice_->tau);
  j["xi0"] = cplx_json(xi0_.z);
  j["epsilon"] = cplx_json(epsilon_);
  j["order_two"] = order_two_;
  j["su2_symmetric"] = su2_symmetric_;
  nlohmann::ordered_json dyads = nlohmann::ordered_json::object();
  auto dump_side = [&](const std::vector<ResidueDyad>& side) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : side) {
      arr.push_back({{"u", vector_json(d.u)}, {"v", vector_json(d.v)}});
    }
    return arr;
  };
  dyads["plus"] = dump_side(residues_.plus);
  dyads["minus"] = dump_side(residues_.minus);
  j["residues"] = dyads;
  nlohmann::ordered_json reg = nlohmann::ordered_json::array();
  for (int i = 0; i < k_; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < k_; ++c) row.push_back(cplx_json(constants_(i, c)));
    reg.push_back(row);
  }
  j["regular"] = reg;
  if (seed_) j["seed"] = *seed_;
  if (odd_) {
    j["odd_perturbation"] = {{"i", odd_->i}, {"j", odd_->j}, {"delta", cplx_json(odd_->delta)}};
  }
  return j;
}

HiggsField HiggsField::from_json(const nlohmann::ordered_json& j) {
  int k = j.at("k").get<int>();
  LatticePtr lat = lattice_invariants(cplx_from(j.at("tau")));
  ResidueData rd;
  auto load_side = [&](const nlohmann::ordered_json& arr, std::vector<ResidueDyad>& side) {
    for (const auto& d : arr) {
      side.push_back({vector_from(d.at("u")), vector_from(d.at("v"))});
    }
  };
  load_side(j.at("residues").at("plus"), rd.plus);
  load_side(j.at("residues").at("minus"), rd.minus);
  Matrix reg(k, k);
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < k; ++c) reg(i, c) = cplx_from(j.at("regular").at(i).at(c));
  }
  HiggsOptions opts;
  opts.order_two = j.value("order_two", false);
  if (j.contains("seed")) opts.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("odd_perturbation")) {
    const auto& o = j.at("odd_perturbation");
    opts.odd = OddPerturbation{o.at("i").get<int>(), o.at("j").get<int>(), cplx_from(o.at("delta"))};
  }
  return build_higgs(k, lat, cplx_from(j.at("xi0")), rd, reg, opts);
}

}  // namespace hsk
