#include "hsk/elliptic_function.hpp"

#include <algorithm>
#include <cmath>

#include "hsk/errors.hpp"

namespace hsk {

EllipticFunction::EllipticFunction(LatticePtr lat, cplx constant, std::vector<EFTerm> terms)
    : constant_(constant), terms_(std::move(terms)), lattice_(std::move(lat)) {
  for (auto& t : terms_) {
    if (t.order < 1 || t.order > 7) {
      throw domain_error("EllipticFunction: term order out of supported range [1,7]");
    }
    t.pole = reduce_mod_lattice(t.pole, *lattice_);
  }
}

cplx EllipticFunction::residue_total() const {
  cplx s = 0.0;
  for (const auto& t : terms_) {
    if (t.order == 1) s += t.coeff;
  }
  return s;
}

void EllipticFunction::validate(double tol) const {
  double scale = 0.0;
  for (const auto& t : terms_) {
    if (t.order == 1) scale += std::abs(t.coeff);
  }
  if (std::abs(residue_total()) > tol * std::max(1.0, scale)) {
    throw validation_error("EllipticFunction: order-1 coefficients do not sum to zero");
  }
}

cplx EllipticFunction::eval(cplx u, double pole_tol) const {
  cplx s = constant_;
  for (const auto& t : terms_) {
    cplx d = u - t.pole;
    if (t.order == 1) {
      WeierstrassValues w = weierstrass_eval(d, *lattice_, pole_tol);
      s += t.coeff * w.zeta;
    } else {
      cplx derivs[6];
      cplx dr = reduce_mod_lattice(d, *lattice_);
      if (std::abs(dr) < pole_tol) {
        throw pole_error("EllipticFunction::eval: argument at a pole");
      }
      weierstrass_p_derivs(d, *lattice_, t.order - 2, derivs);
      s += t.coeff * derivs[t.order - 2];
    }
  }
  return s;
}

cplx EllipticFunction::residue_at(cplx pole, double tol) const {
  cplx s = 0.0;
  for (const auto& t : terms_) {
    if (t.order == 1 && lattice_distance(t.pole, pole, *lattice_) < tol) {
      s += t.coeff;
    }
  }
  return s;
}

EllipticFunction EllipticFunction::derivative() const {
  std::vector<EFTerm> dterms;
  dterms.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.order == 1) {
      dterms.push_back({t.pole, 2, -t.coeff});  // d/du zeta = -P
    } else {
      dterms.push_back({t.pole, t.order + 1, t.coeff});
    }
  }
  return EllipticFunction(lattice_, 0.0, std::move(dterms));
}

std::vector<std::pair<cplx, int>> EllipticFunction::poles(double coeff_tol) const {
  std::vector<std::pair<cplx, int>> out;
  for (const auto& t : terms_) {
    if (std::abs(t.coeff) <= coeff_tol) continue;
    bool merged = false;
    for (auto& [p, ord] : out) {
      if (lattice_distance(p, t.pole, *lattice_) < 1e-9) {
        ord = std::max(ord, t.order);
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(t.pole, t.order);
  }
  return out;
}

int EllipticFunction::total_pole_order(double coeff_tol) const {
  int n = 0;
  for (const auto& [p, ord] : poles(coeff_tol)) n += ord;
  return n;
}

EllipticFunction EllipticFunction::operator+(const EllipticFunction& o) const {
  std::vector<EFTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return EllipticFunction(lattice_ ? lattice_ : o.lattice_, constant_ + o.constant_, std::move(all));
}

EllipticFunction EllipticFunction::operator*(cplx s) const {
  std::vector<EFTerm> all = terms_;
  for (auto& t : all) t.coeff *= s;
  return EllipticFunction(lattice_, constant_ * s, std::move(all));
}

EllipticFunction EllipticFunction::operator+(cplx s) const {
  return EllipticFunction(lattice_, constant_ + s, terms_);
}

}  // namespace hsk
