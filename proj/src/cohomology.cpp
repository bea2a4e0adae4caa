#include "hsk/cohomology.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw numerical_error("Rational: integer overflow");
  }
  return r;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_mul(num, o.den) + checked_mul(o.num, den), checked_mul(den, o.den));
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(checked_mul(num, o.den) - checked_mul(o.num, den), checked_mul(den, o.den));
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string CohMonomial::str() const {
  static const char* names[4] = {"t", "t^", "p", "s"};
  std::string out;
  if (pi_exp) out += "pi";
  for (int b = 0; b < 4; ++b) {
    if (bits & (1u << b)) {
      if (!out.empty()) out += "*";
      out += names[b];
    }
  }
  return out;
}

RingElement::RingElement(Rational c) {
  if (!c.is_zero()) coeffs_[CohMonomial{}] = c;
}

RingElement RingElement::generator(char which) {
  RingElement e;
  CohMonomial m;
  switch (which) {
    case 't': m.bits = 1; break;
    case 'h': m.bits = 2; break;
    case 'p': m.bits = 4; break;
    case 's': m.bits = 8; break;
    case 'i': m.pi_exp = 1; break;
    default: throw validation_error("RingElement: unknown generator");
  }
  e.coeffs_[m] = Rational(1);
  return e;
}

void RingElement::add_term(CohMonomial m, Rational c) {
  // rewrite pi^2 -> 2 t t^ until the exponent is 0 or 1
  while (m.pi_exp >= 2) {
    m.pi_exp -= 2;
    if (m.bits & 1 || m.bits & 2) return;  // t^2 = 0 or t^^2 = 0
    m.bits |= 3;
    c = c * Rational(2);
  }
  if (c.is_zero()) return;
  auto it = coeffs_.find(m);
  if (it == coeffs_.end()) {
    coeffs_[m] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

RingElement RingElement::operator+(const RingElement& o) const {
  RingElement r = *this;
  for (const auto& [m, c] : o.coeffs_) r.add_term(m, c);
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
  RingElement r = *this;
  for (const auto& [m, c] : o.coeffs_) r.add_term(m, Rational(0) - c);
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  RingElement r;
  for (const auto& [m1, c1] : coeffs_) {
    for (const auto& [m2, c2] : o.coeffs_) {
      if (m1.bits & m2.bits) continue;  // a square-zero generator repeats
      CohMonomial m;
      m.bits = m1.bits | m2.bits;
      m.pi_exp = static_cast<std::uint8_t>(m1.pi_exp + m2.pi_exp);
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

RingElement RingElement::operator*(const Rational& c) const {
  RingElement r;
  for (const auto& [m, cc] : coeffs_) r.add_term(m, cc * c);
  return r;
}

RingElement RingElement::integrate(const std::string& generators) const {
  std::uint8_t mask = 0;
  for (char g : generators) {
    switch (g) {
      case 't': mask |= 1; break;
      case 'h': mask |= 2; break;
      case 'p': mask |= 4; break;
      case 's': mask |= 8; break;
      case ' ': break;
      default: throw validation_error("integrate: unknown generator");
    }
  }
  RingElement r;
  for (const auto& [m, c] : coeffs_) {
    if ((m.bits & mask) != mask) continue;
    CohMonomial out = m;
    out.bits = static_cast<std::uint8_t>(m.bits & ~mask);
    // pi has odd Kunneth legs in the torus-like factors; a leftover pi paired
    // with the top class of such a factor integrates to zero.
    if (out.pi_exp > 0 && (mask & 0b1011)) continue;
    r.add_term(out, c);
  }
  return r;
}

Rational RingElement::coefficient(const CohMonomial& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::string RingElement::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : coeffs_) {
    std::string mono = m.str();
    std::string coef = c.str();
    bool neg = coef[0] == '-';
    if (neg) coef = coef.substr(1);
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mono.empty()) {
      out += coef;
    } else if (coef == "1") {
      out += mono;
    } else {
      out += coef + " " + mono;
    }
  }
  return out;
}

namespace {

// recursive-descent parser: expr := term (('+'|'-') term)*,
// term := factor ('*'? factor)*, factor := atom ('^' int)?,
// atom := number | generator | '(' expr ')' | '-' atom
struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& src) : s(src) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++i;
      return true;
    }
    return false;
  }

  RingElement parse_expr() {
    RingElement e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = e + parse_term();
      } else if (eat('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  RingElement parse_term() {
    RingElement e = parse_factor();
    for (;;) {
      skip();
      if (eat('*')) {
        e = e * parse_factor();
      } else if (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
        e = e * parse_factor();  // juxtaposition
      } else {
        return e;
      }
    }
  }

  RingElement parse_factor() {
    RingElement e = parse_atom();
    skip();
    if (eat('^')) {
      skip();
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw validation_error("ring_eval: exponent expected");
      int n = std::atoi(s.substr(i, j - i).c_str());
      i = j;
      RingElement r{Rational(1)};
      for (int c = 0; c < n; ++c) r = r * e;
      return r;
    }
    return e;
  }

  RingElement parse_atom() {
    skip();
    if (i >= s.size()) throw validation_error("ring_eval: unexpected end of expression");
    if (eat('-')) return RingElement(Rational(-1)) * parse_atom();
    if (eat('(')) {
      RingElement e = parse_expr();
      if (!eat(')')) throw validation_error("ring_eval: missing ')'");
      return e;
    }
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      long long num = std::atoll(s.substr(i, j - i).c_str());
      i = j;
      if (eat('/')) {
        skip();
        size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw validation_error("ring_eval: denominator expected");
        long long den = std::atoll(s.substr(i, k - i).c_str());
        i = k;
        return RingElement(Rational(num, den));
      }
      return RingElement(Rational(num));
    }
    // generator names: t, th (or t^), p, s, pi
    if (c == 'p' && i + 1 < s.size() && s[i + 1] == 'i') {
      i += 2;
      return RingElement::generator('i');
    }
    if (c == 't' && i + 1 < s.size() && (s[i + 1] == 'h' || s[i + 1] == '^')) {
      i += 2;
      return RingElement::generator('h');
    }
    if (c == 't' || c == 'p' || c == 's') {
      ++i;
      return RingElement::generator(c);
    }
    throw validation_error(std::string("ring_eval: unknown generator at '") + c + "'");
  }
};

RingElement gen(char c) { return RingElement::generator(c); }
RingElement scalar(long long n) { return RingElement(Rational(n)); }

}  // namespace

RingElement ring_eval(const std::string& expression) {
  Parser p(expression);
  RingElement e = p.parse_expr();
  p.skip();
  if (p.i != expression.size()) throw validation_error("ring_eval: trailing input");
  return e;
}

// ch(V) = -(2 + 2 c1(P) + c1(P)^2 - c2(E)) (1 + p) / [T x P1]; the leading
// minus reflects that the bundle is carved out of adjoint null spaces.
RingElement scenario_ch_v(long long k) {
  RingElement pi = gen('i'), p = gen('p'), t = gen('t');
  RingElement integrand =
      (scalar(2) + pi * Rational(2) + pi * pi - t * p * Rational(k)) * (scalar(1) + p);
  return (scalar(0) - integrand).integrate("tp");
}

// ch of the inverse-side extension: (c1(P^) - c1(V) + c1(P^) p - (k/2) c1(P)^2 p) / [T^],
// with c1(P^) = 0 and c1(V) = -2 t^.
RingElement scenario_ch_e_check(long long k) {
  RingElement pi = gen('i'), p = gen('p'), th = gen('h');
  RingElement c1_ptarget = scalar(0);
  RingElement c1_v = scalar(0) - th * Rational(2);
  RingElement integrand =
      c1_ptarget - c1_v + c1_ptarget * p - pi * pi * p * Rational(k, 2);
  return integrand.integrate("h");
}

// deg of the fiberwise index bundle: (2 - k t (2s)) (1 + pi + (1/2)(2t)(k s)) / [T x S]
RingElement scenario_deg_i(long long k) {
  RingElement pi = gen('i'), t = gen('t'), s = gen('s');
  RingElement integrand = (scalar(2) - t * s * Rational(2 * k)) *
                          (scalar(1) + pi + t * s * Rational(k));
  return integrand.integrate("ts");
}

// c1 of the index bundle of the fiberwise Dolbeault family:
// ch(E) td(K_T^{-1}) / [T], then / [P1];  equals -c2(E) integrated = -k.
RingElement scenario_index_c1(long long k) {
  RingElement p = gen('p'), t = gen('t');
  RingElement ch_e = scalar(2) - t * p * Rational(k);
  return ch_e.integrate("t").integrate("p");
}

long long degree_of_v(long long k) {
  RingElement chv = scenario_ch_v(k);
  CohMonomial th;
  th.bits = 2;
  Rational d = chv.coefficient(th);
  if (!d.is_integer()) throw invariant_violation("degree_of_v: non-integer degree");
  return d.num;
}

long long rank_of_v(long long k) {
  Rational r = scenario_ch_v(k).scalar_part();
  if (!r.is_integer()) throw invariant_violation("rank_of_v: non-integer rank");
  return r.num;
}

}  // namespace hsk
