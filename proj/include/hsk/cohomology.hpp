#ifndef HSK_COHOMOLOGY_HPP
#define HSK_COHOMOLOGY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hsk {

// Exact rational with small operands; throws on overflow-risky sizes.
struct Rational {
  long long num = 0, den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  std::string str() const;
};

// Monomial in the commuting generators {t, t^, p, s} (square-zero, one bit
// each) times pi^e with e in {0,1}; pi^2 rewrites to 2*t*t^.
struct CohMonomial {
  std::uint8_t bits = 0;  // bit 0: t, 1: t^ (dual torus), 2: p, 3: s
  std::uint8_t pi_exp = 0;

  bool operator<(const CohMonomial& o) const {
    return bits != o.bits ? bits < o.bits : pi_exp < o.pi_exp;
  }
  bool operator==(const CohMonomial& o) const { return bits == o.bits && pi_exp == o.pi_exp; }
  std::string str() const;
};

// Element of the graded ring Q[t, t^, p, s, pi] / (t^2, t^^2, p^2, s^2, pi^2 - 2 t t^).
class RingElement {
 public:
  RingElement() = default;
  RingElement(Rational c);  // scalar

  static RingElement generator(char which);  // 't', 'h' (t^), 'p', 's', 'i' (pi)

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(const Rational& c) const;
  bool operator==(const RingElement& o) const { return coeffs_ == o.coeffs_; }

  // Fiber integration: extract the coefficient of the product of the listed
  // generators (each of {t, t^, p, s}, no pi), removing them from monomials.
  // Terms not containing the full product integrate to zero.
  RingElement integrate(const std::string& generators) const;

  Rational coefficient(const CohMonomial& m) const;
  Rational scalar_part() const { return coefficient(CohMonomial{}); }
  bool is_zero() const { return coeffs_.empty(); }

  std::string str() const;
  const std::map<CohMonomial, Rational>& monomials() const { return coeffs_; }

 private:
  void add_term(CohMonomial m, Rational c);
  std::map<CohMonomial, Rational> coeffs_;
};

// Expression evaluator over the generators. Accepts + - * ^ ( ), integer and
// rational literals (a/b), and the generator names t, th, p, s, pi.
// Throws validation_error on malformed input or unknown generators.
RingElement ring_eval(const std::string& expression);

// The characteristic-class bookkeeping scenarios; all results exact.
RingElement scenario_ch_v(long long k);        // = k - 2 t^
RingElement scenario_ch_e_check(long long k);  // = 2 - k t p
RingElement scenario_deg_i(long long k);       // = 0
RingElement scenario_index_c1(long long k);    // = -k
long long degree_of_v(long long k);            // = -2
long long rank_of_v(long long k);              // = k

}  // namespace hsk

#endif
