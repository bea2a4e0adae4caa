#ifndef HSK_ERRORS_HPP
#define HSK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hsk {

// Bad input values (wrong half-plane, nonpositive radius, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested at (or too close to) a pole.
struct pole_error : std::runtime_error {
  explicit pole_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural constraint on constructed data failed (residue sums, ranks, ...).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration or quadrature failed to converge; carries diagnostics.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Contour placement failed after the retry budget.
struct contour_error : numerical_error {
  explicit contour_error(const std::string& msg) : numerical_error(msg) {}
};

// A quantity the theory pins down exactly came out wrong (sheet counts, ...).
struct invariant_violation : std::runtime_error {
  explicit invariant_violation(const std::string& msg) : std::runtime_error(msg) {}
};

// Restriction-type classification fell inside the ambiguity band.
struct classification_error : std::runtime_error {
  explicit classification_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hsk

#endif
