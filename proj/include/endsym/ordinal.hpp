#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace endsym {

using Natural = boost::multiprecision::cpp_int;

/// Countable ordinal below epsilon_0 in Cantor normal form.
///
/// A value is a finite list of terms w^e * c with strictly decreasing
/// exponents and positive coefficients. The empty list is 0. Exponents are
/// ordinals themselves, so the representation is recursive; every value is
/// kept canonical, which makes structural equality ordinal equality.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> exponent;
    Natural coefficient;
  };

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor)
  static Ordinal from_natural(const Natural& n);
  static Ordinal omega();

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Value as a natural; only meaningful when is_finite().
  Natural finite_value() const;

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const;

 private:
  friend Ordinal add(const Ordinal&, const Ordinal&);
  friend Ordinal omega_power(const Ordinal&);
  friend Ordinal omega_power_times(const Ordinal&, const Natural&);
  std::vector<Term> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal successor(const Ordinal& a);
bool is_successor(const Ordinal& a);
Ordinal omega_power(const Ordinal& a);
/// w^a * n; zero when n is zero.
Ordinal omega_power_times(const Ordinal& a, const Natural& n);

class OrdinalParseError : public std::runtime_error {
 public:
  OrdinalParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: sum of terms separated by '+'. A term is a natural, `w`,
/// `w^<atom>`, optionally followed by `*<natural>`. An atom is a natural,
/// `w`, `w^<atom>` or a parenthesised ordinal. Input need not be in normal
/// form; the result is always canonical.
Ordinal parse_ordinal(std::string_view text);
std::string print_ordinal(const Ordinal& a);

}  // namespace endsym
