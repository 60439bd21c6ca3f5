#include "endsym/ordinal.hpp"

#include <cctype>

namespace endsym {

namespace {

std::shared_ptr<const Ordinal> share(Ordinal o) {
  return std::make_shared<const Ordinal>(std::move(o));
}

const std::shared_ptr<const Ordinal>& zero_exponent() {
  static const auto z = share(Ordinal{});
  return z;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back({zero_exponent(), Natural(n)});
}

Ordinal Ordinal::from_natural(const Natural& n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({zero_exponent(), n});
  return o;
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent->is_zero());
}

Natural Ordinal::finite_value() const {
  return terms_.empty() ? Natural(0) : terms_[0].coefficient;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  const auto n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = terms_[i];
    const auto& y = other.terms_[i];
    if (auto c = *x.exponent <=> *y.exponent; c != 0) return c;
    if (x.coefficient != y.coefficient)
      return x.coefficient < y.coefficient ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
  }
  return terms_.size() <=> other.terms_.size();
}

bool Ordinal::operator==(const Ordinal& other) const {
  return (*this <=> other) == 0;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = *b.terms_.front().exponent;
  Ordinal out;
  for (const auto& t : a.terms_) {
    const auto c = *t.exponent <=> lead;
    if (c > 0) {
      out.terms_.push_back(t);
    } else {
      if (c == 0) {
        out.terms_.push_back({b.terms_.front().exponent,
                              t.coefficient + b.terms_.front().coefficient});
        out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
        return out;
      }
      break;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

Ordinal successor(const Ordinal& a) { return add(a, Ordinal(1)); }

bool is_successor(const Ordinal& a) {
  return !a.is_zero() && a.terms().back().exponent->is_zero();
}

Ordinal omega_power_times(const Ordinal& a, const Natural& n) {
  Ordinal out;
  if (n > 0) out.terms_.push_back({share(a), n});
  return out;
}

Ordinal omega_power(const Ordinal& a) { return omega_power_times(a, 1); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal o = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw OrdinalParseError("ordinal syntax error at position " + std::to_string(pos_) +
                                ": " + msg,
                            pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  Natural natural() {
    if (!at_digit()) fail("expected a natural number");
    Natural n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = n * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return n;
  }

  Ordinal sum() {
    Ordinal acc = term();
    while (accept('+')) acc = add(acc, term());
    return acc;
  }

  // w-power or natural, with an optional multiplier
  Ordinal term() {
    if (at_digit()) return Ordinal::from_natural(natural());
    Ordinal base = power();
    if (accept('*')) return omega_power_times(*base.terms().front().exponent, natural());
    return base;
  }

  Ordinal power() {
    if (!accept('w')) fail("expected 'w' or a natural number");
    if (!accept('^')) return Ordinal::omega();
    return omega_power(atom());
  }

  Ordinal atom() {
    if (at_digit()) return Ordinal::from_natural(natural());
    if (accept('(')) {
      Ordinal o = sum();
      if (!accept(')')) fail("expected ')'");
      return o;
    }
    return power();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string print_exponent(const Ordinal& e) {
  if (e.is_finite()) return e.finite_value().str();
  if (e.terms().size() == 1 && e.terms()[0].coefficient == 1) return print_ordinal(e);
  return "(" + print_ordinal(e) + ")";
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return Parser(text).parse_all(); }

std::string print_ordinal(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent->is_zero()) {
      out += t.coefficient.str();
      continue;
    }
    out += 'w';
    if (!(*t.exponent == Ordinal(1))) out += "^" + print_exponent(*t.exponent);
    if (t.coefficient != 1) out += "*" + t.coefficient.str();
  }
  return out;
}

}  // namespace endsym
