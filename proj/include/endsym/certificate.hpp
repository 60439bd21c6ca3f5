#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endsym/homeo_expr.hpp"

namespace endsym {

/// Conjugator entry: a definition name, possibly inverted. A list
/// [c1, ..., ck] stands for c1 ∘ ... ∘ ck.
struct ConjugatorRef {
  std::string ref;
  bool inverse = false;
  bool operator==(const ConjugatorRef&) const = default;
};

/// c ∘ generator ∘ c^-1 with generator tau or sigma.
struct WordElement {
  std::string generator;
  std::vector<ConjugatorRef> conjugator;
  bool operator==(const WordElement&) const = default;
};

/// One half-space supported factor k = c ∘ [hat, φ^-1] ∘ c^-1.
struct FactorRecord {
  Region support;
  std::string factor;
  std::string hat;
  std::vector<ConjugatorRef> conjugator;
};

struct Counts {
  std::size_t commutators = 0;
  std::size_t translations = 0;
  std::size_t involutions = 0;
  bool operator==(const Counts&) const = default;
};

inline constexpr Counts kFactorBounds{3, 6, 12};

struct Certificate {
  Descriptor descriptor;
  std::string target;
  Json definitions = Json::object();
  std::vector<WordElement> word;  // target = word[0] ∘ word[1] ∘ ...
  std::vector<FactorRecord> factors;
  Counts counts;
  std::size_t verified_depth = 0;
  bool pass = false;
  std::optional<std::string> disagreement;  // rendered cell address
};

inline constexpr const char* kCertificateFormat = "cert-v1";

Json to_json(const Certificate& c);
/// Throws ExprError on malformed input.
Certificate certificate_from_json(const Json& j);

struct Verification {
  bool pass = false;
  std::string reason;
  std::optional<std::string> disagreement;
};

/// Rebuilds every definition from scratch and checks counts, bounds and
/// that the word recomposes to the target at `depth`.
Verification verify_certificate(const Certificate& c, std::size_t depth);

Homeo word_element(ExprContext& ctx, const WordElement& w);
Homeo word_product(ExprContext& ctx, const std::vector<WordElement>& word);
/// Counts implied by the word and factor list.
Counts implied_counts(const Certificate& c);

}  // namespace endsym
