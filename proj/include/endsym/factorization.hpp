#pragma once

#include <string>
#include <vector>

#include "endsym/certificate.hpp"

namespace endsym {

inline constexpr std::size_t kDefaultDepth = 8;

/// A factor defined in the context under `name`, identity outside `support`.
struct HalfspaceFactor {
  std::string name;
  Region support;
};

/// Writes g (the definition `target`) as a product of at most three
/// half-space supported maps, following the two-case analysis on
/// H1 = U_0 and H2 = g(U_0). Intermediate maps are added to the context.
/// Factors that agree with the identity to `depth` are left out.
std::vector<HalfspaceFactor> factor_into_halfspace_supported(ExprContext& ctx, const std::string& target,
                                                             std::size_t depth = kDefaultDepth);

/// Certificate for f supported on U_0: f = [f̂, φ^-1] as four involutions.
Certificate swindle_factor(const StandardFormPtr& sf, const Json& f, std::size_t depth = kDefaultDepth);

/// Full pipeline: half-space factors, each conjugated onto U_0 and
/// swindled. The returned certificate is already verified at `depth`.
Certificate factor_into_involutions(const StandardFormPtr& sf, const Json& g, std::size_t depth = kDefaultDepth);

}  // namespace endsym
