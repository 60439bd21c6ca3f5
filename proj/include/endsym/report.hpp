#pragma once

#include <string>

#include "endsym/endspace.hpp"
#include "endsym/homeo_expr.hpp"
#include "endsym/standard_form.hpp"

namespace endsym {

std::string classify_text(const ClassificationReport& r);
Json classify_json(const ClassificationReport& r);

std::string rank_text(const CBAnalysis& cb);

std::string order_text(const ClassPoset& p);
/// Classes as nodes colored by marking, Hasse edges lesser -> greater.
std::string order_dot(const ClassPoset& p);

/// "none", "self-similar" or "uniformly-self-similar".
std::string selfsim_label(const Descriptor& d);

/// y, z and the cells of U_i for |i| <= window.
std::string standard_form_text(const StandardForm& sf, int window = 4);

/// The descriptor tree, one node per descriptor node.
std::string descriptor_dot(const Descriptor& d);

}  // namespace endsym
