#pragma once

#include "endsym/lazy_homeo.hpp"

namespace endsym {

/// Lazily built homeomorphism U -> V (regions of the same model) with x
/// sent to y, both maximal ends of a self-similar space.
///
/// Stage n keeps shrinking cells U_n ∋ x and V_n ∋ y of depth >= n. The
/// unassigned part of U_n outside U_{n+1} is embedded cell by cell into
/// V_n minus a cell around y; symmetrically the leftover of V_n outside
/// V_{n+1} is pulled back into U_{n+1} minus a cell around x. Stages are
/// generated only as deep as the queries require. The map is the identity
/// on the common domain when U = V and x = y; as a homeomorphism of the
/// whole space it is only defined on U.
Homeo back_and_forth(ModelPtr m, Region U, EndLocus x, Region V, EndLocus y);

/// Same, with x and y the least-address maximal ends of U and V.
Homeo back_and_forth(ModelPtr m, Region U, Region V);

}  // namespace endsym
