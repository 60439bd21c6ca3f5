// Serial vs OpenMP depth-d cell relation on fresh (unmemoized) maps.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "endsym/homeo_expr.hpp"
#include "endsym/random_homeo.hpp"
#include "endsym/relation.hpp"

using namespace endsym;

namespace {

using Clock = std::chrono::steady_clock;

Homeo fresh(ExprContext& ctx, const Json& g, const Json& f) {
  return ctx.eval(comp_expr({generator_expr("phi"), g, hat_expr(f)}));
}

template <class F>
double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t max_depth = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 11;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%-10s %5s %8s %12s %12s %8s\n", "space", "depth", "cells", "serial_ms", "openmp_ms", "speedup");
  for (const char* text : {"cantor", "cantor[g]", "cseq(pt)"}) {
    const auto sf = StandardForm::build(canonicalize(parse_descriptor(text)));
    ExprContext ctx(sf);
    const AddressModel& m = *sf->model();
    const Json g = perm_expr(m, random_cell_permutation(m, 7));
    const Json f = perm_expr(m, random_supported_permutation(m, sf->chain(0), 7));
    // warm the shared chain caches
    cell_relation_serial(*fresh(ctx, g, f), max_depth);
    for (std::size_t d = 6; d <= max_depth; ++d) {
      double serial = 0, parallel = 0;
      std::size_t cells = 0;
      for (int r = 0; r < reps; ++r) {
        const Homeo a = fresh(ctx, g, f), b = fresh(ctx, g, f);
        CellRelation x, y;
        // alternate the order so neither side always runs on a cold heap
        if (r % 2 == 0) {
          serial += time_ms([&] { x = cell_relation_serial(*a, d); });
          parallel += time_ms([&] { y = cell_relation(*b, d); });
        } else {
          parallel += time_ms([&] { y = cell_relation(*b, d); });
          serial += time_ms([&] { x = cell_relation_serial(*a, d); });
        }
        if (x != y) {
          std::fprintf(stderr, "relations differ for %s at depth %zu\n", text, d);
          return 1;
        }
        cells = x.size();
      }
      std::printf("%-10s %5zu %8zu %12.2f %12.2f %8.2f\n", text, d, cells, serial / reps, parallel / reps,
                  serial / parallel);
    }
  }
}
