#include "endsym/relation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

namespace endsym {

namespace {

constexpr std::size_t kMaxOverDepth = 256;

void collect(const LazyHomeo& h, Address& c, int type, std::size_t d, std::vector<Address>& out) {
  const AddressModel& m = h.model();
  const Resolution r = h.forward(c);
  if (r.exact) {
    if (r.exact->size() >= d) {
      out.push_back(m.partition_cell(*r.exact, d));
    } else {
      auto cells = m.cells_at_depth_under(*r.exact, d);
      out.insert(out.end(), cells.begin(), cells.end());
    }
    return;
  }
  if (r.bound && (r.bound->size() >= d || m.is_terminal(*r.bound))) {
    out.push_back(m.partition_cell(*r.bound, d));
    return;
  }
  const auto& kids = m.children(type);
  if (kids.empty()) throw HomeoError("terminal cell without a resolution");
  if (c.size() > d + kMaxOverDepth) throw HomeoError("query did not resolve within the depth budget");
  for (std::size_t i = 0; i < kids.size(); ++i) {
    c.push_back(static_cast<std::uint8_t>(i));
    collect(h, c, kids[i], d, out);
    c.pop_back();
  }
}

}  // namespace

std::vector<Address> image_cells(const LazyHomeo& h, const Address& c, std::size_t d) {
  std::vector<Address> out;
  Address cur = c;
  collect(h, cur, h.model().type_of(c), d, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CellRelation cell_relation_serial(const LazyHomeo& h, std::size_t d) {
  CellRelation rel;
  for (const auto& c : h.model().cells_at_depth(d)) rel.push_back(image_cells(h, c, d));
  return rel;
}

CellRelation cell_relation(const LazyHomeo& h, std::size_t d) {
  const auto cells = h.model().cells_at_depth(d);
  CellRelation rel(cells.size());
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      rel[i] = image_cells(h, cells[i], d);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return rel;
}

bool eq_to_depth_serial(const LazyHomeo& f, const LazyHomeo& g, std::size_t d) {
  for (const auto& c : f.model().cells_at_depth(d))
    if (image_cells(f, c, d) != image_cells(g, c, d)) return false;
  return true;
}

bool eq_to_depth(const LazyHomeo& f, const LazyHomeo& g, std::size_t d) {
  if (f.model_ptr() != g.model_ptr() && !(f.model().root() == g.model().root()))
    throw HomeoError("comparing maps of different models");
  if (&f == &g) return true;
  const auto cells = f.model().cells_at_depth(d);
  std::atomic<bool> same{true};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!same.load(std::memory_order_relaxed)) continue;
    try {
      if (image_cells(f, cells[i], d) != image_cells(g, cells[i], d)) same = false;
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      same = false;
    }
  }
  if (error) std::rethrow_exception(error);
  return same;
}

bool eq_to_depth(const Homeo& f, const Homeo& g, std::size_t d) { return eq_to_depth(*f, *g, d); }

std::optional<Address> first_disagreement(const LazyHomeo& f, const LazyHomeo& g, std::size_t d) {
  for (const auto& c : f.model().cells_at_depth(d))
    if (image_cells(f, c, d) != image_cells(g, c, d)) return c;
  return std::nullopt;
}

Region image_region(const LazyHomeo& h, const Region& r, const Region& within) {
  const AddressModel& m = h.model();
  std::size_t deepest = 0;
  for (const auto& c : r) deepest = std::max(deepest, c.size());
  Region out;
  Address b;
  auto rec = [&](auto&& self, int type) -> void {
    const auto place = classify(within, b);
    if (place == Overlap::outside) return;
    const Resolution res = place == Overlap::inside ? h.backward(b) : Resolution::split();
    if (const auto& hull = res.hull()) {
      const auto where = classify(r, *hull);
      if (where == Overlap::outside) return;
      if (where == Overlap::inside) {
        out.push_back(b);
        return;
      }
    }
    const auto& kids = m.children(type);
    if (kids.empty()) throw HomeoError("terminal cell without a resolution");
    if (b.size() > deepest + kMaxOverDepth) throw HomeoError("image did not resolve within the depth budget");
    for (std::size_t i = 0; i < kids.size(); ++i) {
      b.push_back(static_cast<std::uint8_t>(i));
      self(self, kids[i]);
      b.pop_back();
    }
  };
  rec(rec, 0);
  return normalize(m, std::move(out));
}

bool is_identity_outside(const LazyHomeo& h, const Region& r, std::size_t d) {
  for (const auto& c : h.model().cells_at_depth(d)) {
    if (classify(r, c) != Overlap::outside) continue;
    if (image_cells(h, c, d) != std::vector<Address>{c}) return false;
  }
  return true;
}

}  // namespace endsym
