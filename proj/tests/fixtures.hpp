#pragma once

#include "fbl/building.hpp"
#include "fbl/graph_of_groups.hpp"

#include <map>
#include <memory>

namespace fixtures {

enum class Family { A2, C2 };

struct Case {
  fbl::BuildingData building;
  fbl::GroupHandle group;
  std::shared_ptr<const fbl::LeviData> levi;
};

/// Built once per (family, q) and shared across tests.
inline const Case& get(Family f, std::uint32_t q) {
  static std::map<std::pair<Family, std::uint32_t>, Case> cache;
  auto it = cache.find({f, q});
  if (it != cache.end()) return it->second;
  Case c;
  c.building = f == Family::A2 ? fbl::build_projective_plane(q) : fbl::build_symplectic_quadrangle(q);
  c.group = fbl::generate_group(c.building.generators, c.building.graph.vertex_count(), fbl::kDefaultGroupCap, q);
  const auto ray = fbl::quotient_graph_of_groups(c.building.graph, c.group, 0);
  c.levi = std::make_shared<const fbl::LeviData>(fbl::levi_data(ray, q));
  return cache.emplace(std::make_pair(f, q), std::move(c)).first->second;
}

} // namespace fixtures
