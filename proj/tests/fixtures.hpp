#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ncclab/network.hpp"

namespace ncclab::fixtures {

// s1=0, s2=1, m1=2, m2=3, t1=4, t2=5; pairs (s1,t1), (s2,t2).
inline Network butterfly(bool with_bottleneck = true) {
  Network net(6, true);
  net.add_edge(0, 2, 1.0);
  net.add_edge(1, 2, 1.0);
  if (with_bottleneck) net.add_edge(2, 3, 1.0);
  net.add_edge(3, 4, 1.0);
  net.add_edge(3, 5, 1.0);
  net.add_edge(0, 5, 1.0);
  net.add_edge(1, 4, 1.0);
  net.add_pair(0, 4);
  net.add_pair(1, 5);
  return net;
}

inline Network path(std::vector<double> caps) {
  Network net(caps.size() + 1, true);
  for (std::size_t i = 0; i < caps.size(); ++i) net.add_edge(i, i + 1, caps[i]);
  net.add_pair(0, caps.size());
  return net;
}

// Random DAG: edges only from lower to higher ids, integer capacities 1..4.
inline Network random_dag(std::size_t vertices, std::size_t edges, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Network net(vertices, true);
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  std::uniform_int_distribution<int> cap(1, 4);
  while (net.edge_count() < edges) {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    net.add_edge(a, b, cap(rng));
  }
  while (net.pair_count() < pairs) {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    net.add_pair(a, b);
  }
  return net;
}

}  // namespace ncclab::fixtures
