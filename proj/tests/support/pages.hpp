#pragma once

#include <string>
#include <vector>

#include <rfm/construct.hpp>

#include "generators.hpp"

namespace rfm::testing {

/// Connected page: n0 boundary circles, `extra_pairs` random split/merge pairs,
/// then every remaining circle merged into one and capped.
inline MorsePage connected_page(Rng& rng, int n0, int extra_pairs) {
  MorsePage m = make_page(n0, {});
  std::vector<std::string> live = m.boundary;
  int fresh = 0;
  auto name = [&] { return "c" + std::to_string(fresh++); };
  auto take = [&] {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(live.size()) - 1));
    auto c = live[i];
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    return c;
  };
  for (int i = 0; i < extra_pairs; ++i) {
    const auto c = take();
    const auto a = name(), b = name();
    m.events.push_back(MorseEvent::split(c, a, b));
    live.push_back(a);
    live.push_back(b);
    const auto x = take(), y = take();
    const auto z = name();
    m.events.push_back(MorseEvent::merge(x, y, z));
    live.push_back(z);
  }
  while (live.size() > 1) {
    const auto x = take(), y = take();
    const auto z = name();
    m.events.push_back(MorseEvent::merge(x, y, z));
    live.push_back(z);
  }
  m.events.push_back(MorseEvent::death(live.front()));
  return m;
}

}  // namespace rfm::testing
