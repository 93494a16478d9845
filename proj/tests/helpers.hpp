// Shared test utilities: a deterministic rng (stable across platforms)
// and random cochain generation.

#ifndef XMODKIT_TESTS_HELPERS_HPP_
#define XMODKIT_TESTS_HELPERS_HPP_

#include <cstdint>

#include "xmodkit/site/cochain.hpp"

namespace testutil {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

inline xmodkit::site::CentralCochain random_cochain(std::shared_ptr<const xmodkit::site::Nerve> nerve,
                                                    const xmodkit::site::CoeffGroup& cg,
                                                    std::size_t degree, Rng& rng) {
  xmodkit::site::CentralCochain c(nerve, cg, degree);
  for (std::size_t s = 0; s < c.slots(); ++s)
    c.set_slot(s, cg.sub.elements[rng.below(cg.sub.elements.size())]);
  return c;
}

}  // namespace testutil

#endif  // XMODKIT_TESTS_HELPERS_HPP_
