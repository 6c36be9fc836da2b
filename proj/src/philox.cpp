#include "stablerep/philox.hpp"

#include <Eigen/Core>

namespace stablerep {

void fill_draw_block(const CounterStream& rng, std::uint64_t block, DrawBlock& out) {
  using Lane = Eigen::Array<double, kDrawBlock, 1>;
  alignas(64) double u[kDrawBlock];
  const std::uint64_t first = block * kDrawBlock;
  for (std::size_t i = 0; i < kDrawBlock; ++i) {
    const auto b = rng.block(first + i);
    u[i] = unit_from_words(b[0], b[1]);
    out.label_unit[i] = unit_from_words(b[2], b[3]);
  }
  Eigen::Map<Lane, Eigen::Aligned64>(out.exponential) = -(1.0 - Eigen::Map<const Lane, Eigen::Aligned64>(u)).log();
}

}  // namespace stablerep
