#include "radolab/rng.hpp"

#include "radolab/error.hpp"

namespace radolab {

BernoulliThreshold::BernoulliThreshold(const Rational& p) : p_(p) {
  if (p < 0 || p > 1) throw Error(Errc::invalid_argument, "probability " + to_string(p) + " outside [0,1]");
  const Integer two64 = Integer(1) << 64;
  const Integer scaled = numerator(p) * two64;
  Integer t = scaled / denominator(p);
  if (t * denominator(p) != scaled) t += 1;
  threshold_ = static_cast<unsigned __int128>((t >> 64).convert_to<std::uint64_t>()) << 64 |
               static_cast<unsigned __int128>((t & Integer(~std::uint64_t{0})).convert_to<std::uint64_t>());
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(rng);
}

}  // namespace radolab
