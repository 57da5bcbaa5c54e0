#include "tdsharp/random.hpp"

namespace tdsharp {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw InternalError("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

Scalar random_scalar(const Field& field, Rng& rng) {
  std::vector<Scalar> coords;
  const Field base = field.prime_subfield();
  for (std::size_t i = 0; i < field.degree(); ++i) {
    if (field.is_finite())
      coords.push_back(base.from_int(static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(field.characteristic())))));
    else
      coords.push_back(base.from_int(static_cast<long>(uniform_below(rng, 7)) - 3));
  }
  return field.from_coordinates(coords);
}

}  // namespace tdsharp
