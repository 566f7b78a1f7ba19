#include "imconf/rng.hpp"

#include "imconf/errors.hpp"

namespace imconf {

void MCConfig::validate() const {
  if (reps < 1) throw ParameterError("MCConfig: reps must be >= 1");
}

}  // namespace imconf
