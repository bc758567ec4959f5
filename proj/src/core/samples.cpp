#include "semdrift/core/samples.hpp"

#include "semdrift/core/error.hpp"

namespace semdrift::core {

void SamplePassageSet::validate() const {
  if (samples.empty()) throw ValidationError("at least one sample passage is required", "samples");
}

}  // namespace semdrift::core
