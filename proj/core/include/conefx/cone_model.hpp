#pragma once

#include <string>
#include <vector>

#include "conefx/linalg.hpp"

namespace conefx {

// Where a generator came from: curve id (1..4 for the construction's curves,
// any positive id for control bodies, 0 when untagged) and its parameter.
struct GeneratorTag {
  int curve = 0;
  double t = 0.0;
};

// Finite generator list standing for its conic hull.
struct ConeModel {
  std::vector<RealVector> generators;
  std::vector<GeneratorTag> tags;  // empty, or one per generator
  std::string provenance;

  int dim() const {
    return generators.empty() ? 0 : static_cast<int>(generators.front().size());
  }
  std::size_t size() const { return generators.size(); }
  GeneratorTag tag(std::size_t i) const {
    return tags.empty() ? GeneratorTag{} : tags[i];
  }
};

// Throws InputError unless the model is nonempty with one shared dimension
// and finite generators.
void validate(const ConeModel& cone);

}  // namespace conefx
