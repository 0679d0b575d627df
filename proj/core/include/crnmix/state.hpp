#pragma once

#include <vector>

namespace crnmix {

/// A lattice state: per-species molecule counts.
using State = std::vector<long long>;

}  // namespace crnmix
