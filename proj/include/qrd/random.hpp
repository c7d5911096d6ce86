#pragma once

#include <cstdint>
#include <random>

#include "qrd/linalg.hpp"
#include "qrd/state.hpp"

namespace qrd {
namespace rnd {

using Engine = std::mt19937_64;

cmat ginibre(int rows, int cols, Engine& gen);

// Haar-distributed isometry: first `cols` columns of a Haar unitary.
cmat haar_isometry(int rows, int cols, Engine& gen);

cvec random_unit_vector(int dim, Engine& gen);

PureState random_pure(const std::vector<int>& dims, std::uint64_t seed);

// rank <= 0 means full rank
DensityMatrix random_density(const std::vector<int>& dims, int rank,
                             std::uint64_t seed);

}
}
