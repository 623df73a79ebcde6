#pragma once

#include "ubk/types.hpp"

#include <cstdint>
#include <random>

namespace ubk::rng {

// All randomness in the library flows through std::mt19937_64 with an
// explicit 64-bit seed, so experiments are reproducible run to run.
using Engine = std::mt19937_64;

// n x s block with i.i.d. standard complex Gaussian entries.
Matrix gaussian_block(Eigen::Index n, Eigen::Index s, Engine& eng);

// Haar-like random unitary: QR of a complex Gaussian matrix with the
// diagonal of R normalized to positive real phases.
Matrix haar_unitary(Eigen::Index n, Engine& eng);

// Uniformly distributed point in the open unit disk.
cx uniform_disk(Engine& eng);

// Uniform phase e^{i t}, t in [0, 2 pi).
cx uniform_circle(Engine& eng);

} // namespace ubk::rng
