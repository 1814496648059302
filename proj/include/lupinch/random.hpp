#pragma once

// Seeded generators for the randomized sweeps. Every trial draws from its
// own engine seeded by mix_seed(run_seed, trial_index), so results do not
// depend on how trials are scheduled across threads.

#include <cstdint>
#include <random>

#include "lupinch/family.hpp"
#include "lupinch/lu_inequality.hpp"

namespace lupinch {

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [lo, hi].
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

/// Unit vector orthogonal to (1, ..., 1). Mixes Gaussian draws, perturbed
/// extremal configurations and sparse two-point vectors.
std::vector<double> random_eta(Rng& rng, std::size_t n);

/// Nonnegative weights from a mix of dense, sparse, star, single-edge and
/// heavy-tailed generators.
EdgeWeights random_weights(Rng& rng, std::size_t n);

EtaWeights random_eta_weights(Rng& rng, std::size_t n);

SymMatrix random_symmetric(Rng& rng, std::size_t n);

/// Haar-ish orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
Matrix random_orthogonal(Rng& rng, std::size_t n);

/// Trace-free family, pairwise orthogonal in the Frobenius inner product,
/// with ||A_1|| = 1. Members beyond the dimension of the trace-free space
/// come out zero.
MatrixFamily random_orthogonal_family(Rng& rng, std::size_t n, std::size_t m);

}  // namespace lupinch
