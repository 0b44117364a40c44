#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "steinergap/rational.hpp"

namespace steinergap {

using Matrix = std::vector<std::vector<Rational>>;

// Exact rank by fraction-free (Bareiss) elimination over the integers after
// clearing row denominators.
std::size_t rational_rank(const Matrix& rows);

// Same value as rational_rank, computed as the maximum rank modulo enough
// 31-bit primes that their product exceeds the Hadamard bound of every
// square minor. `independent`, when given, receives row indices of a
// maximal independent subset.
std::size_t multimodular_rank(const Matrix& rows, std::vector<std::size_t>* independent = nullptr);

// A nonzero vector d with rows . d = 0, or an empty vector when the rows
// have full column rank. `cols` fixes the dimension.
std::vector<Rational> null_vector(const Matrix& rows, std::size_t cols);

bool is_prime_u64(std::uint64_t n);

}  // namespace steinergap
