#ifndef LOQS_PERMANENT_HPP
#define LOQS_PERMANENT_HPP

#include "loqs/types.hpp"

namespace loqs {

/// Permanent by Ryser's formula with Gray-code updates, O(2^n n).
/// n = 0 returns 1 (empty product convention). Guarded at n <= 28.
cd permanent_ryser(const Matrix& m);

/// Permanent by the explicit sum over permutations. Independent oracle;
/// guarded at n <= 10.
cd permanent_naive(const Matrix& m);

}  // namespace loqs

#endif
