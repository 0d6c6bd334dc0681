#include "loqs/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace loqs {

cd permanent_ryser(const Matrix& m) {
    const auto nr = m.rows();
    if (nr != m.cols()) throw DimensionError("permanent_ryser: matrix must be square");
    const int n = static_cast<int>(nr);
    if (n == 0) return cd(1.0, 0.0);
    if (n > 28) throw SizeGuardError("permanent_ryser: n > 28 is not tractable here");

    // Per(M) = (-1)^n sum_{S != empty} (-1)^|S| prod_i sum_{j in S} M(i,j),
    // with column subsets visited in Gray-code order so each step updates the
    // row sums by a single column.
    std::vector<cd> rowsum(n, cd(0.0, 0.0));
    cd total(0.0, 0.0);
    const std::uint64_t count = 1ULL << n;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ gray_prev;
        const int j = std::countr_zero(changed);
        const double sign_col = (gray & changed) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) rowsum[i] += sign_col * m(i, j);
        gray_prev = gray;

        cd prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        const int bits = std::popcount(gray);
        total += ((n - bits) % 2 == 0) ? prod : -prod;
    }
    return total;
}

cd permanent_naive(const Matrix& m) {
    const auto nr = m.rows();
    if (nr != m.cols()) throw DimensionError("permanent_naive: matrix must be square");
    const int n = static_cast<int>(nr);
    if (n == 0) return cd(1.0, 0.0);
    if (n > 10) throw SizeGuardError("permanent_naive: n > 10 exceeds the factorial guard");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cd total(0.0, 0.0);
    do {
        cd prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace loqs
