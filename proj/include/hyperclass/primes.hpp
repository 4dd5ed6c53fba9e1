#pragma once

#include <vector>

#include "hyperclass/errors.hpp"

namespace hyperclass {

/// Trial division. Used where a single primality verdict is needed; bulk
/// tables come from the sieve in oracles.hpp.
inline bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Primes p with lo <= p <= hi, ascending.
inline std::vector<long> primes_between(long lo, long hi) {
    std::vector<long> out;
    for (long p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

}  // namespace hyperclass
