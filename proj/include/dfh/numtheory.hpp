#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace dfh {

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> small, big;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) big.push_back(n / d);
        }
    }
    small.insert(small.end(), big.rbegin(), big.rend());
    return small;
}

// All N with phi(N) == target. phi(N) >= sqrt(N/2), so N <= 2*target^2 + 1.
inline std::vector<unsigned long> orders_with_phi(unsigned long target) {
    std::vector<unsigned long> out;
    unsigned long bound = 2 * target * target + 2;
    for (unsigned long n = 1; n <= bound; ++n)
        if (euler_phi(n) == target) out.push_back(n);
    return out;
}

inline unsigned long ulong_lcm(unsigned long a, unsigned long b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace dfh
