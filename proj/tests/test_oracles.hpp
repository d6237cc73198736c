#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "vlcbeacon/bit_vector.hpp"

namespace oracle {

// F^(x)n built literally by Kronecker products of [[1,0],[1,1]]
inline std::vector<std::vector<std::uint8_t>> kronecker_f(int n) {
    std::vector<std::vector<std::uint8_t>> m{{1}};
    for (int s = 0; s < n; ++s) {
        const std::size_t dim = m.size();
        std::vector<std::vector<std::uint8_t>> next(2 * dim,
                                                    std::vector<std::uint8_t>(2 * dim, 0));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                next[i][j] = m[i][j];              // F[0][0] = 1
                next[dim + i][j] = m[i][j];        // F[1][0] = 1
                next[dim + i][dim + j] = m[i][j];  // F[1][1] = 1
            }
        }
        m.swap(next);
    }
    return m;
}

// x = d * M over GF(2), explicit row-vector matrix multiply
inline vlcbeacon::BitVector matrix_encode(const vlcbeacon::BitVector& d,
                                          const std::vector<std::vector<std::uint8_t>>& m) {
    vlcbeacon::BitVector x(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
        std::uint8_t acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i) acc ^= d[i] & m[i][j];
        x[j] = acc;
    }
    return x;
}

// direct evaluation of the z^2 / 2z - z^2 recursion
inline std::vector<double> bhattacharyya(int block_length, double design_snr_db) {
    const double z0 = std::exp(-std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> z{z0};
    while (static_cast<int>(z.size()) < block_length) {
        std::vector<double> next;
        for (double v : z) {
            next.push_back(2.0 * v - v * v);
            next.push_back(v * v);
        }
        z.swap(next);
    }
    return z;
}

}  // namespace oracle
