#ifndef PODES_CORE_GRID_HPP
#define PODES_CORE_GRID_HPP

#include <cstddef>
#include <stdexcept>

namespace podes {

/// Uniform tensor grid: interior x-nodes x_i = i*h, i = 1..N on (0,1), and
/// y-nodes y_j = j*dy, j = 0..M-1 covering [0,1] for the delay channel.
struct GridSpec {
    std::size_t N = 0;  ///< interior x-node count
    std::size_t M = 0;  ///< y-node count, including y=0 and y=1
    double h = 0.0;     ///< 1/(N+1)
    double dy = 0.0;    ///< 1/(M-1)

    double x(std::size_t i) const { return static_cast<double>(i) * h; }  // i in 1..N
    double y(std::size_t j) const { return static_cast<double>(j) * dy; } // j in 0..M-1
};

inline GridSpec build_grid(std::size_t N, std::size_t M) {
    if (N < 4) throw std::invalid_argument("grid: N must be >= 4");
    if (M < 3) throw std::invalid_argument("grid: M must be >= 3");
    GridSpec g;
    g.N = N;
    g.M = M;
    g.h = 1.0 / static_cast<double>(N + 1);
    g.dy = 1.0 / static_cast<double>(M - 1);
    return g;
}

} // namespace podes

#endif
