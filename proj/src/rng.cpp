#include "rs/rng.hpp"

#include <cmath>

#include "rs/linalg.hpp"

namespace rs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 kept away from 0.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0x1.0p-60);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Eigen::MatrixXcd gaussian_matrix(int rows, int cols, Rng& rng) {
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
    return g;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    return qr_q_positive(gaussian_matrix(n, n, rng));
}

}  // namespace rs
