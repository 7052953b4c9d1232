#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rs {

/// Deterministic random stream. The engine (mt19937_64) and the uniform and
/// normal transforms below are pinned by this library, not delegated to
/// std::*_distribution, so a (seed, stream) pair produces bit-identical
/// sequences on every platform. Parallel code derives one substream per work
/// item; results are then independent of scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent stream derived from (seed, stream) via splitmix64.
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pair cached).
    double normal();

    /// Standard complex normal: E|z|^2 = 1.
    std::complex<double> cnormal();

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// rows x cols matrix of iid standard complex normals.
Eigen::MatrixXcd gaussian_matrix(int rows, int cols, Rng& rng);

/// Haar-distributed unitary of size n (QR of a Gaussian with positive-diagonal R).
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

}  // namespace rs
