#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace fradeco {

/// Deterministic random source. Distributions are hand-rolled on top of
/// std::mt19937_64 so identical seeds give identical streams on every
/// platform (the standard pins the engine output but not the library
/// distributions).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in {0, ..., n-1}.
    int uniform_int(int n);

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

    /// Independent stream derived from this generator's seed.
    Rng spawn(std::uint64_t stream) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

/// splitmix64 step; used to derive per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Eigen::VectorXd random_unit_vector(int n, Rng& rng);

/// Haar-ish random rotation from the QR decomposition of a Gaussian matrix,
/// sign-fixed so det = +1.
Eigen::MatrixXd random_rotation(int n, Rng& rng);

}  // namespace fradeco
