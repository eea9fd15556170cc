#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace cpfol {

using Cx = std::complex<double>;

// Deterministic pseudo-random source.  All randomized code paths
// (test case generation, trace direction jitter) draw from this so a
// fixed seed reproduces byte-identical results on any platform.
// splitmix64, constants from Steele/Lea/Flood.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    Cx complex_in_box(double half_width) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

    Cx unit_complex() {
        const double th = uniform(0.0, 6.283185307179586476925286766559);
        return {std::cos(th), std::sin(th)};
    }

  private:
    std::uint64_t state_;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads.  Work is split by
// index block, so results written into index i of a pre-sized buffer
// are identical no matter how many threads run.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string fmt17(Cx z) {
    std::string s = fmt17(z.real());
    double im = z.imag();
    if (im == 0.0) im = 0.0; // canonicalize -0
    if (im >= 0.0 || im != im) {
        s += "+" + fmt17(im) + "i";
    } else {
        s += fmt17(im) + "i";
    }
    return s;
}

} // namespace cpfol
