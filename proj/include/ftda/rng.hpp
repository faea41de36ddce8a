#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ftda/types.hpp"

namespace ftda {

// Seeded generator with platform-independent distributions (std:: distribution
// objects are implementation-defined; we need byte-identical reruns).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        while (u <= 1e-300) u = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double theta = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }

    Vec normal_vec(index_t n) {
        Vec v(n);
        for (auto& x : v) x = normal();
        return v;
    }

    // nonzero direction, Euclidean-normalized
    Vec unit_vec(index_t n) {
        for (;;) {
            Vec v = normal_vec(n);
            double s = 0;
            for (double x : v) s += x * x;
            if (s > 1e-24) {
                s = std::sqrt(s);
                for (auto& x : v) x /= s;
                return v;
            }
        }
    }

    std::uint64_t next_u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ftda
