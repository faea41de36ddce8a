#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ftda {

using Vec = std::vector<double>;
using index_t = std::size_t;

enum class Domain { AllOfRn, PositiveOrthant };
enum class Orientation { Forward, Backward };

// Error hierarchy; what() carries the offending value where available.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& m) : std::runtime_error(m) {}
};
struct SamplingError : std::runtime_error {
    explicit SamplingError(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateGradient : std::runtime_error {
    explicit DegenerateGradient(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateNormal : std::runtime_error {
    explicit DegenerateNormal(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidFiltration : std::runtime_error {
    explicit InvalidFiltration(const std::string& m) : std::runtime_error(m) {}
};
struct VertexSetMismatch : std::runtime_error {
    explicit VertexSetMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct InfiniteMismatch : std::runtime_error {
    explicit InfiniteMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidCorrespondence : std::runtime_error {
    explicit InvalidCorrespondence(const std::string& m) : std::runtime_error(m) {}
};
struct SizeLimitExceeded : std::runtime_error {
    explicit SizeLimitExceeded(const std::string& m) : std::runtime_error(m) {}
};
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

inline double sqr(double x) { return x * x; }

inline std::string vec_to_string(const Vec& v) {
    std::string s = "(";
    for (index_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace ftda
