#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "ftda/types.hpp"

namespace ftda {

// One-form term of a Randers-type metric. Valid only while ||b(p)||_beta < 1.
struct OneFormSpec {
    double beta = 2.0;  // conjugate exponent of the alpha-norm
    std::function<Vec(const Vec&)> coefficients;

    Vec at(const Vec& p) const { return coefficients(p); }
    double beta_norm(const Vec& p) const;
};

// A named, parameterized direction-dependent metric F(p, v).
//
// `value` must be positively 1-homogeneous in v and return 0 at v = 0; it is
// treated as a black box by the validators. `grad_v`, when present, is the
// closed-form dF/dv away from v = 0 (the minimax solver falls back to central
// differences without it).
class MetricSpec {
public:
    std::string name;
    int dimension = 0;
    Domain domain_constraint = Domain::AllOfRn;
    bool is_symmetric = false;
    bool is_position_independent = false;
    std::map<std::string, double> params;
    std::shared_ptr<const OneFormSpec> one_form;  // null unless Randers-type

    std::function<double(const Vec&, const Vec&)> value;
    std::function<Vec(const Vec&, const Vec&)> grad_v;

    void check_point(const Vec& p) const;
    void check_dimension(const Vec& v, const char* what) const;
    double evaluate(const Vec& p, const Vec& v) const;
    // dF/dv at (p, v), v != 0; closed form when available.
    Vec gradient_v(const Vec& p, const Vec& v) const;
};

// Built-in metrics of the library.
MetricSpec make_euclidean(int n);
MetricSpec make_burg(int n);
MetricSpec make_fisher(int n);
// F(p,v) = (sum f_i(p)|v^i|^alpha)^(1/alpha) + sum b_i(p) f_i(p)^(1/alpha) v^i
// with f_i(p) = p_i^weight_exponent and b_i(p) = scale * p_i / (1 + ||p||_beta),
// beta the conjugate exponent of alpha. The defaults (alpha 3, exponent 2,
// scale 1) are the instance used throughout the examples and plots.
MetricSpec make_alpha_randers(int n, double alpha = 3.0, double weight_exponent = 2.0,
                              double one_form_scale = 1.0);

// Closed-form information distances.
double burg_distance(const Vec& x, const Vec& y);
double fisher_distance(const Vec& x, const Vec& y);
double itakura_saito_divergence(const Vec& x, const Vec& y);

// Pointwise quasi-distance at a base point: forward F(base, y - x),
// backward F(base, x - y). d_p(p, q) is the call with base = x = p, y = q.
double pointwise_distance(const MetricSpec& metric, const Vec& base, const Vec& x,
                          const Vec& y, Orientation orientation);

// Finite-difference estimate of the fundamental tensor g_ij = 1/2 d2(F^2)/dv dv.
struct FundamentalTensorProbe {
    Vec point;
    Vec direction;
    std::vector<Vec> hessian;  // n x n, symmetrized
    double min_eigenvalue = 0.0;
    double max_asymmetry = 0.0;  // worst |g_ij - g_ji| before symmetrization
};
FundamentalTensorProbe probe_fundamental_tensor(const MetricSpec& metric, const Vec& p,
                                                const Vec& v);

struct AxiomCheck {
    bool passed = true;
    double worst = 0.0;  // worst violation magnitude seen
    Vec worst_p, worst_v;
};

struct ValidationReport {
    int samples = 0;
    AxiomCheck positivity;     // F(p,v) > 0 for v != 0
    AxiomCheck homogeneity;    // F(p, r v) = r F(p, v), r in {0.5, 2, 10}
    AxiomCheck symmetry;       // only when is_symmetric
    AxiomCheck tensor_psd;     // min eigenvalue of g_ij > -1e-7
    AxiomCheck one_form_norm;  // ||b(p)||_beta < 1 at probed p (Randers only)
    bool passed() const {
        return positivity.passed && homogeneity.passed && symmetry.passed &&
               tensor_psd.passed && one_form_norm.passed;
    }
    // Merge by worst violation (for sharded sampling).
    void merge(const ValidationReport& other);
};

ValidationReport validate_metric(const MetricSpec& metric, int samples, std::uint64_t seed);

// Per-coordinate smooth map phi with derivative; when deriv is null the
// derivative is estimated by central differences with step 1e-6*(1+|x|).
struct CoordinateMap {
    std::function<double(double)> value;
    std::function<double(double)> deriv;  // may be null
    double d(double x) const;
};

struct IsometryReport {
    int samples = 0;
    double max_relative_residual = 0.0;
    Vec worst_p, worst_v;
};

// Residual of F(p,v) = E(phi(p), dphi_p(v)) over seeded samples.
IsometryReport check_isometry(const MetricSpec& metric, const CoordinateMap& phi,
                              int samples, std::uint64_t seed);

}  // namespace ftda
