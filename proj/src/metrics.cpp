#include "ftda/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ftda/rng.hpp"

namespace ftda {

namespace {

double lp_norm(const Vec& v, double p) {
    double s = 0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

bool is_zero(const Vec& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

}  // namespace

double OneFormSpec::beta_norm(const Vec& p) const { return lp_norm(at(p), beta); }

void MetricSpec::check_point(const Vec& p) const {
    check_dimension(p, "point");
    if (domain_constraint == Domain::PositiveOrthant) {
        for (double x : p)
            if (!(x > 0.0))
                throw DomainError(name + ": point " + vec_to_string(p) +
                                  " outside the strictly positive orthant");
    }
}

void MetricSpec::check_dimension(const Vec& v, const char* what) const {
    if (static_cast<int>(v.size()) != dimension)
        throw DimensionMismatch(name + ": " + what + " has dimension " +
                                std::to_string(v.size()) + ", metric expects " +
                                std::to_string(dimension));
}

double MetricSpec::evaluate(const Vec& p, const Vec& v) const {
    check_point(p);
    check_dimension(v, "direction");
    if (is_zero(v)) return 0.0;  // F is only continuous at the null section
    return value(p, v);
}

Vec MetricSpec::gradient_v(const Vec& p, const Vec& v) const {
    if (grad_v) return grad_v(p, v);
    const index_t n = v.size();
    double vnorm = 0;
    for (double x : v) vnorm += x * x;
    const double h = 1e-6 * (1.0 + std::sqrt(vnorm));
    Vec g(n), w = v;
    for (index_t i = 0; i < n; ++i) {
        w[i] = v[i] + h;
        const double fp = value(p, w);
        w[i] = v[i] - h;
        const double fm = value(p, w);
        w[i] = v[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

MetricSpec make_euclidean(int n) {
    MetricSpec m;
    m.name = "euclidean";
    m.dimension = n;
    m.domain_constraint = Domain::AllOfRn;
    m.is_symmetric = true;
    m.is_position_independent = true;
    m.value = [](const Vec&, const Vec& v) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };
    m.grad_v = [](const Vec&, const Vec& v) {
        double s = 0;
        for (double x : v) s += x * x;
        const double f = std::sqrt(s);
        Vec g(v.size(), 0.0);
        if (f > 0)
            for (index_t i = 0; i < v.size(); ++i) g[i] = v[i] / f;
        return g;
    };
    return m;
}

MetricSpec make_burg(int n) {
    MetricSpec m;
    m.name = "burg";
    m.dimension = n;
    m.domain_constraint = Domain::PositiveOrthant;
    m.is_symmetric = true;
    m.is_position_independent = false;
    m.value = [](const Vec& p, const Vec& v) {
        double s = 0;
        for (index_t i = 0; i < v.size(); ++i) s += sqr(v[i] / p[i]);
        return std::sqrt(s);
    };
    m.grad_v = [](const Vec& p, const Vec& v) {
        double s = 0;
        for (index_t i = 0; i < v.size(); ++i) s += sqr(v[i] / p[i]);
        const double f = std::sqrt(s);
        Vec g(v.size(), 0.0);
        if (f > 0)
            for (index_t i = 0; i < v.size(); ++i) g[i] = v[i] / (sqr(p[i]) * f);
        return g;
    };
    return m;
}

MetricSpec make_fisher(int n) {
    MetricSpec m;
    m.name = "fisher";
    m.dimension = n;
    m.domain_constraint = Domain::PositiveOrthant;
    m.is_symmetric = true;
    m.is_position_independent = false;
    m.value = [](const Vec& p, const Vec& v) {
        double s = 0;
        for (index_t i = 0; i < v.size(); ++i) s += sqr(v[i] / (2.0 * std::sqrt(p[i])));
        return std::sqrt(s);
    };
    m.grad_v = [](const Vec& p, const Vec& v) {
        double s = 0;
        for (index_t i = 0; i < v.size(); ++i) s += sqr(v[i] / (2.0 * std::sqrt(p[i])));
        const double f = std::sqrt(s);
        Vec g(v.size(), 0.0);
        if (f > 0)
            for (index_t i = 0; i < v.size(); ++i) g[i] = v[i] / (4.0 * p[i] * f);
        return g;
    };
    return m;
}

MetricSpec make_alpha_randers(int n, double alpha, double weight_exponent,
                              double one_form_scale) {
    if (!(alpha > 1.0)) throw ConfigError("alpha_randers: alpha must exceed 1");
    const double beta = alpha / (alpha - 1.0);

    auto one_form = std::make_shared<OneFormSpec>();
    one_form->beta = beta;
    one_form->coefficients = [beta, one_form_scale](const Vec& p) {
        double pn = 0;
        for (double x : p) pn += std::pow(std::abs(x), beta);
        pn = std::pow(pn, 1.0 / beta);
        Vec b(p.size());
        for (index_t i = 0; i < p.size(); ++i) b[i] = one_form_scale * p[i] / (1.0 + pn);
        return b;
    };

    MetricSpec m;
    m.name = "alpha_randers";
    m.dimension = n;
    m.domain_constraint = Domain::PositiveOrthant;
    m.is_symmetric = false;
    m.is_position_independent = false;
    m.params = {{"alpha", alpha},
                {"weight_exponent", weight_exponent},
                {"one_form_scale", one_form_scale}};
    m.one_form = one_form;
    m.value = [alpha, weight_exponent, one_form](const Vec& p, const Vec& v) {
        double s = 0, lin = 0;
        const Vec b = one_form->at(p);
        for (index_t i = 0; i < v.size(); ++i) {
            const double f = std::pow(p[i], weight_exponent);
            s += f * std::pow(std::abs(v[i]), alpha);
            lin += b[i] * std::pow(f, 1.0 / alpha) * v[i];
        }
        return std::pow(s, 1.0 / alpha) + lin;
    };
    m.grad_v = [alpha, weight_exponent, one_form](const Vec& p, const Vec& v) {
        double s = 0;
        const Vec b = one_form->at(p);
        Vec f(v.size());
        for (index_t i = 0; i < v.size(); ++i) {
            f[i] = std::pow(p[i], weight_exponent);
            s += f[i] * std::pow(std::abs(v[i]), alpha);
        }
        const double a_pow = std::pow(s, 1.0 / alpha - 1.0);
        Vec g(v.size());
        for (index_t i = 0; i < v.size(); ++i) {
            const double sgn = (v[i] > 0) - (v[i] < 0);
            g[i] = (s > 0 ? f[i] * std::pow(std::abs(v[i]), alpha - 1.0) * sgn * a_pow : 0.0) +
                   b[i] * std::pow(f[i], 1.0 / alpha);
        }
        return g;
    };
    return m;
}

namespace {

void check_positive_pair(const Vec& x, const Vec& y, const char* who) {
    if (x.size() != y.size())
        throw DimensionMismatch(std::string(who) + ": vectors of dimension " +
                                std::to_string(x.size()) + " and " + std::to_string(y.size()));
    for (double c : x)
        if (!(c > 0.0)) throw DomainError(std::string(who) + ": nonpositive coordinate in x");
    for (double c : y)
        if (!(c > 0.0)) throw DomainError(std::string(who) + ": nonpositive coordinate in y");
}

}  // namespace

double burg_distance(const Vec& x, const Vec& y) {
    check_positive_pair(x, y, "burg_distance");
    double s = 0;
    for (index_t i = 0; i < x.size(); ++i) s += sqr(std::log(y[i]) - std::log(x[i]));
    return std::sqrt(s);
}

double fisher_distance(const Vec& x, const Vec& y) {
    check_positive_pair(x, y, "fisher_distance");
    double s = 0;
    for (index_t i = 0; i < x.size(); ++i) s += sqr(std::sqrt(y[i]) - std::sqrt(x[i]));
    return std::sqrt(s);
}

double itakura_saito_divergence(const Vec& x, const Vec& y) {
    check_positive_pair(x, y, "itakura_saito_divergence");
    double s = 0;
    for (index_t i = 0; i < x.size(); ++i) s += std::log(y[i] / x[i]) + x[i] / y[i] - 1.0;
    return s;
}

double pointwise_distance(const MetricSpec& metric, const Vec& base, const Vec& x,
                          const Vec& y, Orientation orientation) {
    metric.check_dimension(x, "x");
    metric.check_dimension(y, "y");
    Vec v(x.size());
    for (index_t i = 0; i < x.size(); ++i)
        v[i] = (orientation == Orientation::Forward) ? y[i] - x[i] : x[i] - y[i];
    return metric.evaluate(base, v);
}

FundamentalTensorProbe probe_fundamental_tensor(const MetricSpec& metric, const Vec& p,
                                                const Vec& v) {
    metric.check_point(p);
    metric.check_dimension(v, "direction");
    const index_t n = v.size();
    double vnorm = 0;
    for (double x : v) vnorm += x * x;
    const double h = 1e-4 * (1.0 + std::sqrt(vnorm));

    auto G = [&](const Vec& w) {
        const double f = metric.value(p, w);
        return 0.5 * f * f;
    };

    FundamentalTensorProbe probe;
    probe.point = p;
    probe.direction = v;
    std::vector<Vec> H(n, Vec(n, 0.0));
    Vec w = v;
    for (index_t i = 0; i < n; ++i) {
        // diagonal: standard 3-point second difference
        const double g0 = G(v);
        w[i] = v[i] + h;
        const double gp = G(w);
        w[i] = v[i] - h;
        const double gm = G(w);
        w[i] = v[i];
        H[i][i] = (gp - 2.0 * g0 + gm) / (h * h);
        for (index_t j = i + 1; j < n; ++j) {
            w[i] = v[i] + h; w[j] = v[j] + h;
            const double gpp = G(w);
            w[j] = v[j] - h;
            const double gpm = G(w);
            w[i] = v[i] - h; w[j] = v[j] + h;
            const double gmp = G(w);
            w[j] = v[j] - h;
            const double gmm = G(w);
            w[i] = v[i]; w[j] = v[j];
            // same 4-point stencil grouped two ways (d_i of d_j vs d_j of d_i);
            // the difference measures finite-difference noise
            H[i][j] = ((gpp - gpm) - (gmp - gmm)) / (4.0 * h * h);
            H[j][i] = ((gpp - gmp) - (gpm - gmm)) / (4.0 * h * h);
        }
    }
    probe.hessian = H;
    double max_abs = 0.0, max_asym = 0.0;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            max_abs = std::max(max_abs, std::abs(H[i][j]));
            max_asym = std::max(max_asym, std::abs(H[i][j] - H[j][i]));
        }
    probe.max_asymmetry = max_asym;
    if (max_asym > 1e-6 * std::max(1e-300, max_abs))
        throw ConvergenceError("fundamental tensor probe: asymmetric beyond tolerance at " +
                               vec_to_string(p));
    // symmetrize before the eigensolve
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (H[i][j] + H[j][i]);
            H[i][j] = m;
            H[j][i] = m;
        }

    Eigen::MatrixXd M(n, n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) M(i, j) = H[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    probe.min_eigenvalue = es.eigenvalues().minCoeff();
    return probe;
}

void ValidationReport::merge(const ValidationReport& other) {
    samples += other.samples;
    auto worse = [](AxiomCheck& a, const AxiomCheck& b) {
        if (!b.passed) a.passed = false;
        if (b.worst > a.worst) {
            a.worst = b.worst;
            a.worst_p = b.worst_p;
            a.worst_v = b.worst_v;
        }
    };
    worse(positivity, other.positivity);
    worse(homogeneity, other.homogeneity);
    worse(symmetry, other.symmetry);
    worse(tensor_psd, other.tensor_psd);
    worse(one_form_norm, other.one_form_norm);
}

namespace {

Vec sample_domain_point(const MetricSpec& metric, Rng& rng) {
    Vec p(metric.dimension);
    if (metric.domain_constraint == Domain::PositiveOrthant) {
        for (auto& x : p) x = rng.log_uniform(0.25, 4.0);
    } else {
        for (auto& x : p) x = 2.0 * rng.normal();
    }
    return p;
}

Vec sample_direction(const MetricSpec& metric, Rng& rng) {
    Vec v = rng.unit_vec(metric.dimension);
    const double scale = rng.log_uniform(0.5, 2.0);
    for (auto& x : v) x *= scale;
    return v;
}

void record(AxiomCheck& check, double violation, double tol, const Vec& p, const Vec& v) {
    if (violation > check.worst) {
        check.worst = violation;
        check.worst_p = p;
        check.worst_v = v;
    }
    if (violation > tol) check.passed = false;
}

// Hoelder-extremal direction opposing the one-form: the direction where the
// linear term of a Randers metric bites hardest, used to expose ||b|| >= 1.
Vec adversarial_direction(const MetricSpec& metric, const Vec& p) {
    const double alpha = metric.params.count("alpha") ? metric.params.at("alpha") : 2.0;
    const double wexp =
        metric.params.count("weight_exponent") ? metric.params.at("weight_exponent") : 0.0;
    const Vec b = metric.one_form->at(p);
    Vec v(p.size(), 0.0);
    for (index_t i = 0; i < p.size(); ++i) {
        const double fia = std::pow(std::pow(p[i], wexp), 1.0 / alpha);
        const double c = std::abs(b[i]) * fia;  // coefficient of |v_i| in the linear term
        const double mag = std::pow(c, 1.0 / (alpha - 1.0)) / std::max(fia, 1e-300);
        v[i] = -((b[i] > 0) - (b[i] < 0)) * mag;
    }
    return v;
}

}  // namespace

ValidationReport validate_metric(const MetricSpec& metric, int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("validate_metric: samples must be >= 1");
    Rng rng(seed);
    ValidationReport report;
    report.samples = samples;

    static constexpr double kHomogeneityFactors[] = {0.5, 2.0, 10.0};

    for (int s = 0; s < samples; ++s) {
        const Vec p = sample_domain_point(metric, rng);
        const Vec v = sample_direction(metric, rng);
        const double f = metric.evaluate(p, v);

        // (ii) positive definiteness on sampled directions
        record(report.positivity, f <= 0.0 ? -f + 1e-300 : 0.0, 0.0, p, v);

        // (iii) positive 1-homogeneity
        for (double r : kHomogeneityFactors) {
            Vec rv(v.size());
            for (index_t i = 0; i < v.size(); ++i) rv[i] = r * v[i];
            const double fr = metric.evaluate(p, rv);
            const double scale = std::max(1e-300, r * std::abs(f));
            record(report.homogeneity, std::abs(fr - r * f) / scale, 1e-9, p, v);
        }

        // absolute homogeneity claim, when flagged
        if (metric.is_symmetric) {
            Vec nv(v.size());
            for (index_t i = 0; i < v.size(); ++i) nv[i] = -v[i];
            const double fn = metric.evaluate(p, nv);
            record(report.symmetry, std::abs(fn - f) / std::max(1e-300, std::abs(f)), 1e-9,
                   p, v);
        }

        // (iv) fundamental tensor positive semidefinite within tolerance
        const auto probe = probe_fundamental_tensor(metric, p, v);
        record(report.tensor_psd, std::max(0.0, -probe.min_eigenvalue), 1e-7, p, v);

        if (metric.one_form) {
            const double bn = metric.one_form->beta_norm(p);
            record(report.one_form_norm, std::max(0.0, bn - (1.0 - 1e-12)), 0.0, p, v);
            // probe the worst-case direction as well: when ||b|| >= 1 this finds F < 0
            const Vec adv = adversarial_direction(metric, p);
            bool zero = true;
            for (double x : adv) zero &= (x == 0.0);
            if (!zero) {
                const double fa = metric.evaluate(p, adv);
                record(report.positivity, fa <= 0.0 ? -fa + 1e-300 : 0.0, 0.0, p, adv);
            }
        }
    }
    return report;
}

double CoordinateMap::d(double x) const {
    if (deriv) return deriv(x);
    const double h = 1e-6 * (1.0 + std::abs(x));
    return (value(x + h) - value(x - h)) / (2.0 * h);
}

IsometryReport check_isometry(const MetricSpec& metric, const CoordinateMap& phi,
                              int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_isometry: samples must be >= 1");
    Rng rng(seed);
    IsometryReport report;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
        const Vec p = sample_domain_point(metric, rng);
        const Vec v = sample_direction(metric, rng);
        const double f = metric.evaluate(p, v);
        double e2 = 0;
        for (index_t i = 0; i < p.size(); ++i) e2 += sqr(phi.d(p[i]) * v[i]);
        const double e = std::sqrt(e2);
        const double resid = std::abs(f - e) / std::max(1e-300, f);
        if (resid > report.max_relative_residual) {
            report.max_relative_residual = resid;
            report.worst_p = p;
            report.worst_v = v;
        }
    }
    return report;
}

}  // namespace ftda
