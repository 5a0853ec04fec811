#ifndef SCHLICHT_SEMIGROUP_HPP
#define SCHLICHT_SEMIGROUP_HPP

#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "schlicht/series.hpp"

namespace schlicht
{

struct EvolveOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.1;
    double min_step = 1e-14;
    // |u| >= 1 - escape_margin aborts the integration.
    double escape_margin = 1e-12;
    // Runs the generator membership check before integrating; when disabled a
    // non-generator shows up as a disk_escape_error instead.
    bool check_generator = true;
    // +1 integrates u' = -f(u); -1 integrates the reverse flow u' = f(u).
    int direction = 1;
};

struct SemigroupTrajectory {
    cplx z0;
    std::vector<double> times;
    std::vector<cplx> points;
    int accepted = 0;
    int rejected = 0;
    // Truncation tail of f at the largest |u| visited.
    double tail = 0.0;
};

// Integrates u' = -f(u), u(0) = z0 with an embedded Dormand-Prince 5(4) pair,
// landing exactly on each requested time. `times` must be ascending and start
// at 0. Throws std::domain_error for |z0| >= 1, std::invalid_argument when the
// generator check fails, disk_escape_error and step_underflow_error.
SemigroupTrajectory evolve(const NormalizedFunction &f, cplx z0, std::span<const double> times,
                           const EvolveOptions &opts = {});
// Times {0, t_end} (just {0} when t_end == 0).
SemigroupTrajectory evolve(const NormalizedFunction &f, cplx z0, double t_end, const EvolveOptions &opts = {});

// exp(((1 - 2 alpha)/(2 alpha)) t) |z|
double alpha_growth_bound(double alpha, double t, cplx z);

struct BoundSample {
    cplx z0;
    double t = 0.0;
    double modulus = 0.0;
    double bound = 0.0;
};

struct BoundAuditReport {
    double alpha = 0.0;
    std::vector<BoundSample> samples;
    int violations = 0;
    double max_ratio = 0.0;
};

// Checks |u(t, z0)| <= e^{((1-2 alpha)/(2 alpha)) t} |z0| (1 + 1e-6) for each
// sample. Throws std::invalid_argument unless f passes membership in
// M_{alpha,1-alpha}, alpha in [1/2, 1].
BoundAuditReport bound_audit_alpha(const NormalizedFunction &f, double alpha,
                                   std::span<const std::pair<cplx, double>> samples);

// max over z0 of |u(t+s, z0) - u(t, u(s, z0))|
double semigroup_property_audit(const NormalizedFunction &f, double s, double t, std::span<const cplx> z0s);

// Columns t,re,im,abs[,bound]; the bound column is written when alpha is given.
void write_trajectory_csv(std::ostream &os, const SemigroupTrajectory &traj, const double *alpha = nullptr);

void to_json(nlohmann::json &j, const SemigroupTrajectory &t);
void to_json(nlohmann::json &j, const BoundAuditReport &r);

} // namespace schlicht

#endif
