#include "schlicht/semigroup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schlicht/errors.hpp"
#include "schlicht/membership.hpp"

namespace schlicht
{

namespace
{

// Dormand-Prince 5(4) tableau; the flow is autonomous so the nodes c_i are unused.
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct StepOutcome {
    bool inside = true;
    cplx next;
    double err = 0.0;
};

class Flow
{
public:
    Flow(const TaylorSeries &f, int direction, double escape) : m_f(f), m_sign(-direction), m_limit(1.0 - escape)
    {
    }

    // One trial step from u with step h; stages leaving the disk make the step
    // invalid rather than fatal.
    StepOutcome step(cplx u, double h, const EvolveOptions &opts) const
    {
        StepOutcome out;
        std::array<cplx, 7> k{};
        k[0] = rhs(u);
        cplx y = u + h * (a21 * k[0]);
        if (!eval(y, k[1], out)) {
            return out;
        }
        y = u + h * (a31 * k[0] + a32 * k[1]);
        if (!eval(y, k[2], out)) {
            return out;
        }
        y = u + h * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
        if (!eval(y, k[3], out)) {
            return out;
        }
        y = u + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
        if (!eval(y, k[4], out)) {
            return out;
        }
        y = u + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
        if (!eval(y, k[5], out)) {
            return out;
        }
        out.next = u + h * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
        if (!eval(out.next, k[6], out)) {
            return out;
        }
        const cplx e = h * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);
        const double sc = opts.atol + opts.rtol * std::max(std::abs(u), std::abs(out.next));
        out.err = std::abs(e) / sc;
        return out;
    }

    [[nodiscard]] double limit() const noexcept
    {
        return m_limit;
    }

private:
    [[nodiscard]] cplx rhs(cplx u) const
    {
        return static_cast<double>(m_sign) * m_f.evaluate_unchecked(u);
    }

    bool eval(cplx y, cplx &k, StepOutcome &out) const
    {
        if (!(std::abs(y) < 1.0)) {
            out.inside = false;
            return false;
        }
        k = rhs(y);
        return true;
    }

    const TaylorSeries &m_f;
    int m_sign;
    double m_limit;
};

void check_times(std::span<const double> times)
{
    if (times.empty() || times.front() != 0.0) {
        throw std::invalid_argument("evolve: output times must start at 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]) || !std::isfinite(times[i])) {
            throw std::invalid_argument("evolve: output times must be strictly ascending");
        }
    }
}

} // namespace

SemigroupTrajectory evolve(const NormalizedFunction &f, cplx z0, std::span<const double> times,
                           const EvolveOptions &opts)
{
    if (!(std::abs(z0) < 1.0)) {
        throw std::domain_error("evolve: start point must lie in the open unit disk");
    }
    check_times(times);
    if (opts.direction != 1 && opts.direction != -1) {
        throw std::invalid_argument("evolve: direction must be +1 or -1");
    }
    if (opts.check_generator) {
        const auto rep = min_margin(f, ClassId::generator, DiskGrid::standard());
        if (rep.verdict == Verdict::fail) {
            throw std::invalid_argument("evolve: f fails the generator check (Re f(z)/z > 0)");
        }
    }

    const Flow flow(f.series(), opts.direction, opts.escape_margin);
    SemigroupTrajectory traj{z0, {0.0}, {z0}, 0, 0, 0.0};
    cplx u = z0;
    double t = 0.0;
    double h = std::min(opts.initial_step, opts.max_step);
    double r_max = std::abs(z0);

    for (std::size_t i = 1; i < times.size(); ++i) {
        const double target = times[i];
        while (t < target) {
            const bool last = t + h >= target;
            const double step = last ? target - t : h;
            const auto out = flow.step(u, step, opts);
            if (!out.inside || out.err > 1.0) {
                ++traj.rejected;
                const double fac = out.inside ? std::max(0.2, 0.9 * std::pow(out.err, -0.2)) : 0.5;
                h = step * fac;
                if (h < opts.min_step) {
                    if (!out.inside) {
                        throw disk_escape_error("evolve: trajectory reached the unit circle near t = " +
                                                std::to_string(t));
                    }
                    throw step_underflow_error("evolve: step size underflow at t = " + std::to_string(t));
                }
                continue;
            }
            ++traj.accepted;
            u = out.next;
            t = last ? target : t + step;
            r_max = std::max(r_max, std::abs(u));
            if (std::abs(u) >= flow.limit()) {
                throw disk_escape_error("evolve: trajectory left the disk at t = " + std::to_string(t));
            }
            const double fac = out.err > 0.0 ? std::min(5.0, 0.9 * std::pow(out.err, -0.2)) : 5.0;
            // A step shortened to hit an output time says nothing about the
            // admissible step size.
            if (!last || step >= h) {
                h = std::min(opts.max_step, step * fac);
            }
        }
        traj.times.push_back(target);
        traj.points.push_back(u);
    }
    traj.tail = tail_estimate(f.series(), std::min(r_max, 0.999999));
    return traj;
}

SemigroupTrajectory evolve(const NormalizedFunction &f, cplx z0, double t_end, const EvolveOptions &opts)
{
    if (t_end < 0.0) {
        throw std::invalid_argument("evolve: t_end must be >= 0");
    }
    if (t_end == 0.0) {
        const std::array<double, 1> times{0.0};
        return evolve(f, z0, times, opts);
    }
    const std::array<double, 2> times{0.0, t_end};
    return evolve(f, z0, times, opts);
}

double alpha_growth_bound(double alpha, double t, cplx z)
{
    return std::exp((1.0 - 2.0 * alpha) / (2.0 * alpha) * t) * std::abs(z);
}

BoundAuditReport bound_audit_alpha(const NormalizedFunction &f, double alpha,
                                   std::span<const std::pair<cplx, double>> samples)
{
    if (!(alpha >= 0.5 && alpha <= 1.0)) {
        throw std::invalid_argument("bound_audit_alpha: alpha must lie in [1/2, 1]");
    }
    const auto member = min_margin(f, ClassId::m_alpha_beta, ClassParams(alpha, 1.0 - alpha), DiskGrid::standard());
    if (member.verdict != Verdict::pass) {
        throw std::invalid_argument("bound_audit_alpha: f does not pass membership in M_{alpha,1-alpha}");
    }
    EvolveOptions opts;
    opts.check_generator = false;
    BoundAuditReport rep;
    rep.alpha = alpha;
    for (const auto &[z0, t] : samples) {
        const auto traj = evolve(f, z0, t, opts);
        const double m = std::abs(traj.points.back());
        const double b = alpha_growth_bound(alpha, t, z0);
        rep.samples.push_back({z0, t, m, b});
        if (m > b * (1.0 + 1e-6)) {
            ++rep.violations;
        }
        if (b > 0.0) {
            rep.max_ratio = std::max(rep.max_ratio, m / b);
        }
    }
    return rep;
}

double semigroup_property_audit(const NormalizedFunction &f, double s, double t, std::span<const cplx> z0s)
{
    if (s < 0.0 || t < 0.0) {
        throw std::invalid_argument("semigroup_property_audit: times must be >= 0");
    }
    EvolveOptions opts;
    opts.check_generator = false;
    double worst = 0.0;
    for (const auto z0 : z0s) {
        const cplx direct = evolve(f, z0, s + t, opts).points.back();
        const cplx mid = evolve(f, z0, s, opts).points.back();
        const cplx composed = evolve(f, mid, t, opts).points.back();
        worst = std::max(worst, std::abs(direct - composed));
    }
    return worst;
}

void write_trajectory_csv(std::ostream &os, const SemigroupTrajectory &traj, const double *alpha)
{
    os << "t,re,im,abs";
    if (alpha) {
        os << ",bound";
    }
    os << '\n';
    os.precision(17);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto u = traj.points[i];
        os << traj.times[i] << ',' << u.real() << ',' << u.imag() << ',' << std::abs(u);
        if (alpha) {
            os << ',' << alpha_growth_bound(*alpha, traj.times[i], traj.z0);
        }
        os << '\n';
    }
}

void to_json(nlohmann::json &j, const SemigroupTrajectory &t)
{
    auto pts = nlohmann::json::array();
    for (const auto &p : t.points) {
        pts.push_back(complex_to_json(p));
    }
    j = nlohmann::json{{"z0", complex_to_json(t.z0)}, {"times", t.times},       {"points", std::move(pts)},
                       {"accepted", t.accepted},       {"rejected", t.rejected}, {"tail_estimate", t.tail}};
}

void to_json(nlohmann::json &j, const BoundAuditReport &r)
{
    auto rows = nlohmann::json::array();
    for (const auto &s : r.samples) {
        rows.push_back({{"z0", complex_to_json(s.z0)}, {"t", s.t}, {"modulus", s.modulus}, {"bound", s.bound}});
    }
    j = nlohmann::json{
        {"alpha", r.alpha}, {"violations", r.violations}, {"max_ratio", r.max_ratio}, {"samples", std::move(rows)}};
}

} // namespace schlicht
