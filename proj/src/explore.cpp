#include "schlicht/explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "schlicht/briot_bouquet.hpp"
#include "schlicht/detail/parallel.hpp"
#include "schlicht/random.hpp"

namespace schlicht
{

HerglotzSampler::HerglotzSampler(int num_atoms, std::uint64_t seed) : m_seed(seed)
{
    if (num_atoms < 1 || num_atoms > 8) {
        throw std::invalid_argument("HerglotzSampler: num_atoms must lie in [1, 8]");
    }
    SplitMix64 rng(seed);
    double total = 0.0;
    for (int i = 0; i < num_atoms; ++i) {
        // Exponential draws normalized to the simplex give Dirichlet(1) weights.
        const double w = -std::log1p(-rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        m_atoms.push_back({w, theta});
        total += w;
    }
    if (total <= 0.0) {
        for (auto &a : m_atoms) {
            a.weight = 1.0;
        }
        total = num_atoms;
    }
    for (auto &a : m_atoms) {
        a.weight /= total;
    }
}

HerglotzSampler::HerglotzSampler(std::vector<HerglotzAtom> atoms) : m_atoms(std::move(atoms))
{
    if (m_atoms.empty() || m_atoms.size() > 8) {
        throw std::invalid_argument("HerglotzSampler: between 1 and 8 atoms are required");
    }
    double total = 0.0;
    for (const auto &a : m_atoms) {
        if (!(a.weight >= 0.0)) {
            throw std::invalid_argument("HerglotzSampler: weights must be nonnegative");
        }
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("HerglotzSampler: weights must sum to 1");
    }
}

HerglotzSampler HerglotzSampler::random(std::uint64_t seed)
{
    SplitMix64 rng(seed);
    const int n = rng.uniform_int(1, 8);
    return HerglotzSampler(n, rng.next());
}

TaylorSeries HerglotzSampler::series(int order) const
{
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{});
    c[0] = 1.0;
    for (const auto &a : m_atoms) {
        for (int n = 1; n <= order; ++n) {
            c[static_cast<std::size_t>(n)] += 2.0 * a.weight * std::polar(1.0, -n * a.angle);
        }
    }
    return TaylorSeries(std::move(c));
}

SchwarzSampler::SchwarzSampler(int degree, std::uint64_t seed)
{
    if (degree < 1 || degree > 6) {
        throw std::invalid_argument("SchwarzSampler: degree must lie in [1, 6]");
    }
    SplitMix64 rng(seed);
    for (int i = 1; i < degree; ++i) {
        const double r = 0.98 * std::sqrt(rng.uniform());
        m_zeros.push_back(std::polar(r, 2.0 * std::numbers::pi * rng.uniform()));
    }
    m_rotation = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
}

SchwarzSampler::SchwarzSampler(std::vector<cplx> zeros, cplx rotation) : m_zeros(std::move(zeros)), m_rotation(rotation)
{
    if (m_zeros.size() > 5) {
        throw std::invalid_argument("SchwarzSampler: at most 5 zeros besides the origin");
    }
    for (const auto &a : m_zeros) {
        if (!(std::abs(a) < 1.0)) {
            throw std::invalid_argument("SchwarzSampler: zeros must lie in the open disk");
        }
    }
    if (std::abs(std::abs(m_rotation) - 1.0) > 1e-12) {
        throw std::invalid_argument("SchwarzSampler: rotation must be unimodular");
    }
}

SchwarzSampler SchwarzSampler::random(std::uint64_t seed)
{
    SplitMix64 rng(seed);
    const int d = rng.uniform_int(1, 6);
    return SchwarzSampler(d, rng.next());
}

TaylorSeries SchwarzSampler::series(int order) const
{
    auto w = TaylorSeries::constant(m_rotation, order);
    for (const auto &a : m_zeros) {
        const auto num = add_constant(scale(TaylorSeries::identity(order), -1.0), a);
        const auto den = add_constant(scale(TaylorSeries::identity(order), -std::conj(a)), 1.0);
        w = mul(w, div(num, den));
    }
    // Multiplying by z raises the order; keep the requested one.
    return w.shift_up(1).truncated(order);
}

NormalizedFunction sample_m0beta(double beta, const HerglotzSampler &sampler, int order)
{
    if (!(beta <= 1.0)) {
        throw std::invalid_argument("sample_m0beta: beta must be <= 1");
    }
    const auto target = add_constant(scale(sampler.series(order - 1), 1.0 - beta / 2.0), beta / 2.0);
    if (beta == 1.0) {
        return f_from_q(target);
    }
    const auto q = solve_bb(BriotBouquetProblem(target, 1.0 / (1.0 - beta), 0.0), order - 1);
    return f_from_q(q);
}

NormalizedFunction sample_malpha(double alpha, const HerglotzSampler &sampler, int order)
{
    if (!(alpha >= 0.5 && alpha <= 1.0)) {
        throw std::invalid_argument("sample_malpha: alpha must lie in [1/2, 1]");
    }
    const auto target = add_constant(scale(sampler.series(order - 1), 0.5), 0.5);
    TaylorSeries q = target;
    if (alpha != 1.0) {
        const auto h = add_constant(scale(add_constant(target, -1.0), 1.0 / alpha), 1.0);
        q = solve_bb(BriotBouquetProblem(h, alpha / (1.0 - alpha), 0.0), order - 1);
    }
    return NormalizedFunction::normalize(q.shift_up(1));
}

NormalizedFunction sample_generator(const HerglotzSampler &sampler, int order)
{
    return NormalizedFunction::normalize(sampler.series(order - 1).shift_up(1));
}

bool can_sample(const ClassParams &p)
{
    if (p.alpha() == 0.0 && p.beta() <= 1.0) {
        return true;
    }
    return p.alpha() >= 0.5 && p.alpha() <= 1.0 && std::abs(p.alpha() + p.beta() - 1.0) < 1e-12;
}

NormalizedFunction sample_member(const ClassParams &p, const HerglotzSampler &sampler, int order)
{
    if (p.alpha() == 0.0 && p.beta() <= 1.0) {
        return sample_m0beta(p.beta(), sampler, order);
    }
    if (can_sample(p)) {
        return sample_malpha(p.alpha(), sampler, order);
    }
    throw std::invalid_argument("no member construction for M_{alpha,beta} off the lines alpha=0 (beta<=1) and "
                                "beta=1-alpha (1/2<=alpha<=1)");
}

std::vector<NormalizedFunction> sample_members(const ClassParams &p, int count, std::uint64_t seed, int order)
{
    if (!can_sample(p)) {
        // Surface the usage error before spawning workers.
        (void)sample_member(p, HerglotzSampler(1, seed), order);
    }
    std::vector<std::optional<NormalizedFunction>> slots(static_cast<std::size_t>(std::max(count, 0)));
    detail::parallel_for(slots.size(), [&](std::size_t i) {
        slots[i] = sample_member(p, HerglotzSampler::random(trial_seed(seed, i)), order);
    });
    std::vector<NormalizedFunction> out;
    out.reserve(slots.size());
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

FsBoundReport fs_bound_audit(const std::vector<NormalizedFunction> &members, const ClassParams &p,
                             const std::vector<cplx> &lambdas)
{
    FsBoundReport rep;
    rep.alpha = p.alpha();
    rep.beta = p.beta();
    rep.mu = p.mu();
    rep.members = static_cast<int>(members.size());
    rep.max_excess = -std::numeric_limits<double>::infinity();
    for (const auto &l : lambdas) {
        const double bound = FSParams::from_lambda(p, l).bound();
        double attained = 0.0;
        for (const auto &f : members) {
            const double v = std::abs(fekete_szego(f, l));
            attained = std::max(attained, v);
            rep.max_excess = std::max(rep.max_excess, v - bound);
            if (v > bound + fs_bound_tol) {
                ++rep.violations;
            }
        }
        rep.rows.push_back({l, bound, attained, attained / bound});
    }
    return rep;
}

void write_fs_sweep_csv(std::ostream &os, const FsBoundReport &rep)
{
    os << "lambda_re,lambda_im,bound,attained,ratio\n";
    os.precision(17);
    for (const auto &r : rep.rows) {
        os << r.lambda.real() << ',' << r.lambda.imag() << ',' << r.bound << ',' << r.attained << ',' << r.ratio
           << '\n';
    }
}

namespace
{

struct LineSpec {
    std::string name;
    // Class parameters at line coordinate x.
    ClassParams (*params)(double);
    NormalizedFunction (*sample)(double, const HerglotzSampler &, int);
};

ClassParams beta_line(double x)
{
    return {0.0, x};
}

ClassParams alpha_line(double x)
{
    return {x, 1.0 - x};
}

FiltrationReport run_filtration(const LineSpec &line, double from, const std::vector<double> &to,
                                const FiltrationOptions &opts)
{
    FiltrationReport rep;
    rep.line = line.name;
    rep.from = from;
    rep.samples = opts.samples;
    const auto source = line.params(from);
    std::vector<ClassParams> targets;
    for (double t : to) {
        targets.push_back(line.params(t));
    }

    struct Outcome {
        bool own_pass = true;
        std::vector<MembershipReport> reports;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(opts.samples));
    detail::parallel_for(outcomes.size(), [&](std::size_t i) {
        const auto f = line.sample(from, HerglotzSampler::random(trial_seed(opts.seed, i)), opts.order);
        auto &o = outcomes[i];
        o.own_pass = min_margin(f, ClassId::m_alpha_beta, source, opts.grid).verdict == Verdict::pass;
        for (const auto &p : targets) {
            o.reports.push_back(min_margin(f, ClassId::m_alpha_beta, p, opts.grid));
        }
    });

    for (std::size_t t = 0; t < to.size(); ++t) {
        FiltrationTarget ft;
        ft.to = to[t];
        ft.worst_margin = std::numeric_limits<double>::infinity();
        for (const auto &o : outcomes) {
            const auto &r = o.reports[t];
            ++ft.checked;
            ft.worst_margin = std::min(ft.worst_margin, r.margin);
            if (r.verdict == Verdict::fail) {
                ++ft.failures;
            } else if (r.verdict == Verdict::inconclusive) {
                ++ft.inconclusive;
            }
        }
        rep.violations += ft.failures;
        rep.targets.push_back(ft);
    }
    for (const auto &o : outcomes) {
        if (!o.own_pass) {
            ++rep.construction_failures;
        }
    }
    rep.violations += rep.construction_failures;

    // Members of each larger class tested against the source class. The k = 2
    // extremal-type target (atoms at 0 and pi) is always among the probes.
    for (std::size_t t = 0; t < to.size(); ++t) {
        StrictnessProbe probe;
        probe.to = to[t];
        std::vector<HerglotzSampler> samplers{HerglotzSampler({{0.5, 0.0}, {0.5, std::numbers::pi}})};
        for (int i = 0; i < opts.probe_samples; ++i) {
            samplers.push_back(HerglotzSampler::random(trial_seed(opts.seed ^ 0x5bd1e995ULL, i)));
        }
        std::vector<double> margins(samplers.size());
        detail::parallel_for(samplers.size(), [&](std::size_t i) {
            const auto f = line.sample(to[t], samplers[i], opts.order);
            margins[i] = min_margin(f, ClassId::m_alpha_beta, source, opts.grid).margin;
        });
        for (double m : margins) {
            ++probe.probes;
            if (verdict_for(m) == Verdict::fail) {
                ++probe.witnesses;
                if (!probe.witness_margin || m < *probe.witness_margin) {
                    probe.witness_margin = m;
                }
            }
        }
        rep.strictness.push_back(probe);
    }
    return rep;
}

} // namespace

FiltrationReport filtration_audit_beta(double beta_from, const std::vector<double> &beta_to,
                                       const FiltrationOptions &opts)
{
    for (double b : beta_to) {
        if (!(beta_from < b && b <= 1.0)) {
            throw std::invalid_argument("filtration_audit_beta: targets must satisfy beta_from < beta_to <= 1");
        }
    }
    return run_filtration({"beta", beta_line, sample_m0beta}, beta_from, beta_to, opts);
}

FiltrationReport filtration_audit_alpha(double alpha_from, const std::vector<double> &alpha_to,
                                        const FiltrationOptions &opts)
{
    if (!(alpha_from >= 0.5 && alpha_from <= 1.0)) {
        throw std::invalid_argument("filtration_audit_alpha: alpha_from must lie in [1/2, 1]");
    }
    for (double a : alpha_to) {
        if (!(alpha_from < a && a < 2.0)) {
            throw std::invalid_argument("filtration_audit_alpha: targets must satisfy alpha_from < alpha_to < 2");
        }
    }
    // Targets above 1 have no member construction, so their strictness probes
    // reuse M_{1,0} members. Membership of those in the target is not assumed.
    auto sample = [](double a, const HerglotzSampler &s, int order) {
        return sample_malpha(std::min(a, 1.0), s, order);
    };
    return run_filtration({"alpha", alpha_line, +sample}, alpha_from, alpha_to, opts);
}

SchwarzAuditReport schwarz_lemma_audit(int trials, std::uint64_t seed, const std::vector<cplx> &s_values)
{
    SchwarzAuditReport rep;
    rep.trials = trials;
    rep.s_values = s_values;
    std::vector<std::pair<double, double>> excess(static_cast<std::size_t>(std::max(trials, 0)));
    detail::parallel_for(excess.size(), [&](std::size_t i) {
        const auto w = SchwarzSampler::random(trial_seed(seed, i)).series(4);
        const cplx b1 = w[1];
        const cplx b2 = w[2];
        const double e1 = std::abs(b2) - (1.0 - std::norm(b1));
        double e2 = -std::numeric_limits<double>::infinity();
        for (const auto &s : s_values) {
            e2 = std::max(e2, std::abs(b2 - s * b1 * b1) - std::max(1.0, std::abs(s)));
        }
        excess[i] = {e1, e2};
    });
    for (const auto &[e1, e2] : excess) {
        rep.max_excess_b2 = std::max(rep.max_excess_b2, e1);
        rep.max_excess_fs = std::max(rep.max_excess_fs, e2);
        if (e1 > schwarz_tol || e2 > schwarz_tol) {
            ++rep.violations;
        }
    }
    return rep;
}

void to_json(nlohmann::json &j, const FsBoundReport &r)
{
    auto rows = nlohmann::json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"lambda", complex_to_json(row.lambda)},
                        {"bound", row.bound},
                        {"attained", row.attained},
                        {"ratio", row.ratio}});
    }
    j = nlohmann::json{{"alpha", r.alpha},           {"beta", r.beta},
                       {"mu", r.mu},                 {"members", r.members},
                       {"max_excess", r.max_excess}, {"violations", r.violations},
                       {"tolerance", fs_bound_tol},  {"rows", std::move(rows)}};
}

void to_json(nlohmann::json &j, const FiltrationReport &r)
{
    auto targets = nlohmann::json::array();
    for (const auto &t : r.targets) {
        targets.push_back({{"to", t.to},
                           {"checked", t.checked},
                           {"failures", t.failures},
                           {"inconclusive", t.inconclusive},
                           {"worst_margin", t.worst_margin}});
    }
    auto probes = nlohmann::json::array();
    for (const auto &p : r.strictness) {
        probes.push_back({{"to", p.to},
                          {"probes", p.probes},
                          {"witnesses", p.witnesses},
                          {"witness_margin", p.witness_margin ? nlohmann::json(*p.witness_margin) : nlohmann::json()},
                          {"label", p.label}});
    }
    j = nlohmann::json{{"line", r.line},
                       {"from", r.from},
                       {"samples", r.samples},
                       {"construction_failures", r.construction_failures},
                       {"targets", std::move(targets)},
                       {"strictness", std::move(probes)},
                       {"violations", r.violations}};
}

void to_json(nlohmann::json &j, const SchwarzAuditReport &r)
{
    auto s = nlohmann::json::array();
    for (const auto &v : r.s_values) {
        s.push_back(complex_to_json(v));
    }
    j = nlohmann::json{{"trials", r.trials},
                       {"s_values", std::move(s)},
                       {"max_excess_b2", r.max_excess_b2},
                       {"max_excess_fs", r.max_excess_fs},
                       {"tolerance", schwarz_tol},
                       {"violations", r.violations}};
}

} // namespace schlicht
