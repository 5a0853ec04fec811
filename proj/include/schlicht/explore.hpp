#ifndef SCHLICHT_EXPLORE_HPP
#define SCHLICHT_EXPLORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "schlicht/membership.hpp"
#include "schlicht/operators.hpp"
#include "schlicht/series.hpp"

namespace schlicht
{

struct HerglotzAtom {
    double weight = 1.0;
    double angle = 0.0;
};

// h(z) = sum_j w_j (1 + e^{-i theta_j} z)/(1 - e^{-i theta_j} z), weights summing
// to 1: h(0) = 1 and Re h > 0 on the disk.
class HerglotzSampler
{
public:
    // num_atoms in [1, 8]; Dirichlet(1) weights and uniform angles.
    HerglotzSampler(int num_atoms, std::uint64_t seed);
    // Explicit atoms; weights must be nonnegative and sum to 1 within 1e-12.
    explicit HerglotzSampler(std::vector<HerglotzAtom> atoms);

    // Atom count drawn uniformly from [1, 8].
    static HerglotzSampler random(std::uint64_t seed);

    [[nodiscard]] const std::vector<HerglotzAtom> &atoms() const noexcept
    {
        return m_atoms;
    }
    [[nodiscard]] std::optional<std::uint64_t> seed() const noexcept
    {
        return m_seed;
    }

    // 1 + 2 sum_{n>=1} (sum_j w_j e^{-i n theta_j}) z^n
    [[nodiscard]] TaylorSeries series(int order) const;

private:
    std::vector<HerglotzAtom> m_atoms;
    std::optional<std::uint64_t> m_seed;
};

// omega(z) = rotation * z * prod_i (a_i - z)/(1 - conj(a_i) z), a finite
// Blaschke product of total degree `degree` with omega(0) = 0.
class SchwarzSampler
{
public:
    // degree in [1, 6]; degree - 1 zeros with |a_i| < 0.98.
    SchwarzSampler(int degree, std::uint64_t seed);
    SchwarzSampler(std::vector<cplx> zeros, cplx rotation);

    static SchwarzSampler random(std::uint64_t seed);

    [[nodiscard]] int degree() const noexcept
    {
        return static_cast<int>(m_zeros.size()) + 1;
    }
    [[nodiscard]] const std::vector<cplx> &zeros() const noexcept
    {
        return m_zeros;
    }
    [[nodiscard]] cplx rotation() const noexcept
    {
        return m_rotation;
    }

    [[nodiscard]] TaylorSeries series(int order) const;

private:
    std::vector<cplx> m_zeros;
    cplx m_rotation;
};

// Member of M_{0,beta} (beta <= 1) whose g_{0,beta} is the target
// beta/2 + (1 - beta/2) h, via q + (1-beta) z q'/q = target, q = z f'/f.
NormalizedFunction sample_m0beta(double beta, const HerglotzSampler &sampler,
                                 int order = default_truncation_order);

// Member of M_{alpha,1-alpha} (alpha in [1/2, 1]) whose g_{alpha,1-alpha} is
// the target 1/2 + h/2, via q + ((1-alpha)/alpha) z q'/q = 1 + (target - 1)/alpha,
// q = f/z.
NormalizedFunction sample_malpha(double alpha, const HerglotzSampler &sampler,
                                 int order = default_truncation_order);

// f = z h: a generator (Re f/z > 0) with no further structure.
NormalizedFunction sample_generator(const HerglotzSampler &sampler, int order = default_truncation_order);

// Whether members of M_{alpha,beta} can be constructed: the beta line
// (alpha = 0, beta <= 1) and the alpha line (beta = 1 - alpha, alpha in [1/2, 1]).
bool can_sample(const ClassParams &p);
// Dispatches to sample_m0beta / sample_malpha; throws std::invalid_argument off
// the two lines.
NormalizedFunction sample_member(const ClassParams &p, const HerglotzSampler &sampler,
                                 int order = default_truncation_order);
// `count` members with per-trial streams derived from `seed`.
std::vector<NormalizedFunction> sample_members(const ClassParams &p, int count, std::uint64_t seed,
                                               int order = default_truncation_order);

struct FsBoundRow {
    cplx lambda;
    double bound = 0.0;
    double attained = 0.0;
    double ratio = 0.0;
};

struct FsBoundReport {
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    int members = 0;
    std::vector<FsBoundRow> rows;
    // max over members and lambdas of |Phi| - max(mu, |1 - lambda|)
    double max_excess = 0.0;
    int violations = 0;
};

inline constexpr double fs_bound_tol = 1e-6;

FsBoundReport fs_bound_audit(const std::vector<NormalizedFunction> &members, const ClassParams &p,
                             const std::vector<cplx> &lambdas);

void write_fs_sweep_csv(std::ostream &os, const FsBoundReport &rep);

struct FiltrationTarget {
    double to = 0.0;
    int checked = 0;
    int failures = 0;
    int inconclusive = 0;
    double worst_margin = 0.0;
};

// Evidence toward strictness of an inclusion: members of the larger class
// that fail the smaller class's margin.
struct StrictnessProbe {
    double to = 0.0;
    int probes = 0;
    int witnesses = 0;
    std::optional<double> witness_margin;
    std::string label = "conjecture-evidence";
};

struct FiltrationReport {
    std::string line;
    double from = 0.0;
    int samples = 0;
    // Members of the source class that fail their own class (construction bugs).
    int construction_failures = 0;
    std::vector<FiltrationTarget> targets;
    std::vector<StrictnessProbe> strictness;
    int violations = 0;
};

struct FiltrationOptions {
    int samples = 200;
    std::uint64_t seed = 1;
    int probe_samples = 20;
    int order = default_truncation_order;
    DiskGrid grid = DiskGrid::standard();
};

// Samples M_{0,from} and checks membership in every M_{0,to}, from < to <= 1.
FiltrationReport filtration_audit_beta(double beta_from, const std::vector<double> &beta_to,
                                       const FiltrationOptions &opts = {});
// Samples M_{from,1-from} (from in [1/2, 1]) and checks every M_{to,1-to},
// from < to < 2.
FiltrationReport filtration_audit_alpha(double alpha_from, const std::vector<double> &alpha_to,
                                        const FiltrationOptions &opts = {});

struct SchwarzAuditReport {
    int trials = 0;
    std::vector<cplx> s_values;
    // |b2| - (1 - |b1|^2)
    double max_excess_b2 = -1.0;
    // |b2 - s b1^2| - max(1, |s|)
    double max_excess_fs = -1.0;
    int violations = 0;
};

inline constexpr double schwarz_tol = 1e-9;

SchwarzAuditReport schwarz_lemma_audit(int trials, std::uint64_t seed, const std::vector<cplx> &s_values);

void to_json(nlohmann::json &j, const FsBoundReport &r);
void to_json(nlohmann::json &j, const FiltrationReport &r);
void to_json(nlohmann::json &j, const SchwarzAuditReport &r);

} // namespace schlicht

#endif
