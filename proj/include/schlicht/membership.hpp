#ifndef SCHLICHT_MEMBERSHIP_HPP
#define SCHLICHT_MEMBERSHIP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "schlicht/operators.hpp"
#include "schlicht/series.hpp"

namespace schlicht
{

// Margins within +-tol_pass of zero are reported as inconclusive.
inline constexpr double tol_pass = 1e-7;

// Concentric rings r_i e^{2 pi i j / angles_per_ring}. The gated radius, when
// set, joins the rings only if the truncation tail of the tested series there is
// below tol_pass/10.
struct DiskGrid {
    std::vector<double> radii;
    int angles_per_ring = 720;
    int refinement_depth = 2;
    std::optional<double> gated_radius;

    // Rings 0.1, ..., 0.9, 0.95 with 0.99 gated; 720 angles; depth 2.
    static DiskGrid standard();

    // Throws std::invalid_argument unless radii are ascending in (0, 0.995]
    // and angles_per_ring >= 64.
    void validate() const;
};

enum class ClassId { m_alpha_beta, generator, starlike_half, convex, a_half };

enum class Verdict { pass, fail, inconclusive };

std::string to_string(ClassId id);
std::string to_string(Verdict v);
// Accepts "M", "generator", "starlike_half", "convex", "A_half".
ClassId class_id_from_string(std::string_view s);

Verdict verdict_for(double margin);

// Minimum of Re(series) - threshold over a grid.
struct MarginScan {
    double margin = 0.0;
    cplx argmin{};
    double tail = 0.0;
    bool truncation_warning = false;
    std::vector<double> radii_used;
};

MarginScan scan_margin(const TaylorSeries &test, double threshold, const DiskGrid &grid);

struct MembershipReport {
    ClassId class_id = ClassId::generator;
    std::optional<double> alpha;
    std::optional<double> beta;
    double threshold = 0.0;
    double margin = 0.0;
    cplx argmin{};
    Verdict verdict = Verdict::inconclusive;
    bool truncation_warning = false;
    double tail = 0.0;
    DiskGrid grid;
    std::vector<double> radii_used;
};

// The series whose real part is tested for `id` and its threshold:
// M: g_{alpha,beta} against (alpha+beta)/2; generator: f/z against 0;
// starlike_half: z f'/f against 1/2; convex: 1 + z f''/f' against 0;
// A_half: f/z against 1/2.
std::pair<TaylorSeries, double> class_test(const NormalizedFunction &f, ClassId id,
                                           const std::optional<ClassParams> &params = std::nullopt);

MembershipReport min_margin(const NormalizedFunction &f, ClassId id, const ClassParams &params, const DiskGrid &grid);
// For the classes that need no parameters; throws std::invalid_argument for M.
MembershipReport min_margin(const NormalizedFunction &f, ClassId id, const DiskGrid &grid);

// w in Delta: for alpha >= 0 the complement of
//   {x <= 1+beta-alpha, y^2 <= (x-1-beta)^2 - alpha^2},
// for alpha < 0 the complement of
//   {x >= 1+beta-alpha, y^2 <= (x-1-beta)^2 - alpha^2}.
bool delta_region_contains(const ClassParams &p, cplx w);

// A Delta-range of g_{alpha,beta} is sufficient for f to be a generator, not
// necessary: `consistent` is false only when every grid value of g lies in
// Delta while the generator margin is below -tol_pass.
struct ThmN1Report {
    double alpha = 0.0;
    double beta = 0.0;
    bool g_in_delta = false;
    int points_checked = 0;
    int points_outside = 0;
    cplx first_outside{};
    MembershipReport generator;
    bool consistent = true;
};

ThmN1Report thm_n1_audit(const NormalizedFunction &f, const ClassParams &p, const DiskGrid &grid);

// f(z) = (z - tau)(1 - z conj(tau)) p(z) with Re p >= 0; tau = 0 for
// normalized f.
struct BerksonPortaDecomposition {
    cplx tau{};
    TaylorSeries p;
    MembershipReport report;

    [[nodiscard]] cplx reconstruct(cplx z) const;
};

BerksonPortaDecomposition berkson_porta(const NormalizedFunction &f, const DiskGrid &grid = DiskGrid::standard());

// Checks pass(convex) => pass(starlike_half) => pass(A_half) => pass(generator)
// over every ordered pair of the chain.
struct ChainReport {
    MembershipReport convex;
    MembershipReport starlike_half;
    MembershipReport a_half;
    MembershipReport generator;
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept
    {
        return violations.empty();
    }
};

ChainReport marx_strohhacker_audit(const NormalizedFunction &f, const DiskGrid &grid = DiskGrid::standard());

void to_json(nlohmann::json &j, const DiskGrid &g);
void to_json(nlohmann::json &j, const MembershipReport &r);
void to_json(nlohmann::json &j, const ThmN1Report &r);
void to_json(nlohmann::json &j, const ChainReport &r);

} // namespace schlicht

#endif
