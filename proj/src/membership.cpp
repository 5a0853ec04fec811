#include "schlicht/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace schlicht
{

DiskGrid DiskGrid::standard()
{
    DiskGrid g;
    for (int i = 1; i <= 9; ++i) {
        g.radii.push_back(i / 10.0);
    }
    g.radii.push_back(0.95);
    g.gated_radius = 0.99;
    return g;
}

void DiskGrid::validate() const
{
    if (radii.empty()) {
        throw std::invalid_argument("grid: at least one radius is required");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] <= 0.995)) {
            throw std::invalid_argument("grid: radii must lie in (0, 0.995]");
        }
        if (i > 0 && !(radii[i] > radii[i - 1])) {
            throw std::invalid_argument("grid: radii must be strictly ascending");
        }
    }
    if (gated_radius && !(*gated_radius > radii.back() && *gated_radius <= 0.995)) {
        throw std::invalid_argument("grid: gated radius must exceed every ring and be <= 0.995");
    }
    if (angles_per_ring < 64) {
        throw std::invalid_argument("grid: angles_per_ring must be >= 64");
    }
    if (refinement_depth < 0) {
        throw std::invalid_argument("grid: refinement_depth must be >= 0");
    }
}

std::string to_string(ClassId id)
{
    switch (id) {
        case ClassId::m_alpha_beta:
            return "M";
        case ClassId::generator:
            return "generator";
        case ClassId::starlike_half:
            return "starlike_half";
        case ClassId::convex:
            return "convex";
        case ClassId::a_half:
            return "A_half";
    }
    return "?";
}

std::string to_string(Verdict v)
{
    switch (v) {
        case Verdict::pass:
            return "pass";
        case Verdict::fail:
            return "fail";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "?";
}

ClassId class_id_from_string(std::string_view s)
{
    if (s == "M" || s == "m") {
        return ClassId::m_alpha_beta;
    }
    if (s == "generator") {
        return ClassId::generator;
    }
    if (s == "starlike_half") {
        return ClassId::starlike_half;
    }
    if (s == "convex") {
        return ClassId::convex;
    }
    if (s == "A_half" || s == "a_half") {
        return ClassId::a_half;
    }
    throw std::invalid_argument("unknown class '" + std::string(s) +
                                "' (expected M, generator, starlike_half, convex, A_half)");
}

Verdict verdict_for(double margin)
{
    if (margin > tol_pass) {
        return Verdict::pass;
    }
    if (margin < -tol_pass) {
        return Verdict::fail;
    }
    return Verdict::inconclusive;
}

namespace
{

struct Sample {
    double value = std::numeric_limits<double>::infinity();
    double r = 0.0;
    double theta = 0.0;
};

void probe(const TaylorSeries &s, double r, double theta, Sample &best)
{
    const cplx z = std::polar(r, theta);
    const double v = s.evaluate_unchecked(z).real();
    if (v < best.value) {
        best = {v, r, theta};
    }
}

} // namespace

MarginScan scan_margin(const TaylorSeries &test, double threshold, const DiskGrid &grid)
{
    grid.validate();
    MarginScan out;
    out.radii_used = grid.radii;
    if (grid.gated_radius && tail_estimate(test, *grid.gated_radius) < tol_pass / 10.0) {
        out.radii_used.push_back(*grid.gated_radius);
    }
    const auto &radii = out.radii_used;
    out.tail = tail_estimate(test, radii.back());
    out.truncation_warning = out.tail > tol_pass / 10.0;

    const int m = grid.angles_per_ring;
    double dtheta = 2.0 * std::numbers::pi / m;
    Sample best;
    std::size_t best_ring = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double before = best.value;
        for (int j = 0; j < m; ++j) {
            probe(test, radii[i], dtheta * j, best);
        }
        if (best.value < before) {
            best_ring = i;
        }
    }

    double r_lo = best_ring > 0 ? radii[best_ring - 1] : radii[best_ring];
    double r_hi = best_ring + 1 < radii.size() ? radii[best_ring + 1] : radii[best_ring];
    for (int d = 0; d < grid.refinement_depth; ++d) {
        const double half_width = 2.0 * dtheta;
        dtheta /= 4.0;
        const double centre = best.theta;
        const int steps = static_cast<int>(std::lround(2.0 * half_width / dtheta));
        constexpr int radial_steps = 4;
        for (int k = 0; k <= radial_steps; ++k) {
            const double r = r_lo + (r_hi - r_lo) * k / radial_steps;
            for (int j = 0; j <= steps; ++j) {
                probe(test, r, centre - half_width + dtheta * j, best);
            }
        }
        const double half_span = (r_hi - r_lo) / 4.0;
        r_lo = std::max(radii.front(), best.r - half_span);
        r_hi = std::min(radii.back(), best.r + half_span);
    }
    out.margin = best.value - threshold;
    out.argmin = std::polar(best.r, best.theta);
    return out;
}

std::pair<TaylorSeries, double> class_test(const NormalizedFunction &f, ClassId id,
                                           const std::optional<ClassParams> &params)
{
    switch (id) {
        case ClassId::m_alpha_beta:
            if (!params) {
                throw std::invalid_argument("class M requires (alpha, beta)");
            }
            return {g_operator(f, *params), params->threshold()};
        case ClassId::generator:
            return {f_over_z(f), 0.0};
        case ClassId::starlike_half:
            return {starlike_quotient(f), 0.5};
        case ClassId::convex:
            return {convex_quotient(f), 0.0};
        case ClassId::a_half:
            return {f_over_z(f), 0.5};
    }
    throw std::logic_error("class_test: unhandled class");
}

namespace
{

MembershipReport make_report(const NormalizedFunction &f, ClassId id, const std::optional<ClassParams> &params,
                             const DiskGrid &grid)
{
    auto [test, threshold] = class_test(f, id, params);
    const auto scan = scan_margin(test, threshold, grid);
    MembershipReport r;
    r.class_id = id;
    if (params && id == ClassId::m_alpha_beta) {
        r.alpha = params->alpha();
        r.beta = params->beta();
    }
    r.threshold = threshold;
    r.margin = scan.margin;
    r.argmin = scan.argmin;
    r.verdict = verdict_for(scan.margin);
    r.truncation_warning = scan.truncation_warning;
    r.tail = scan.tail;
    r.grid = grid;
    r.radii_used = scan.radii_used;
    return r;
}

} // namespace

MembershipReport min_margin(const NormalizedFunction &f, ClassId id, const ClassParams &params, const DiskGrid &grid)
{
    return make_report(f, id, params, grid);
}

MembershipReport min_margin(const NormalizedFunction &f, ClassId id, const DiskGrid &grid)
{
    return make_report(f, id, std::nullopt, grid);
}

bool delta_region_contains(const ClassParams &p, cplx w)
{
    const double a = p.alpha();
    const double b = p.beta();
    const double x = w.real();
    const double y = w.imag();
    const double shifted = x - 1.0 - b;
    const bool under = y * y <= shifted * shifted - a * a;
    const double edge = 1.0 + b - a;
    const bool excluded = a >= 0.0 ? (x <= edge && under) : (x >= edge && under);
    return !excluded;
}

ThmN1Report thm_n1_audit(const NormalizedFunction &f, const ClassParams &p, const DiskGrid &grid)
{
    grid.validate();
    ThmN1Report rep;
    rep.alpha = p.alpha();
    rep.beta = p.beta();
    const auto g = g_operator(f, p);
    auto radii = grid.radii;
    if (grid.gated_radius && tail_estimate(g, *grid.gated_radius) < tol_pass / 10.0) {
        radii.push_back(*grid.gated_radius);
    }
    const double dtheta = 2.0 * std::numbers::pi / grid.angles_per_ring;
    for (double r : radii) {
        for (int j = 0; j < grid.angles_per_ring; ++j) {
            const cplx w = g.evaluate_unchecked(std::polar(r, dtheta * j));
            ++rep.points_checked;
            if (!delta_region_contains(p, w)) {
                if (rep.points_outside == 0) {
                    rep.first_outside = w;
                }
                ++rep.points_outside;
            }
        }
    }
    rep.g_in_delta = rep.points_outside == 0;
    rep.generator = min_margin(f, ClassId::generator, grid);
    rep.consistent = !rep.g_in_delta || rep.generator.margin >= -tol_pass;
    return rep;
}

cplx BerksonPortaDecomposition::reconstruct(cplx z) const
{
    return (z - tau) * (1.0 - z * std::conj(tau)) * evaluate(p, z);
}

BerksonPortaDecomposition berkson_porta(const NormalizedFunction &f, const DiskGrid &grid)
{
    return {cplx{}, f_over_z(f), min_margin(f, ClassId::generator, grid)};
}

ChainReport marx_strohhacker_audit(const NormalizedFunction &f, const DiskGrid &grid)
{
    ChainReport rep{min_margin(f, ClassId::convex, grid), min_margin(f, ClassId::starlike_half, grid),
                    min_margin(f, ClassId::a_half, grid), min_margin(f, ClassId::generator, grid), {}};
    const MembershipReport *chain[] = {&rep.convex, &rep.starlike_half, &rep.a_half, &rep.generator};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (chain[i]->verdict == Verdict::pass && chain[j]->verdict == Verdict::fail) {
                rep.violations.push_back(to_string(chain[i]->class_id) + " passes but " +
                                         to_string(chain[j]->class_id) + " fails");
            }
        }
    }
    return rep;
}

void to_json(nlohmann::json &j, const DiskGrid &g)
{
    j = nlohmann::json{{"radii", g.radii},
                       {"angles_per_ring", g.angles_per_ring},
                       {"refinement_depth", g.refinement_depth},
                       {"gated_radius", g.gated_radius ? nlohmann::json(*g.gated_radius) : nlohmann::json(nullptr)}};
}

void to_json(nlohmann::json &j, const MembershipReport &r)
{
    nlohmann::json grid = r.grid;
    grid["radii_used"] = r.radii_used;
    j = nlohmann::json{{"class", to_string(r.class_id)},
                       {"alpha", r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json(nullptr)},
                       {"beta", r.beta ? nlohmann::json(*r.beta) : nlohmann::json(nullptr)},
                       {"threshold", r.threshold},
                       {"margin", r.margin},
                       {"argmin", complex_to_json(r.argmin)},
                       {"verdict", to_string(r.verdict)},
                       {"truncation_warning", r.truncation_warning},
                       {"tail_estimate", r.tail},
                       {"grid", std::move(grid)}};
}

void to_json(nlohmann::json &j, const ThmN1Report &r)
{
    j = nlohmann::json{{"alpha", r.alpha},
                       {"beta", r.beta},
                       {"g_in_delta", r.g_in_delta},
                       {"points_checked", r.points_checked},
                       {"points_outside", r.points_outside},
                       {"first_outside", complex_to_json(r.first_outside)},
                       {"generator", r.generator},
                       {"consistent", r.consistent},
                       {"note", "Delta-range is sufficient, not necessary, for generator status"}};
}

void to_json(nlohmann::json &j, const ChainReport &r)
{
    j = nlohmann::json{{"convex", r.convex},
                       {"starlike_half", r.starlike_half},
                       {"A_half", r.a_half},
                       {"generator", r.generator},
                       {"violations", r.violations},
                       {"ok", r.ok()}};
}

} // namespace schlicht
