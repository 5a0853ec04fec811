#include "schlicht/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "schlicht/briot_bouquet.hpp"
#include "schlicht/errors.hpp"
#include "schlicht/explore.hpp"
#include "schlicht/membership.hpp"
#include "schlicht/operators.hpp"
#include "schlicht/random.hpp"
#include "schlicht/semigroup.hpp"
#include "schlicht/series.hpp"

#ifndef SCHLICHT_VERSION
#define SCHLICHT_VERSION "0.0.0"
#endif

namespace schlicht::cli
{

namespace
{

using nlohmann::json;

// A flag whose value violates a constraint.
struct UsageError : std::runtime_error {
    UsageError(const std::string &flag, const std::string &constraint)
        : std::runtime_error(flag + ": " + constraint)
    {
    }
};

struct Common {
    std::string format = "json";
    std::string output;
    bool no_timestamp = false;
    std::uint64_t seed = 1;
    std::optional<int> trunc;
};

struct GridFlags {
    std::vector<double> rings;
    int angles = 720;
    int depth = 2;

    [[nodiscard]] DiskGrid grid() const
    {
        auto g = DiskGrid::standard();
        if (!rings.empty()) {
            g.radii = rings;
            g.gated_radius.reset();
        }
        g.angles_per_ring = angles;
        g.refinement_depth = depth;
        try {
            g.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError("--grid-rings/--grid-angles", e.what());
        }
        return g;
    }
};

int truncation_order(const Common &c)
{
    int n = default_truncation_order;
    if (const char *env = std::getenv("SCHLICHT_TRUNC"); env && *env) {
        try {
            n = std::stoi(env);
        } catch (const std::exception &) {
            throw UsageError("SCHLICHT_TRUNC", "must be an integer");
        }
    }
    if (c.trunc) {
        n = *c.trunc;
    }
    if (n < 8 || n > 2000) {
        throw UsageError("--trunc", "truncation order must lie in [8, 2000]");
    }
    return n;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json make_header(const std::string &command, const Common &c, int trunc, const std::optional<DiskGrid> &grid)
{
    json h{{"tool", "schlicht"},
           {"version", SCHLICHT_VERSION},
           {"command", command},
           {"seed", c.seed},
           {"trunc", trunc},
           {"grid", grid ? json(*grid) : json(nullptr)}};
    if (!c.no_timestamp) {
        h["timestamp"] = utc_timestamp();
    }
    return h;
}

std::string csv_header_line(const json &header)
{
    return "# " + header.dump() + "\n";
}

void emit(const Common &c, const std::string &payload, std::ostream &out)
{
    if (c.output.empty() || c.output == "-") {
        out << payload;
        return;
    }
    const std::filesystem::path target(c.output);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw UsageError("--output", "cannot open '" + c.output + "' for writing");
        }
        os << payload;
        if (!os) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

std::string json_payload(const json &header, json body)
{
    body["header"] = header;
    return body.dump(2) + "\n";
}

std::vector<cplx> parse_lambda_grid(const std::string &spec)
{
    if (spec == "default") {
        return default_lambda_grid();
    }
    if (spec == "real") {
        std::vector<cplx> g;
        for (int i = 0; i <= 40; ++i) {
            g.emplace_back(-1.0 + i / 10.0, 0.0);
        }
        return g;
    }
    // XMIN:XMAX:STEP@Y1,Y2,...
    const auto at = spec.find('@');
    const auto xs = spec.substr(0, at);
    double x0 = 0.0, x1 = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream is(xs);
    if (!(is >> x0 >> c1 >> x1 >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || x1 < x0) {
        throw UsageError("--lambda-grid", "expected 'default', 'real' or XMIN:XMAX:STEP[@Y1,Y2,...]");
    }
    std::vector<double> ys{0.0};
    if (at != std::string::npos) {
        ys.clear();
        std::istringstream ysin(spec.substr(at + 1));
        std::string tok;
        while (std::getline(ysin, tok, ',')) {
            try {
                ys.push_back(std::stod(tok));
            } catch (const std::exception &) {
                throw UsageError("--lambda-grid", "imaginary parts must be decimal numbers");
            }
        }
    }
    const auto count = static_cast<int>(std::floor((x1 - x0) / step + 1e-9));
    if (count > 100000) {
        throw UsageError("--lambda-grid", "too many points");
    }
    std::vector<cplx> g;
    for (double y : ys) {
        for (int i = 0; i <= count; ++i) {
            g.emplace_back(x0 + i * step, y);
        }
    }
    return g;
}

cplx parse_point(const std::string &flag, const std::string &s)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) {
            return {std::stod(s), 0.0};
        }
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception &) {
        throw UsageError(flag, "expected RE or RE,IM");
    }
}

struct FunctionFlags {
    std::string name;
    std::string series_path;

    [[nodiscard]] NormalizedFunction load(int trunc) const
    {
        if (!series_path.empty()) {
            std::ifstream is(series_path);
            if (!is) {
                throw UsageError("--series", "cannot read '" + series_path + "'");
            }
            try {
                const auto s = json::parse(is).get<TaylorSeries>();
                return NormalizedFunction::normalize(s, 1e-10);
            } catch (const std::exception &e) {
                throw UsageError("--series", std::string("invalid series JSON: ") + e.what());
            }
        }
        if (name.empty()) {
            throw UsageError("--function", "a built-in function name or --series file is required");
        }
        try {
            return named_function(name, trunc);
        } catch (const std::invalid_argument &e) {
            throw UsageError("--function", e.what());
        }
    }
};

ClassParams class_params(double alpha, double beta)
{
    if (alpha + beta >= 2.0) {
        throw UsageError("--alpha/--beta", "alpha+beta must be < 2");
    }
    return {alpha, beta};
}

void check_format(const Common &c)
{
    if (c.format != "json" && c.format != "csv") {
        throw UsageError("--format", "must be json or csv");
    }
}

void add_common(CLI::App *sub, Common &c)
{
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--output", c.output, "Output file (default stdout)");
    sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp from the header");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--trunc", c.trunc, "Truncation order (default 96 or $SCHLICHT_TRUNC)");
}

void add_grid(CLI::App *sub, GridFlags &g)
{
    sub->add_option("--grid-rings", g.rings, "Comma-separated ring radii")->delimiter(',');
    sub->add_option("--grid-angles", g.angles, "Angles per ring (>= 64)");
    sub->add_option("--grid-depth", g.depth, "Local refinement levels");
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// ---- commands --------------------------------------------------------------

int cmd_extremal(const Common &c, const std::string &line, double alpha, double beta, int k,
                 const std::string &lambda_spec, std::ostream &out)
{
    const int trunc = truncation_order(c);
    if (k != 1 && k != 2) {
        throw UsageError("--k", "must be 1 or 2");
    }
    const auto lambdas = parse_lambda_grid(lambda_spec);
    std::optional<ExtremalResult> res;
    double mu = 0.0;
    if (line == "beta") {
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw UsageError("--beta", "must lie in [0, 1] on the beta line");
        }
        res = extremal_mocanu(beta, k, trunc, lambdas);
        mu = ClassParams(0.0, beta).mu();
    } else if (line == "alpha") {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw UsageError("--alpha", "must lie in (0, 1] on the alpha line");
        }
        res = extremal_alpha(alpha, k, trunc, lambdas);
        mu = ClassParams(alpha, 1.0 - alpha).mu();
    } else {
        throw UsageError("--line", "must be beta or alpha");
    }
    const auto header = make_header("extremal", c, trunc, std::nullopt);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header) << "lambda_re,lambda_im,phi_re,phi_im,abs_phi,bound\n";
        for (const auto &[l, v] : res->phi_at) {
            os << fmt(l.real()) << ',' << fmt(l.imag()) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << ','
               << fmt(std::abs(v)) << ',' << fmt(std::max(mu, std::abs(1.0 - l))) << '\n';
        }
        emit(c, os.str(), out);
    } else {
        json body = *res;
        body["mu"] = mu;
        emit(c, json_payload(header, std::move(body)), out);
    }
    return success;
}

int cmd_membership(const Common &c, const std::string &cls, const FunctionFlags &fn, double alpha, double beta,
                   const GridFlags &gf, std::ostream &out)
{
    const int trunc = truncation_order(c);
    ClassId id{};
    try {
        id = class_id_from_string(cls);
    } catch (const std::invalid_argument &e) {
        throw UsageError("--class", e.what());
    }
    const auto f = fn.load(trunc);
    const auto grid = gf.grid();
    std::optional<ClassParams> params;
    if (id == ClassId::m_alpha_beta) {
        params = class_params(alpha, beta);
    }
    const auto rep = params ? min_margin(f, id, *params, grid) : min_margin(f, id, grid);
    const auto header = make_header("membership", c, trunc, grid);
    if (c.format == "csv") {
        // Per-ring minima.
        const auto [test, threshold] = class_test(f, id, params);
        std::ostringstream os;
        os << csv_header_line(header) << "radius,margin,argmin_re,argmin_im\n";
        for (double r : rep.radii_used) {
            DiskGrid ring = grid;
            ring.radii = {r};
            ring.gated_radius.reset();
            const auto s = scan_margin(test, threshold, ring);
            os << fmt(r) << ',' << fmt(s.margin) << ',' << fmt(s.argmin.real()) << ',' << fmt(s.argmin.imag())
               << '\n';
        }
        emit(c, os.str(), out);
    } else {
        json body = rep;
        body["function"] = fn.series_path.empty() ? fn.name : fn.series_path;
        emit(c, json_payload(header, std::move(body)), out);
    }
    return rep.verdict == Verdict::pass ? success : audit_violation;
}

int cmd_region(const Common &c, double alpha, double beta, const std::optional<std::string> &point,
               const FunctionFlags &fn, const GridFlags &gf, int resolution, double extent, std::ostream &out)
{
    const int trunc = truncation_order(c);
    const auto p = class_params(alpha, beta);
    if (!fn.name.empty() || !fn.series_path.empty()) {
        const auto grid = gf.grid();
        const auto rep = thm_n1_audit(fn.load(trunc), p, grid);
        const auto header = make_header("region", c, trunc, grid);
        json body = rep;
        emit(c, json_payload(header, std::move(body)), out);
        return rep.consistent ? success : audit_violation;
    }
    const auto header = make_header("region", c, trunc, std::nullopt);
    if (point) {
        const auto w = parse_point("--point", *point);
        json body{{"alpha", alpha}, {"beta", beta}, {"w", complex_to_json(w)}, {"in_delta", delta_region_contains(p, w)}};
        emit(c, json_payload(header, std::move(body)), out);
        return success;
    }
    if (resolution < 2 || resolution > 2001) {
        throw UsageError("--resolution", "must lie in [2, 2001]");
    }
    if (!(extent > 0.0)) {
        throw UsageError("--extent", "must be positive");
    }
    std::ostringstream os;
    json rows = json::array();
    if (c.format == "csv") {
        os << csv_header_line(header) << "x,y,in_delta\n";
    }
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const double x = -extent + 2.0 * extent * i / (resolution - 1);
            const double y = -extent + 2.0 * extent * j / (resolution - 1);
            const bool in = delta_region_contains(p, {x, y});
            if (c.format == "csv") {
                os << fmt(x) << ',' << fmt(y) << ',' << (in ? 1 : 0) << '\n';
            } else {
                rows.push_back({x, y, in});
            }
        }
    }
    if (c.format == "csv") {
        emit(c, os.str(), out);
    } else {
        emit(c, json_payload(header, json{{"alpha", alpha}, {"beta", beta}, {"raster", std::move(rows)}}), out);
    }
    return success;
}

int cmd_sweep(const Common &c, const std::string &line, double alpha, double beta, int trials,
              const std::string &lambda_spec, std::ostream &out)
{
    const int trunc = truncation_order(c);
    const auto lambdas = parse_lambda_grid(lambda_spec);
    if (trials < 0) {
        throw UsageError("--trials", "must be >= 0");
    }
    std::vector<NormalizedFunction> members;
    std::optional<ClassParams> p;
    if (line == "beta") {
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw UsageError("--beta", "must lie in [0, 1] on the beta line");
        }
        p = ClassParams(0.0, beta);
        for (int k : {1, 2}) {
            members.push_back(extremal_mocanu(beta, k, trunc, {}).f);
        }
    } else if (line == "alpha") {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw UsageError("--alpha", "must lie in (0, 1] on the alpha line");
        }
        if (trials > 0 && alpha < 0.5) {
            throw UsageError("--alpha", "sampled members require alpha in [1/2, 1]");
        }
        p = ClassParams(alpha, 1.0 - alpha);
        for (int k : {1, 2}) {
            members.push_back(extremal_alpha(alpha, k, trunc, {}).f);
        }
    } else {
        throw UsageError("--line", "must be beta or alpha");
    }
    if (trials > 0) {
        auto extra = sample_members(*p, trials, c.seed, trunc);
        members.insert(members.end(), extra.begin(), extra.end());
    }
    const auto rep = fs_bound_audit(members, *p, lambdas);
    const auto header = make_header("sweep", c, trunc, std::nullopt);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header);
        write_fs_sweep_csv(os, rep);
        emit(c, os.str(), out);
    } else {
        emit(c, json_payload(header, json(rep)), out);
    }
    return rep.violations == 0 ? success : audit_violation;
}

int cmd_semigroup(const Common &c, const FunctionFlags &fn, const std::string &z0s, double t_end, int steps,
                  std::optional<double> alpha, bool force, std::ostream &out)
{
    const int trunc = truncation_order(c);
    const auto z0 = parse_point("--z0", z0s);
    if (!(std::abs(z0) < 1.0)) {
        throw UsageError("--z0", "start point must satisfy |z0| < 1");
    }
    if (!(t_end >= 0.0)) {
        throw UsageError("--t-end", "must be >= 0");
    }
    if (steps < 1) {
        throw UsageError("--steps", "must be >= 1");
    }
    if (alpha && !(*alpha >= 0.5 && *alpha <= 1.0)) {
        throw UsageError("--alpha", "the growth bound is stated for alpha in [1/2, 1]");
    }
    const auto f = fn.load(trunc);
    std::vector<double> times{0.0};
    if (t_end > 0.0) {
        for (int i = 1; i <= steps; ++i) {
            times.push_back(t_end * i / steps);
        }
    }
    EvolveOptions opts;
    opts.check_generator = !force;
    std::optional<SemigroupTrajectory> run;
    try {
        run = evolve(f, z0, times, opts);
    } catch (const std::invalid_argument &e) {
        throw UsageError("--function/--series", std::string(e.what()) + "; pass --force to integrate anyway");
    }
    const auto &traj = *run;
    int violations = 0;
    if (alpha) {
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            if (std::abs(traj.points[i]) > alpha_growth_bound(*alpha, traj.times[i], z0) * (1.0 + 1e-6)) {
                ++violations;
            }
        }
    }
    const auto header = make_header("semigroup", c, trunc, std::nullopt);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header);
        write_trajectory_csv(os, traj, alpha ? &*alpha : nullptr);
        emit(c, os.str(), out);
    } else {
        json body = traj;
        if (alpha) {
            json bounds = json::array();
            for (double t : traj.times) {
                bounds.push_back(alpha_growth_bound(*alpha, t, z0));
            }
            body["alpha"] = *alpha;
            body["bound"] = std::move(bounds);
            body["violations"] = violations;
        }
        emit(c, json_payload(header, std::move(body)), out);
    }
    return violations == 0 ? success : audit_violation;
}

std::vector<double> default_targets(double from, double upper)
{
    std::vector<double> t;
    for (int i = 1;; ++i) {
        const double v = std::round((from + 0.1 * i) * 1e10) / 1e10;
        if (v > upper + 1e-12) {
            break;
        }
        t.push_back(v);
    }
    return t;
}

int cmd_audit_filtration(const Common &c, const std::string &line, double alpha, double beta,
                         std::vector<double> targets, int trials, const GridFlags &gf, std::ostream &out)
{
    const int trunc = truncation_order(c);
    if (trials < 1) {
        throw UsageError("--trials", "must be >= 1");
    }
    FiltrationOptions opts;
    opts.samples = trials;
    opts.seed = c.seed;
    opts.order = trunc;
    opts.grid = gf.grid();
    FiltrationReport rep;
    if (line == "beta") {
        if (!(beta < 1.0)) {
            throw UsageError("--beta", "source class must satisfy beta < 1");
        }
        if (targets.empty()) {
            targets = default_targets(beta, 1.0);
        }
        for (double t : targets) {
            if (!(t > beta && t <= 1.0)) {
                throw UsageError("--targets", "targets must satisfy beta < target <= 1");
            }
        }
        rep = filtration_audit_beta(beta, targets, opts);
    } else if (line == "alpha") {
        if (!(alpha >= 0.5 && alpha < 1.0)) {
            throw UsageError("--alpha", "source class must satisfy 1/2 <= alpha < 1");
        }
        if (targets.empty()) {
            targets = default_targets(alpha, 1.0);
        }
        for (double t : targets) {
            if (!(t > alpha && t < 2.0)) {
                throw UsageError("--targets", "targets must satisfy alpha < target < 2");
            }
        }
        rep = filtration_audit_alpha(alpha, targets, opts);
    } else {
        throw UsageError("--line", "must be beta or alpha");
    }
    const auto header = make_header("audit-filtration", c, trunc, opts.grid);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header) << "to,checked,failures,inconclusive,worst_margin,probe_witnesses\n";
        for (std::size_t i = 0; i < rep.targets.size(); ++i) {
            const auto &t = rep.targets[i];
            os << fmt(t.to) << ',' << t.checked << ',' << t.failures << ',' << t.inconclusive << ','
               << fmt(t.worst_margin) << ',' << rep.strictness[i].witnesses << '\n';
        }
        emit(c, os.str(), out);
    } else {
        emit(c, json_payload(header, json(rep)), out);
    }
    return rep.violations == 0 ? success : audit_violation;
}

int cmd_audit_schwarz(const Common &c, int trials, std::ostream &out)
{
    if (trials < 1) {
        throw UsageError("--trials", "must be >= 1");
    }
    const std::vector<cplx> s_values{0.0, 1.0, -1.0, 2.0, -2.0, {0.0, 1.0}};
    const auto rep = schwarz_lemma_audit(trials, c.seed, s_values);
    const auto header = make_header("audit-schwarz", c, truncation_order(c), std::nullopt);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header) << "trials,max_excess_b2,max_excess_fs,violations\n"
           << rep.trials << ',' << fmt(rep.max_excess_b2) << ',' << fmt(rep.max_excess_fs) << ',' << rep.violations
           << '\n';
        emit(c, os.str(), out);
    } else {
        emit(c, json_payload(header, json(rep)), out);
    }
    return rep.violations == 0 ? success : audit_violation;
}

int cmd_audit_bound(const Common &c, const std::string &kind, double alpha, double beta, int trials,
                    const std::string &lambda_spec, std::ostream &out)
{
    const int trunc = truncation_order(c);
    const auto p = class_params(alpha, beta);
    if (trials < 1) {
        throw UsageError("--trials", "must be >= 1");
    }
    if (!can_sample(p)) {
        throw UsageError("--alpha/--beta",
                         "members can be sampled only on alpha=0 (beta<=1) or beta=1-alpha (1/2<=alpha<=1)");
    }
    const auto members = sample_members(p, trials, c.seed, trunc);
    const auto header = make_header("audit-bound", c, trunc, std::nullopt);
    if (kind == "fs") {
        if (!p.has_mu()) {
            throw UsageError("--alpha/--beta", "5*alpha+4*beta must be < 6");
        }
        const auto rep = fs_bound_audit(members, p, parse_lambda_grid(lambda_spec));
        if (c.format == "csv") {
            std::ostringstream os;
            os << csv_header_line(header);
            write_fs_sweep_csv(os, rep);
            emit(c, os.str(), out);
        } else {
            emit(c, json_payload(header, json(rep)), out);
        }
        return rep.violations == 0 ? success : audit_violation;
    }
    if (kind != "semigroup") {
        throw UsageError("--kind", "must be fs or semigroup");
    }
    if (!(std::abs(alpha + beta - 1.0) < 1e-12 && alpha >= 0.5 && alpha <= 1.0)) {
        throw UsageError("--alpha/--beta", "the semigroup bound needs beta = 1-alpha with alpha in [1/2, 1]");
    }
    int violations = 0;
    double max_ratio = 0.0;
    std::vector<BoundAuditReport> reports;
    for (std::size_t m = 0; m < members.size(); ++m) {
        SplitMix64 rng(trial_seed(c.seed ^ 0x9e3779b9ULL, m));
        std::vector<std::pair<cplx, double>> samples;
        const cplx z0 = std::polar(0.9 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
        for (double t : {0.5, 1.0, 2.0}) {
            samples.emplace_back(z0, t);
        }
        reports.push_back(bound_audit_alpha(members[m], alpha, samples));
        violations += reports.back().violations;
        max_ratio = std::max(max_ratio, reports.back().max_ratio);
    }
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header_line(header) << "member,z0_re,z0_im,t,modulus,bound\n";
        for (std::size_t m = 0; m < reports.size(); ++m) {
            for (const auto &s : reports[m].samples) {
                os << m << ',' << fmt(s.z0.real()) << ',' << fmt(s.z0.imag()) << ',' << fmt(s.t) << ','
                   << fmt(s.modulus) << ',' << fmt(s.bound) << '\n';
            }
        }
        emit(c, os.str(), out);
    } else {
        json body{{"alpha", alpha},
                  {"members", reports.size()},
                  {"violations", violations},
                  {"max_ratio", max_ratio},
                  {"reports", reports}};
        emit(c, json_payload(header, std::move(body)), out);
    }
    return violations == 0 ? success : audit_violation;
}

} // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Numerical toolkit for the classes M_{alpha,beta} of normalized analytic functions", "schlicht"};
    app.set_version_flag("--version", SCHLICHT_VERSION);
    app.require_subcommand(1);

    Common common;
    GridFlags grid;
    FunctionFlags fn;
    double alpha = 0.0;
    double beta = 0.0;
    int k = 2;
    int trials = 0;
    std::string line = "beta";
    std::string lambda_spec = "default";
    std::string cls = "M";
    std::string kind = "fs";
    std::optional<std::string> point;
    int resolution = 161;
    double extent = 4.0;
    std::string z0 = "0.5,0";
    double t_end = 1.0;
    int steps = 20;
    std::optional<double> bound_alpha;
    bool force = false;
    std::vector<double> targets;

    auto *extremal = app.add_subcommand("extremal", "Extremal functions and their Fekete-Szego values");
    add_common(extremal, common);
    extremal->add_option("--line", line, "beta or alpha");
    extremal->add_option("--alpha", alpha);
    extremal->add_option("--beta", beta);
    extremal->add_option("--k", k, "1 or 2");
    extremal->add_option("--lambda-grid", lambda_spec);

    auto *membership = app.add_subcommand("membership", "Grid-margin class membership");
    add_common(membership, common);
    add_grid(membership, grid);
    membership->add_option("--class", cls, "M, generator, starlike_half, convex, A_half");
    membership->add_option("--function", fn.name, "id, koebe, halfplane, neglog");
    membership->add_option("--series", fn.series_path, "Series JSON file");
    membership->add_option("--alpha", alpha);
    membership->add_option("--beta", beta);

    auto *region = app.add_subcommand("region", "Delta-region classifier and generator-sufficiency audit");
    add_common(region, common);
    add_grid(region, grid);
    region->add_option("--alpha", alpha);
    region->add_option("--beta", beta);
    region->add_option("--point", point, "RE,IM");
    region->add_option("--function", fn.name);
    region->add_option("--series", fn.series_path);
    region->add_option("--resolution", resolution);
    region->add_option("--extent", extent);

    auto *sweep = app.add_subcommand("sweep", "Fekete-Szego bound versus attained values over a lambda grid");
    add_common(sweep, common);
    sweep->add_option("--line", line, "beta or alpha");
    sweep->add_option("--alpha", alpha);
    sweep->add_option("--beta", beta);
    sweep->add_option("--trials", trials, "Additional sampled members");
    sweep->add_option("--lambda-grid", lambda_spec);

    auto *semigroup = app.add_subcommand("semigroup", "Integrate the semigroup generated by f");
    add_common(semigroup, common);
    semigroup->add_option("--function", fn.name);
    semigroup->add_option("--series", fn.series_path);
    semigroup->add_option("--z0", z0, "RE,IM");
    semigroup->add_option("--t-end", t_end);
    semigroup->add_option("--steps", steps, "Output intervals");
    semigroup->add_option("--alpha", bound_alpha, "Add the M_{alpha,1-alpha} growth bound column");
    semigroup->add_flag("--force", force, "Skip the generator check");

    auto *filtration = app.add_subcommand("audit-filtration", "Sampled check of the filtration inclusions");
    add_common(filtration, common);
    add_grid(filtration, grid);
    filtration->add_option("--line", line, "beta or alpha");
    filtration->add_option("--alpha", alpha, "Source class on the alpha line");
    filtration->add_option("--beta", beta, "Source class on the beta line");
    filtration->add_option("--targets", targets, "Comma-separated larger-class parameters")->delimiter(',');
    filtration->add_option("--trials", trials, "Samples of the source class");

    auto *schwarz = app.add_subcommand("audit-schwarz", "Coefficient inequalities for sampled Schwarz functions");
    add_common(schwarz, common);
    schwarz->add_option("--trials", trials);

    auto *bound = app.add_subcommand("audit-bound", "Fekete-Szego or semigroup-growth bound over sampled members");
    add_common(bound, common);
    bound->add_option("--kind", kind, "fs or semigroup");
    bound->add_option("--alpha", alpha);
    bound->add_option("--beta", beta);
    bound->add_option("--trials", trials);
    bound->add_option("--lambda-grid", lambda_spec);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return success;
    } catch (const CLI::CallForVersion &e) {
        out << SCHLICHT_VERSION << '\n';
        return success;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        check_format(common);
        if (extremal->parsed()) {
            return cmd_extremal(common, line, alpha, beta, k, lambda_spec, out);
        }
        if (membership->parsed()) {
            return cmd_membership(common, cls, fn, alpha, beta, grid, out);
        }
        if (region->parsed()) {
            return cmd_region(common, alpha, beta, point, fn, grid, resolution, extent, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(common, line, alpha, beta, trials, lambda_spec, out);
        }
        if (semigroup->parsed()) {
            return cmd_semigroup(common, fn, z0, t_end, steps, bound_alpha, force, out);
        }
        if (filtration->parsed()) {
            return cmd_audit_filtration(common, line, alpha, beta, targets, trials == 0 ? 200 : trials, grid,
                                        out);
        }
        if (schwarz->parsed()) {
            return cmd_audit_schwarz(common, trials == 0 ? 10000 : trials, out);
        }
        if (bound->parsed()) {
            return cmd_audit_bound(common, kind, alpha, beta, trials == 0 ? 500 : trials, lambda_spec, out);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return audit_violation;
    }
    return usage_error;
}

} // namespace schlicht::cli
