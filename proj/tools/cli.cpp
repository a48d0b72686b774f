#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "polyrad/audit.hpp"
#include "polyrad/error.hpp"
#include "polyrad/fixtures.hpp"
#include "polyrad/io.hpp"
#include "polyrad/symmetry.hpp"

namespace polyrad::cli {

namespace {

namespace fs = std::filesystem;
namespace fx = polyrad::fixtures;

struct Common {
    double tol = 1e-6;
    double tight = 1e-4;
    std::string mode = "float";
    double eps = kDefaultEllipsoidEps;
    std::uint64_t seed = 1;
    std::string report;
    std::string format = "table";

    lp::Mode lp_mode() const { return mode == "rational" ? lp::Mode::Rational : lp::Mode::Float; }
    bool records() const { return format == "records"; }
    audit::Options audit_options() const { return {{tol, tight}, lp_mode(), eps}; }
};

int exit_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::IterationLimit:
        return NumericalError;
    default:
        return InputError;
    }
}

std::string format_vector(const Vector& v)
{
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + io::format_number(v[i]);
    return s + "]";
}

// Column-aligned text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out) const
    {
        std::vector<std::size_t> width;
        for (const auto& row : rows_)
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (width.size() <= i) width.push_back(0);
                width[i] = std::max(width[i], row[i].size());
            }
        for (const auto& row : rows_) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                line += row[i];
                if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
            }
            out << line << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

// Facet enumeration cost guard for presentation conversion.
bool conversion_cheap(std::size_t n, int d)
{
    if (d <= 2) return true;
    double subsets = 1.0;
    for (int i = 0; i < d; ++i) subsets = subsets * static_cast<double>(n - i) / (i + 1);
    return subsets <= 2e5;
}

void require_presentation(const Body& body, Representation rep, const std::string& flag)
{
    const bool have = rep == Representation::V ? body.has_v() : body.has_h();
    if (!have && !conversion_cheap(body.native_size(), body.dim()))
        raise(ErrorCode::RepresentationRequired,
              flag + " needs a " + (rep == Representation::V ? "V" : "H") + "-presentation; convert the input first");
}

// ---------------------------------------------------------------- radii

struct Quantity {
    std::string name;
    std::optional<double> value;
    std::optional<Vector> center;
};

int cmd_radii(const std::string& body_path, const std::string& gauge_path, const Common& o, std::ostream& out)
{
    const Body k = io::read_polytope(body_path);
    std::optional<Body> c;
    if (!gauge_path.empty()) {
        c = io::read_polytope(gauge_path);
        if (c->dim() != k.dim()) raise(ErrorCode::DimensionMismatch, "body and gauge differ in dimension");
    }

    std::vector<Quantity> qs;
    if (c) {
        const ContainmentOptions copts{o.lp_mode()};
        const auto R = circumradius(k, *c, copts);
        const auto r = inradius(k, *c, copts);
        const double R1 = core_radius_1(k, *c, copts);
        const double r1 = width_radius_1(k, *c, copts);
        qs = {{"R", R.rho, R.center}, {"r", r.rho, r.center}, {"R1", R1, {}}, {"D", 2 * R1, {}}, {"r1", r1, {}}, {"w", 2 * r1, {}}};
    } else {
        const auto R = min_enclosing_ball(k.v());
        const auto r = chebyshev(k.h(), o.lp_mode());
        const double R1 = euclid_diameter(k.v());
        qs = {{"R", R.radius, R.center}, {"r", r.radius, r.center}, {"R1", R1, {}}, {"D", 2 * R1, {}}};
        if (k.dim() <= 4) {
            const double r1 = euclid_width(k.v());
            qs.push_back({"r1", r1, {}});
            qs.push_back({"w", 2 * r1, {}});
        } else {
            qs.push_back({"r1", {}, {}});
            qs.push_back({"w", {}, {}});
        }
    }

    if (o.records()) {
        for (const auto& q : qs) {
            if (!q.value) continue;
            out << "{\"name\":\"" << q.name << "\",\"value\":" << io::format_number(*q.value);
            if (q.center) out << ",\"center\":" << format_vector(*q.center);
            out << "}\n";
        }
    } else {
        out << "gauge: " << (c ? gauge_path : std::string("Euclidean ball")) << '\n';
        Table t({"quantity", "value", "center"});
        for (const auto& q : qs)
            t.add({q.name, q.value ? io::format_number(*q.value) : "n/a (d > 4)", q.center ? format_vector(*q.center) : ""});
        t.print(out);
    }
    return Ok;
}

// ---------------------------------------------------------------- symmetry

int cmd_symmetry(const std::string& body_path, bool john, bool loewner, const Common& o, std::ostream& out)
{
    const Body k = io::read_polytope(body_path);
    if (john) require_presentation(k, Representation::H, "--john");
    if (loewner) require_presentation(k, Representation::V, "--loewner");

    std::vector<AsymmetryResult> results{minkowski_asymmetry(k, {o.lp_mode()})};
    if (john) results.push_back(john_asymmetry(k, o.eps));
    if (loewner) results.push_back(loewner_asymmetry(k, o.eps));

    if (o.records()) {
        for (const auto& a : results)
            out << "{\"name\":\"" << to_string(a.kind) << "\",\"value\":" << io::format_number(a.value)
                << ",\"center\":" << format_vector(a.center) << ",\"symmetric\":" << (a.symmetric() ? "true" : "false") << "}\n";
    } else {
        Table t({"measure", "value", "center", "symmetric"});
        for (const auto& a : results)
            t.add({std::string(to_string(a.kind)), io::format_number(a.value), format_vector(a.center), a.symmetric() ? "yes" : "no"});
        t.print(out);
    }
    return Ok;
}

// ---------------------------------------------------------------- audit

struct AuditInput {
    std::string label;
    Body body;
};

struct AuditOutcome {
    std::vector<audit::InequalityReport> reports;
    std::optional<ErrorCode> error;
    std::string message;
};

VPolytope random_body(std::mt19937_64& rng, int d)
{
    std::uniform_int_distribution<int> count(std::max(5, d + 1), std::max(12, d + 1));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::vector<Vector> pts(static_cast<std::size_t>(count(rng)), Vector(d));
        for (auto& p : pts)
            for (int i = 0; i < d; ++i) p[i] = u(rng);
        if (affine_dimension(pts) == d) return VPolytope(d, std::move(pts));
    }
}

void print_reports(const std::vector<audit::InequalityReport>& reports, const Common& o, std::ostream& out)
{
    if (o.records()) {
        for (const auto& r : reports) out << io::format_record(r) << '\n';
        return;
    }
    Table t({"inequality", "lhs", "rhs", "slack", "satisfied", "tight"});
    for (const auto& r : reports)
        t.add({r.name, io::format_number(r.lhs), io::format_number(r.rhs), io::format_number(r.slack), r.satisfied ? "yes" : "NO",
               r.tight ? "yes" : "no"});
    t.print(out);
}

int cmd_audit(const std::vector<std::string>& items, bool all, const std::string& gauge_path, int random_count, int dim,
              const Common& o, std::ostream& out, std::ostream& err)
{
    const auto& names = audit::audit_names();
    std::vector<std::string> which;
    std::vector<std::string> files;
    for (const auto& item : items) {
        const bool is_name = std::find(names.begin(), names.end(), item) != names.end();
        if (is_name && files.empty())
            which.push_back(item);
        else if (item == "all" && files.empty())
            all = true;
        else
            files.push_back(item);
    }
    if (all) which.clear();
    if (files.empty() && random_count == 0) raise(ErrorCode::ParseError, "audit needs body files or --random N");
    if (dim < 1) raise(ErrorCode::ParameterOutOfRange, "--dim must be positive");

    audit::Gauge gauge = audit::Gauge::euclidean();
    if (!gauge_path.empty()) gauge = audit::Gauge::of(io::read_polytope(gauge_path));

    std::vector<AuditInput> inputs;
    for (const auto& f : files) inputs.push_back({f, io::read_polytope(f)});
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < random_count; ++i) inputs.push_back({"random#" + std::to_string(i), Body(random_body(rng, dim))});
    for (const auto& in : inputs)
        if (gauge.body && gauge.body->dim() != in.body.dim())
            raise(ErrorCode::DimensionMismatch, in.label + " and the gauge differ in dimension");

    const audit::Options opts = o.audit_options();
    std::vector<std::future<AuditOutcome>> jobs;
    for (const auto& in : inputs)
        jobs.push_back(std::async(std::launch::async, [&in, &gauge, &which, &opts] {
            AuditOutcome result;
            try {
                result.reports = audit::run_audits(in.body, gauge, which, opts);
            } catch (const Error& e) {
                result.error = e.code();
                result.message = e.what();
            }
            return result;
        }));

    std::ofstream report;
    if (!o.report.empty()) {
        report.open(o.report);
        if (!report) raise(ErrorCode::FileNotFound, "cannot write " + o.report);
    }

    int status = Ok;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const AuditOutcome result = jobs[i].get();
        if (!o.records()) out << "# " << inputs[i].label << '\n';
        if (result.error) {
            err << "error: " << inputs[i].label << ": " << result.message << '\n';
            if (status == Ok || status == Violation) status = exit_for(*result.error);
            continue;
        }
        print_reports(result.reports, o, out);
        for (const auto& r : result.reports) {
            if (report.is_open()) report << io::format_record(r) << '\n';
            if (!r.satisfied && status == Ok) status = Violation;
        }
    }
    return status;
}

// ---------------------------------------------------------------- fixture

struct FixtureArgs {
    std::string family;
    std::string output;
    int d = 2;
    double alpha = 0.5;
    double beta = 0.25;
    double sigma = 1.5;
    int m = 720;
    std::optional<std::uint64_t> affine_seed;
};

fs::path sidecar_path(const fs::path& p)
{
    fs::path s = p;
    s.replace_extension();
    return s.string() + ".radii.json";
}

fs::path with_suffix(const fs::path& p, const std::string& suffix)
{
    fs::path s = p;
    const auto ext = p.has_extension() ? p.extension().string() : std::string(".json");
    s.replace_extension();
    return s.string() + suffix + ext;
}

int cmd_fixture(const FixtureArgs& a, std::ostream& out)
{
    const fs::path target = a.output.empty() ? fs::path(a.family + ".json") : fs::path(a.output);
    std::vector<std::pair<fs::path, std::string>> files;
    fx::FixtureRadii radii;
    const double d = a.d;

    if (a.family == "simplex") {
        if (a.d < 1) raise(ErrorCode::ParameterOutOfRange, "-d must be positive");
        files.push_back({target, io::format_polytope(fx::regular_simplex(a.d))});
        radii.R = 1.0;
        radii.r = 1.0 / d;
        radii.R1 = std::sqrt((d + 1) / (2 * d));
        radii.r1 = fx::regular_simplex_width_radius(a.d);
        radii.s = radii.s0 = d;
        radii.formula_source = "regular simplex";
    } else if (a.family == "cube") {
        if (a.d < 1) raise(ErrorCode::ParameterOutOfRange, "-d must be positive");
        files.push_back({target, io::format_polytope(fx::cube(a.d))});
        radii.R = radii.R1 = std::sqrt(d);
        radii.r = radii.r1 = 1.0;
        radii.s = radii.s0 = 1.0;
        radii.formula_source = "cube [-1, 1]^d";
    } else if (a.family == "cross") {
        if (a.d < 1) raise(ErrorCode::ParameterOutOfRange, "-d must be positive");
        files.push_back({target, io::format_polytope(fx::cross_polytope(a.d))});
        radii.R = radii.R1 = 1.0;
        radii.r = radii.r1 = 1 / std::sqrt(d);
        radii.s = radii.s0 = 1.0;
        radii.formula_source = "cross-polytope";
    } else if (a.family == "partial-diff") {
        const auto p = fx::partial_difference_pair(a.d, a.alpha, a.beta, a.affine_seed);
        files.push_back({with_suffix(target, "_K"), io::format_polytope(p.k)});
        files.push_back({with_suffix(target, "_C"), io::format_polytope(p.c)});
        radii = p.radii;
    } else if (a.family == "jung") {
        files.push_back({target, io::format_polytope(fx::build_jung_fixture(a.sigma, a.m))});
        radii = fx::conv_simplex_ball_radii(2, 1 / a.sigma);
    } else if (a.family == "steinhagen") {
        files.push_back({target, io::format_polytope(fx::build_steinhagen_fixture(a.sigma, a.m))});
        radii = fx::simplex_cap_ball_radii(2, a.sigma / 2);
    } else if (a.family == "figure") {
        files.push_back({target, io::format_polytope(fx::build_figure_fixture(a.m))});
        radii = fx::figure_radii();
    } else if (a.family == "polygon") {
        files.push_back({target, io::format_polytope(fx::polygonal_ball(a.m))});
        radii.R = 1.0;
        radii.r = std::cos(M_PI / a.m);
        radii.formula_source = "regular polygon inscribed in the unit circle";
    } else {
        raise(ErrorCode::ParameterOutOfRange, "unknown fixture family '" + a.family + "'");
    }

    files.push_back({sidecar_path(target), io::format_radii(radii)});
    for (const auto& [path, text] : files) {
        io::write_text(path, text);
        out << "wrote " << path.string() << '\n';
    }
    return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized radii, asymmetry measures and inequality audits for convex polytopes", "polyrad"};
    app.fallthrough();
    app.require_subcommand(1);

    Common o;
    app.add_option("--tol", o.tol, "Audit tolerance: satisfied iff slack >= -tol (negative demands a margin)");
    app.add_option("--tight", o.tight, "Tightness tolerance: tight iff |slack| <= tight")->check(CLI::NonNegativeNumber);
    app.add_option("--mode", o.mode, "LP arithmetic")->check(CLI::IsMember({"float", "rational"}));
    app.add_option("--eps", o.eps, "Ellipsoid accuracy in (0, 1)");
    app.add_option("--seed", o.seed, "Seed for randomized commands");
    app.add_option("--report", o.report, "Write line-delimited report records to this file");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "records"}));

    std::string body, gauge;
    auto* radii = app.add_subcommand("radii", "R, r, R1 (D), r1 (w) of a body against a gauge (default: Euclidean ball)");
    radii->add_option("body", body, "Polytope file")->required();
    radii->add_option("--gauge", gauge, "Gauge polytope file");

    bool john = false, loewner = false;
    auto* symmetry = app.add_subcommand("symmetry", "Minkowski asymmetry and center; optionally John and Loewner asymmetry");
    symmetry->add_option("body", body, "Polytope file")->required();
    symmetry->add_flag("--john", john, "Asymmetry about the John center (H-presentation)");
    symmetry->add_flag("--loewner", loewner, "Asymmetry about the Loewner center (V-presentation)");

    std::vector<std::string> items;
    bool all = false;
    int random_count = 0, dim = 2;
    auto* audit_cmd = app.add_subcommand("audit", "Audit inequalities: audit [names...] files... | --random N");
    audit_cmd->add_option("items", items, "Audit names (bohnenblust, leichtweiss, jung, steinhagen, in-circum, chain, alexander, sharp-john) followed by polytope files");
    audit_cmd->add_flag("--all", all, "Run every applicable audit (the default)");
    audit_cmd->add_option("--gauge", gauge, "Gauge polytope file");
    audit_cmd->add_option("--random", random_count, "Also audit N random bodies drawn from --seed")->check(CLI::NonNegativeNumber);
    audit_cmd->add_option("--dim", dim, "Dimension of random bodies");

    FixtureArgs fa;
    auto* fixture = app.add_subcommand("fixture", "Write a fixture polytope and its closed-form radii sidecar");
    fixture->add_option("family", fa.family, "simplex | cube | cross | partial-diff | jung | steinhagen | figure | polygon")->required();
    fixture->add_option("-o,--output", fa.output, "Output file (default <family>.json)");
    fixture->add_option("-d,--dim", fa.d, "Dimension");
    fixture->add_option("-a,--alpha", fa.alpha, "alpha of C = S - alpha S");
    fixture->add_option("-b,--beta", fa.beta, "beta of K = -S + beta S");
    fixture->add_option("-s,--sigma", fa.sigma, "sigma of the Jung/Steinhagen families");
    fixture->add_option("-m,--polygon", fa.m, "Polygon vertex count");
    std::uint64_t affine_seed = 0;
    auto* affine = fixture->add_option("--affine-seed", affine_seed, "Random affine image of the simplex");

    std::vector<const char*> argv{"polyrad"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    }

    try {
        if (!(o.eps > 0 && o.eps < 1)) raise(ErrorCode::ParameterOutOfRange, "--eps must lie in (0, 1)");
        if (*radii) return cmd_radii(body, gauge, o, out);
        if (*symmetry) return cmd_symmetry(body, john, loewner, o, out);
        if (*audit_cmd) return cmd_audit(items, all, gauge, random_count, dim, o, out, err);
        if (*affine) fa.affine_seed = affine_seed;
        return cmd_fixture(fa, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e.code());
    }
}

}  // namespace polyrad::cli
