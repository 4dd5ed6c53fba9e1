// hyperclass: command-line front end for the hyperbolic classification
// library. Every subcommand writes one JSON document (or a CSV projection)
// to stdout or --out. Exit status: 0 ok, 1 usage error, 2 theorem violation
// or oracle mismatch; failures also print a JSON object on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyperclass/coding_io.hpp"
#include "hyperclass/config.hpp"
#include "hyperclass/hyperclass.hpp"

namespace {

using nlohmann::json;
using namespace hyperclass;

/// Raised after the output is written when a result disagrees with an oracle.
struct Mismatch {
    std::string kind;
    std::string message;
    json diff;
};

struct Result {
    json doc;
    std::string csv;
    std::optional<Mismatch> mismatch;
};

std::string join(const std::vector<long>& v, char sep = ' ') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

/// Runs `body` with the scalar type selected by the run mode.
template <class Body>
auto with_mode(Mode mode, Body&& body) {
    if (mode == Mode::rational) return body(Rational{});
    return body(Real{});
}

/// The coding in `path` converted to T, or `fallback` when no path is given.
template <Scalar T>
PrimeCoding<T> load_coding(const std::string& path, std::size_t fallback_last) {
    if (path.empty()) return PrimeCoding<T>::linear(fallback_last);
    const json j = read_json_file(path);
    if (coding_mode(j) == "rational") return coding_from_json<Rational>(j).template convert<T>();
    return coding_from_json<Real>(j).template convert<T>();
}

// ---------------------------------------------------------------------------
// regions

Result run_regions(long k0) {
    const auto set = enumerate_regions(k0);
    Result r;
    json entries = json::array();
    r.csv = "n,n_prime,type\n";
    for (const auto& e : set.entries) {
        const std::string type(to_string(e.type));
        entries.push_back({{"n", e.index.n}, {"n_prime", e.index.n_prime}, {"type", type}});
        r.csv += std::to_string(e.index.n) + "," + std::to_string(e.index.n_prime) + "," + type + "\n";
    }
    r.doc = {{"k0", k0}, {"count", set.entries.size()}, {"regions", entries}};
    return r;
}

// ---------------------------------------------------------------------------
// areas

Result run_areas(long k0, const std::string& k_text, const std::string& coding_path) {
    if (k0 < 4) throw ArgumentError("k0 must be at least 4");
    const Real k = parse_real(k_text);
    if (k < Real(k0) || k > Real(k0 + 1)) throw ArgumentError("k must lie in [k0, k0+1]");
    std::optional<PrimeCoding<Real>> coding;
    if (!coding_path.empty()) coding = load_coding<Real>(coding_path, 0);

    Result r;
    json rows = json::array();
    Real d2_sum(0);
    r.csv = coding ? "n,n_prime,type,area,d1,d2,hat_area\n" : "n,n_prime,type,area,d1,d2\n";
    for (const auto& e : enumerate_regions(k0).entries) {
        const auto a = area_closed(e, k);
        d2_sum += a.d2;
        json row = {{"n", e.index.n},
                    {"n_prime", e.index.n_prime},
                    {"type", std::string(to_string(e.type))},
                    {"area", format_scalar(a.area)},
                    {"d1", format_scalar(a.d1)},
                    {"d2", format_scalar(a.d2)}};
        r.csv += std::to_string(e.index.n) + "," + std::to_string(e.index.n_prime) + "," +
                 std::string(to_string(e.type)) + "," + format_scalar(a.area) + "," + format_scalar(a.d1) +
                 "," + format_scalar(a.d2);
        if (coding) {
            const Real hat = hat_area(*coding, e, k);
            row["hat_area"] = format_scalar(hat);
            r.csv += "," + format_scalar(hat);
        }
        r.csv += "\n";
        rows.push_back(std::move(row));
    }
    r.doc = {{"k0", k0}, {"k", format_scalar(k)}, {"regions", rows}, {"d2_sum", format_scalar(d2_sum)}};
    return r;
}

// ---------------------------------------------------------------------------
// points

template <Scalar T>
Result run_points(long alpha, const std::string& coding_path, double tol) {
    const auto c = load_coding<T>(coding_path, static_cast<std::size_t>(std::max(alpha, 16L)));
    const auto points = essential_points(c, alpha);
    const auto report = monotonicity_report(points, alpha, tol);
    const auto found = repeated_points(points, tol);
    const auto sieve = goldbach_partitions_oracle(alpha);

    Result r;
    json pts = json::array();
    r.csv = "k0,x_k0,y_k0,x_repeated,y_repeated\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        json row = {{"k0", p.k0}, {"x", format_scalar(p.x)}, {"y", format_scalar(p.y)}};
        bool xr = false;
        bool yr = false;
        if (i > 0) {
            xr = report.records[i - 1].x_repeated;
            yr = report.records[i - 1].y_repeated;
            row["x_repeated"] = xr;
            row["y_repeated"] = yr;
        }
        r.csv += std::to_string(p.k0) + "," + format_scalar(p.x) + "," + format_scalar(p.y) + "," +
                 (xr ? "1" : "0") + "," + (yr ? "1" : "0") + "\n";
        pts.push_back(std::move(row));
    }
    const bool agree = found == sieve.inside_window;
    r.doc = {{"alpha", alpha},
             {"mode", scalar_traits<T>::mode},
             {"points", pts},
             {"k0_list", found},
             {"sieve_k0_list", sieve.inside_window},
             {"sieve_agreement", agree},
             {"outside_window", sieve.outside_window}};
    if (!agree)
        r.mismatch = Mismatch{"oracle_mismatch", "repeated essential points disagree with the sieve",
                              {{"alpha", alpha}, {"k0_list", found}, {"sieve_k0_list", sieve.inside_window}}};
    return r;
}

// ---------------------------------------------------------------------------
// goldbach-check

std::pair<long, long> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw ArgumentError("range must look like a..b, got '" + text + "'");
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, dots);
        const std::string b = text.substr(dots + 2);
        const long lo = std::stol(a, &used_a);
        const long hi = std::stol(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
        if (lo > hi) throw ArgumentError("empty range '" + text + "'");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ArgumentError("range must look like a..b, got '" + text + "'");
    }
}

struct SweepSlot {
    SweepRecord record;
    std::vector<long> outside_window;
    std::string violation;  // empty unless the monotonicity check threw
};

template <Scalar T>
Result run_goldbach_check(const std::string& range, const std::string& coding_path, unsigned threads,
                          bool timing, double tol) {
    auto [lo, hi] = parse_range(range);
    if (lo % 2 != 0) ++lo;
    if (hi % 2 != 0) --hi;
    if (lo < 16) throw ArgumentError("alpha range must start at 16 or above");
    if (lo > hi) throw ArgumentError("range contains no even alpha");

    const auto c = load_coding<T>(coding_path, static_cast<std::size_t>(hi));
    detail::require_adapted(c, hi);
    if (c.last_index() < hi - 5) throw ArgumentError("coding must be defined through index alpha-5");
    const LowerValueTable<T> table(c, hi - 5);

    std::vector<long> alphas;
    for (long a = lo; a <= hi; a += 2) alphas.push_back(a);
    std::vector<SweepSlot> slots(alphas.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    // Workers read only `table` and write only their own slot.
    auto worker = [&] {
        for (std::size_t i = next++; i < alphas.size() && !failed; i = next++) {
            try {
                const auto start = std::chrono::steady_clock::now();
                const long alpha = alphas[i];
                SweepSlot& slot = slots[i];
                const auto points = essential_points(table, alpha);
                try {
                    monotonicity_report(points, alpha, tol);
                } catch (const TheoremViolation& e) {
                    slot.violation = e.what();
                }
                const auto sieve = goldbach_partitions_oracle(alpha);
                slot.record.alpha = alpha;
                slot.record.characterized_partitions = repeated_points(points, tol);
                slot.record.sieve_partitions = sieve.inside_window;
                slot.record.agreement =
                    slot.violation.empty() && slot.record.characterized_partitions == sieve.inside_window;
                slot.outside_window = sieve.outside_window;
                if (timing)
                    slot.record.timing_ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(alphas.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Result r;
    json records = json::array();
    json diff = json::array();
    r.csv = "alpha,k0_list,sieve_k0_list,sieve_agreement\n";
    for (const auto& slot : slots) {
        json rec = to_json(slot.record);
        rec["outside_window"] = slot.outside_window;
        if (!slot.violation.empty()) rec["violation"] = slot.violation;
        if (!slot.record.agreement) diff.push_back(rec);
        records.push_back(std::move(rec));
        r.csv += std::to_string(slot.record.alpha) + "," + join(slot.record.characterized_partitions) + "," +
                 join(slot.record.sieve_partitions) + "," + (slot.record.agreement ? "true" : "false") + "\n";
    }
    r.doc = {{"mode", scalar_traits<T>::mode}, {"records", records}, {"all_agree", diff.empty()}};
    if (!diff.empty())
        r.mismatch = Mismatch{"oracle_mismatch",
                              std::to_string(diff.size()) + " alpha value(s) disagree with the sieve", diff};
    return r;
}

// ---------------------------------------------------------------------------
// build-g

struct BuildOptions {
    long alpha = 0;
    std::string scalar_u;
    std::string xi2 = "1";
    std::string xi_half;
};

Result run_build_g(const BuildOptions& o, std::uint64_t seed, double tol) {
    GoldbachSpec spec;
    spec.alpha = o.alpha;
    spec.rng_seed = seed;
    spec.xi2_sq = parse_real(o.xi2);
    if (!o.xi_half.empty()) spec.xi_half_sq = parse_real(o.xi_half);
    if (!o.scalar_u.empty()) spec.scalar_u = parse_real(o.scalar_u);

    const ConstructedCoding g = build_goldbach(spec);
    const ContinuityReport cont = verify_continuity(g.coding, g.alpha, tol);
    const IdentityReport ids = check_identities(g);
    for (const Real* gap : {&ids.last_upper_gap, &ids.junction_ratio_gap, &ids.f_term_gap})
        if (*gap > tol) throw TheoremViolation("identity gap " + format_scalar(*gap) + " exceeds tolerance");

    Result r;
    r.doc = coding_to_json(g.coding);
    json lambdas = json::object();
    for (const auto& [i, l] : g.lambda_sq) lambdas[std::to_string(i)] = format_scalar(l);
    json origins = json::array();
    json xi_sq = json::array();
    r.csv = "i,xi_sq,origin\n";
    for (long i = 0; i <= g.alpha; ++i) {
        const std::string origin(to_string(g.origin[i]));
        origins.push_back(origin);
        xi_sq.push_back(format_scalar(g.xi_sq[i]));
        r.csv += std::to_string(i) + "," + format_scalar(g.xi_sq[i]) + "," + origin + "\n";
    }
    json x = json::object();
    for (long j = 4; j <= g.alpha - 5; ++j) x[std::to_string(j)] = format_scalar(g.x_at(j));
    r.doc["alpha"] = g.alpha;
    r.doc["seed"] = g.rng_seed;
    r.doc["precision_bits"] = real_precision_bits();
    r.doc["xi2_sq"] = format_scalar(g.xi2_sq);
    r.doc["xi_half_sq"] = format_scalar(g.xi_half_sq);
    if (spec.scalar_u) r.doc["scalar_u"] = format_scalar(*spec.scalar_u);
    r.doc["lambda_sq"] = lambdas;
    r.doc["xi_sq"] = xi_sq;
    r.doc["origin"] = origins;
    r.doc["x"] = x;
    r.doc["continuity"] = {{"max_gap", format_scalar(cont.max_gap)}, {"worst_k0", cont.worst_k0}};
    r.doc["identities"] = {{"last_upper_gap", format_scalar(ids.last_upper_gap)},
                           {"junction_ratio_gap", format_scalar(ids.junction_ratio_gap)},
                           {"f_term_gap", format_scalar(ids.f_term_gap)}};
    return r;
}

// ---------------------------------------------------------------------------
// scalar-limit

Result run_scalar_limit(long alpha, const std::vector<std::string>& offsets, const std::string& xi2) {
    std::vector<Real> u_list;
    for (const auto& h : offsets) {
        const Real offset = parse_real(h);
        if (!(offset > 0)) throw ArgumentError("u offsets must be positive");
        u_list.push_back(Real(1 + offset));
    }
    const Real xi2_sq = parse_real(xi2);
    const ScalarLimitReport rep = scalar_limit_sweep(alpha, u_list, xi2_sq);

    Result r;
    json rows = json::array();
    r.csv = "u,k0,x_k0,y_k0\n";
    for (const auto& row : rep.rows) {
        const std::string u = format_scalar(row.u);
        const std::string x = format_scalar(row.x);
        const std::string y = format_scalar(Real(-row.abs_y));
        rows.push_back({{"u", u}, {"k0", row.k0}, {"x_k0", x}, {"y_k0", y}});
        r.csv += u + "," + std::to_string(row.k0) + "," + x + "," + y + "\n";
    }
    json dev = json::array();
    for (std::size_t i = 0; i < u_list.size(); ++i)
        dev.push_back({{"u", format_scalar(u_list[i])}, {"max_deviation", format_scalar(rep.max_deviation[i])}});
    r.doc = {{"alpha", alpha},   {"xi2_sq", format_scalar(xi2_sq)}, {"rows", rows},
             {"deviation", dev}, {"monotone", rep.monotone},        {"converged", rep.converged}};
    if (!rep.monotone || !rep.converged)
        r.mismatch = Mismatch{"non_convergence", "scalar limit is not monotone or has not converged",
                              {{"monotone", rep.monotone}, {"converged", rep.converged}, {"deviation", dev}}};
    return r;
}

// ---------------------------------------------------------------------------
// classify

template <Scalar T>
Result run_classify(const std::string& k_text, const std::string& coding_path, double tol) {
    const T k = parse_scalar<T>(k_text);
    if (!(k > 1)) throw DomainError("classification needs k > 1");
    const auto fallback = static_cast<std::size_t>(floor_long(k) + 2);
    const auto c = load_coding<T>(coding_path, fallback);
    const CurveScan<T> scan = scan_curve(c, k, tol);

    std::string expected = "non_natural";
    if (is_integral(k)) expected = sieve(floor_long(k))[floor_long(k)] ? "prime" : "composite_natural";
    const std::string got(to_string(scan.number_class));

    Result r;
    json jumps = json::array();
    r.csv = "x,y,kind\n";
    for (const auto& p : scan.jump_points) {
        const std::string kind(to_string(p.kind));
        jumps.push_back({{"x", format_scalar(p.point.x)}, {"y", format_scalar(p.point.y)}, {"kind", kind}});
        r.csv += format_scalar(p.point.x) + "," + format_scalar(p.point.y) + "," + kind + "\n";
    }
    r.doc = {{"k", format_scalar(k)},
             {"mode", scalar_traits<T>::mode},
             {"class", got},
             {"oracle_class", expected},
             {"jump_points", jumps}};
    if (got != expected)
        r.mismatch = Mismatch{"oracle_mismatch", "curve classification disagrees with the sieve",
                              {{"k", format_scalar(k)}, {"class", got}, {"oracle_class", expected}}};
    return r;
}

// ---------------------------------------------------------------------------

void print_error(const std::string& kind, const std::string& message, const json& extra = json::object()) {
    json err = {{"error", kind}, {"message", message}};
    for (const auto& [key, value] : extra.items()) err[key] = value;
    std::cerr << err.dump() << "\n";
}

void emit(const Result& r, OutputFormat format, const std::string& out_path) {
    const std::string text = format == OutputFormat::json ? r.doc.dump(2) + "\n" : r.csv;
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic classification of natural numbers: regions, areas, essential points and "
                 "the continuous second-derivative construction."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string mode_flag;
    unsigned precision_flag = 0;
    double tol_flag = 0;
    std::uint64_t seed_flag = 0;
    std::string out_path;
    std::string config_path;
    auto* mode_opt = app.add_option("--mode", mode_flag, "Arithmetic: rational or float")
                         ->check(CLI::IsMember({"rational", "float"}));
    auto* precision_opt = app.add_option("--precision", precision_flag, "Float mantissa bits (>= 53)");
    auto* tol_opt = app.add_option("--tol", tol_flag, "Relative tolerance for float comparisons");
    auto* seed_opt = app.add_option("--seed", seed_flag, "Seed for every random draw");
    auto* json_flag = app.add_flag("--json", "JSON output (default)");
    auto* csv_flag = app.add_flag("--csv", "CSV output")->excludes(json_flag);
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--config", config_path, "JSON config file mirroring the run configuration");

    long k0 = 0;
    auto* regions = app.add_subcommand("regions", "List the essential regions of k0");
    regions->add_option("--k0", k0, "Integer k0 >= 4")->required();

    std::string k_text;
    std::string coding_path;
    auto* areas = app.add_subcommand("areas", "Closed-form areas of the essential regions of k0 at k");
    areas->add_option("--k0", k0, "Integer k0 >= 4")->required();
    areas->add_option("--k", k_text, "Curve parameter in [k0, k0+1]")->required();
    areas->add_option("--coding", coding_path, "Coding JSON; adds deformed areas");

    long alpha = 0;
    auto* points = app.add_subcommand("points", "Essential points of alpha and their repetitions");
    points->add_option("--alpha", alpha, "Even alpha >= 16")->required();
    points->add_option("--coding", coding_path, "Coding JSON (default: xi_m = 1 + m/alpha)");

    std::string range;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool timing = false;
    auto* check = app.add_subcommand("goldbach-check", "Sweep alpha and compare repetitions with a sieve");
    check->add_option("--alpha-range", range, "Range a..b of alpha")->required();
    check->add_option("--coding", coding_path, "Coding JSON (default: xi_m = 1 + m/b)");
    check->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    check->add_flag("--timing", timing, "Include per-alpha wall time (output is then not reproducible)");

    BuildOptions build;
    auto* build_g = app.add_subcommand("build-g", "Construct a coding with continuous second derivative");
    build_g->add_option("--alpha", build.alpha, "alpha with alpha/2 and alpha-3 composite")->required();
    build_g->add_option("--scalar-u", build.scalar_u, "Use lambda = u for every free index");
    build_g->add_option("--xi2", build.xi2, "xi_2^2 (default 1)");
    build_g->add_option("--xi-half", build.xi_half, "xi_{alpha/2}^2 (default: drawn from the seed)");

    std::vector<std::string> offsets{"1e-1", "1e-2", "1e-3", "1e-4", "1e-5", "1e-6"};
    std::string xi2 = "1";
    auto* scalar = app.add_subcommand("scalar-limit", "Tabulate the scalar construction as u -> 1+");
    scalar->add_option("--alpha", alpha, "alpha with alpha/2 and alpha-3 composite")->required();
    scalar->add_option("--u", offsets, "Offsets h > 0, u = 1 + h")->delimiter(',');
    scalar->add_option("--xi2", xi2, "xi_2^2 (default 1)");

    auto* classify = app.add_subcommand("classify", "Classify k by the jump points of its deformed hyperbola");
    classify->add_option("--k", k_text, "Real k > 1")->required();
    classify->add_option("--coding", coding_path, "Coding JSON (default: xi_m = 1 + m/(floor k + 2))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage_error", e.what());
        return 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_environment(cfg);
        if (mode_opt->count()) cfg.mode = parse_mode(mode_flag);
        if (precision_opt->count()) cfg.precision_bits = precision_flag;
        if (tol_opt->count()) cfg.tolerance_rel = tol_flag;
        if (seed_opt->count()) cfg.seed = seed_flag;
        if (json_flag->count()) cfg.output_format = OutputFormat::json;
        if (csv_flag->count()) cfg.output_format = OutputFormat::csv;
        cfg.validate();
        set_real_precision_bits(cfg.precision_bits);
        const double tol = cfg.tolerance_rel;

        Result result;
        if (regions->parsed()) {
            result = run_regions(k0);
        } else if (areas->parsed()) {
            result = run_areas(k0, k_text, coding_path);
        } else if (points->parsed()) {
            result = with_mode(cfg.mode, [&]<class T>(T) { return run_points<T>(alpha, coding_path, tol); });
        } else if (check->parsed()) {
            result = with_mode(cfg.mode, [&]<class T>(T) {
                return run_goldbach_check<T>(range, coding_path, threads, timing, tol);
            });
        } else if (build_g->parsed()) {
            result = run_build_g(build, cfg.seed, tol);
        } else if (scalar->parsed()) {
            result = run_scalar_limit(alpha, offsets, xi2);
        } else {
            result = with_mode(cfg.mode, [&]<class T>(T) { return run_classify<T>(k_text, coding_path, tol); });
        }
        emit(result, cfg.output_format, out_path);
        if (result.mismatch) {
            print_error(result.mismatch->kind, result.mismatch->message, {{"diff", result.mismatch->diff}});
            return 2;
        }
        return 0;
    } catch (const ConstructionFailure& e) {
        print_error(e.kind(), e.what(), {{"k0", e.k0()}});
        return 2;
    } catch (const TheoremViolation& e) {
        print_error(e.kind(), e.what());
        return 2;
    } catch (const QuadratureError& e) {
        print_error(e.kind(), e.what());
        return 2;
    } catch (const Error& e) {
        print_error(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("internal_error", e.what());
        return 1;
    }
}
