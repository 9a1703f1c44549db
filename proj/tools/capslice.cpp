// capslice: command-line front end for the capslice library.
//
//   capslice <subcommand> [flags]
//
// Every subcommand prints one JSON report on stdout (CSV for sweeps). Exit
// status is 0 on success, 1 on a domain error (reported as
// {"error": {"code", "message"}}) and 2 on a usage error.

#include "capslice/capslice.hpp"
#include "capslice/json_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace capslice;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<long long> parse_list(const std::string& text)
{
    std::vector<long long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto t = detail::trim(item);
        if (t.empty())
            continue;
        long long v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size())
            throw UsageError("bad integer \"" + std::string(t) + "\" in list");
        out.push_back(v);
    }
    return out;
}

CoeffTriple triple_from(int q, const std::string& coeffs)
{
    if (coeffs.empty())
        return default_triple(q);
    const auto v = parse_list(coeffs);
    if (v.size() != 3)
        throw Error(ErrorCode::InvalidTriple, "expected three coefficients, got " + std::to_string(v.size()));
    return make_triple(q, v[0], v[1], v[2]);
}

json codes_json(const PointSet& s) { return json(s.codes()); }

/// Shared flag storage; each subcommand registers the subset it uses.
struct Flags {
    std::string set_path;
    std::string coeffs;
    double eps = 0.5;
    double delta = 0.5;
    std::uint64_t seed = 0;
    std::string format = "json";
    unsigned threads = 0;
    std::uint64_t budget = 50'000'000;
    std::string config;

    int q = 3;
    int n = 1;
    std::optional<int> bounds_n;
    std::string sweep;
    double tol = 1e-12;
    bool clp = false;
    bool deterministic = false;
    std::string mode = "bnb";
    std::size_t trials = 200;
    double exponent = 1.0 / 3.0;
    bool light_only = false;
    std::string kind = "random";
    double density = 0.5;
    double target = 1.0;
    std::string out_path;
};

struct Report {
    json params = json::object();
    json result;
    std::string digest_input;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> csv;
};

PointSet load_set(const Flags& f, Report& r)
{
    if (f.set_path.empty())
        throw UsageError("--set is required");
    PointSet s = parse_set(read_file(f.set_path));
    r.digest_input = serialize_set(s);
    r.params["set"] = {{"q", s.q()}, {"n", s.n()}, {"size", s.size()}};
    return s;
}

void require_json(const Flags& f, const char* cmd)
{
    if (f.format != "json")
        throw UsageError(std::string(cmd) + " only supports --format json");
}

Report cmd_profile(const Flags& f)
{
    Report r;
    const PointSet s = load_set(f, r);
    const CoeffTriple t = triple_from(s.q(), f.coeffs);
    r.params["coeffs"] = to_json(t);
    const auto p = degree_profile(s, t, f.threads);
    r.result = to_json(p);
    if (f.format == "csv") {
        std::string csv = "code,d_x\n";
        for (std::size_t i = 0; i < p.degrees.size(); ++i)
            csv += std::to_string(s[i]) + "," + std::to_string(p.degrees[i]) + "\n";
        r.csv = csv;
    }
    return r;
}

Report cmd_classify(const Flags& f)
{
    require_json(f, "classify");
    Report r;
    const PointSet s = load_set(f, r);
    const CoeffTriple t = triple_from(s.q(), f.coeffs);
    r.params["coeffs"] = to_json(t);
    r.params["eps"] = f.eps;
    r.params["delta"] = f.delta;
    const auto p = degree_profile(s, t, f.threads);
    const auto v = classify_eps_delta(p, f.eps, f.delta);
    const auto heavy = heavy_set(p, f.eps);
    r.result = {{"is_cap", v.is_cap}, {"threshold", v.threshold}, {"light_count", v.witness.size()},
        {"heavy_count", heavy.size()}, {"witness", codes_json(v.witness)}, {"heavy", codes_json(heavy)}};
    return r;
}

Report cmd_capcheck(const Flags& f)
{
    require_json(f, "capcheck");
    Report r;
    const PointSet s = load_set(f, r);
    const CoeffTriple t = triple_from(s.q(), f.coeffs);
    r.params["coeffs"] = to_json(t);
    const auto p = degree_profile(s, t, f.threads);
    r.result = {{"is_cap_set", is_cap_set(p)}, {"solutions", p.total},
        {"nonconstant_solutions", p.total - p.set.size()}};
    return r;
}

Report cmd_tensor(const Flags& f)
{
    require_json(f, "tensor");
    Report r;
    if (f.clp) {
        const CoeffTriple t = triple_from(f.q, f.coeffs);
        r.params = {{"q", f.q}, {"n", f.n}, {"coeffs", to_json(t)}, {"clp", true}};
        r.digest_input = r.params.dump();
        const auto dec = clp_decomposition(f.q, f.n, t);
        const bool exact = decomposition_tensor(dec) == ap_tensor(PointSet::full_space(f.q, f.n), t);
        r.result = to_json(dec);
        r.result["monomial_count"] = monomial_count(f.q, f.n).str();
        r.result["resums_to_ap_tensor"] = exact;
        return r;
    }
    const PointSet s = load_set(f, r);
    const CoeffTriple t = triple_from(s.q(), f.coeffs);
    r.params["coeffs"] = to_json(t);
    const auto tensor = ap_tensor(s, t);
    r.result = {{"tensor", to_json(tensor)}, {"nonzeros", tensor.nonzeros()}};
    r.result["slice_rank"] = slice_rank_feasible(tensor.q(), tensor.dim()) ? json(slice_rank_exact_small(tensor)) : json(nullptr);
    return r;
}

Report cmd_indep(const Flags& f)
{
    require_json(f, "indep");
    Report r;
    const PointSet s = load_set(f, r);
    const CoeffTriple t = triple_from(s.q(), f.coeffs);
    r.params["coeffs"] = to_json(t);
    r.params["trials"] = f.trials;
    r.params["exponent"] = f.exponent;
    r.seed = f.seed;

    const auto tensor = ap_tensor(s, t);
    std::vector<std::size_t> subset;
    if (f.light_only) {
        r.params["eps"] = f.eps;
        const auto light = light_set(degree_profile(s, t, f.threads), f.eps);
        for (Code c : light.codes())
            subset.push_back(s.index_of(c));
    } else {
        for (std::size_t i = 0; i < s.size(); ++i)
            subset.push_back(i);
    }
    const auto h = support_hypergraph(tensor, subset);
    const auto g = caro_wei_greedy(h, f.trials, f.seed, f.threads);
    std::vector<std::size_t> certified;
    for (auto i : g.set)
        if (tensor.at({static_cast<Index>(i), static_cast<Index>(i), static_cast<Index>(i)}) != 0)
            certified.push_back(i);
    const double bound = caro_wei_bound(h, f.exponent);

    json idx = json::array(), codes = json::array();
    for (auto i : certified) {
        idx.push_back(i + 1);
        codes.push_back(s[i]);
    }
    r.result = {{"hypergraph", to_json(h)}, {"independent_set", idx}, {"independent_codes", codes},
        {"size", certified.size()}, {"best_trial", g.trial}, {"caro_wei_sum", bound},
        {"ratio", bound > 0 ? json(static_cast<double>(certified.size()) / bound) : json(nullptr)},
        {"independent", independent_set_check(tensor, certified)},
        {"rank_lower_bound", diagonal_rank_certificate(tensor, certified)}};
    return r;
}

Report cmd_bounds(const Flags& f)
{
    Report r;
    r.params = {{"q", f.q}, {"tol", f.tol}};
    if (!f.sweep.empty()) {
        std::vector<long long> parts;
        std::stringstream in(f.sweep);
        std::string item;
        while (std::getline(in, item, ':'))
            parts.push_back(parse_list(item).empty() ? -1 : parse_list(item).front());
        if (parts.size() != 3 || parts[0] < 1 || parts[1] < parts[0] || parts[2] < 1)
            throw UsageError("--n-sweep expects lo:hi:step with 1 <= lo <= hi and step >= 1");
        r.params["n_sweep"] = f.sweep;
        r.digest_input = r.params.dump();
        std::ostringstream csv;
        csv << "n,M_n,finite_rate\n" << std::setprecision(12);
        json rows = json::array();
        for (long long n = parts[0]; n <= parts[1]; n += parts[2]) {
            const auto m = monomial_count(f.q, static_cast<int>(n));
            const double rate = finite_rate(f.q, static_cast<int>(n));
            csv << n << ',' << m.str() << ',' << rate << '\n';
            rows.push_back({{"n", n}, {"monomial_count", m.str()}, {"finite_rate", rate}});
        }
        r.result = {{"rows", rows}};
        if (f.format == "csv")
            r.csv = csv.str();
        return r;
    }
    require_json(f, "bounds");
    if (f.bounds_n)
        r.params["n"] = *f.bounds_n;
    r.digest_input = r.params.dump();
    r.result = to_json(bounds_report(f.q, f.bounds_n, f.tol));
    return r;
}

Report cmd_chain(const Flags& f)
{
    require_json(f, "chain");
    Report r;
    const PointSet s = load_set(f, r);
    if (f.coeffs.empty())
        throw UsageError("--coeffs is required");
    const auto list = parse_list(f.coeffs);
    const CoeffVector c = make_coeff_vector(s.q(), list);
    r.params["coeffs"] = c.a;
    r.params["budget"] = f.budget;
    r.params["deterministic"] = f.deterministic;
    ChainOptions opt;
    opt.budget = f.budget;
    opt.threads = f.threads;
    opt.deterministic = f.deterministic;
    r.result = to_json(find_distinct_solution(s, c, opt));
    return r;
}

Report cmd_search(const Flags& f)
{
    require_json(f, "search");
    Report r;
    SearchConfig cfg;
    cfg.q = f.q;
    cfg.n = f.n;
    cfg.coeffs = triple_from(f.q, f.coeffs);
    cfg.seed = f.seed;
    cfg.trials = f.trials;
    cfg.threads = f.threads;
    if (f.mode == "exhaustive")
        cfg.mode = SearchMode::Exhaustive;
    else if (f.mode == "bnb")
        cfg.mode = SearchMode::BranchAndBound;
    else if (f.mode == "random")
        cfg.mode = SearchMode::Random;
    else
        throw UsageError("--mode must be exhaustive, bnb or random");
    r.params = {{"q", f.q}, {"n", f.n}, {"coeffs", to_json(cfg.coeffs)}, {"mode", f.mode}};
    if (cfg.mode == SearchMode::Random) {
        r.params["trials"] = f.trials;
        r.seed = f.seed;
    }
    r.digest_input = r.params.dump();
    const auto res = max_cap_exact(cfg);
    r.result = {{"size", res.size}, {"witness", codes_json(res.witness)}, {"nodes", res.nodes}, {"exact", res.exact},
        {"witness_is_cap", is_cap_set(res.witness, cfg.coeffs)}};
    return r;
}

Report cmd_gen(const Flags& f)
{
    require_json(f, "gen");
    Report r;
    r.seed = f.seed;
    r.params = {{"kind", f.kind}, {"q", f.q}, {"n", f.n}, {"density", f.density}};
    PointSet s;
    if (f.kind == "random") {
        r.digest_input = r.params.dump();
        s = random_subset(f.q, f.n, f.density, f.seed);
        r.result = {{"size", s.size()}, {"codes", codes_json(s)}};
    } else if (f.kind == "planted") {
        const CoeffTriple t = triple_from(f.q, f.coeffs);
        r.params["coeffs"] = to_json(t);
        r.params["target"] = f.target;
        r.digest_input = r.params.dump();
        const auto planted = planted_light_set(f.q, f.n, t, f.target, f.seed, f.density);
        s = planted.set;
        r.result = {{"size", s.size()}, {"codes", codes_json(s)}, {"achieved_fraction", planted.achieved_fraction},
            {"removed", planted.removed}};
    } else {
        throw UsageError("--kind must be random or planted");
    }
    r.result["q"] = s.q();
    r.result["n"] = s.n();
    if (!f.out_path.empty()) {
        std::ofstream out(f.out_path, std::ios::binary);
        if (!out)
            throw Error(ErrorCode::InvalidArgument, "cannot write " + f.out_path);
        out << serialize_set(s);
    }
    return r;
}

// scan: key=value grid file
//   q=3,5        n=1:3 (or a list)   density=0.25,1   eps=0.1,0.5
//   seeds=1,2    coeffs=1,1,1 (optional)   set=path,... (optional fixtures,
//   relative to the grid file)
std::string cmd_scan(const Flags& f)
{
    if (f.config.empty())
        throw UsageError("scan needs --config");
    std::map<std::string, std::string> kv;
    {
        std::istringstream in(read_file(f.config));
        std::string line;
        std::size_t no = 0;
        while (std::getline(in, line)) {
            ++no;
            const auto t = detail::trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            const auto eq = t.find('=');
            if (eq == std::string_view::npos)
                throw Error(ErrorCode::BadConfig, "line " + std::to_string(no) + " is not key=value");
            const std::string key(detail::trim(t.substr(0, eq)));
            static const std::set<std::string> known{"q", "n", "density", "eps", "seeds", "coeffs", "set"};
            if (!known.count(key))
                throw Error(ErrorCode::BadConfig, "unknown key \"" + key + "\"");
            kv[key] = std::string(detail::trim(t.substr(eq + 1)));
        }
    }
    auto reals = [&](const std::string& key) {
        std::vector<double> out;
        std::stringstream in(kv[key]);
        std::string item;
        while (std::getline(in, item, ',')) {
            const std::string t(detail::trim(item));
            if (t.empty())
                continue;
            try {
                std::size_t used = 0;
                out.push_back(std::stod(t, &used));
                if (used != t.size())
                    throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw Error(ErrorCode::BadConfig, "bad number \"" + t + "\" for " + key);
            }
        }
        return out;
    };
    auto ints = [&](const std::string& key) {
        const std::string v = kv[key];
        const auto colon = v.find(':');
        try {
            if (colon == std::string::npos)
                return parse_list(v);
            const auto lo = parse_list(v.substr(0, colon)), hi = parse_list(v.substr(colon + 1));
            if (lo.size() != 1 || hi.size() != 1)
                throw UsageError("range");
            std::vector<long long> out;
            for (long long x = lo[0]; x <= hi[0]; ++x)
                out.push_back(x);
            return out;
        } catch (const UsageError&) {
            throw Error(ErrorCode::BadConfig, "bad integer list for " + key);
        }
    };

    const auto qs = ints("q"), ns = ints("n"), seeds = ints("seeds");
    const auto densities = reals("density"), epss = reals("eps");
    for (double e : epss)
        if (!(e > 0 && e < 1))
            throw Error(ErrorCode::BadConfig, "eps values must lie in (0, 1)");

    std::ostringstream csv;
    csv << std::setprecision(12);
    csv << "q,n,density,eps,seed,size,heavy_count,heavy_fraction\n";
    auto row = [&](const PointSet& s, const CoeffTriple& t, const std::string& density, const std::string& seed) {
        const auto p = degree_profile(s, t, f.threads);
        for (double e : epss) {
            const auto heavy = heavy_set(p, e).size();
            csv << s.q() << ',' << s.n() << ',' << density << ',' << e << ',' << seed << ',' << s.size() << ',' << heavy
                << ',';
            if (s.empty())
                csv << "nan";
            else
                csv << static_cast<double>(heavy) / static_cast<double>(s.size());
            csv << '\n';
        }
    };
    for (long long q : qs) {
        const CoeffTriple t = triple_from(static_cast<int>(q), kv["coeffs"]);
        for (long long n : ns)
            for (double density : densities)
                for (long long seed : seeds) {
                    std::ostringstream d;
                    d << std::setprecision(12) << density;
                    row(random_subset(static_cast<int>(q), static_cast<int>(n), density, static_cast<std::uint64_t>(seed)),
                        t, d.str(), std::to_string(seed));
                }
    }
    if (!kv["set"].empty() && !epss.empty()) {
        std::stringstream in(kv["set"]);
        std::string path;
        while (std::getline(in, path, ',')) {
            const std::string p(detail::trim(path));
            if (p.empty())
                continue;
            // relative fixture paths are taken from the grid file's directory
            const auto full = std::filesystem::path(f.config).parent_path() / p;
            const PointSet s = parse_set(read_file(full.string()));
            row(s, triple_from(s.q(), kv["coeffs"]), "fixture", "-");
        }
    }
    return csv.str();
}

/// Appends "--key value" for config entries whose flag is absent from argv.
std::vector<std::string> apply_config(std::vector<std::string> args)
{
    if (args.size() < 2 || args[1] == "scan")
        return args;
    std::string path;
    for (std::size_t i = 2; i + 1 < args.size(); ++i)
        if (args[i] == "--config")
            path = args[i + 1];
    if (path.empty())
        return args;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::BadConfig, "config line is not key=value: " + std::string(t));
        const std::string flag = "--" + std::string(detail::trim(t.substr(0, eq)));
        const std::string value(detail::trim(t.substr(eq + 1)));
        if (std::find(args.begin(), args.end(), flag) != args.end())
            continue;
        if (flag == "--deterministic" || flag == "--clp" || flag == "--light") {
            if (value == "true" || value == "1")
                args.push_back(flag);
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void print_error(const Error& e)
{
    std::cout << json{{"error", {{"code", std::string(to_string(e.code())) }, {"message", e.message()}}}}.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"capslice: almost-cap-set analysis toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto add_set = [&](CLI::App* c) { c->add_option("--set", f.set_path, "Set file")->required(); };
    auto add_coeffs = [&](CLI::App* c) { c->add_option("--coeffs", f.coeffs, "Comma-separated coefficients"); };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
        c->add_option("--config", f.config, "key=value file supplying flag defaults");
    };

    auto* profile = app.add_subcommand("profile", "Degree profile d_x of a set");
    add_set(profile);
    add_coeffs(profile);
    add_common(profile);

    auto* classify = app.add_subcommand("classify", "(eps, delta)-cap classification");
    add_set(classify);
    add_coeffs(classify);
    classify->add_option("--eps", f.eps, "Exponent eps in (0,1)")->required();
    classify->add_option("--delta", f.delta, "Fraction delta in (0,1)")->required();
    add_common(classify);

    auto* capcheck = app.add_subcommand("capcheck", "Check whether a set is a cap set");
    add_set(capcheck);
    add_coeffs(capcheck);
    add_common(capcheck);

    auto* tensor = app.add_subcommand("tensor", "Solution tensor and slice rank, or the polynomial slice decomposition");
    tensor->add_option("--set", f.set_path, "Set file");
    add_coeffs(tensor);
    tensor->add_flag("--clp", f.clp, "Emit the polynomial slice decomposition over F_q^n");
    tensor->add_option("--q", f.q, "Field size for --clp");
    tensor->add_option("--n", f.n, "Dimension for --clp");
    add_common(tensor);

    auto* indep = app.add_subcommand("indep", "Random greedy independent sets of the support hypergraph");
    add_set(indep);
    add_coeffs(indep);
    indep->add_option("--trials", f.trials, "Greedy passes");
    indep->add_option("--seed", f.seed, "RNG seed");
    indep->add_option("--exponent", f.exponent, "Exponent of the degree sum bound");
    indep->add_option("--eps", f.eps, "Threshold exponent used with --light");
    indep->add_flag("--light", f.light_only, "Restrict to the light set (d_x < |A|^eps)");
    add_common(indep);

    auto* bounds = app.add_subcommand("bounds", "Monomial counts, rates, b_q and the eps budget");
    bounds->add_option("--q", f.q, "Field size")->required();
    bounds->add_option("--n", f.bounds_n, "Dimension for the finite count");
    bounds->add_option("--n-sweep", f.sweep, "lo:hi:step sweep of n (CSV with --format csv)");
    bounds->add_option("--tol", f.tol, "Golden-section tolerance");
    add_common(bounds);

    auto* chain = app.add_subcommand("chain", "Distinct solutions of a_1 x_1 + ... + a_d x_d = 0 in a set");
    add_set(chain);
    add_coeffs(chain);
    chain->add_option("--budget", f.budget, "Node budget");
    chain->add_flag("--deterministic", f.deterministic, "Return the lowest-seed solution regardless of threads");
    add_common(chain);

    auto* search = app.add_subcommand("search",
        "Maximum cap set search. Size, node count and witness do not depend on --threads; random mode is reproducible per --seed.");
    search->add_option("--mode", f.mode, "exhaustive, bnb or random");
    search->add_option("--q", f.q, "Field size")->required();
    search->add_option("--n", f.n, "Dimension")->required();
    add_coeffs(search);
    search->add_option("--seed", f.seed, "RNG seed (random mode)");
    search->add_option("--trials", f.trials, "Greedy passes (random mode)");
    add_common(search);

    auto* gen = app.add_subcommand("gen", "Random subsets and planted light sets");
    gen->add_option("--kind", f.kind, "random or planted");
    gen->add_option("--q", f.q, "Field size")->required();
    gen->add_option("--n", f.n, "Dimension")->required();
    gen->add_option("--density", f.density, "Inclusion probability");
    gen->add_option("--seed", f.seed, "RNG seed");
    add_coeffs(gen);
    gen->add_option("--target", f.target, "Target light fraction (planted)");
    gen->add_option("--out", f.out_path, "Also write the set file here");
    add_common(gen);

    auto* scan = app.add_subcommand("scan", "Heavy-fraction sweep over a key=value grid (CSV)");
    scan->add_option("--config", f.config, "Grid file")->required();
    scan->add_option("--threads", f.threads, "Worker threads");

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = apply_config(std::move(args));
    } catch (const Error& e) {
        print_error(e);
        return 1;
    }
    std::vector<const char*> cargs;
    for (const auto& a : args)
        cargs.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "scan") {
            std::cout << cmd_scan(f);
            return 0;
        }
        Report r;
        if (name == "profile")
            r = cmd_profile(f);
        else if (name == "classify")
            r = cmd_classify(f);
        else if (name == "capcheck")
            r = cmd_capcheck(f);
        else if (name == "tensor")
            r = cmd_tensor(f);
        else if (name == "indep")
            r = cmd_indep(f);
        else if (name == "bounds")
            r = cmd_bounds(f);
        else if (name == "chain")
            r = cmd_chain(f);
        else if (name == "search")
            r = cmd_search(f);
        else if (name == "gen")
            r = cmd_gen(f);

        if (r.csv) {
            std::cout << *r.csv;
            return 0;
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        json report{{"subcommand", name}, {"input_digest", hex64(fnv1a(r.digest_input))}, {"params", r.params},
            {"result", r.result}, {"seed", r.seed ? json(*r.seed) : json(nullptr)}, {"wall_ms", ms}};
        std::cout << report.dump(2) << '\n';
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        print_error(e);
        return 1;
    }
}
