#include <retrograph/retrograph.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace retrograph;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IllegalOperation, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IllegalOperation, "cannot write '" + path + "'");
    out << text;
}

Rational parse_eps(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
}

std::vector<QueryKind> parse_query_kinds(const std::string& csv) {
    std::vector<QueryKind> kinds;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bool found = false;
        for (QueryKind q : {QueryKind::Conn, QueryKind::SfSize, QueryKind::Sf,
                            QueryKind::Msf, QueryKind::MsfWeight, QueryKind::MaxDeg,
                            QueryKind::MatchSize, QueryKind::Edges})
            if (item == query_kind_name(q)) {
                kinds.push_back(q);
                found = true;
            }
        if (!found)
            raise(ErrorCode::IllegalOperation, "unknown query kind '" + item + "'");
    }
    if (kinds.empty()) raise(ErrorCode::IllegalOperation, "no query kinds given");
    return kinds;
}

int cmd_run(const std::string& trace_path, const std::string& kind_name,
            const RunOptions& opts) {
    Trace trace = parse_trace(read_file(trace_path));
    for (const auto& line : run_trace(trace, parse_structure_kind(kind_name), opts))
        std::cout << line << "\n";
    return 0;
}

int cmd_verify(const std::string& trace_path, const RunOptions& opts) {
    Trace trace = parse_trace(read_file(trace_path));
    VerifyReport report = verify_trace(trace, opts);
    std::cout << "verified " << report.queries << " queries against:";
    for (const auto& name : report.verified) std::cout << " " << name;
    std::cout << "\n";
    if (report.ok()) {
        std::cout << "OK\n";
        return 0;
    }
    const auto& m = report.mismatches.front();
    std::cout << "MISMATCH at query " << m.query_index << " [" << m.source
              << "]: got '" << m.got << "' want '" << m.want << "' ("
              << report.mismatches.size() << " total)\n";
    return 1;
}

int cmd_gen(const std::string& family, const std::string& out, Vertex n, int updates,
            int queries, std::uint64_t seed, Weight max_weight, bool incremental,
            const std::string& query_kinds_csv) {
    Trace trace;
    if (family == "random") {
        RandomTraceParams p;
        p.n = n;
        p.updates = updates;
        p.queries = queries;
        p.seed = seed;
        p.max_weight = max_weight;
        p.incremental = incremental;
        if (!query_kinds_csv.empty())
            p.query_kinds = parse_query_kinds(query_kinds_csv);
        else if (incremental)
            p.query_kinds = {QueryKind::Conn, QueryKind::Sf, QueryKind::SfSize};
        else
            p.query_kinds = {QueryKind::Conn,      QueryKind::SfSize,
                             QueryKind::Msf,       QueryKind::MsfWeight,
                             QueryKind::MaxDeg,    QueryKind::MatchSize,
                             QueryKind::Edges};
        trace = random_trace(p);
    } else {
        OmvInstance inst = OmvInstance::random(static_cast<int>(n), seed);
        if (family == "omv-conn")
            trace = omv_connectivity_trace(inst);
        else if (family == "omv-msf")
            trace = omv_msf_trace(inst);
        else if (family == "omv-maxdeg")
            trace = omv_maxdeg_trace(inst);
        else
            raise(ErrorCode::IllegalOperation, "unknown family '" + family + "'");
    }
    write_file(out, print_trace(trace));
    std::cout << "wrote " << out << ": n=" << trace.n << " ops=" << trace.ops.size()
              << " queries=" << trace.query_count() << "\n";
    return 0;
}

int cmd_bench(const std::string& trace_path, const std::string& kinds_csv, int reps,
              const RunOptions& opts) {
    Trace trace = parse_trace(read_file(trace_path));
    std::vector<StructureKind> kinds;
    std::stringstream ss(kinds_csv);
    std::string item;
    while (std::getline(ss, item, ',')) kinds.push_back(parse_structure_kind(item));
    if (kinds.empty()) raise(ErrorCode::IllegalOperation, "no structure kinds given");
    std::cout << run_bench(trace, kinds, reps, opts).text();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"retrograph: retroactive graph structures over trace files"};
    app.require_subcommand(1);

    std::string trace_path, kind = "oracle", out, family = "random";
    std::string eps = "1/2", query_kinds_csv, kinds_csv = "oracle", engine = "baseline";
    std::int64_t n = 30, updates = 1000, queries = 500, max_weight = 1, reps = 1;
    std::uint64_t seed = 1;
    bool incremental = false;

    auto* run = app.add_subcommand("run", "run a trace and print one answer per query");
    run->add_option("--trace", trace_path, "trace file")->required();
    run->add_option("--kind", kind,
                    "inc-conn|approx-msf|full-maxdeg|full-msf|full-conn|full-match|"
                    "oracle|replay")
        ->required();
    run->add_option("--engine", engine, "baseline|leveled");
    run->add_option("--eps", eps, "approx-msf epsilon, e.g. 1/2");
    run->add_option("--max-weight", max_weight, "approx-msf weight cap");

    auto* verify = app.add_subcommand(
        "verify", "diff structures, the replay baseline and embedded answers "
                  "against the oracle");
    verify->add_option("--trace", trace_path, "trace file")->required();
    verify->add_option("--engine", engine, "baseline|leveled");

    auto* gen = app.add_subcommand("gen", "generate a workload trace");
    gen->add_option("--family", family, "random|omv-conn|omv-msf|omv-maxdeg");
    gen->add_option("--out", out, "output file")->required();
    gen->add_option("--n", n, "vertex count (matrix size for omv)");
    gen->add_option("--updates", updates, "update count (random)");
    gen->add_option("--queries", queries, "query count (random)");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--max-weight", max_weight, "max edge weight (random)");
    gen->add_flag("--incremental", incremental, "insertions and cancels only");
    gen->add_option("--query-kinds", query_kinds_csv, "comma separated query kinds");

    auto* bench = app.add_subcommand("bench", "time a trace against structures");
    bench->add_option("--trace", trace_path, "trace file")->required();
    bench->add_option("--kinds", kinds_csv, "comma separated structure kinds");
    bench->add_option("--reps", reps, "repetitions");
    bench->add_option("--engine", engine, "baseline|leveled");
    bench->add_option("--eps", eps, "approx-msf epsilon");
    bench->add_option("--max-weight", max_weight, "approx-msf weight cap");

    CLI11_PARSE(app, argc, argv);

    try {
        RunOptions opts;
        opts.engine = engine == "leveled" ? retrograph::EngineKind::Leveled
                                          : retrograph::EngineKind::Baseline;
        opts.eps = parse_eps(eps);
        opts.max_weight = max_weight > 1 ? max_weight : 0;
        if (run->parsed()) return cmd_run(trace_path, kind, opts);
        if (verify->parsed()) return cmd_verify(trace_path, opts);
        if (gen->parsed())
            return cmd_gen(family, out, static_cast<retrograph::Vertex>(n),
                           static_cast<int>(updates), static_cast<int>(queries), seed,
                           max_weight, incremental, query_kinds_csv);
        if (bench->parsed())
            return cmd_bench(trace_path, kinds_csv, static_cast<int>(reps), opts);
    } catch (const retrograph::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
