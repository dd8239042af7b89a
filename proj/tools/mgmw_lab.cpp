// mgmw-lab: batch front end for graph validation, rate-vector enumeration,
// simulation sweeps, pooling reports and adversarial runs.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "mgmw/adversarial.hpp"
#include "mgmw/errors.hpp"
#include "mgmw/graph_io.hpp"
#include "mgmw/pooling.hpp"
#include "mgmw/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mgmw;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitRuntime = 4;

struct Context {
    json config;          // resolved
    NetworkGraph graph;
    fs::path out;
};

std::string fmt_num(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    return f;
}

template <class T>
T field(const json& block, const std::string& name, const std::string& where, T fallback) {
    if (!block.contains(name)) return fallback;
    try {
        return block.at(name).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + name + " has the wrong type");
    }
}

// Links are written 1-based: 3 for a point-to-point link, [1,4] for a pair.
Link parse_link(const json& j, int edge_count) {
    auto id = [&](const json& v) {
        int e = v.get<int>();
        if (e < 1 || e > edge_count) throw ConfigError("adv.links: edge " + std::to_string(e) + " out of range");
        return e - 1;
    };
    if (j.is_number_integer()) return Link::p2p(id(j));
    if (j.is_array() && j.size() == 2) return Link::multiuser(id(j[0]), id(j[1]));
    throw ConfigError("adv.links: expected an edge id or a pair");
}

json link_json(const Link& l) {
    if (l.is_p2p()) return l.k + 1;
    return json::array({l.k + 1, l.l + 1});
}

std::string links_text(const std::vector<Link>& links) {
    std::string s;
    for (const Link& l : links) s += (s.empty() ? "" : " ") + to_string(l);
    return s;
}

void write_resolved(const Context& ctx) {
    auto f = open_out(ctx.out / "resolved_config.json");
    f << ctx.config.dump(2) << '\n';
}

int cmd_validate(Context& ctx) {
    auto v = validate_graph(ctx.graph);
    auto f = open_out(ctx.out / "violations.csv");
    f << "kind,edges\n";
    for (const auto& x : v) {
        std::string edges;
        for (EdgeId e : x.edges) edges += (edges.empty() ? "" : " ") + std::to_string(e + 1);
        f << x.kind << ',' << edges << '\n';
        std::cout << x.kind << ": " << edges << '\n';
    }
    if (v.empty()) std::cout << "ok\n";
    return v.empty() ? 0 : kExitViolations;
}

int cmd_enum(Context& ctx) {
    require_valid(ctx.graph);
    const json block = ctx.config.value("enum", json::object());
    RegionMode mode;
    if (!ctx.graph.all_regions_fixed()) {
        mode.kind = RegionMode::sampled;
        mode.samples = field(block, "grid", "enum", 33);
    }
    ctx.config["enum"]["grid"] = mode.samples;
    EdgeSet all(ctx.graph.edge_count);
    for (int e = 0; e < ctx.graph.edge_count; ++e) all[e] = e;
    auto vectors = enumerate_rate_vectors(ctx.graph, all, mode);
    auto f = open_out(ctx.out / "rate_vectors.csv");
    f << "index";
    for (int e = 0; e < ctx.graph.edge_count; ++e) f << ",r" << e + 1;
    f << ",links\n";
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        f << i;
        for (double r : vectors[i].rates) f << ',' << fmt_num(r);
        std::vector<Link> active;
        for (const auto& a : vectors[i].active) active.push_back(a.link);
        f << ',' << links_text(active) << '\n';
    }
    std::cout << vectors.size() << " rate vectors\n";
    return 0;
}

struct SimJob {
    double scale;
    std::uint64_t seed;
};

struct SimResult {
    double final_total;
    StabilityEstimate est;
};

int cmd_sim(Context& ctx, std::optional<std::string> scheduler_override,
            std::optional<std::uint64_t> seed_override) {
    require_valid(ctx.graph);
    const NetworkGraph& g = ctx.graph;
    json& block = ctx.config["sim"];
    if (block.is_null()) block = json::object();
    std::string scheduler = scheduler_override.value_or(field<std::string>(block, "scheduler", "sim", "mgmw"));
    const SchedulerKind kind = parse_scheduler(scheduler);
    const long horizon = field<long>(block, "T", "sim", 10000);
    if (horizon < 1) throw ConfigError("sim.T must be at least 1");
    std::vector<std::uint64_t> seeds = field<std::vector<std::uint64_t>>(block, "seeds", "sim", {1});
    if (seed_override) seeds = {*seed_override};
    std::vector<double> scales = field<std::vector<double>>(block, "lambda_scale", "sim", {1.0});
    std::vector<double> lambda = field<std::vector<double>>(block, "lambda", "sim", std::vector<double>(g.edge_count, 0.0));
    if (static_cast<int>(lambda.size()) != g.edge_count) throw ConfigError("sim.lambda needs one rate per edge");
    const bool trace = field(block, "record_trace", "sim", false);
    const int workers = std::max(1, field(block, "workers", "sim", 1));
    block["scheduler"] = scheduler;
    block["T"] = horizon;
    block["seeds"] = seeds;
    block["lambda_scale"] = scales;
    block["lambda"] = lambda;
    block["record_trace"] = trace;
    block["workers"] = workers;

    std::vector<SimJob> jobs;
    for (double s : scales) {
        for (auto seed : seeds) jobs.push_back({s, seed});
    }
    std::vector<SimResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                std::vector<double> l(lambda);
                for (double& x : l) x *= jobs[i].scale;
                BernoulliArrivals arrivals(l);
                SimOptions opts;
                opts.horizon = horizon;
                opts.seed = jobs[i].seed;
                opts.record_edges = trace;
                Trace tr = run_simulation(g, kind, arrivals, opts);
                results[i] = {tr.total_queue.back(), estimate_stability(tr, 0.5, default_thresholds(g))};
                if (trace) {
                    std::ostringstream name;
                    name << "trace_" << fmt_num(jobs[i].scale) << '_' << jobs[i].seed << ".csv";
                    auto f = open_out(ctx.out / name.str());
                    f << "t,edge,queue,arrivals,served\n";
                    for (long t = 0; t < horizon; ++t) {
                        for (int e = 0; e < g.edge_count; ++e) {
                            std::size_t c = static_cast<std::size_t>(t) * g.edge_count + e;
                            f << t << ',' << e + 1 << ',' << fmt_num(tr.queue[c]) << ',' << fmt_num(tr.arrivals[c])
                              << ',' << fmt_num(tr.served[c]) << '\n';
                        }
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);

    auto f = open_out(ctx.out / "summary.csv");
    f << "scheduler,seed,lambda_scale,total_queue_final,slope,verdict\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        f << scheduler << ',' << jobs[i].seed << ',' << fmt_num(jobs[i].scale) << ','
          << fmt_num(results[i].final_total) << ',' << fmt_num(results[i].est.slope) << ','
          << to_string(results[i].est.verdict) << '\n';
    }
    std::cout << jobs.size() << " runs\n";
    return 0;
}

int cmd_pool(Context& ctx) {
    require_valid(ctx.graph);
    json& block = ctx.config["pool"];
    if (block.is_null()) block = json::object();
    const std::string mode = field<std::string>(block, "mode", "pool", ctx.graph.all_regions_fixed() ? "fixed" : "variable");
    block["mode"] = mode;
    if (mode == "fixed") {
        const bool verify = field(block, "verify_witness", "pool", true);
        block["verify_witness"] = verify;
        auto b = graph_sigma_bounds(ctx.graph, verify);
        auto f = open_out(ctx.out / "pool_report.csv");
        f << "set,tau,ratio,sigma_upper\n";
        for (const auto& s : b.per_set) {
            f << '"' << links_text(s.set.links) << "\"," << fmt_num(s.tau) << ',' << fmt_num(s.ratio) << ','
              << fmt_num(s.sigma_upper) << '\n';
        }
        auto sf = open_out(ctx.out / "pool_summary.csv");
        sf << "candidate_sets,sigma_L,sigma_U\n" << b.per_set.size() << ',' << fmt_num(b.sigma_lower) << ','
           << fmt_num(b.sigma_upper) << '\n';
        std::cout << "sigma_L " << fmt_num(b.sigma_lower) << "  sigma_U " << fmt_num(b.sigma_upper) << '\n';
    } else if (mode == "variable") {
        const int grid = field(block, "grid", "pool", 33);
        if (grid < 3) throw ConfigError("pool.grid must be at least 3");
        block["grid"] = grid;
        auto v = vr_sigma_hat(ctx.graph, grid);
        auto f = open_out(ctx.out / "pool_summary.csv");
        f << "grid,sigma_hat,set,pairs\n" << grid << ',' << fmt_num(v.sigma_hat) << ",\"" << links_text(v.links) << "\",\"";
        bool first = true;
        for (std::size_t i = 0; i < v.links.size(); ++i) {
            if (v.links[i].is_p2p()) continue;
            f << (first ? "" : " ") << '(' << fmt_num(v.pairs[i].rk) << ' ' << fmt_num(v.pairs[i].rl) << ')';
            first = false;
        }
        f << "\"\n";
        std::cout << "sigma_hat " << fmt_num(v.sigma_hat) << '\n';
    } else {
        throw ConfigError("pool.mode must be fixed or variable");
    }
    return 0;
}

std::vector<Link> worst_upper_set(const NetworkGraph& g) {
    auto b = graph_sigma_bounds(g);
    const SetBounds* worst = nullptr;
    for (const auto& s : b.per_set) {
        if (!worst || s.sigma_upper < worst->sigma_upper - 1e-12) worst = &s;
    }
    if (!worst) throw ConstructionFailed("graph has no candidate sets");
    return worst->set.links;
}

json spec_json(const AdversarialSpec& s) {
    json j;
    j["mode"] = s.mode == AdversaryMode::theorem2 ? "theorem2" : "theorem5";
    j["links"] = json::array();
    for (const Link& l : s.links) j["links"].push_back(link_json(l));
    if (!s.operating.empty()) {
        j["operating"] = json::array();
        for (const auto& p : s.operating) j["operating"].push_back({p.rk, p.rl});
    }
    j["vectors"] = s.vectors;
    j["omega"] = s.omega;
    j["v"] = s.v;
    j["epsilon"] = s.epsilon;
    j["q0"] = s.q0;
    j["hat_c"] = s.hat_c;
    j["seed"] = s.seed;
    j["arrival_rate"] = s.arrival_rate();
    return j;
}

int cmd_adv(Context& ctx, std::optional<std::uint64_t> seed_override) {
    require_valid(ctx.graph);
    const NetworkGraph& g = ctx.graph;
    json& block = ctx.config["adv"];
    if (block.is_null()) block = json::object();
    const std::string mode = field<std::string>(block, "mode", "adv", "theorem2");
    const double eps = field(block, "epsilon", "adv", 2e-4);
    const long horizon = field<long>(block, "T", "adv", 100000);
    std::uint64_t seed = seed_override.value_or(field<std::uint64_t>(block, "seed", "adv", 1));
    const double delta = field(block, "delta_rat", "adv", 1e-6);

    std::vector<Link> links;
    if (!block.contains("links") || block["links"] == "auto") {
        links = worst_upper_set(g);
    } else {
        for (const auto& l : block.at("links")) links.push_back(parse_link(l, g.edge_count));
        std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
            if (a.is_p2p() != b.is_p2p()) return a.is_p2p();
            return a < b;
        });
    }
    block["mode"] = mode;
    block["epsilon"] = eps;
    block["T"] = horizon;
    block["seed"] = seed;
    block["delta_rat"] = delta;
    block["links"] = json::array();
    for (const Link& l : links) block["links"].push_back(link_json(l));

    AdversarialSpec spec;
    SchedulerKind kind;
    if (mode == "theorem2") {
        spec = build_theorem2_spec(g, links, eps, delta, seed);
        kind = SchedulerKind::mgmw;
    } else if (mode == "theorem5") {
        if (!block.contains("operating")) throw ConfigError("adv.operating is required for theorem5");
        std::vector<RatePair> op;
        for (const auto& p : block.at("operating")) op.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (op.size() != links.size()) throw ConfigError("adv.operating needs one pair per link");
        spec = build_theorem5_spec(g, links, op, eps, seed, delta);
        kind = SchedulerKind::vrmgmw;
    } else {
        throw ConfigError("adv.mode must be theorem2 or theorem5");
    }
    {
        auto f = open_out(ctx.out / "adv_spec.json");
        f << spec_json(spec).dump(2) << '\n';
    }
    AdversarialArrivals arrivals(spec, g.edge_count);
    SimOptions opts;
    opts.horizon = horizon;
    opts.seed = seed;
    auto f = open_out(ctx.out / "trace.csv");
    f << "t,total_queue";
    for (int e = 0; e < g.edge_count; ++e) f << ",q" << e + 1;
    f << ",boost\n";
    opts.observer = [&](const SlotRecord& r) {
        double total = 0.0;
        for (double q : r.queue) total += q;
        f << r.t << ',' << fmt_num(total);
        for (double q : r.queue) f << ',' << fmt_num(q);
        f << ',' << (arrivals.last_was_boost() ? 1 : 0) << '\n';
    };
    Trace tr = run_simulation(g, kind, arrivals, opts);
    auto est = estimate_stability(tr, 0.5, default_thresholds(g));
    auto sf = open_out(ctx.out / "summary.csv");
    sf << "scheduler,seed,epsilon,total_queue_final,slope,verdict\n"
       << to_string(kind) << ',' << seed << ',' << fmt_num(eps) << ',' << fmt_num(tr.total_queue.back()) << ','
       << fmt_num(est.slope) << ',' << to_string(est.verdict) << '\n';
    std::cout << "set " << links_text(links) << "  slope " << fmt_num(est.slope) << "  " << to_string(est.verdict)
              << '\n';
    return 0;
}

// A config either names a graph file under "graph" or is itself a graph file.
Context load_context(const std::string& config_path, const std::string& out_dir) {
    Context ctx;
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config '" + config_path + "'");
    try {
        in >> ctx.config;
    } catch (const json::exception& e) {
        throw ConfigError("config '" + config_path + "': " + e.what());
    }
    if (ctx.config.contains("graph")) {
        const json& gr = ctx.config["graph"];
        if (gr.is_string()) {
            fs::path p = gr.get<std::string>();
            if (p.is_relative()) p = fs::path(config_path).parent_path() / p;
            ctx.graph = load_graph(p.string());
        } else {
            ctx.graph = graph_from_json(gr);
        }
    } else {
        ctx.graph = graph_from_json(ctx.config);
        ctx.config = json{{"graph", ctx.config}};
    }
    // The echoed config embeds the graph so it replays without the original file.
    ctx.config["graph"] = graph_to_json(ctx.graph);
    ctx.out = out_dir;
    fs::create_directories(ctx.out);
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiuser greedy scheduling lab"};
    app.require_subcommand(1);
    std::string config, out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scheduler;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "graph or experiment JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory");
        sub->add_option("--seed", seed, "override the seed");
        sub->add_option("--scheduler", scheduler, "mgmw | vrmgmw | gmm | maxweight");
    };
    for (const char* name : {"validate", "enum", "sim", "pool", "adv"}) add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        Context ctx = load_context(config, out);
        int rc = 0;
        if (cmd == "validate") rc = cmd_validate(ctx);
        else if (cmd == "enum") rc = cmd_enum(ctx);
        else if (cmd == "sim") rc = cmd_sim(ctx, scheduler, seed);
        else if (cmd == "pool") rc = cmd_pool(ctx);
        else rc = cmd_adv(ctx, seed);
        write_resolved(ctx);
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnknownScheduler& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const TooLargeForExact& e) {
        std::cerr << e.what() << '\n';
        return kExitTooLarge;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
