// pesim: simulate, analyze and render fixed-priority schedules with
// self-suspending tasks, the period enforcer and lock protocols.
//
// Exit codes: 0 all checks pass, 1 deadline miss or failed assertion,
// 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pe/analysis.hpp"
#include "pe/gantt.hpp"
#include "pe/io.hpp"
#include "pe/repro.hpp"

namespace {

using namespace pe;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Source {
    std::string file;
    std::string builtin;
    std::string epsilon = "1/100";
    std::string enforcer;
    std::string lock_semantics;
    std::string queue;
    std::string horizon;

    void add_to(CLI::App* app) {
        app->add_option("scenario", file, "Scenario JSON file");
        app->add_option("--builtin", builtin, "Built-in scenario name instead of a file");
        app->add_option("--epsilon", epsilon, "Offset used by fig6_lock_immediate")->capture_default_str();
        app->add_option("--enforcer", enforcer, "off, on, on-idle-eligible");
        app->add_option("--lock-semantics", lock_semantics, "at-eligibility, immediate, exempt-cs, distributed");
        app->add_option("--queue", queue, "fifo, priority");
        app->add_option("--horizon", horizon, "Simulation horizon (rational)");
    }

    ScenarioDocument load() const {
        if (file.empty() == builtin.empty()) throw InputError("give either a scenario file or --builtin NAME");
        ScenarioDocument doc;
        if (!builtin.empty()) {
            auto b = find_builtin(builtin, Ratio::parse(epsilon));
            if (!b) throw InputError("unknown built-in scenario \"" + builtin + "\"");
            doc = {b->scenario, b->assertions};
        } else {
            doc = load_scenario(file);
        }
        auto& c = doc.scenario.config;
        if (!enforcer.empty()) c.enforcement = parse_enforcement(enforcer);
        if (!lock_semantics.empty()) c.lock_semantics = parse_lock_semantics(lock_semantics);
        if (!queue.empty()) c.queue = parse_queue_policy(queue);
        if (!horizon.empty()) c.horizon = Ratio::parse(horizon);
        auto v = validate_scenario(doc.scenario);
        if (!v.ok()) throw InputError(v.summary());
        return doc;
    }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void print_report(const std::string& name, const CheckReport& rep) {
    for (const auto& r : rep.results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << name << ": " << r.description;
        if (!r.passed) std::cout << " (observed " << r.observed << ")";
        std::cout << "\n";
    }
}

void print_misses(const ScheduleTrace& trace) {
    for (const auto* e : trace.misses())
        std::cerr << "deadline miss: tau" << e->task << " job " << e->job << " at " << e->time << "\n";
}

int run_simulate(const Source& src, const std::string& out, const std::string& format, bool eligibility) {
    auto doc = src.load();
    auto trace = simulate(doc.scenario);
    write_output(out, format == "jsonl" ? events_to_jsonl(trace) : trace_to_json(trace, {eligibility}).dump(2) + "\n");
    print_misses(trace);
    auto rep = check_trace(trace, doc.assertions);
    if (!doc.assertions.empty()) {
        for (const auto& r : rep.results)
            if (!r.passed) std::cerr << "assertion failed: " << r.description << " (observed " << r.observed << ")\n";
    }
    return trace.misses().empty() && rep.passed() ? kOk : kFailed;
}

struct AnalyzeOptions {
    std::string method;
    std::string out;
    bool no_grid = false;
    std::string grid_step;
    std::size_t grid_limit = SearchOptions{}.grid_limit;
};

Json lock_bound_report(const Scenario& sc) {
    const BlockingModel model = sc.config.lock_semantics == LockSemantics::distributed ? BlockingModel::distributed
                                                                                       : BlockingModel::shared_memory;
    Json j;
    j["analysis"] = "lock-bound";
    j["model"] = to_string(model);
    bool all = true;
    Json tasks = Json::array();
    for (const auto& t : sc.tasks) {
        Ratio b = wcrt_lock_bound(t, sc.tasks, model);
        all = all && b <= t.deadline;
        tasks.push_back({{"id", t.id},
                         {"name", t.name},
                         {"deadline", t.deadline.str()},
                         {"bound", b.str()},
                         {"schedulable", b <= t.deadline}});
    }
    j["schedulable"] = all;
    j["tasks"] = tasks;
    return j;
}

int run_analyze(const Source& src, const AnalyzeOptions& opt) {
    auto doc = src.load();
    Json report;
    if (opt.method == "rta") {
        report = to_json(rta_segmented(doc.scenario.tasks), "rta");
    } else if (opt.method == "bruteforce") {
        SearchOptions so;
        so.grid = !opt.no_grid;
        if (!opt.grid_step.empty()) so.grid_step = Ratio::parse(opt.grid_step);
        so.grid_limit = opt.grid_limit;
        report = to_json(wcrt_bruteforce_special_case(doc.scenario.tasks, so), "bruteforce");
    } else {
        report = lock_bound_report(doc.scenario);
    }
    write_output(opt.out, report.dump(2) + "\n");
    return report["schedulable"].get<bool>() ? kOk : kFailed;
}

struct ReproOptions {
    bool all = false;
    bool list = false;
    std::vector<std::string> names;
    std::string epsilon = "1/100";
    std::string emit_trace;
    std::string emit_scenario;
    std::string out;
};

int run_repro(const ReproOptions& opt) {
    const Ratio eps = Ratio::parse(opt.epsilon);
    auto builtins = builtin_scenarios(eps);
    if (opt.list) {
        for (const auto& b : builtins) std::cout << b.scenario.name << "  " << b.scenario.description << "\n";
        return kOk;
    }
    if (opt.all == !opt.names.empty()) throw InputError("give either --all or --name NAME");

    std::vector<BuiltinScenario> chosen;
    if (opt.all) {
        chosen = builtins;
    } else {
        for (const auto& n : opt.names) {
            auto b = find_builtin(n, eps);
            if (!b) throw InputError("unknown built-in scenario \"" + n + "\"");
            chosen.push_back(*b);
        }
    }
    if (!opt.emit_trace.empty()) std::filesystem::create_directories(opt.emit_trace);
    if (!opt.emit_scenario.empty()) std::filesystem::create_directories(opt.emit_scenario);

    bool ok = true;
    Json reports = Json::array();
    for (const auto& b : chosen) {
        auto trace = simulate(b.scenario);
        auto rep = check_trace(trace, b.assertions);
        print_report(b.scenario.name, rep);
        ok = ok && rep.passed();
        reports.push_back(to_json(rep, b.scenario.name));
        if (!opt.emit_trace.empty()) {
            auto base = std::filesystem::path(opt.emit_trace) / b.scenario.name;
            write_output(base.string() + ".trace.json", trace_to_json(trace, {true}).dump(2) + "\n");
            write_output(base.string() + ".events.jsonl", events_to_jsonl(trace));
        }
        if (!opt.emit_scenario.empty()) {
            auto path = std::filesystem::path(opt.emit_scenario) / (b.scenario.name + ".json");
            write_output(path.string(), serialize_scenario(b.scenario, b.assertions));
        }
    }
    if (!opt.out.empty()) write_output(opt.out, reports.dump(2) + "\n");
    std::cout << (ok ? "all assertions passed" : "assertion failures") << "\n";
    return ok ? kOk : kFailed;
}

int run_gantt(const Source& src, const std::string& resolution, const std::string& out) {
    auto doc = src.load();
    auto trace = simulate(doc.scenario);
    write_output(out, render_gantt(trace, Ratio::parse(resolution)));
    return trace.misses().empty() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-priority scheduling simulator with period enforcement and lock protocols"};
    app.require_subcommand(1);

    Source sim_src, ana_src, gantt_src;
    std::string sim_out, sim_format = "json";
    bool sim_eligibility = false;
    auto* sim = app.add_subcommand("simulate", "Run a scenario and write its trace");
    sim_src.add_to(sim);
    sim->add_option("--out", sim_out, "Output file (default stdout)");
    sim->add_option("--format", sim_format, "json or jsonl")->check(CLI::IsMember({"json", "jsonl"}));
    sim->add_flag("--eligibility", sim_eligibility, "Include the enforcer's eligibility table");

    AnalyzeOptions ana;
    auto* analyze = app.add_subcommand("analyze", "Schedulability analysis of a scenario's task set");
    analyze->add_option("method", ana.method, "rta, bruteforce or lock-bound")
        ->required()
        ->check(CLI::IsMember({"rta", "bruteforce", "lock-bound"}));
    ana_src.add_to(analyze);
    analyze->add_option("--out", ana.out, "Output file (default stdout)");
    analyze->add_flag("--no-grid", ana.no_grid, "bruteforce: skip the sporadic grid search");
    analyze->add_option("--grid-step", ana.grid_step, "bruteforce: grid step (default: gcd of all parameters)");
    analyze->add_option("--grid-limit", ana.grid_limit, "bruteforce: give up on the grid beyond this many states")
        ->capture_default_str();

    ReproOptions rep;
    auto* repro = app.add_subcommand("repro", "Run built-in scenarios and check their assertions");
    repro->add_flag("--all", rep.all, "Every built-in scenario");
    repro->add_option("--name", rep.names, "Built-in scenario (repeatable)");
    repro->add_flag("--list", rep.list, "List built-in scenarios");
    repro->add_option("--epsilon", rep.epsilon, "Offset used by fig6_lock_immediate")->capture_default_str();
    repro->add_option("--emit-trace", rep.emit_trace, "Directory for <name>.trace.json and <name>.events.jsonl");
    repro->add_option("--emit-scenario", rep.emit_scenario, "Directory for <name>.json scenario files");
    repro->add_option("--out", rep.out, "Write the JSON check report here");

    std::string resolution = "1", gantt_out;
    auto* gantt = app.add_subcommand("gantt", "Render an ASCII Gantt chart of a scenario");
    gantt_src.add_to(gantt);
    gantt->add_option("--resolution", resolution, "Cell width (rational)")->capture_default_str();
    gantt->add_option("--out", gantt_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*sim) return run_simulate(sim_src, sim_out, sim_format, sim_eligibility);
        if (*analyze) return run_analyze(ana_src, ana);
        if (*repro) return run_repro(rep);
        if (*gantt) return run_gantt(gantt_src, resolution, gantt_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
