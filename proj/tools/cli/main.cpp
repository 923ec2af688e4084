#include "commands.hpp"

#include "cvq/gaussian.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cvq::cli;

namespace {

struct Common {
    std::string preset = "table1";
    std::vector<std::string> sets;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
    unsigned seed = 0;
    std::vector<std::string> sweep;
    bool log = false;
    std::string resource = "tmst-asym";
    std::string geometry = "sym";
    std::string kind = "lossy-asym";
};

void add_common(CLI::App* sub, Common& c, bool sweeps) {
    sub->add_option("--preset", c.preset, "Preset name or key=value file")->capture_default_str();
    sub->add_option("--set", c.sets, "Override a parameter: key=value (repeatable)");
    sub->add_option("--out", c.out, "Write output to this path instead of stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--seed", c.seed, "Accepted for reproducibility scripts; all computations are deterministic");
    if (!sweeps) return;
    sub->add_option("--jobs", c.jobs, "Worker threads for sweep rows")->check(CLI::PositiveNumber);
    sub->add_option("--sweep", c.sweep, "VAR START STOP COUNT")->expected(4);
    sub->add_flag("--log", c.log, "Logarithmic sweep spacing");
}

RunOptions options_of(const Common& c) {
    RunOptions o;
    o.params = Params::load(c.preset);
    for (const std::string& s : c.sets) o.params.apply_override(s);
    if (!c.sweep.empty()) o.sweep = parse_sweep(c.sweep, c.log);
    o.jobs = c.jobs;
    o.resource = c.resource;
    o.geometry = c.geometry;
    o.kind = c.kind;
    return o;
}

void emit(const Common& c, const std::function<void(std::ostream&)>& write) {
    if (c.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw usage_error("cannot open output file: " + c.out);
    write(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable microwave quantum communication and sensing calculator"};
    app.require_subcommand(1);
    Common c;

    std::map<std::string, CLI::App*> sweeps;
    for (const std::string& name : sweep_commands()) {
        CLI::App* sub = app.add_subcommand(name, describe(name));
        add_common(sub, c, true);
        sweeps[name] = sub;
    }
    sweeps["teleport"]
        ->add_option("--resource", c.resource, "tmst-asym, tmst-sym, swap, 2ps-sym, 2ps-asym, h2ps-sym, h2ps-asym")
        ->capture_default_str();
    sweeps["distill"]->add_option("--geometry", c.geometry, "sym or asym")->capture_default_str();

    CLI::App* state = app.add_subcommand("state", "Covariance matrix of a source or link state as JSON");
    add_common(state, c, false);
    state->add_option("--kind", c.kind, "tmsv, tmst, lossy-asym, lossy-sym")->capture_default_str();
    CLI::App* summary = app.add_subcommand("summary", "Headline anchors with pass/fail as JSON");
    add_common(summary, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (state->parsed()) {
            const nlohmann::json j = run_state(options_of(c));
            emit(c, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
            return 0;
        }
        if (summary->parsed()) {
            const Summary s = run_summary(options_of(c).params);
            emit(c, [&](std::ostream& os) { os << s.report.dump(2) << "\n"; });
            return s.all_pass ? 0 : 3;
        }
        for (const auto& [name, sub] : sweeps) {
            if (!sub->parsed()) continue;
            const Table t = run_sweep(name, options_of(c));
            emit(c, [&](std::ostream& os) {
                if (c.format == "json")
                    os << to_json(t).dump(2) << "\n";
                else
                    write_csv(os, t);
            });
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const cvq::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 2;
    }
}
