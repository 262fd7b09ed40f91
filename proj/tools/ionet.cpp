// ionet: command-line front end for the ionet library.
//
// Exit codes: 0 decided, 2 invalid input, 3 budget exceeded.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ionet/ionet.hpp"
#include "ionet/report.hpp"

namespace {

using namespace ionet;
using nlohmann::json;

constexpr int kExitDecided = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
    std::size_t node_budget = 500000;
    std::size_t candidate_budget = 200000;
    std::size_t subset_cap = 16;
    std::uint64_t seed = 0;
    bool json = false;
};

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Thrown by commands that ran out of budget after producing a partial report.
struct ReportedBudget {
    json report;
    std::string message;
};

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
    if (cfg.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << content;
}

Marking resolve_marking(const ParsedNet& pn, const std::string& text) {
    if (text.empty()) return pn.has_marking ? pn.marking : Marking(pn.net.num_places(), 0);
    Marking m = parse_marking(text);
    if (m.size() != pn.net.num_places())
        throw InvalidArgument("marking has " + std::to_string(m.size()) + " entries but the net has " +
                              std::to_string(pn.net.num_places()) + " places");
    return m;
}

WitnessVariant variant_of(const Net& net) {
    return classify(net).ordinary ? WitnessVariant::Ordinary : WitnessVariant::Weighted;
}

std::string flag(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, const std::string& file) {
    ParsedNet pn = load_net(file);
    NetClass c = classify(pn.net);
    json j = report::net_class(pn.net, c);
    j["command"] = "classify";
    std::ostringstream t;
    t << "net " << pn.net.name() << ": " << pn.net.num_places() << " places, " << pn.net.num_transitions()
      << " transitions, w = " << c.max_weight << "\n"
      << "class: " << class_label(c) << "\n"
      << "ordinary " << flag(c.ordinary) << ", conservative " << flag(c.conservative) << ", bimo "
      << flag(c.bimo) << ", bio " << flag(c.bio) << ", imo " << flag(c.imo) << ", io " << flag(c.io) << "\n";
    if (c.bimo) t << "table row: " << row_name(table_row(c)) << "\n";
    emit(cfg, j, t.str());
    return kExitDecided;
}

int cmd_live(const RunConfig& cfg, const std::string& file, const std::string& marking_text) {
    Stopwatch sw;
    ParsedNet pn = load_net(file);
    const Net& net = pn.net;
    const Marking m = resolve_marking(pn, marking_text);
    NetClass c = classify(net);
    if (!c.bimo) throw NotBimo("liveness is decided for BIMO nets only");

    report::Stats st;
    json j{{"command", "live"}, {"marking", report::marking(net, m)}};
    NonliveOptions nopts;
    nopts.node_budget = cfg.node_budget;
    nopts.subset_cap = cfg.subset_cap;

    std::optional<bool> live;
    std::optional<NonliveResult> capped;
    std::string engine;
    if (c.conservative) {
        auto r = is_live_exact(net, m, cfg.node_budget);
        st.configs_explored += r.explored;
        if (!r.exceeded()) {
            live = *r;
            engine = "exact";
        }
    }
    // Non-live verdicts come with a witness from the capped search when it fits the budget.
    if (!live.has_value() || !*live) {
        try {
            capped = is_nonlive(net, m, nopts);
            st.configs_explored += capped->configs_explored;
            if (!live.has_value()) {
                live = !capped->nonlive;
                engine = "capped";
            }
        } catch (const BudgetExceeded& e) {
            st.configs_explored += e.explored();
        }
    }
    if (!live.has_value()) {
        SlpOptions so;
        so.node_budget = cfg.node_budget;
        LivenessOracle oracle(net, so);
        try {
            live = oracle.live(m);
            engine = "truncated";
        } catch (const BudgetExceeded&) {
        }
        st.configs_explored += oracle.explored();
    }
    st.wall_ms = sw.ms();
    if (!live.has_value()) {
        j["verdict"] = "budget_exceeded";
        j["stats"] = report::stats(st);
        throw ReportedBudget{j, "liveness undecided within the node budget of " + std::to_string(cfg.node_budget)};
    }

    j["verdict"] = *live ? "live" : "nonlive";
    j["engine"] = engine;
    std::ostringstream t;
    t << (*live ? "live" : "nonlive") << " (" << engine << ")\n";
    if (!*live && capped && capped->nonlive && capped->witness) {
        WitnessReport wr = check_witness(net, *capped->witness, variant_of(net), cfg.node_budget);
        j["witness"] = report::witness(net, *capped->witness, wr);
        j["capped_path"] = report::capped_path(net, capped->path);
        t << "witness: M_wit = " << to_string(capped->witness->m_wit) << ", P_cruc = {";
        for (std::size_t i = 0; i < capped->witness->p_cruc.size(); ++i)
            t << (i ? ", " : "") << net.place(capped->witness->p_cruc[i]);
        t << "}, T_dead = {";
        for (std::size_t i = 0; i < capped->witness->t_dead.size(); ++i)
            t << (i ? ", " : "") << net.transition(capped->witness->t_dead[i]);
        t << "}\n";
    }
    j["stats"] = report::stats(st);
    emit(cfg, j, t.str());
    return kExitDecided;
}

int cmd_slp(const RunConfig& cfg, const std::string& file, std::optional<Count> box) {
    Stopwatch sw;
    ParsedNet pn = load_net(file);
    const Net& net = pn.net;
    SlpOptions so;
    so.node_budget = cfg.node_budget;
    so.candidate_budget = cfg.candidate_budget;
    so.first_bound_override = box;
    NetClass c = classify(net);
    if (!c.bimo) throw NotBimo("structural liveness is decided for BIMO nets only");
    Bounds b = bounds_for(c, net.num_places());
    json j{{"command", "slp"}, {"bounds", report::bounds(b)}};
    try {
        SlpResult r = decide_slp(net, so);
        report::Stats st{r.configs_explored, r.candidates_tested, sw.ms()};
        j["box"] = r.box;
        j["stats"] = report::stats(st);
        std::ostringstream t;
        if (r.certificate) {
            j["verdict"] = "structurally_live";
            j["certificate"] = report::marking(net, *r.certificate);
            t << "structurally_live\ncertificate: " << to_string(*r.certificate) << "\n";
        } else {
            j["verdict"] = "not_structurally_live";
            t << "not_structurally_live\n";
        }
        emit(cfg, j, t.str());
        return kExitDecided;
    } catch (const CandidateBudgetExceeded& e) {
        j["verdict"] = "budget_exceeded";
        j["message"] = e.what();
        j["stats"] = report::stats({0, e.tested(), sw.ms()});
        throw ReportedBudget{j, e.what()};
    } catch (const BudgetExceeded& e) {
        j["verdict"] = "budget_exceeded";
        j["message"] = e.what();
        j["stats"] = report::stats({e.explored(), 0, sw.ms()});
        throw ReportedBudget{j, e.what()};
    }
}

int cmd_witness(const RunConfig& cfg, const std::string& file, const std::string& marking_text, bool strict) {
    Stopwatch sw;
    ParsedNet pn = load_net(file);
    const Net& net = pn.net;
    const Marking m = resolve_marking(pn, marking_text);
    WitnessOptions wo;
    wo.subset_cap = cfg.subset_cap;
    wo.strict = strict;
    wo.node_budget = cfg.node_budget;
    auto w = find_witness(net, m, wo);
    json j{{"command", "witness"}, {"marking", report::marking(net, m)}, {"found", w.has_value()}};
    std::ostringstream t;
    std::size_t explored = 0;
    if (w) {
        WitnessReport wr = check_witness(net, *w, variant_of(net), cfg.node_budget);
        explored = wr.explored;
        j["witness"] = report::witness(net, *w, wr);
        t << "witness at " << to_string(m) << ": P_cruc = {";
        for (std::size_t i = 0; i < w->p_cruc.size(); ++i) t << (i ? ", " : "") << net.place(w->p_cruc[i]);
        t << "}, T_dead = {";
        for (std::size_t i = 0; i < w->t_dead.size(); ++i) t << (i ? ", " : "") << net.transition(w->t_dead[i]);
        t << "}\nconditions: cond1 " << flag(wr.cond1) << ", cond2 " << flag(wr.cond2) << ", cond3 "
          << flag(wr.cond3) << "\n";
    } else {
        t << "no witness at " << to_string(m) << "\n";
    }
    j["stats"] = report::stats({explored, 0, sw.ms()});
    emit(cfg, j, t.str());
    return kExitDecided;
}

int cmd_truncate(const RunConfig& cfg, const std::string& file, const std::string& marking_text) {
    ParsedNet pn = load_net(file);
    const Marking m = resolve_marking(pn, marking_text);
    Marking r = truncate(pn.net, m);
    json j{{"command", "truncate"}, {"cap", cap_for(pn.net)}, {"marking", report::marking(pn.net, r)}};
    emit(cfg, j, to_string(r) + "\n");
    return kExitDecided;
}

int cmd_ordinarize(const std::string& file, const std::string& out) {
    ParsedNet pn = load_net(file);
    Ordinarized o = ordinarize(pn.net);
    if (pn.has_marking) {
        Marking m = embed_marking(o.map, pn.marking);
        write_output(out, serialize_net(o.net, m));
    } else {
        write_output(out, serialize_net(o.net));
    }
    return kExitDecided;
}

int cmd_lba(const std::string& spec_file, const std::string& word, const std::string& stage, const std::string& out) {
    LbaSpec spec = parse_lba(read_file(spec_file));
    MarkedNet mn = build_stage(spec, word, parse_stage(stage));
    write_output(out, serialize_net(mn.net, mn.marking));
    return kExitDecided;
}

int cmd_check_reduction(const RunConfig& cfg, const std::string& spec_file, const std::string& word) {
    Stopwatch sw;
    LbaSpec spec = parse_lba(read_file(spec_file));
    ReductionOptions ro;
    ro.slp.node_budget = cfg.node_budget;
    ro.slp.candidate_budget = cfg.candidate_budget;
    ReductionReport r = reduction_correctness_check(spec, word, ro);
    const bool accepted = r.outcome == LbaOutcome::Accept;
    json j{{"command", "check-reduction"},
           {"word", word},
           {"accepted", accepted},
           {"live", r.live},
           {"structurally_live", r.structurally_live},
           {"ord_io", r.ord_io},
           {"agree", r.agree},
           {"places", r.places},
           {"transitions", r.transitions},
           {"stats", report::stats({r.live_explored, r.candidates_tested, sw.ms()})}};
    if (r.certificate) {
        MarkedNet nb = build_stage(spec, word, Stage::Nbar);
        j["certificate"] = report::marking(nb.net, *r.certificate);
    }
    std::ostringstream t;
    t << "word " << word << ": " << (accepted ? "accepted" : "rejected") << ", M0 " << (r.live ? "live" : "nonlive")
      << ", " << (r.structurally_live ? "structurally live" : "not structurally live") << ", "
      << (r.ord_io ? "ord-IO" : "not ord-IO") << " (" << r.places << " places, " << r.transitions
      << " transitions)\n"
      << (r.agree ? "agree" : "DISAGREE") << "\n";
    emit(cfg, j, t.str());
    return kExitDecided;
}

int cmd_gen(const RunConfig& cfg, const std::string& cls, std::size_t places, std::size_t trans, Count wmax,
            const std::string& out) {
    GenParams g;
    g.cls = parse_gen_class(cls);
    g.places = places;
    g.transitions = trans;
    g.wmax = wmax;
    Net net = generate_net(cfg.seed, g, "gen_" + cls + "_" + std::to_string(cfg.seed));
    write_output(out, serialize_net(net));
    return kExitDecided;
}

int cmd_replay(const RunConfig& cfg, const std::string& file, const std::string& marking_text,
               const std::vector<std::string>& seq) {
    ParsedNet pn = load_net(file);
    const Marking m = resolve_marking(pn, marking_text);
    Execution ex = replay_named(pn.net, m, seq);
    json steps = json::array();
    std::ostringstream t;
    t << to_string(ex.start) << "\n";
    for (const auto& s : ex.steps) {
        steps.push_back({{"transition", pn.net.transition(s.transition)}, {"marking", report::marking(pn.net, s.marking)}});
        t << pn.net.transition(s.transition) << " " << to_string(s.marking) << "\n";
    }
    emit(cfg, json{{"start", report::marking(pn.net, ex.start)}, {"steps", steps}}, t.str());
    return kExitDecided;
}

int fail(const RunConfig& cfg, const std::string& command, const std::string& message, int code) {
    std::cerr << "ionet: " << message << "\n";
    if (cfg.json) std::cout << json{{"command", command}, {"error", message}, {"exit_code", code}}.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liveness and structural liveness for immediate-observation Petri nets"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--budget", cfg.node_budget, "Node budget per exploration")
        ->envname("IONET_BUDGET")
        ->check(CLI::PositiveNumber);
    app.add_option("--candidates", cfg.candidate_budget, "Candidate budget for structural liveness")
        ->check(CLI::PositiveNumber);
    app.add_option("--subset-cap", cfg.subset_cap, "Largest crucial-set enumeration")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for random generation");
    app.add_flag("--json", cfg.json, "Machine-readable output");

    std::string file, marking, out, spec, word, stage = "Nbar", cls = "io";
    std::vector<std::string> seq;
    std::optional<Count> box;
    bool strict = false;
    std::size_t places = 4, trans = 4;
    Count wmax = 1;
    std::function<int()> run;
    std::string command;

    auto* c_classify = app.add_subcommand("classify", "Report the class of a net");
    c_classify->add_option("file", file, "Net file")->required();
    c_classify->callback([&] { run = [&] { return cmd_classify(cfg, file); }; });

    auto* c_live = app.add_subcommand("live", "Decide liveness of a marking");
    c_live->add_option("file", file, "Net file")->required();
    c_live->add_option("--marking", marking, "Marking such as 1,0,2 (default: the file's tokens)");
    c_live->callback([&] { run = [&] { return cmd_live(cfg, file, marking); }; });

    auto* c_slp = app.add_subcommand("slp", "Decide structural liveness");
    c_slp->add_option("file", file, "Net file")->required();
    c_slp->add_option("--box", box, "Enumerate [0, box]^P instead of the first bound")->check(CLI::NonNegativeNumber);
    c_slp->callback([&] { run = [&] { return cmd_slp(cfg, file, box); }; });

    auto* c_wit = app.add_subcommand("witness", "Search a non-liveness witness at a marking");
    c_wit->add_option("file", file, "Net file")->required();
    c_wit->add_option("--marking", marking, "Marking (default: the file's tokens)");
    c_wit->add_flag("--strict", strict, "Require every restricted transition to be IMO");
    c_wit->callback([&] { run = [&] { return cmd_witness(cfg, file, marking, strict); }; });

    auto* c_trunc = app.add_subcommand("truncate", "Cap a marking at 2*w*|P|");
    c_trunc->add_option("file", file, "Net file")->required();
    c_trunc->add_option("--marking", marking, "Marking (default: the file's tokens)");
    c_trunc->callback([&] { run = [&] { return cmd_truncate(cfg, file, marking); }; });

    auto* c_ord = app.add_subcommand("ordinarize", "Replace weighted places by rings of ordinary places");
    c_ord->add_option("file", file, "Net file")->required();
    c_ord->add_option("-o,--output", out, "Output file (default: stdout)");
    c_ord->callback([&] { run = [&] { return cmd_ordinarize(file, out); }; });

    auto* c_lba = app.add_subcommand("lba", "Build a stage of the automaton-to-net reduction");
    c_lba->add_option("spec", spec, "Automaton file")->required();
    c_lba->add_option("word", word, "Input word over {a, b}")->required();
    c_lba->add_option("--stage", stage, "N, Nprime, Ndprime or Nbar")->capture_default_str();
    c_lba->add_option("-o,--output", out, "Output file (default: stdout)");
    c_lba->callback([&] { run = [&] { return cmd_lba(spec, word, stage, out); }; });

    auto* c_check = app.add_subcommand("check-reduction", "Compare acceptance, liveness and structural liveness");
    c_check->add_option("spec", spec, "Automaton file")->required();
    c_check->add_option("word", word, "Input word over {a, b}")->required();
    c_check->callback([&] { run = [&] { return cmd_check_reduction(cfg, spec, word); }; });

    auto* c_gen = app.add_subcommand("gen", "Generate a random net of a class");
    c_gen->add_option("--class", cls, "io, imo, bio or bimo")->capture_default_str();
    c_gen->add_option("--places", places, "Number of places")->capture_default_str()->check(CLI::PositiveNumber);
    c_gen->add_option("--trans", trans, "Number of transitions")->capture_default_str();
    c_gen->add_option("--wmax", wmax, "Largest edge weight")->capture_default_str()->check(CLI::PositiveNumber);
    c_gen->add_option("-o,--output", out, "Output file (default: stdout)");
    c_gen->callback([&] { run = [&] { return cmd_gen(cfg, cls, places, trans, wmax, out); }; });

    auto* c_replay = app.add_subcommand("replay", "Fire a transition sequence and print the markings");
    c_replay->add_option("file", file, "Net file")->required();
    c_replay->add_option("--marking", marking, "Start marking (default: the file's tokens)");
    c_replay->add_option("sequence", seq, "Transition names");
    c_replay->callback([&] { run = [&] { return cmd_replay(cfg, file, marking, seq); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }
    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        return run();
    } catch (const ReportedBudget& r) {
        std::cerr << "ionet: " << r.message << "\n";
        if (cfg.json) std::cout << r.report.dump(2) << "\n";
        return kExitBudget;
    } catch (const BudgetExceeded& e) {
        return fail(cfg, command, e.what(), kExitBudget);
    } catch (const CandidateBudgetExceeded& e) {
        return fail(cfg, command, e.what(), kExitBudget);
    } catch (const SubsetCapExceeded& e) {
        return fail(cfg, command, e.what(), kExitBudget);
    } catch (const Error& e) {
        return fail(cfg, command, e.what(), kExitInvalid);
    }
}
