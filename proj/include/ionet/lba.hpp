#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/format.hpp"
#include "ionet/liveness.hpp"
#include "ionet/net.hpp"
#include "ionet/slp.hpp"

namespace ionet {

/// One instruction (q, x) ↦ (q′, x′, m) of a linear bounded automaton over {a, b}.
struct LbaRule {
    std::string state;
    char read;
    std::string next;
    char write;
    int move;  // −1 (L) or +1 (R)
    bool operator==(const LbaRule&) const = default;
};

/// A deterministic LBA. States keep their declaration order; rules keep file order.
struct LbaSpec {
    std::vector<std::string> states;
    std::string init;
    std::string accept;
    std::string reject;
    std::vector<LbaRule> rules;

    bool halting(const std::string& q) const { return q == accept || q == reject; }
    const LbaRule* rule_for(const std::string& q, char x) const {
        for (const auto& r : rules)
            if (r.state == q && r.read == x) return &r;
        return nullptr;
    }
};

namespace detail {
inline bool valid_state_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    // "ins<k>" would collide with the intermediate places of the IO split.
    if (s.size() > 3 && s.substr(0, 3) == "ins" && std::isdigit(static_cast<unsigned char>(s[3]))) return false;
    return true;
}
}  // namespace detail

/// Parses
///
///     states q0 qacc qrej q1 ...
///     init q0
///     accept qacc
///     reject qrej
///     rule q x q' x' L|R
///
/// with `#` comments. Throws ParseError for malformed or inconsistent input and NonDeterministic for
/// two rules on the same (q, x).
inline LbaSpec parse_lba(std::string_view text) {
    LbaSpec spec;
    std::size_t lineno = 0, pos = 0;
    auto known = [&](std::string_view q) {
        return std::find(spec.states.begin(), spec.states.end(), q) != spec.states.end();
    };
    struct PendingRule {
        LbaRule rule;
        std::size_t line;
    };
    std::vector<PendingRule> pending;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto w = detail::split_ws(line);
        if (w.empty()) continue;
        if (w[0] == "states") {
            if (!spec.states.empty()) throw ParseError(lineno, "duplicate 'states' line");
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (!detail::valid_state_name(w[i])) throw ParseError(lineno, "invalid state name '" + std::string(w[i]) + "'");
                if (known(w[i])) throw ParseError(lineno, "duplicate state '" + std::string(w[i]) + "'");
                spec.states.emplace_back(w[i]);
            }
        } else if (w[0] == "init" || w[0] == "accept" || w[0] == "reject") {
            if (w.size() != 2) throw ParseError(lineno, "expected '" + std::string(w[0]) + " <state>'");
            std::string& slot = w[0] == "init" ? spec.init : w[0] == "accept" ? spec.accept : spec.reject;
            if (!slot.empty()) throw ParseError(lineno, "duplicate '" + std::string(w[0]) + "' line");
            slot = std::string(w[1]);
        } else if (w[0] == "rule") {
            if (w.size() != 6) throw ParseError(lineno, "expected 'rule q x q' x' L|R'");
            auto letter = [&](std::string_view s) {
                if (s != "a" && s != "b") throw ParseError(lineno, "tape letters are 'a' and 'b'");
                return s[0];
            };
            int move = 0;
            if (w[5] == "L")
                move = -1;
            else if (w[5] == "R")
                move = 1;
            else
                throw ParseError(lineno, "direction must be L or R");
            pending.push_back({{std::string(w[1]), letter(w[2]), std::string(w[3]), letter(w[4]), move}, lineno});
        } else {
            throw ParseError(lineno, "unknown keyword '" + std::string(w[0]) + "'");
        }
    }
    if (spec.states.empty()) throw ParseError(0, "missing 'states' line");
    for (auto* s : {&spec.init, &spec.accept, &spec.reject}) {
        if (s->empty()) throw ParseError(0, "missing init/accept/reject line");
        if (!known(*s)) throw ParseError(0, "undeclared state '" + *s + "'");
    }
    if (spec.accept == spec.reject) throw ParseError(0, "accepting and rejecting states must differ");
    for (const auto& [r, line] : pending) {
        if (!known(r.state)) throw ParseError(line, "undeclared state '" + r.state + "'");
        if (!known(r.next)) throw ParseError(line, "undeclared state '" + r.next + "'");
        if (spec.halting(r.state)) throw ParseError(line, "halting state '" + r.state + "' cannot have rules");
        if (r.next == spec.init) throw ParseError(line, "no rule may enter the initial state");
        if (spec.rule_for(r.state, r.read))
            throw NonDeterministic("line " + std::to_string(line) + ": second rule for (" + r.state + ", " + r.read + ")");
        spec.rules.push_back(r);
    }
    return spec;
}

inline void validate_word(std::string_view word) {
    if (word.empty()) throw InvalidArgument("the input word must be nonempty");
    for (char c : word)
        if (c != 'a' && c != 'b') throw InvalidArgument("the input word must be over {a, b}");
}

enum class LbaOutcome { Accept, Reject, BudgetExceeded };

/// Runs the automaton on `word` with the head on cell 1. Halting must happen on cell 1.
inline LbaOutcome simulate_lba(const LbaSpec& spec, std::string_view word, std::size_t step_budget = 100000) {
    validate_word(word);
    std::string tape(word);
    std::string q = spec.init;
    std::size_t head = 0;  // 0-based cell index
    for (std::size_t steps = 0;; ++steps) {
        if (spec.halting(q)) {
            if (head != 0)
                throw ConventionViolated("halted in '" + q + "' on cell " + std::to_string(head + 1) + ", not cell 1");
            return q == spec.accept ? LbaOutcome::Accept : LbaOutcome::Reject;
        }
        if (steps >= step_budget) return LbaOutcome::BudgetExceeded;
        const LbaRule* r = spec.rule_for(q, tape[head]);
        if (!r) throw ConventionViolated("no rule for (" + q + ", " + tape[head] + ") in a non-halting state");
        tape[head] = r->write;
        q = r->next;
        if ((r->move < 0 && head == 0) || (r->move > 0 && head + 1 == tape.size()))
            throw ConventionViolated("the head leaves the tape");
        head = r->move < 0 ? head - 1 : head + 1;
    }
}

enum class Stage { N, Nprime, Ndprime, Nbar };

inline std::string_view stage_name(Stage s) {
    switch (s) {
        case Stage::N: return "N";
        case Stage::Nprime: return "Nprime";
        case Stage::Ndprime: return "Ndprime";
        case Stage::Nbar: return "Nbar";
    }
    return "?";
}

inline Stage parse_stage(std::string_view s) {
    if (s == "N") return Stage::N;
    if (s == "Nprime") return Stage::Nprime;
    if (s == "Ndprime") return Stage::Ndprime;
    if (s == "Nbar") return Stage::Nbar;
    throw InvalidArgument("unknown stage '" + std::string(s) + "' (expected N, Nprime, Ndprime or Nbar)");
}

struct MarkedNet {
    Net net;
    Marking marking;
};

struct StageOptions {
    /// Build t^move even for instructions that do not change the scanned letter.
    bool force_move = false;
};

/// Builds the net of the requested stage together with its initial marking (the run of the automaton
/// on `word` started in the initial state on cell 1, plus the p_run token from the third stage on).
inline MarkedNet build_stage(const LbaSpec& spec, std::string_view word, Stage stage, StageOptions opts = {}) {
    validate_word(word);
    const std::size_t n = word.size();
    const bool split = stage != Stage::N;
    const bool control = stage == Stage::Ndprime || stage == Stage::Nbar;
    auto num = [](std::size_t i) { return std::to_string(i); };
    auto sp = [&](const std::string& q, std::size_t i) { return "p_" + q + "_" + num(i); };
    auto cell = [&](std::size_t i, char x) { return "p_" + num(i) + "_" + std::string(1, x); };

    struct Instance {
        std::size_t k, i;
        const LbaRule* r;
        std::size_t target;
    };
    std::vector<Instance> inst;
    for (std::size_t k = 0; k < spec.rules.size(); ++k)
        for (std::size_t i = 1; i <= n; ++i) {
            long target = long(i) + spec.rules[k].move;
            if (target >= 1 && target <= long(n)) inst.push_back({k + 1, i, &spec.rules[k], std::size_t(target)});
        }

    Net net("lba_" + std::string(stage_name(stage)) + "_" + std::string(word));
    for (const auto& q : spec.states)
        for (std::size_t i = 1; i <= n; ++i) net.add_place(sp(q, i));
    for (std::size_t i = 1; i <= n; ++i) {
        net.add_place(cell(i, 'a'));
        net.add_place(cell(i, 'b'));
    }
    auto ins_name = [&](const Instance& in) { return "ins" + num(in.k) + "_" + num(in.i); };
    if (split)
        for (const auto& in : inst) net.add_place("p_" + ins_name(in));
    if (control) {
        net.add_place("p_run");
        net.add_place("p_free");
    }
    if (stage == Stage::Nbar)
        for (std::size_t i = 1; i <= n; ++i) net.add_place("p_init" + num(i));

    auto P = [&](const std::string& id) { return net.require_place(id); };
    auto T = [&](const std::string& id, std::vector<std::string> pre, std::vector<std::string> post) {
        std::vector<Arc> a, b;
        for (const auto& p : pre) a.push_back({P(p), 1});
        for (const auto& p : post) b.push_back({P(p), 1});
        net.add_transition(id, std::move(a), std::move(b));
    };

    for (const auto& in : inst) {
        const auto& r = *in.r;
        const std::string src = sp(r.state, in.i), dst = sp(r.next, in.target);
        const std::string read = cell(in.i, r.read), written = cell(in.i, r.write);
        const std::string name = "t_" + ins_name(in);
        if (!split) {
            T(name, {src, read}, {dst, written});
            continue;
        }
        const std::string mid = "p_" + ins_name(in);
        T(name + "_begin", {src, read}, {read, mid});
        if (r.read != r.write || opts.force_move) T(name + "_move", {read, mid}, {written, mid});
        T(name + "_end", {mid, written}, {written, dst});
    }
    if (control) {
        const std::string acc = sp(spec.accept, 1);
        T("t_A", {"p_run", acc}, {"p_free", acc});
        if (stage == Stage::Ndprime) T("t_A2", {"p_free", acc}, {"p_run", acc});
        for (const auto& q : spec.states)
            for (std::size_t i = 1; i <= n; ++i)
                for (const auto& q2 : spec.states)
                    for (std::size_t i2 = 1; i2 <= n; ++i2) {
                        if (q == q2 && i == i2) continue;
                        T("t_" + q + "_" + num(i) + "_" + q2 + "_" + num(i2), {sp(q, i), "p_free"}, {sp(q2, i2), "p_free"});
                    }
        for (std::size_t i = 1; i <= n; ++i)
            for (char x : {'a', 'b'})
                for (char y : {'a', 'b'}) {
                    if (x == y) continue;
                    T("t_" + num(i) + "_" + x + "_" + num(i) + "_" + y, {cell(i, x), "p_free"}, {cell(i, y), "p_free"});
                }
    }
    if (stage == Stage::Nbar) {
        for (std::size_t i = 1; i <= n; ++i) {
            const std::string from = i == 1 ? "p_free" : "p_init" + num(i - 1);
            const std::string obs = cell(i, word[i - 1]);
            T("t_init" + num(i), {from, obs}, {"p_init" + num(i), obs});
        }
        for (std::size_t i = 1; i <= n; ++i) T("t_rev" + num(i), {"p_init" + num(i)}, {"p_free"});
        const std::string start = sp(spec.init, 1);
        T("t_run", {"p_init" + num(n), start}, {"p_run", start});
    }

    Marking m0(net.num_places(), 0);
    m0[P(sp(spec.init, 1))] = 1;
    for (std::size_t i = 1; i <= n; ++i) m0[P(cell(i, word[i - 1]))] = 1;
    if (control) m0[P("p_run")] = 1;
    return {std::move(net), std::move(m0)};
}

struct ReductionOptions {
    std::size_t step_budget = 100000;
    SlpOptions slp{};
};

struct ReductionReport {
    LbaOutcome outcome = LbaOutcome::BudgetExceeded;
    bool live = false;
    bool structurally_live = false;
    bool ord_io = false;
    bool agree = false;
    std::size_t places = 0;
    std::size_t transitions = 0;
    std::size_t live_explored = 0;
    std::size_t candidates_tested = 0;
    std::optional<Marking> certificate;
};

/// Compares acceptance of `word` with liveness of the final-stage net at M0 and with its
/// structural liveness. Throws BudgetExceeded / CandidateBudgetExceeded when a budget runs out.
inline ReductionReport reduction_correctness_check(const LbaSpec& spec, std::string_view word,
                                                   const ReductionOptions& opts = {}) {
    ReductionReport rep;
    rep.outcome = simulate_lba(spec, word, opts.step_budget);
    if (rep.outcome == LbaOutcome::BudgetExceeded)
        throw BudgetExceeded(opts.step_budget, "automaton simulation");
    MarkedNet nb = build_stage(spec, word, Stage::Nbar);
    rep.places = nb.net.num_places();
    rep.transitions = nb.net.num_transitions();
    NetClass c = classify(nb.net);
    rep.ord_io = c.ordinary && c.io;
    auto live = is_live_exact(nb.net, nb.marking, opts.slp.node_budget);
    if (live.exceeded()) throw BudgetExceeded(live.explored, "exact liveness of the final-stage net");
    rep.live = *live;
    rep.live_explored = live.explored;
    SlpResult s = decide_slp(nb.net, opts.slp);
    rep.structurally_live = s.certificate.has_value();
    rep.certificate = s.certificate;
    rep.candidates_tested = s.candidates_tested;
    const bool accepted = rep.outcome == LbaOutcome::Accept;
    rep.agree = accepted == rep.live && rep.live == rep.structurally_live;
    return rep;
}

}  // namespace ionet
