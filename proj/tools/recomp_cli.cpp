// Command-line front end: decide / oracle / stats / gen / check.
// Exit codes for decide and oracle: 0 accepted, 1 rejected, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "recomp/analysis.hpp"
#include "recomp/decide.hpp"
#include "recomp/harness.hpp"
#include "recomp/io.hpp"

namespace {

using namespace recomp;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Loads grammar+automaton from a pair of files or a single .inst container.
/// Already-normalized files are taken as-is; marker-free raw input is
/// normalized first.
Instance load_instance(const std::string& grammar_path,
                       const std::string& automaton_path) {
    std::string gtext, atext;
    if (automaton_path.empty()) {
        std::tie(gtext, atext) = split_container(read_file(grammar_path));
    } else {
        gtext = read_file(grammar_path);
        atext = read_file(automaton_path);
    }
    try {
        return parse_instance(gtext, atext);
    } catch (const InvariantViolationError&) {
        ParsedParts parts = parse_grammar_automaton(gtext, atext);
        return normalize_input(parts.grammar, parts.automaton, parts.alphabet);
    }
}

int cmd_decide(const std::string& gpath, const std::string& apath,
               const std::string& engine, bool trace, std::uint32_t max_iter,
               std::uint64_t dp_threshold, std::size_t max_expand) {
    Instance inst = load_instance(gpath, apath);
    DecideOptions opts;
    opts.engine = engine == "naive" ? Engine::Naive : Engine::Recompress;
    opts.max_iterations = max_iter;
    opts.unary.dp_threshold = dp_threshold;
    opts.max_expand = max_expand;
    Decision d = decide(inst, opts);
    if (trace)
        for (const TraceEvent& ev : d.trace->events)
            std::cout << trace_event_to_json(ev) << "\n";
    std::cout << (d.accepted ? "accepted" : "rejected") << "\n";
    return d.accepted ? 0 : 1;
}

int cmd_oracle(const std::string& gpath, const std::string& apath,
               std::size_t max_expand) {
    Instance inst = load_instance(gpath, apath);
    bool ok = brute_force_accepts(inst, max_expand);
    std::cout << (ok ? "accepted" : "rejected") << "\n";
    return ok ? 0 : 1;
}

int cmd_stats(const std::string& gpath, const std::string& apath) {
    Instance inst = load_instance(gpath, apath);
    const Alphabet& ab = *inst.alphabet;
    nlohmann::json j;

    OuterReport outer = outer_letters(inst.grammar);
    for (LetterId a : outer.left_outer) j["outer_left"].push_back(ab.display(a));
    for (LetterId a : outer.right_outer) j["outer_right"].push_back(ab.display(a));
    j["outer_left"] = j.value("outer_left", nlohmann::json::array());
    j["outer_right"] = j.value("outer_right", nlohmann::json::array());

    j["crossing"] = nlohmann::json::array();
    j["non_crossing"] = nlohmann::json::array();
    for (const PairClass& pc : classify_pairs(inst)) {
        nlohmann::json entry;
        entry["pair"] = {ab.display(pc.pair.first), ab.display(pc.pair.second)};
        if (pc.excluded_from_compression) entry["excluded"] = true;
        j[pc.crossing ? "crossing" : "non_crossing"].push_back(entry);
    }

    j["block_lengths_by_letter"] = nlohmann::json::object();
    for (LetterId a : inst.grammar.occurring_letters()) {
        if (ab.is_marker(a) || outer.is_outer(a)) continue;
        nlohmann::json lens = nlohmann::json::array();
        for (const BigInt& l : nonextendible_lengths(inst.grammar, a))
            lens.push_back(l.str());
        j["block_lengths_by_letter"][ab.display(a)] = lens;
    }

    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_gen(const GenParams& params, const std::string& out_base, bool container) {
    Instance inst = gen_instance(params);
    if (out_base.empty()) {
        std::cout << serialize_instance(inst);
        return 0;
    }
    if (container) {
        std::ofstream out(out_base + ".inst");
        out << serialize_instance(inst);
    } else {
        std::ofstream gs(out_base + ".slp");
        gs << serialize_grammar(inst.grammar);
        std::ofstream as(out_base + ".aut");
        as << serialize_automaton(inst.automaton, *inst.alphabet);
    }
    return 0;
}

int cmd_check(const std::string& gpath, const std::string& apath) {
    std::string gtext, atext;
    if (apath.empty()) {
        std::tie(gtext, atext) = split_container(read_file(gpath));
    } else {
        gtext = read_file(gpath);
        atext = read_file(apath);
    }
    Instance inst = assemble_instance(parse_grammar_automaton(gtext, atext));
    InvariantReport rep = validate_instance(inst);
    if (rep.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << rep.to_string();
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fully compressed membership for NFAs/DFAs via recompression"};
    app.require_subcommand(1);

    std::string gpath, apath, engine = "recompress", out_base;
    bool trace = false, container = false;
    std::uint32_t max_iter = 0;
    std::uint64_t dp_threshold = std::uint64_t{1} << 20;
    std::size_t max_expand = std::size_t{1} << 20;
    GenParams gen;

    auto add_inputs = [&](CLI::App* cmd) {
        cmd->add_option("grammar", gpath,
                        "grammar file (.slp) or combined instance (.inst)")
            ->required();
        cmd->add_option("automaton", apath, "automaton file (.aut)");
    };

    CLI::App* decide_cmd = app.add_subcommand("decide", "run the recompression decider");
    add_inputs(decide_cmd);
    decide_cmd->add_option("--engine", engine, "recompress | naive")
        ->check(CLI::IsMember({"recompress", "naive"}));
    decide_cmd->add_flag("--trace", trace, "emit the trace as JSON lines");
    decide_cmd->add_option("--max-iter", max_iter, "iteration ceiling (0 = 3n+10)");
    decide_cmd->add_option("--unary-dp-threshold", dp_threshold,
                           "largest length handled by the dense unary table");
    decide_cmd->add_option("--max-expand", max_expand,
                           "letter budget for naive decompression");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "brute-force decision for cross-checking");
    add_inputs(oracle_cmd);
    oracle_cmd->add_option("--max-expand", max_expand,
                           "letter budget for decompression");

    CLI::App* stats_cmd =
        app.add_subcommand("stats", "letter/pair/block statistics as JSON");
    add_inputs(stats_cmd);

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
    gen_cmd->add_option("--seed", gen.seed, "rng seed")->required();
    gen_cmd->add_option("--n", gen.n, "target nonterminal count");
    gen_cmd->add_option("--alphabet", gen.alphabet_size, "alphabet size");
    gen_cmd->add_option("--states", gen.state_count, "raw state count");
    gen_cmd->add_option("--max-rhs-len", gen.max_rhs_len, "max right-hand side length");
    gen_cmd->add_option("--target-len-log2", gen.target_eval_len_log2,
                        "cap eval lengths at 2^this");
    gen_cmd->add_flag("--dfa", gen.force_dfa, "keep the automaton deterministic");
    gen_cmd->add_flag("--plant", gen.plant_accepting_path,
                      "plant an accepting path (answer becomes yes)");
    gen_cmd->add_option("-o,--out", out_base, "output basename (default stdout)");
    gen_cmd->add_flag("--inst", container, "write a single .inst container");

    CLI::App* check_cmd =
        app.add_subcommand("check", "run the invariant checkers on input files");
    add_inputs(check_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (decide_cmd->parsed())
            return cmd_decide(gpath, apath, engine, trace, max_iter, dp_threshold,
                              max_expand);
        if (oracle_cmd->parsed()) return cmd_oracle(gpath, apath, max_expand);
        if (stats_cmd->parsed()) return cmd_stats(gpath, apath);
        if (gen_cmd->parsed()) return cmd_gen(gen, out_base, container);
        if (check_cmd->parsed()) return cmd_check(gpath, apath);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
