#include "recomp/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace recomp {

namespace {

constexpr std::size_t kMaxSugarExpansion = std::size_t{1} << 16;

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto cut = raw.find(';');
        if (cut != std::string::npos) raw.erase(cut);
        std::istringstream ls(raw);
        Line line;
        line.number = number;
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

bool is_decimal(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_nonterminal_token(const std::string& s) {
    return s.size() >= 2 && s[0] == 'X' && is_decimal(s.substr(1));
}

bool valid_letter_name(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return !is_nonterminal_token(s);
}

/// Splits "(x,y)" / "[x,k]" bodies at the top-level comma.
std::pair<std::string, std::string> split_structured(const std::string& body,
                                                     std::size_t line) {
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0)
            return {body.substr(0, i), body.substr(i + 1)};
    }
    throw ParseError(line, 1, "malformed structured letter '" + body + "'");
}

LetterId parse_letter_token(Alphabet& ab, const std::string& tok, std::size_t line) {
    if (tok == "$") return ab.dollar();
    if (tok == "#") return ab.hash_marker();
    if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') {
        auto [l, r] = split_structured(tok.substr(1, tok.size() - 2), line);
        return ab.pair_letter(parse_letter_token(ab, l, line),
                              parse_letter_token(ab, r, line));
    }
    if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') {
        auto [l, r] = split_structured(tok.substr(1, tok.size() - 2), line);
        if (!is_decimal(r))
            throw ParseError(line, 1, "block exponent '" + r + "' is not a number");
        return ab.block_letter(parse_letter_token(ab, l, line), BigInt(r));
    }
    if (!valid_letter_name(tok))
        throw ParseError(line, 1, "invalid letter name '" + tok + "'");
    return ab.original(tok);
}

/// A rhs/label token: nonterminal, power (base^decimal) or letter.
struct ParsedToken {
    enum class Kind { Letter, Power, Nonterminal } kind = Kind::Letter;
    LetterId letter = kNoLetter;
    BigInt exponent;
    std::uint32_t index = 0;
};

ParsedToken parse_token(Alphabet& ab, const std::string& tok, std::size_t line) {
    ParsedToken out;
    if (is_nonterminal_token(tok)) {
        out.kind = ParsedToken::Kind::Nonterminal;
        out.index = static_cast<std::uint32_t>(std::stoul(tok.substr(1)));
        if (out.index == 0) throw ParseError(line, 1, "nonterminal indices start at 1");
        return out;
    }
    auto caret = tok.rfind('^');
    if (caret != std::string::npos) {
        std::string base = tok.substr(0, caret);
        std::string exp = tok.substr(caret + 1);
        if (!is_decimal(exp))
            throw ParseError(line, 1, "power exponent '" + exp + "' is not a number");
        out.kind = ParsedToken::Kind::Power;
        out.letter = parse_letter_token(ab, base, line);
        out.exponent = BigInt(exp);
        if (out.exponent < 1)
            throw ParseError(line, 1, "power exponent must be positive");
        return out;
    }
    out.kind = ParsedToken::Kind::Letter;
    out.letter = parse_letter_token(ab, tok, line);
    return out;
}

Grammar parse_grammar(Alphabet& raw_alphabet, std::shared_ptr<Alphabet> shared,
                      const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty grammar file");

    std::size_t at = 0;
    const Line& head = lines[at++];
    if (head.tokens.size() != 2 || head.tokens[0] != "slp" ||
        head.tokens[1].rfind("n=", 0) != 0 || !is_decimal(head.tokens[1].substr(2)))
        throw ParseError(head.number, 1, "expected header 'slp n=<count>'");
    std::uint32_t n =
        static_cast<std::uint32_t>(std::stoul(head.tokens[1].substr(2)));
    if (n == 0) throw ParseError(head.number, 1, "grammar needs n >= 1");

    std::optional<LetterId> succinct;
    if (at < lines.size() && lines[at].tokens[0] == "succinct") {
        if (lines[at].tokens.size() != 2)
            throw ParseError(lines[at].number, 1, "expected 'succinct <letter>'");
        succinct = parse_letter_token(raw_alphabet, lines[at].tokens[1],
                                      lines[at].number);
        ++at;
    }

    GrammarBuilder gb(n, shared);
    std::vector<bool> defined(n + 1, false);
    for (; at < lines.size(); ++at) {
        const Line& line = lines[at];
        if (line.tokens.size() < 2 || !is_nonterminal_token(line.tokens[0]) ||
            line.tokens[1] != "->")
            throw ParseError(line.number, 1, "expected 'X<i> -> ...'");
        std::uint32_t i =
            static_cast<std::uint32_t>(std::stoul(line.tokens[0].substr(1)));
        if (i < 1 || i > n)
            throw ParseError(line.number, 1,
                             "production index X" + std::to_string(i) +
                                 " outside 1.." + std::to_string(n));
        if (defined[i])
            throw ParseError(line.number, 1,
                             "duplicate production for X" + std::to_string(i));
        defined[i] = true;
        Rhs rhs;
        for (std::size_t t = 2; t < line.tokens.size(); ++t) {
            ParsedToken tok = parse_token(raw_alphabet, line.tokens[t], line.number);
            switch (tok.kind) {
                case ParsedToken::Kind::Nonterminal:
                    rhs.symbols.push_back(Symbol::make_nonterminal(tok.index));
                    break;
                case ParsedToken::Kind::Letter:
                    rhs.symbols.push_back(Symbol::make_letter(tok.letter));
                    break;
                case ParsedToken::Kind::Power:
                    if (succinct && *succinct == tok.letter && tok.exponent >= 2) {
                        rhs.symbols.push_back(
                            Symbol::make_power(tok.letter, tok.exponent));
                    } else if (tok.exponent <= kMaxSugarExpansion) {
                        std::size_t k = static_cast<std::size_t>(tok.exponent);
                        for (std::size_t c = 0; c < k; ++c)
                            rhs.symbols.push_back(Symbol::make_letter(tok.letter));
                    } else {
                        throw ParseError(line.number, 1,
                                         "power too large to expand; declare "
                                         "'succinct' for this letter");
                    }
                    break;
            }
        }
        gb.set_production(i, std::move(rhs));
    }
    for (std::uint32_t i = 1; i <= n; ++i)
        if (!defined[i])
            throw ParseError(lines.back().number, 1,
                             "missing production for X" + std::to_string(i));
    gb.set_succinct_for(succinct);
    try {
        return gb.build();
    } catch (const MalformedInputError& e) {
        throw ParseError(lines.back().number, 1, e.what());
    }
}

Automaton parse_automaton(Alphabet& raw_alphabet, const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty automaton file");

    AutomatonBuilder ab;
    std::optional<LetterId> relaxed;
    bool have_start = false, have_accept = false;

    auto parse_state = [](const Line& line, const std::string& tok) {
        if (!is_decimal(tok))
            throw ParseError(line.number, 1, "state id '" + tok + "' is not a number");
        return static_cast<StateId>(std::stoul(tok));
    };

    // `relaxed` must precede any power-labelled transition.
    for (const Line& line : lines) {
        const std::string& kw = line.tokens[0];
        if (kw == "states") {
            for (std::size_t t = 1; t < line.tokens.size(); ++t)
                ab.add_state(parse_state(line, line.tokens[t]));
        } else if (kw == "start") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, 1, "expected 'start <state>'");
            ab.set_start(parse_state(line, line.tokens[1]));
            have_start = true;
        } else if (kw == "accept") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, 1, "expected 'accept <state>'");
            ab.set_accept(parse_state(line, line.tokens[1]));
            have_accept = true;
        } else if (kw == "relaxed") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, 1, "expected 'relaxed <letter>'");
            relaxed = parse_letter_token(raw_alphabet, line.tokens[1], line.number);
            ab.set_relaxed_for(relaxed);
        } else if (kw == "trans") {
            if (line.tokens.size() != 4)
                throw ParseError(line.number, 1, "expected 'trans <src> <label> <dst>'");
            StateId src = parse_state(line, line.tokens[1]);
            StateId dst = parse_state(line, line.tokens[3]);
            ParsedToken tok = parse_token(raw_alphabet, line.tokens[2], line.number);
            Symbol label;
            switch (tok.kind) {
                case ParsedToken::Kind::Letter:
                    label = Symbol::make_letter(tok.letter);
                    break;
                case ParsedToken::Kind::Nonterminal:
                    label = Symbol::make_nonterminal(tok.index);
                    break;
                case ParsedToken::Kind::Power:
                    if (!relaxed || *relaxed != tok.letter)
                        throw ParseError(line.number, 1,
                                         "power label outside a relaxed automaton");
                    label = Symbol::make_power(tok.letter, tok.exponent);
                    break;
            }
            ab.add_transition(src, label, dst);
        } else {
            throw ParseError(line.number, 1, "unknown directive '" + kw + "'");
        }
    }
    if (!have_start || !have_accept)
        throw ParseError(lines.back().number, 1,
                         "automaton needs 'start' and 'accept' lines");
    return ab.build();
}

}  // namespace

ParsedParts parse_grammar_automaton(const std::string& grammar_text,
                                    const std::string& automaton_text) {
    auto alphabet = std::make_shared<Alphabet>();
    ParsedParts parts{alphabet, Grammar(), Automaton()};
    parts.grammar = parse_grammar(*alphabet, alphabet, grammar_text);
    parts.automaton = parse_automaton(*alphabet, automaton_text);
    return parts;
}

Instance assemble_instance(ParsedParts parts) {
    Instance inst;
    inst.alphabet = parts.alphabet;
    inst.grammar = parts.grammar;
    inst.automaton = std::move(parts.automaton);
    inst.original = std::make_shared<const Grammar>(std::move(parts.grammar));
    inst.trace = std::make_shared<Trace>();
    BigInt bound = BigInt(1) << inst.grammar.n();
    for (std::uint32_t i = 1; i <= inst.grammar.n(); ++i)
        if (inst.grammar.eval_len(i) > bound) bound = inst.grammar.eval_len(i);
    inst.exponent_bound = std::move(bound);
    return inst;
}

Instance parse_instance(const std::string& grammar_text,
                        const std::string& automaton_text) {
    Instance inst = assemble_instance(
        parse_grammar_automaton(grammar_text, automaton_text));
    InvariantReport rep = validate_instance(inst);
    if (!rep.empty()) throw InvariantViolationError(std::move(rep));
    return inst;
}

std::pair<std::string, std::string> split_container(const std::string& text) {
    std::istringstream in(text);
    std::string line, first, second;
    bool past = false;
    while (std::getline(in, line)) {
        if (!past && line == "---") {
            past = true;
            continue;
        }
        (past ? second : first) += line + "\n";
    }
    if (!past) throw ParseError(1, 1, "instance container is missing the --- separator");
    return {first, second};
}

namespace {

std::string symbol_token(const Symbol& s, const Alphabet& ab) {
    switch (s.kind) {
        case SymbolKind::Letter: return ab.display(s.letter);
        case SymbolKind::Power: return ab.display(s.letter) + "^" + s.exponent.str();
        case SymbolKind::Nonterminal: return "X" + std::to_string(s.index);
    }
    return "?";
}

}  // namespace

std::string serialize_grammar(const Grammar& g) {
    const Alphabet& ab = *g.alphabet();
    std::string out = "slp n=" + std::to_string(g.n()) + "\n";
    if (g.succinct_for()) out += "succinct " + ab.display(*g.succinct_for()) + "\n";
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        out += "X" + std::to_string(i) + " ->";
        for (const Symbol& s : g.production(i).symbols)
            out += " " + symbol_token(s, ab);
        out += "\n";
    }
    return out;
}

std::string serialize_automaton(const Automaton& a, const Alphabet& ab) {
    std::string out = "states";
    for (StateId s : a.states()) out += " " + std::to_string(s);
    out += "\nstart " + std::to_string(a.start());
    out += "\naccept " + std::to_string(a.accept());
    out += "\n";
    if (a.relaxed_for()) out += "relaxed " + ab.display(*a.relaxed_for()) + "\n";
    std::vector<std::string> lines;
    for (const Transition& t : a.transitions()) {
        lines.push_back("trans " + std::to_string(t.src) + " " +
                        symbol_token(t.label, ab) + " " + std::to_string(t.dst));
    }
    std::sort(lines.begin(), lines.end());
    for (const std::string& l : lines) out += l + "\n";
    return out;
}

std::string serialize_instance(const Instance& inst) {
    return serialize_grammar(inst.grammar) + "---\n" +
           serialize_automaton(inst.automaton, *inst.alphabet);
}

std::string trace_event_to_json(const TraceEvent& ev) {
    nlohmann::json j;
    switch (ev.kind) {
        case TraceEvent::Kind::Pass: j["kind"] = "pass"; break;
        case TraceEvent::Kind::IterationStart: j["kind"] = "iteration_start"; break;
        case TraceEvent::Kind::IterationEnd: j["kind"] = "iteration_end"; break;
    }
    if (!ev.pass.empty()) j["pass"] = ev.pass;
    if (ev.iteration) j["iteration"] = ev.iteration;
    if (!ev.params.empty()) j["params"] = ev.params;
    if (!ev.letters_created.empty()) j["letters_created"] = ev.letters_created;
    if (!ev.states_created.empty()) j["states_created"] = ev.states_created;
    j["replacements"] = ev.replacements;
    j["transitions_added"] = ev.transitions_added;
    j["transitions_removed"] = ev.transitions_removed;
    if (ev.oracle.calls) {
        j["oracle"] = {{"calls", ev.oracle.calls},
                       {"dense_dp", ev.oracle.dense_dp},
                       {"cycle_search", ev.oracle.cycle_search},
                       {"dfa_fast", ev.oracle.dfa_fast}};
    }
    j["root_len_before"] = ev.root_len_before.str();
    j["root_len_after"] = ev.root_len_after.str();
    j["sizes"] = {{"grammar", ev.grammar_size},
                  {"max_rhs", ev.max_rhs_symbols},
                  {"states", ev.state_count},
                  {"alphabet", ev.alphabet_size}};
    return j.dump();
}

}  // namespace recomp
