#include "recomp/grammar.hpp"

#include <algorithm>

namespace recomp {

void Grammar::compute_derived() {
    eval_len_.assign(n_ + 1, 0);
    first_.assign(n_ + 1, kNoLetter);
    last_.assign(n_ + 1, kNoLetter);
    for (std::uint32_t i = 1; i <= n_; ++i) {
        BigInt len = 0;
        LetterId first = kNoLetter;
        LetterId last = kNoLetter;
        for (const auto& s : prods_[i].symbols) {
            BigInt part = s.is_nonterminal() ? eval_len_[s.index] : s.flat_length();
            if (part == 0) continue;
            LetterId f = s.is_nonterminal() ? first_[s.index] : s.letter;
            LetterId l = s.is_nonterminal() ? last_[s.index] : s.letter;
            if (first == kNoLetter) first = f;
            last = l;
            len += part;
        }
        eval_len_[i] = len;
        first_[i] = first;
        last_[i] = last;
    }
}

std::vector<LetterId> Grammar::decompress(std::uint32_t i, std::size_t cap) const {
    check_index(i);
    if (eval_len_[i] > cap) throw BudgetExceeded(eval_len_[i]);
    std::vector<LetterId> out;
    out.reserve(static_cast<std::size_t>(eval_len_[i]));
    // References strictly decrease, so recursion depth is at most n.
    auto expand = [&](auto&& self, std::uint32_t j) -> void {
        for (const auto& s : prods_[j].symbols) {
            switch (s.kind) {
                case SymbolKind::Letter:
                    out.push_back(s.letter);
                    break;
                case SymbolKind::Power: {
                    std::size_t k = static_cast<std::size_t>(s.exponent);
                    out.insert(out.end(), k, s.letter);
                    break;
                }
                case SymbolKind::Nonterminal:
                    self(self, s.index);
                    break;
            }
        }
    };
    expand(expand, i);
    return out;
}

std::set<std::uint32_t> Grammar::reachable_from_root() const {
    std::set<std::uint32_t> seen;
    if (n_ == 0) return seen;
    std::vector<std::uint32_t> stack{n_};
    seen.insert(n_);
    while (!stack.empty()) {
        std::uint32_t i = stack.back();
        stack.pop_back();
        for (const auto& s : prods_[i].symbols)
            if (s.is_nonterminal() && seen.insert(s.index).second)
                stack.push_back(s.index);
    }
    return seen;
}

Grammar GrammarBuilder::build() const {
    if (!alphabet_) throw std::logic_error("grammar built without an alphabet");
    for (std::uint32_t i = 1; i <= n_; ++i) {
        for (const auto& s : prods_[i].symbols) {
            if (s.is_nonterminal()) {
                if (s.index < 1 || s.index > n_)
                    throw MalformedInputError("X" + std::to_string(i) +
                                              " references X" + std::to_string(s.index) +
                                              " outside 1.." + std::to_string(n_));
                if (s.index >= i)
                    throw MalformedInputError(
                        "X" + std::to_string(i) + " references X" +
                        std::to_string(s.index) + "; references must strictly decrease");
            } else {
                if (s.letter >= alphabet_->size())
                    throw MalformedInputError("unknown letter id in production X" +
                                              std::to_string(i));
                if (s.is_power() && s.exponent < 2)
                    throw MalformedInputError("stored power with exponent < 2 in X" +
                                              std::to_string(i));
            }
        }
    }
    Grammar g;
    g.n_ = n_;
    g.prods_ = prods_;
    g.succinct_for_ = succinct_for_;
    g.alphabet_ = alphabet_;
    g.compute_derived();
    return g;
}

namespace {

std::vector<std::uint32_t> nonterminal_sequence(const Rhs& rhs) {
    std::vector<std::uint32_t> seq;
    for (const auto& s : rhs.symbols)
        if (s.is_nonterminal()) seq.push_back(s.index);
    return seq;
}

bool is_subsequence(const std::vector<std::uint32_t>& needle,
                    const std::vector<std::uint32_t>& hay) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < hay.size() && j < needle.size(); ++i)
        if (hay[i] == needle[j]) ++j;
    return j == needle.size();
}

}  // namespace

InvariantReport check_slp_invariants(const Grammar& g, const Grammar& original) {
    InvariantReport rep;
    const Alphabet& ab = *g.alphabet();

    if (g.n() != original.n())
        rep.add("SLP-1", g.n(), "nonterminal count differs from the original instance");

    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        const Rhs& rhs = g.production(i);
        if (rhs.nonterminal_count() > 2)
            rep.add("form-1b", i, "more than two nonterminals on the right-hand side");
        for (const auto& s : rhs.symbols) {
            if (s.is_nonterminal()) {
                if (s.index >= i)
                    rep.add("form-1b", i,
                            "reference to X" + std::to_string(s.index) +
                                " does not strictly decrease");
                else if (g.eval_len(s.index) == 0)
                    rep.add("form-1c", i,
                            "X" + std::to_string(s.index) +
                                " defines the empty string but is referenced");
            } else if (s.is_power()) {
                if (s.exponent < 2)
                    rep.add("succinct", i, "stored power with exponent < 2");
                if (!g.succinct_for() || *g.succinct_for() != s.letter)
                    rep.add("succinct", i,
                            "power of " + ab.display(s.letter) +
                                " outside the declared succinct form");
            }
        }
        // SLP 2 against the baseline.
        if (i <= original.n()) {
            auto cur = nonterminal_sequence(rhs);
            auto base = nonterminal_sequence(original.production(i));
            if (!is_subsequence(cur, base))
                rep.add("SLP-2", i,
                        "nonterminals are not an in-order subsequence of the "
                        "original right-hand side");
        }
    }

    // SLP 3: root shaped $ ... #, markers nowhere else.
    const Rhs& root = g.production(g.n());
    bool root_ok = root.size() >= 2 && root.symbols.front().is_letter() &&
                   root.symbols.front().letter == ab.dollar() &&
                   root.symbols.back().is_letter() &&
                   root.symbols.back().letter == ab.hash_marker();
    if (!root_ok)
        rep.add("SLP-3", g.n(), "root production is not of the shape $ ... #");
    for (std::uint32_t i = 1; i <= g.n(); ++i) {
        const auto& syms = g.production(i).symbols;
        for (std::size_t t = 0; t < syms.size(); ++t) {
            const Symbol& s = syms[t];
            if (s.is_nonterminal()) continue;
            bool is_root_anchor =
                i == g.n() && root_ok && (t == 0 || t + 1 == syms.size());
            if (ab.is_marker(s.letter) && !is_root_anchor)
                rep.add("SLP-3", i,
                        "marker " + ab.display(s.letter) +
                            " occurs outside the root anchors");
        }
    }
    return rep;
}

}  // namespace recomp
