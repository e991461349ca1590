#ifndef RECOMP_GRAMMAR_HPP
#define RECOMP_GRAMMAR_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "recomp/errors.hpp"
#include "recomp/letters.hpp"
#include "recomp/report.hpp"

namespace recomp {

// ── Symbol ──────────────────────────────────────────────────────────────────
// One entry of a right-hand side (and, reused, one transition label): a plain
// letter, a succinct power base^exponent, or a nonterminal reference.
// Power symbols with exponent 1 are stored as plain letters; exponent 0 is
// never stored.

enum class SymbolKind : std::uint8_t { Letter, Power, Nonterminal };

struct Symbol {
    SymbolKind kind = SymbolKind::Letter;
    LetterId letter = kNoLetter;  // Letter and Power (base)
    BigInt exponent;              // Power only, >= 2
    std::uint32_t index = 0;      // Nonterminal only, 1-based

    static Symbol make_letter(LetterId id) {
        Symbol s;
        s.kind = SymbolKind::Letter;
        s.letter = id;
        return s;
    }

    /// Collapses exponent 1 to a plain letter; rejects exponent < 1.
    static Symbol make_power(LetterId base, BigInt exponent) {
        if (exponent < 1) throw PreconditionError("power exponent must be >= 1");
        if (exponent == 1) return make_letter(base);
        Symbol s;
        s.kind = SymbolKind::Power;
        s.letter = base;
        s.exponent = std::move(exponent);
        return s;
    }

    static Symbol make_nonterminal(std::uint32_t index) {
        Symbol s;
        s.kind = SymbolKind::Nonterminal;
        s.index = index;
        return s;
    }

    bool is_letter() const { return kind == SymbolKind::Letter; }
    bool is_power() const { return kind == SymbolKind::Power; }
    bool is_nonterminal() const { return kind == SymbolKind::Nonterminal; }

    /// Length of the string this symbol stands for; nonterminals need the
    /// grammar, so they are not handled here.
    BigInt flat_length() const {
        if (is_letter()) return 1;
        if (is_power()) return exponent;
        throw std::logic_error("flat_length of a nonterminal symbol");
    }

    bool operator==(const Symbol& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case SymbolKind::Letter: return letter == o.letter;
            case SymbolKind::Power: return letter == o.letter && exponent == o.exponent;
            case SymbolKind::Nonterminal: return index == o.index;
        }
        return false;
    }
    bool operator!=(const Symbol& o) const { return !(*this == o); }
};

struct Rhs {
    std::vector<Symbol> symbols;

    bool empty() const { return symbols.empty(); }
    std::size_t size() const { return symbols.size(); }

    std::size_t nonterminal_count() const {
        std::size_t k = 0;
        for (const auto& s : symbols) k += s.is_nonterminal();
        return k;
    }

    bool operator==(const Rhs& o) const { return symbols == o.symbols; }
};

// ── Grammar ─────────────────────────────────────────────────────────────────
// n nonterminals X_1..X_n, one production each, references strictly
// decreasing. Values are immutable after construction; the rewriting passes
// build new versions through GrammarBuilder. eval lengths and first/last
// letters are computed once at construction (only possible when references
// are well-founded, which the builder enforces).

class Grammar {
public:
    Grammar() = default;

    std::uint32_t n() const { return n_; }

    const Rhs& production(std::uint32_t i) const {
        check_index(i);
        return prods_[i];
    }

    const std::shared_ptr<const Alphabet>& alphabet() const { return alphabet_; }
    const std::optional<LetterId>& succinct_for() const { return succinct_for_; }

    /// |eval(X_i)|, exact.
    const BigInt& eval_len(std::uint32_t i) const {
        check_index(i);
        return eval_len_[i];
    }

    /// First and last letter of eval(X_i); both absent iff eval(X_i) is empty.
    std::pair<std::optional<LetterId>, std::optional<LetterId>> first_last(
        std::uint32_t i) const {
        check_index(i);
        std::optional<LetterId> f, l;
        if (first_[i] != kNoLetter) f = first_[i];
        if (last_[i] != kNoLetter) l = last_[i];
        return {f, l};
    }

    /// First letter of what `s` stands for (kNoLetter for an empty eval).
    LetterId first_of(const Symbol& s) const {
        if (s.is_nonterminal()) {
            check_index(s.index);
            return first_[s.index];
        }
        return s.letter;
    }

    LetterId last_of(const Symbol& s) const {
        if (s.is_nonterminal()) {
            check_index(s.index);
            return last_[s.index];
        }
        return s.letter;
    }

    /// Full eval(X_i) as a flat letter sequence, provided it fits `cap`.
    std::vector<LetterId> decompress(std::uint32_t i, std::size_t cap) const;

    /// Stored size |G|: total symbols over all right-hand sides, a power
    /// counting as one symbol.
    std::size_t stored_size() const {
        std::size_t total = 0;
        for (std::uint32_t i = 1; i <= n_; ++i) total += prods_[i].size();
        return total;
    }

    std::size_t max_rhs_size() const {
        std::size_t m = 0;
        for (std::uint32_t i = 1; i <= n_; ++i)
            if (prods_[i].size() > m) m = prods_[i].size();
        return m;
    }

    /// Letters occurring in some right-hand side (as a letter or power base).
    std::set<LetterId> occurring_letters() const {
        std::set<LetterId> out;
        for (std::uint32_t i = 1; i <= n_; ++i)
            for (const auto& s : prods_[i].symbols)
                if (!s.is_nonterminal()) out.insert(s.letter);
        return out;
    }

    /// Indices reachable from X_n through nonterminal references (X_n itself
    /// included).
    std::set<std::uint32_t> reachable_from_root() const;

private:
    friend class GrammarBuilder;

    void check_index(std::uint32_t i) const {
        if (i < 1 || i > n_)
            throw std::out_of_range("nonterminal index " + std::to_string(i) +
                                    " out of range 1.." + std::to_string(n_));
    }

    void compute_derived();

    std::uint32_t n_ = 0;
    std::vector<Rhs> prods_;  // 1-based, size n_+1
    std::optional<LetterId> succinct_for_;
    std::shared_ptr<const Alphabet> alphabet_;

    std::vector<BigInt> eval_len_;
    std::vector<LetterId> first_, last_;  // kNoLetter when eval is empty
};

class GrammarBuilder {
public:
    GrammarBuilder(std::uint32_t n, std::shared_ptr<const Alphabet> alphabet)
        : n_(n), alphabet_(std::move(alphabet)), prods_(n + 1) {}

    /// Starts from an existing grammar's productions (same n and alphabet).
    explicit GrammarBuilder(const Grammar& g)
        : n_(g.n()), alphabet_(g.alphabet()), prods_(g.n() + 1) {
        for (std::uint32_t i = 1; i <= n_; ++i) prods_[i] = g.production(i);
    }

    GrammarBuilder& set_production(std::uint32_t i, Rhs rhs) {
        if (i < 1 || i > n_) throw std::out_of_range("production index out of range");
        prods_[i] = std::move(rhs);
        return *this;
    }

    GrammarBuilder& set_succinct_for(std::optional<LetterId> a) {
        succinct_for_ = a;
        return *this;
    }

    /// Validates well-foundedness (every reference strictly below its owner)
    /// and freezes the grammar. Softer shape constraints are left to
    /// check_slp_invariants, but without well-founded references eval is
    /// undefined, so that much is enforced here.
    Grammar build() const;

private:
    std::uint32_t n_;
    std::shared_ptr<const Alphabet> alphabet_;
    std::vector<Rhs> prods_;
    std::optional<LetterId> succinct_for_;
};

// ── Invariant checking ──────────────────────────────────────────────────────
// Reports violations of the production form and of SLP 1-3 relative to the
// baseline grammar `original`. Violations are data, not errors: an empty
// report means the grammar is in shape.
//
// Codes: form-1b (rule shape), form-1c (an empty nonterminal is referenced),
// SLP-1 (nonterminal set / n changed), SLP-2 (nonterminal order not a
// subsequence of the original rule), SLP-3 (marker placement), succinct
// (power symbol outside the declared succinct form or with exponent < 2).
InvariantReport check_slp_invariants(const Grammar& g, const Grammar& original);

}  // namespace recomp

#endif  // RECOMP_GRAMMAR_HPP
