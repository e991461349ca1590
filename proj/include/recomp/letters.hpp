#ifndef RECOMP_LETTERS_HPP
#define RECOMP_LETTERS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recomp/errors.hpp"

namespace recomp {

using LetterId = std::uint32_t;
inline constexpr LetterId kNoLetter = static_cast<LetterId>(-1);

enum class LetterKind : std::uint8_t {
    Original,  // named input letter
    Dollar,    // unique first letter of the root string
    Hash,      // unique last letter of the root string
    Pair,      // replaced an adjacent pair of distinct letters
    Block,     // replaced a maximal run base^exponent
};

struct LetterData {
    LetterKind kind = LetterKind::Original;
    std::string name;             // Original only
    LetterId left = kNoLetter;    // Pair: left component; Block: base
    LetterId right = kNoLetter;   // Pair: right component
    BigInt exponent;              // Block only, >= 1
};

// ── Alphabet ────────────────────────────────────────────────────────────────
// Interning table for letters. Every letter is identified by a LetterId that
// is stable for the lifetime of the table; structurally equal constructions
// yield the identical id. The two markers are interned at construction and
// are singletons. Ids are handed out in creation order, which the rewriting
// passes use as the canonical letter order.
//
// The table only grows. Grammars and automata hold ids plus a shared pointer
// to the table; creating new letters never invalidates existing ids.

class Alphabet {
public:
    Alphabet() {
        letters_.push_back({LetterKind::Dollar, "$", kNoLetter, kNoLetter, 0});
        letters_.push_back({LetterKind::Hash, "#", kNoLetter, kNoLetter, 0});
    }

    LetterId dollar() const { return 0; }
    LetterId hash_marker() const { return 1; }

    bool is_marker(LetterId id) const {
        return id == dollar() || id == hash_marker();
    }

    /// Interns a named input letter. Names "$" and "#" resolve to the markers.
    LetterId original(const std::string& name) {
        if (name == "$") return dollar();
        if (name == "#") return hash_marker();
        auto it = by_name_.find(name);
        if (it != by_name_.end()) return it->second;
        LetterId id = static_cast<LetterId>(letters_.size());
        letters_.push_back({LetterKind::Original, name, kNoLetter, kNoLetter, 0});
        by_name_.emplace(name, id);
        return id;
    }

    /// Interns the pair letter <a,b>. Markers never participate in pairs.
    LetterId pair_letter(LetterId a, LetterId b) {
        if (is_marker(a) || is_marker(b))
            throw PreconditionError("markers cannot be part of a pair letter");
        check_id(a);
        check_id(b);
        auto key = std::make_pair(a, b);
        auto it = pairs_.find(key);
        if (it != pairs_.end()) return it->second;
        LetterId id = static_cast<LetterId>(letters_.size());
        letters_.push_back({LetterKind::Pair, "", a, b, 0});
        pairs_.emplace(key, id);
        return id;
    }

    /// Interns the block letter <base,exponent>, exponent >= 1.
    LetterId block_letter(LetterId base, const BigInt& exponent) {
        if (is_marker(base))
            throw PreconditionError("markers cannot be the base of a block letter");
        if (exponent < 1)
            throw PreconditionError("block letter exponent must be positive");
        check_id(base);
        auto key = std::make_pair(base, exponent);
        auto it = blocks_.find(key);
        if (it != blocks_.end()) return it->second;
        LetterId id = static_cast<LetterId>(letters_.size());
        letters_.push_back({LetterKind::Block, "", base, kNoLetter, exponent});
        blocks_.emplace(key, id);
        return id;
    }

    const LetterData& operator[](LetterId id) const {
        check_id(id);
        return letters_[id];
    }

    std::size_t size() const { return letters_.size(); }

    /// Printable, whitespace-free form: name, $, #, (x,y) or [x,k].
    std::string display(LetterId id) const {
        const LetterData& d = (*this)[id];
        switch (d.kind) {
            case LetterKind::Original: return d.name;
            case LetterKind::Dollar: return "$";
            case LetterKind::Hash: return "#";
            case LetterKind::Pair:
                return "(" + display(d.left) + "," + display(d.right) + ")";
            case LetterKind::Block:
                return "[" + display(d.left) + "," + d.exponent.str() + "]";
        }
        return "?";
    }

private:
    void check_id(LetterId id) const {
        if (id >= letters_.size())
            throw std::out_of_range("unknown letter id " + std::to_string(id));
    }

    std::vector<LetterData> letters_;
    std::unordered_map<std::string, LetterId> by_name_;
    std::map<std::pair<LetterId, LetterId>, LetterId> pairs_;
    std::map<std::pair<LetterId, BigInt>, LetterId> blocks_;
};

}  // namespace recomp

#endif  // RECOMP_LETTERS_HPP
