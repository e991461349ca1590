#ifndef RECOMP_REPORT_HPP
#define RECOMP_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace recomp {

/// One violated invariant. `code` is a short stable tag ("form-1b", "SLP-3",
/// "Aut-1", ...), `where` the offending nonterminal index or state id when
/// meaningful.
struct Violation {
    std::string code;
    std::int64_t where = -1;
    std::string message;
};

struct InvariantReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }

    void add(std::string code, std::int64_t where, std::string message) {
        violations.push_back({std::move(code), where, std::move(message)});
    }

    std::string to_string() const {
        std::string out;
        for (const auto& v : violations) {
            out += v.code;
            if (v.where >= 0) out += " @" + std::to_string(v.where);
            out += ": " + v.message + "\n";
        }
        return out;
    }
};

/// Thrown by entry points that promise a valid instance when the checkers
/// disagree; the full report rides along.
class InvariantViolationError : public std::runtime_error {
public:
    explicit InvariantViolationError(InvariantReport rep)
        : std::runtime_error("invariant violations:\n" + rep.to_string()),
          report(std::move(rep)) {}

    InvariantReport report;
};

}  // namespace recomp

#endif  // RECOMP_REPORT_HPP
