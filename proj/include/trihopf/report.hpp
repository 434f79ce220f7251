#ifndef TRIHOPF_REPORT_HPP
#define TRIHOPF_REPORT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trihopf {

enum class Verdict { pass, fail, warn };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::warn: return "warn";
    }
    return "?";
}

// Witness of a violated identity: the basis tuple it failed on and the two
// sides rendered as vectors, so the inequality can be re-evaluated.
struct Witness {
    std::vector<std::string> tuple;
    std::string lhs;
    std::string rhs;
};

struct CheckResult {
    std::string name;            // e.g. "fundamental_identity"
    std::string rule;            // the identity being checked, in math notation
    Verdict verdict = Verdict::pass;
    std::optional<Witness> witness;
};

class CheckReport {
public:
    void add(CheckResult r) { checks_.push_back(std::move(r)); }

    void add_pass(std::string name, std::string rule) {
        checks_.push_back({std::move(name), std::move(rule), Verdict::pass, std::nullopt});
    }

    void add_fail(std::string name, std::string rule, Witness w) {
        checks_.push_back({std::move(name), std::move(rule), Verdict::fail, std::move(w)});
    }

    void add_warn(std::string name, std::string rule, Witness w) {
        checks_.push_back({std::move(name), std::move(rule), Verdict::warn, std::move(w)});
    }

    void merge(const CheckReport& other) {
        for (const auto& c : other.checks_) checks_.push_back(c);
    }

    const std::vector<CheckResult>& checks() const { return checks_; }

    bool passed() const {
        for (const auto& c : checks_)
            if (c.verdict == Verdict::fail) return false;
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks_)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string str() const {
        std::string out;
        for (const auto& c : checks_) {
            out += "[" + std::string(verdict_name(c.verdict)) + "] " + c.name;
            if (!c.rule.empty()) out += "  :: " + c.rule;
            out += "\n";
            if (c.witness) {
                out += "    at (";
                for (std::size_t i = 0; i < c.witness->tuple.size(); ++i) {
                    if (i) out += ", ";
                    out += c.witness->tuple[i];
                }
                out += ")\n    lhs = " + c.witness->lhs + "\n    rhs = " + c.witness->rhs + "\n";
            }
        }
        out += passed() ? "overall: pass\n" : "overall: FAIL\n";
        return out;
    }

private:
    std::vector<CheckResult> checks_;
};

struct CheckOptions {
    bool all_witnesses = false; // keep scanning after the first failure
};

// Refusal: an operation whose hypotheses do not hold declines to run and
// reports which hypothesis failed, with a witness when there is one.
class refusal_error : public std::runtime_error {
public:
    refusal_error(const std::string& what, CheckResult detail)
        : std::runtime_error(what), detail_(std::move(detail)) {}

    explicit refusal_error(const std::string& what)
        : std::runtime_error(what), detail_{ "refusal", "", Verdict::fail, std::nullopt } {}

    const CheckResult& detail() const { return detail_; }

private:
    CheckResult detail_;
};

} // namespace trihopf

#endif
