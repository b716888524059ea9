#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseries {

enum class CheckStatus { Pass, Fail, Skip };

struct FirstFailure {
    std::int64_t index = -1;
    std::string lhs;
    std::string rhs;
};

/* Outcome of one verifiable claim. `params` is an ordered key/value list so
 * report serialization stays deterministic. */
struct VerificationReport {
    std::string id;
    std::string paper_label;
    std::vector<std::pair<std::string, std::string>> params;
    CheckStatus status = CheckStatus::Pass;
    std::optional<FirstFailure> first_failure;
    std::string note;
    std::int64_t elapsed_ms = 0;

    static VerificationReport pass(std::string id, std::string label) {
        VerificationReport r;
        r.id = std::move(id);
        r.paper_label = std::move(label);
        return r;
    }
    static VerificationReport fail(std::string id, std::string label,
                                   FirstFailure ff, std::string note = {}) {
        VerificationReport r;
        r.id = std::move(id);
        r.paper_label = std::move(label);
        r.status = CheckStatus::Fail;
        r.first_failure = std::move(ff);
        r.note = std::move(note);
        return r;
    }
    static VerificationReport skip(std::string id, std::string label,
                                   std::string reason) {
        VerificationReport r;
        r.id = std::move(id);
        r.paper_label = std::move(label);
        r.status = CheckStatus::Skip;
        r.note = std::move(reason);
        return r;
    }

    void add_param(const std::string &key, const std::string &value) {
        params.emplace_back(key, value);
    }
    void add_param(const std::string &key, std::int64_t value) {
        params.emplace_back(key, std::to_string(value));
    }
};

struct SuiteResult {
    std::string name;
    std::vector<VerificationReport> checks;
    std::int64_t elapsed_ms = 0;

    int count(CheckStatus s) const {
        int n = 0;
        for (const auto &c : checks)
            if (c.status == s)
                ++n;
        return n;
    }
};

const char *status_name(CheckStatus s);

} // namespace qseries
