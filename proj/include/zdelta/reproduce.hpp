#pragma once

#include <string>
#include <vector>

#include "zdelta/catalog.hpp"
#include "zdelta/io.hpp"

namespace zd {

// NOTE: computed matches the golden value, the paper prints something else
enum class Status { Pass, Fail, Note };

std::string status_name(Status s);

struct CheckResult {
    std::string target;
    std::string label;
    std::string anchor;
    Status status = Status::Fail;
    std::string computed;
    std::string expected;
    std::string paper;
    std::string note;
};

struct Report {
    std::vector<std::string> targets;
    std::vector<CheckResult> checks;

    std::size_t count(Status s) const;
    bool ok() const { return count(Status::Fail) == 0; }
};

// golden file stems plus "all"
std::vector<std::string> reproduce_targets(const Catalog& cat);

// unknown target -> ReferenceError; malformed golden file -> ParseError/ValidationError
Report reproduce(Catalog& cat, const std::string& target);

std::string format_report(const Report& r);
json to_json(const Report& r);

}  // namespace zd
