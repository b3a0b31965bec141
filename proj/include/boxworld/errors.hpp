#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace boxworld {

// Base error carrying a stable machine-readable category (used verbatim by the
// CLI as "error: <category>: <message>").
class error : public std::runtime_error {
public:
    error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

struct division_by_zero_error : error {
    explicit division_by_zero_error(const std::string& m) : error("division-by-zero", m) {}
};

struct range_error : error {
    explicit range_error(const std::string& m) : error("range", m) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& m) : error("domain", m) {}
};

struct degenerate_error : error {
    explicit degenerate_error(const std::string& m) : error("degenerate", m) {}
};

struct not_isotropic_error : error {
    explicit not_isotropic_error(const std::string& m) : error("not-isotropic", m) {}
};

struct undefined_conditional_error : error {
    explicit undefined_conditional_error(const std::string& m) : error("undefined-conditional", m) {}
};

struct unrepresentable_threshold_error : error {
    explicit unrepresentable_threshold_error(const std::string& m)
        : error("unrepresentable-threshold", m) {}
};

struct unclassifiable_error : error {
    explicit unclassifiable_error(const std::string& m) : error("unclassifiable", m) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& m) : error("parse", m) {}
};

struct io_error : error {
    explicit io_error(const std::string& m) : error("io", m) {}
};

}  // namespace boxworld
