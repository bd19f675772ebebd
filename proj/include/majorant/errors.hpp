#pragma once

#include <stdexcept>
#include <string>

namespace majorant {

/// Input violates a documented precondition (exit code 3 at the CLI).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A < T fails; carries the most negative partial-integral margin.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double margin, std::size_t cell)
        : std::runtime_error(what), margin_(margin), cell_(cell) {}
    double margin() const noexcept { return margin_; }
    std::size_t cell() const noexcept { return cell_; }

private:
    double margin_;
    std::size_t cell_;
};

/// An internal post-condition failed; indicates a bug or numerical breakdown.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace majorant
