#ifndef MDB_ERRORS_HPP
#define MDB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdb {

/// Thrown when an operation is called outside its documented preconditions.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Thrown on malformed input files; carries the offending line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace mdb

#endif
