#ifndef MKOSZUL_ERROR_HPP
#define MKOSZUL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mkoszul {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// truncation too deep: the ambient space at `degree` would exceed the cap
class CapExceeded : public Error {
public:
    CapExceeded(int degree, unsigned long long requested, unsigned long long cap, const std::string& where)
        : Error("truncation too deep: " + where + " at degree " + std::to_string(degree) + " needs " +
                std::to_string(requested) + " coordinates (cap " + std::to_string(cap) + ")"),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

// always a bug: d^2 != 0, exactness of a minimal resolution violated, ...
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// precondition failures: ambient mismatch, w not inside u, non-monomial input, ...
class DomainError : public Error {
public:
    using Error::Error;
};

struct Limits {
    unsigned long long max_ambient_dim = 200000;
    unsigned long long max_bar_dim = 2000000;
};

}  // namespace mkoszul

#endif
