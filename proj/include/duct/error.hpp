#pragma once

#include <stdexcept>
#include <string>

namespace duct {

// Exit-code families used by the command line driver.
enum class ErrorKind { validation, numerical, scondition };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::validation, what); }
inline Error numerical_error(const std::string& what) { return Error(ErrorKind::numerical, what); }
inline Error scondition_error(const std::string& what) { return Error(ErrorKind::scondition, what); }

}  // namespace duct
