#pragma once

#include <stdexcept>
#include <string>

namespace eub {

// Error taxonomy, mapped to distinct CLI exit codes (see tools/main.cpp):
//   domain_error    -> bad parameter values (p outside [0,1], theta out of range, ...)
//   contract_error  -> an operation precondition or invariant failed (non-Hermitian
//                      input, dimension mismatch, broken orthonormality, ...)
//   capacity_error  -> a deliberate size cap was hit (submatrix enumeration)
//   io_error        -> file missing / unparsable / unwritable
//   verification_error -> a Monte-Carlo verification run found a violation

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& msg) : error("domain: " + msg) {}
};

struct contract_error : error {
    explicit contract_error(const std::string& msg) : error("contract: " + msg) {}
};

struct capacity_error : error {
    explicit capacity_error(const std::string& msg) : error("capacity: " + msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error("io: " + msg) {}
};

struct verification_error : error {
    explicit verification_error(const std::string& msg) : error("verification: " + msg) {}
};

} // namespace eub
