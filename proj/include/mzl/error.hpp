#pragma once

#include <stdexcept>
#include <string>

namespace mzl {

enum class errc {
    input,        // malformed input, violated precondition
    divergent,    // limit does not exist in the series module
    budget,       // enumeration would exceed the configured budget
    mismatch,     // a verified comparison failed
    unsupported,  // valid input outside the engine's supported fragment
    internal
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

inline void expect(bool ok, errc kind, const std::string& what) {
    if (!ok) fail(kind, what);
}

}  // namespace mzl
