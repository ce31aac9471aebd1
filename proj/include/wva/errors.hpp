#pragma once

#include <stdexcept>
#include <string>

namespace wva {

// Base for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Postselection succeeds with probability below the usable floor; the
// conditional meter state is undefined.
class DegeneratePostselection : public Error {
public:
    DegeneratePostselection(const std::string& what, double p_f)
        : Error(what), p_f_(p_f) {}
    double p_f() const noexcept { return p_f_; }

private:
    double p_f_;
};

inline DegeneratePostselection degenerate_postselection(double p_f) {
    return DegeneratePostselection(
        "postselection probability " + std::to_string(p_f) + " is below the usable floor", p_f);
}

class DivergentWeakValue : public Error {
public:
    using Error::Error;
};

class NonpositiveInformation : public Error {
public:
    using Error::Error;
};

// The two QFI evaluations disagree beyond the accepted tolerance.
class PathMismatch : public Error {
public:
    using Error::Error;
};

class NonpositiveData : public Error {
public:
    using Error::Error;
};

class InsufficientPoints : public Error {
public:
    using Error::Error;
};

class ZeroDetuning : public Error {
public:
    using Error::Error;
};

}  // namespace wva
