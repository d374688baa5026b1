#pragma once

#include <stdexcept>
#include <string>

namespace sslpct {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file or value outside the declared domain.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Training requested with fewer than two labeled examples.
struct NoLabeledData : Error {
    explicit NoLabeledData(const std::string& msg) : Error("no labeled data: " + msg) {}
};

// Cross-validation fold layout leaves too few labeled examples to train on.
struct TooFewLabeled : Error {
    explicit TooFewLabeled(const std::string& msg) : Error("too few labeled: " + msg) {}
};

// Every tree of a forest lacks labeled out-of-bag examples.
struct EmptyOOB : Error {
    explicit EmptyOOB(const std::string& msg) : Error("empty OOB: " + msg) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error("invalid argument: " + msg) {}
};

}  // namespace sslpct
