#pragma once

#include <stdexcept>
#include <string>

namespace nonnoether {

struct NonLinearExponent : std::runtime_error {
    explicit NonLinearExponent(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownSymbol : std::runtime_error {
    explicit UnknownSymbol(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundCoordinate : std::runtime_error {
    explicit UnboundCoordinate(const std::string& what) : std::runtime_error(what) {}
};

struct NotDivisible : std::runtime_error {
    explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeOverflow : std::runtime_error {
    explicit DegreeOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeMismatch : std::runtime_error {
    explicit DegreeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentPair : std::runtime_error {
    explicit InconsistentPair(const std::string& what) : std::runtime_error(what) {}
};

struct NotLiouville : std::runtime_error {
    explicit NotLiouville(const std::string& what) : std::runtime_error(what) {}
};

struct NotASymmetry : std::runtime_error {
    explicit NotASymmetry(const std::string& what) : std::runtime_error(what) {}
};

struct SeedMismatch : std::runtime_error {
    explicit SeedMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& what) : std::runtime_error(what) {}
};

struct EigenSolveFailure : std::runtime_error {
    explicit EigenSolveFailure(const std::string& what) : std::runtime_error(what) {}
};

struct Unstable : std::runtime_error {
    explicit Unstable(const std::string& what) : std::runtime_error(what) {}
};

struct BadGrid : std::runtime_error {
    explicit BadGrid(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nonnoether
