#ifndef SDCOMP_ERRORS_HPP
#define SDCOMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdcomp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidMatrix : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct WeightOutOfRange : ParseError { using ParseError::ParseError; };

struct InvalidContraction : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// raised when degenerate preprocessing meets an odd cycle of forced entries
struct MetricInfeasible : Error { using Error::Error; };

struct InvalidCombine : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct DegenerateTightCycle : Error { using Error::Error; };

// interior-point iteration cap hit before any outcome could be verified
struct SolverStall : Error { using Error::Error; };

} // namespace sdcomp

#endif
