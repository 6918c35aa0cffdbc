#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments to an operation (dimension mismatch, empty input, out-of-range scalar).
struct InvalidInput : Error {
    using Error::Error;
};

// A matrix argument violates its contract (non-finite entries, asymmetry).
struct InvalidMatrix : Error {
    using Error::Error;
};

// A ConeProgram with inconsistent dimensions.
struct InvalidProgram : Error {
    using Error::Error;
};

// Gram system numerically singular; raise the ridge.
struct SingularGram : Error {
    using Error::Error;
};

// Evaluation outside the admissible domain of a model.
struct DomainError : Error {
    using Error::Error;
};

struct SimulationDiverged : Error {
    SimulationDiverged(const std::string& msg, std::size_t step_index)
        : Error(msg + " at step " + std::to_string(step_index)), step(step_index) {}
    std::size_t step;
};

struct LearnFailed : Error {
    enum class Reason { Infeasible, NotConverged };
    LearnFailed(Reason r, const std::string& msg) : Error(msg), reason(r) {}
    Reason reason;
};

// No alpha > 0 makes I + alpha*Pi_yy negative definite.
struct NoGainCertificate : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& file, std::size_t line_no, const std::string& what_failed)
        : Error(file + ":" + std::to_string(line_no) + ": " + what_failed),
          file_path(file), line(line_no) {}
    std::string file_path;
    std::size_t line;
};

}  // namespace dk
