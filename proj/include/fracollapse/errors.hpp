#pragma once

#include <stdexcept>
#include <string>

namespace fracollapse {

// Exit-code contract used by the CLI: 1 convergence, 2 config, 3 dependency/data,
// 4 numerical integrity.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_field_error : error {
    using error::error;
};

struct convergence_error : error {
    convergence_error(const std::string& msg, double last_residual)
        : error(msg), last_residual(last_residual) {}
    double last_residual;
};

struct degenerate_solution_error : error {
    using error::error;
};

struct geometry_error : error {
    using error::error;
};

struct dependency_error : error {
    using error::error;
};

struct data_error : error {
    using error::error;
};

struct fit_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

struct integrity_error : error {
    using error::error;
};

// Thrown by the stepper when |u|^(2p) overflows near blow-up; the driver turns
// it into a GradientBlowupStop instead of propagating NaNs.
struct blowup_overflow_error : error {
    using error::error;
};

}  // namespace fracollapse
