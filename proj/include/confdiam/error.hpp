#pragma once

#include <stdexcept>
#include <string>

namespace confdiam {

/// Machine-readable failure categories. The CLI maps these to exit code 1 and
/// a JSON error object; library callers can switch on the code.
enum class Errc {
    invalid_input,
    domain_error,        // chart point outside the ambient domain V
    unsupported,         // operation not defined for this ambient kind
    parse_error,
    io_error,
    nonmanifold_edge,
    inconsistent_orientation,
    degenerate_face,
    isolated_vertex,
    pinched_vertex,
    disconnected,
    mesh_quality,
    gate_violation,
    solver_stalled,
    construction_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace confdiam
