#ifndef BIELL_ERRORS_HPP
#define BIELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace biell {

// Error categories map onto the CLI exit-code contract:
//   input_error / precondition_error -> exit 2 (bad input)
//   verification failures are reported in-band (exit 1), not thrown
//   resource_error -> exit 2 (a configured bound was exceeded)
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed arguments, unparsable files, values outside the supported domain.
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

// A mathematically meaningful precondition does not hold for the given data
// (e.g. asking for Tate data of a curve with good reduction).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

// An exhaustive search hit its configured ceiling.  The message names the
// bound so callers can raise it (see BIELL_ENUM_BOUND).
class resource_error : public error {
public:
    explicit resource_error(const std::string& what) : error(what) {}
};

} // namespace biell

#endif
