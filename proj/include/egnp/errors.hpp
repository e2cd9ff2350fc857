#pragma once

#include <stdexcept>

namespace egnp {

struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct evaluation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace egnp
