#pragma once

#include <stdexcept>
#include <string>

namespace cosys {

// Malformed or inconsistent input: bad files, mismatched shapes, violated
// preconditions. The CLI maps every InputError to exit status 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public InputError {
public:
    using InputError::InputError;
};

class PurityError : public InputError {
public:
    using InputError::InputError;
};

class MorphismError : public InputError {
public:
    using InputError::InputError;
};

class LabelingError : public InputError {
public:
    using InputError::InputError;
};

class StructureError : public InputError {
public:
    using InputError::InputError;
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

// A configured budget (enumeration size, search space, matrix size) would be
// exceeded. Exit status 3.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure with file/line context.
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : InputError(source + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace cosys
