#pragma once

#include <stdexcept>
#include <string>

namespace hamforge {

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct AlgebraError : Error {
	using Error::Error;
};

struct UnknownAtomError : Error {
	using Error::Error;
};

// constant term handed to the inverse Laplacian
struct NonInvertibleModeError : Error {
	using Error::Error;
};

struct UnsupportedError : Error {
	using Error::Error;
};

struct InconsistencyError : Error {
	using Error::Error;
};

struct CapExceededError : Error {
	using Error::Error;
};

struct DofError : Error {
	using Error::Error;
};

}
