#pragma once

#include <stdexcept>

namespace fracdrift {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid construction and validation.
class NonIncreasingGrid : public Error { public: using Error::Error; };
class ZeroSize : public Error { public: using Error::Error; };
class DegenerateGrid : public Error { public: using Error::Error; };

// Gaussian path sampling.
class FactorizationFailure : public Error { public: using Error::Error; };

// Observation series and estimation.
class GridMismatch : public Error { public: using Error::Error; };
class EmptySeries : public Error { public: using Error::Error; };
class DegenerateDenominator : public Error { public: using Error::Error; };

// Renewal analytics.
class WrongScheme : public Error { public: using Error::Error; };
class InvalidIndices : public Error { public: using Error::Error; };

// Parameter preconditions and degenerate statistics.
class DomainError : public Error { public: using Error::Error; };
class DegenerateVariance : public Error { public: using Error::Error; };

// Malformed input files.
class CsvError : public Error { public: using Error::Error; };

}  // namespace fracdrift
