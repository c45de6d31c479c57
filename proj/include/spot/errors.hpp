#pragma once

#include <stdexcept>
#include <string>

namespace spot {

// Base for every typed error thrown by the library. Subcommands map these to
// exit code 1; config-shaped ones to exit code 3.
struct SpotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInputError : SpotError {
  using SpotError::SpotError;
};

// prompt-core
struct ZeroNormError : SpotError {
  using SpotError::SpotError;
};
struct ShapeMismatchError : SpotError {
  using SpotError::SpotError;
};
struct EmptyRunListError : SpotError {
  using SpotError::SpotError;
};

// prompt-library
struct IoError : SpotError {
  using SpotError::SpotError;
};
struct PathExistsError : SpotError {
  using SpotError::SpotError;
};
struct BadMagicError : SpotError {
  using SpotError::SpotError;
};
struct UnsupportedVersionError : SpotError {
  using SpotError::SpotError;
};
struct TruncatedPayloadError : SpotError {
  using SpotError::SpotError;
};
struct SchemaError : SpotError {
  using SpotError::SpotError;
};
struct DuplicateEntryError : SpotError {
  using SpotError::SpotError;
};
struct MissingFileError : SpotError {
  using SpotError::SpotError;
};

// retrieval
struct EmptyLibraryError : SpotError {
  using SpotError::SpotError;
};
struct KOutOfRangeError : SpotError {
  using SpotError::SpotError;
};
struct EmptyListError : SpotError {
  using SpotError::SpotError;
};
struct EmptySizesError : SpotError {
  using SpotError::SpotError;
};
struct MissingDatasetError : SpotError {
  using SpotError::SpotError;
};

// toy-tuner
struct TopNOutOfRangeError : SpotError {
  using SpotError::SpotError;
};
struct TokenIdOutOfRange : SpotError {
  using SpotError::SpotError;
};
struct EmptyBatchError : SpotError {
  using SpotError::SpotError;
};
struct NoCheckpointsError : SpotError {
  using SpotError::SpotError;
};
struct StepNotCheckpointedError : SpotError {
  using SpotError::SpotError;
};
struct EmptySplitError : SpotError {
  using SpotError::SpotError;
};

// analysis
struct BaselinePerfectError : SpotError {
  using SpotError::SpotError;
};
struct DegenerateVarianceError : SpotError {
  using SpotError::SpotError;
};
struct LengthMismatchError : SpotError {
  using SpotError::SpotError;
};
struct AsymmetricInputError : SpotError {
  using SpotError::SpotError;
};

// cli
struct ConfigError : SpotError {
  using SpotError::SpotError;
};

}  // namespace spot
