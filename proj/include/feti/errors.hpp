#pragma once

#include <stdexcept>

namespace feti {

// Factorization kernels
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IndefiniteInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IncompatibleRhs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mesh and decomposition
struct EdgeNotOnBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NodeNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientCorners : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroStiffnessDiagonal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Preconditioners and dual operators
struct SingularInterior : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoarseSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularRemainder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularGlobal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration and recovery
struct NegativeInnerProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StateSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Harness
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace feti
