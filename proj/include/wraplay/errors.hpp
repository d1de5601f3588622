#pragma once

#include <stdexcept>
#include <string>

namespace wraplay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph/layout input, bad parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph() : Error("graph is disconnected") {}
};

class GenerationExhausted : public Error {
 public:
  explicit GenerationExhausted(int attempts)
      : Error("corpus generation exhausted after " + std::to_string(attempts) + " attempts") {}
};

class ZeroLengthEdge : public Error {
 public:
  ZeroLengthEdge() : Error("wrapped edge has zero length") {}
};

class DegenerateHull : public Error {
 public:
  explicit DegenerateHull(int cluster)
      : Error("cluster " + std::to_string(cluster) + " has all points coincident") {}
};

class RasterTooSmall : public Error {
 public:
  RasterTooSmall() : Error("raster width must be at least 64 pixels") {}
};

class TopologyMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace wraplay
