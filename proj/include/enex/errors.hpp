#pragma once

#include <stdexcept>
#include <string>

namespace enex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct ZeroAreaBox : Error {
  ZeroAreaBox() : Error("zero-area box where a positive-area box is required") {}
};
struct BothZeroArea : Error {
  BothZeroArea() : Error("iou undefined: both boxes have zero area") {}
};

// kalman / assignment / tracker
struct SingularInnovation : Error {
  SingularInnovation() : Error("innovation covariance is not invertible") {}
};
struct NonMonotonicFrame : Error {
  explicit NonMonotonicFrame(int frame, int last)
      : Error("frame " + std::to_string(frame) + " does not advance past " + std::to_string(last)) {}
};

// entrance / events
struct EmptyTrack : Error {
  EmptyTrack() : Error("track has no boxes") {}
};

// metrics
struct BothZero : Error {
  BothZero() : Error("f1 undefined: recall and precision are both zero") {}
};

// homography
struct PointAtInfinity : Error {
  PointAtInfinity() : Error("mapped point is at infinity") {}
};
struct DegenerateConfiguration : Error {
  explicit DegenerateConfiguration(const std::string& why)
      : Error("degenerate homography configuration: " + why) {}
};

// synth
struct InvalidScript : Error {
  explicit InvalidScript(const std::string& why) : Error("invalid scenario script: " + why) {}
};

// io
struct ParseError : Error {
  ParseError(const std::string& path, int line, const std::string& why)
      : Error(path + ":" + std::to_string(line) + ": " + why), line_number(line) {}
  int line_number;
};
struct EmptyFile : Error {
  explicit EmptyFile(const std::string& path) : Error(path + ": no data rows") {}
};

}  // namespace enex
